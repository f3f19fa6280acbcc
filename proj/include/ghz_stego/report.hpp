// Copyright 2026 The ghz-stego Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Stable JSON documents for rounds, attack experiments and the swap tables.
// Every document carries "schema": "ghz-stego-report/1" and a "kind".

#include <json.hpp>

#include <string>
#include <vector>

#include "ghz_stego/adversary.hpp"
#include "ghz_stego/protocol.hpp"
#include "ghz_stego/swapping.hpp"

namespace ghz_stego {

inline constexpr const char* kReportSchema = "ghz-stego-report/1";

using Json = nlohmann::ordered_json;

Json to_json(const DetectionReport& report);
Json to_json(const RoundReport& report);
Json to_json(const AttackStats& stats);
Json to_json(const LeakAnalysis& leak);

// 8x8 code table from swap outcomes, plus the 64-entry decode table.
Json tables_json(const DecodeTable& table);

// Cover words as octal digits; missing positions print as '-'.
std::string cover_string(const std::vector<GhzCode>& words);
std::string cover_string(const std::vector<std::optional<GhzCode>>& words);

}  // namespace ghz_stego
