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

// Frequency of eligible hidden-block positions in uniformly random covers.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ghz_stego/ghz_coding.hpp"

namespace ghz_stego {

enum class SweepKind { Pattern, Secret };

struct SweepRow {
  std::size_t length;
  std::size_t reps;
  SweepKind kind;
  GhzCode secret;
  std::optional<PairSelector> selector;  // Pattern rows only
  std::size_t candidates;                // windows per cover, length - 2
  double mean_count;
  double frequency;
  double expected;
  double std_error;       // across reps when reps >= 2, else binomial
  double binomial_error;  // independent-window binomial model
  double z_score;
  double ci_low;
  double ci_high;
};

// 64 pattern rows then 8 secret rows per length. Lengths must be >= 64.
std::vector<SweepRow> run_sweep(const std::vector<std::size_t>& lengths, std::size_t reps, std::uint64_t seed,
                                double sigmas = 5.0);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

inline constexpr const char* kSweepCsvHeader =
    "length,reps,kind,secret,selector,candidates,mean_count,frequency,expected,std_error,binomial_error,z_score,"
    "ci_low,ci_high";

}  // namespace ghz_stego
