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

// Exhaustive analytic identity checks behind `ghz-stego verify`.

#include <string>
#include <vector>

#include "ghz_stego/swapping.hpp"

namespace ghz_stego {

struct IdentityCheck {
  std::string name;
  bool passed;
  std::string detail;
};

// Runs every check even after a failure, in a fixed order.
std::vector<IdentityCheck> run_verification(BellConvention convention = BellConvention::Standard);

// Swap-outcome supports of Psi_1 x Psi_k for k = 1..4, from the known
// decompositions, and four reference triples for code 111.
const std::vector<std::vector<BellTriple>>& reference_supports();
const std::vector<BellTriple>& reference_code7_triples();

// Parses "Phi+,Phi-,Psi+" style triples.
BellTriple parse_triple(const std::string& text);

}  // namespace ghz_stego
