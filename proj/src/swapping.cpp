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

#include "ghz_stego/swapping.hpp"

#include <stdexcept>

namespace ghz_stego {

SwapDistribution swap_distribution(GhzLabel first, GhzLabel second, BellConvention convention) {
  static const auto standard = bell_triple_basis<double>(BellConvention::Standard);
  const auto basis = convention == BellConvention::Standard ? standard : bell_triple_basis<double>(convention);
  SwapDistribution dist;
  for (const auto& o : outcome_distribution(joint_state<double>(first, second), basis)) {
    dist.probability[o.outcome_index] = o.probability;
  }
  if (!dist.equidistributed()) {
    throw std::logic_error("swap_distribution: expected eight outcomes of probability 1/8");
  }
  return dist;
}

BellTriple swap_measure(const StateVectord& joint, Rng& rng, BellConvention convention) {
  if (joint.num_qubits() != 6) throw std::invalid_argument("swap_measure: joint register must hold 6 qubits");
  static const auto standard = bell_triple_basis<double>(BellConvention::Standard);
  const auto basis = convention == BellConvention::Standard ? standard : bell_triple_basis<double>(convention);
  return BellTriple::from_index(static_cast<int>(measure(joint, basis, rng).outcome_index));
}

GhzCode DecodeTable::lookup(BellTriple t) const { return codes_[static_cast<std::size_t>(t.index())]; }

std::vector<BellTriple> DecodeTable::preimages(GhzCode code) const {
  std::vector<BellTriple> out;
  for (int i = 0; i < 64; ++i) {
    if (codes_[static_cast<std::size_t>(i)] == code) out.push_back(BellTriple::from_index(i));
  }
  return out;
}

DecodeTable build_decode_table(BellConvention convention) {
  std::array<std::optional<GhzCode>, 64> assigned;
  for (GhzLabel i : GhzLabel::all()) {
    for (GhzLabel j : GhzLabel::all()) {
      const GhzCode code = code_of(i) ^ code_of(j);
      for (const BellTriple& t : swap_distribution(i, j, convention).support()) {
        auto& slot = assigned[static_cast<std::size_t>(t.index())];
        if (slot && *slot != code) {
          throw std::logic_error("build_decode_table: triple " + t.str() + " maps to both " + slot->str() +
                                 " and " + code.str());
        }
        slot = code;
      }
    }
  }
  DecodeTable table;
  std::array<int, 8> counts{};
  for (std::size_t t = 0; t < assigned.size(); ++t) {
    if (!assigned[t]) {
      throw std::logic_error("build_decode_table: triple " + BellTriple::from_index(static_cast<int>(t)).str() +
                             " never observed");
    }
    table.codes_[t] = *assigned[t];
    ++counts[assigned[t]->bits()];
  }
  for (int c : counts) {
    if (c != 8) throw std::logic_error("build_decode_table: codes do not partition the triples 8 x 8");
  }
  return table;
}

GhzCode swap_cell(GhzLabel first, GhzLabel second, const DecodeTable& table, BellConvention convention) {
  const auto support = swap_distribution(first, second, convention).support();
  const GhzCode code = table.lookup(support.front());
  for (const auto& t : support) {
    if (table.lookup(t) != code) throw std::logic_error("swap_cell: supported outcomes decode differently");
  }
  return code;
}

}  // namespace ghz_stego
