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

// Entanglement swapping between two GHZ triplets.
//
// The joint register is ordered (A1, B1, C1, A2, B2, C2) and the three Bell
// measurements act on qubit pairs (0,3), (1,4), (2,5).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ghz_stego/ghz_coding.hpp"
#include "ghz_stego/rng.hpp"
#include "ghz_stego/statevec.hpp"

namespace ghz_stego {

enum class BellType { Phi, Psi };
enum class BellPhase { Plus, Minus };

struct BellLabel {
  BellType type;
  BellPhase phase;

  // Phi+ = 0, Phi- = 1, Psi+ = 2, Psi- = 3.
  int index() const { return (type == BellType::Psi ? 2 : 0) + (phase == BellPhase::Minus ? 1 : 0); }
  static BellLabel from_index(int i) {
    if (i < 0 || i > 3) throw std::out_of_range("BellLabel: index must be in 0..3");
    return {(i & 2) ? BellType::Psi : BellType::Phi, (i & 1) ? BellPhase::Minus : BellPhase::Plus};
  }
  std::string str() const {
    return std::string(type == BellType::Phi ? "Phi" : "Psi") + (phase == BellPhase::Plus ? "+" : "-");
  }
  bool operator==(const BellLabel&) const = default;

  static std::array<BellLabel, 4> all() { return {from_index(0), from_index(1), from_index(2), from_index(3)}; }
};

// Outcomes on pairs A1A2, B1B2, C1C2.
struct BellTriple {
  BellLabel a;
  BellLabel b;
  BellLabel c;

  int index() const { return a.index() + 4 * b.index() + 16 * c.index(); }
  static BellTriple from_index(int i) {
    if (i < 0 || i > 63) throw std::out_of_range("BellTriple: index must be in 0..63");
    return {BellLabel::from_index(i & 3), BellLabel::from_index((i >> 2) & 3), BellLabel::from_index((i >> 4) & 3)};
  }
  std::string str() const { return "(" + a.str() + "," + b.str() + "," + c.str() + ")"; }
  bool operator==(const BellTriple&) const = default;
};

// Standard is Phi+- = (|00> +- |11>)/sqrt2, Psi+- = (|01> +- |10>)/sqrt2.
// The swapped convention exchanges Phi- and Psi- and exists only as a
// negative control for the verification suite.
enum class BellConvention { Standard, SwappedPhiMinusPsiMinus };

template <typename Scalar = double>
StateVector<Scalar> bell_state(BellLabel label, BellConvention convention = BellConvention::Standard) {
  if (convention == BellConvention::SwappedPhiMinusPsiMinus && label.phase == BellPhase::Minus) {
    label.type = label.type == BellType::Phi ? BellType::Psi : BellType::Phi;
  }
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  const Scalar s = label.phase == BellPhase::Plus ? h : -h;
  using S = StateVector<Scalar>;
  if (label.type == BellType::Phi) return S::from_kets({{"00", h}, {"11", s}});
  return S::from_kets({{"01", h}, {"10", s}});
}

template <typename Scalar = double>
OrthonormalBasis<Scalar> bell_basis(int first, int second, BellConvention convention = BellConvention::Standard) {
  std::vector<StateVector<Scalar>> vectors;
  for (const auto& label : BellLabel::all()) vectors.push_back(bell_state<Scalar>(label, convention));
  return OrthonormalBasis<Scalar>({first, second}, std::move(vectors));
}

// Bell x Bell x Bell over (0,3), (1,4), (2,5); outcome index is BellTriple::index().
template <typename Scalar = double>
OrthonormalBasis<Scalar> bell_triple_basis(BellConvention convention = BellConvention::Standard) {
  const auto pair = bell_basis<Scalar>(0, 1, convention);
  const auto two = product_basis(pair, pair.on({2, 3}));
  const auto three = product_basis(two, pair.on({4, 5}));
  // Local qubit order of `three` is (p0,p1,q0,q1,r0,r1) = (A1,A2,B1,B2,C1,C2).
  return three.on({0, 3, 1, 4, 2, 5});
}

template <typename Scalar = double>
StateVector<Scalar> joint_state(GhzLabel first, GhzLabel second) {
  return tensor(ghz_state<Scalar>(first), ghz_state<Scalar>(second));
}

struct SwapDistribution {
  std::array<double, 64> probability{};

  std::vector<BellTriple> support(double tol = 1e-12) const {
    std::vector<BellTriple> out;
    for (int i = 0; i < 64; ++i) {
      if (probability[static_cast<std::size_t>(i)] > tol) out.push_back(BellTriple::from_index(i));
    }
    return out;
  }
  bool equidistributed(double tol = 1e-12) const {
    int count = 0;
    for (double p : probability) {
      if (std::abs(p - 0.125) <= tol) {
        ++count;
      } else if (std::abs(p) > tol) {
        return false;
      }
    }
    return count == 8;
  }
};

// Analytic Born distribution of the three Bell measurements on ghz(i) x ghz(j).
// Throws std::logic_error if the result is not eight outcomes of 1/8.
SwapDistribution swap_distribution(GhzLabel first, GhzLabel second,
                                   BellConvention convention = BellConvention::Standard);

BellTriple swap_measure(const StateVectord& joint, Rng& rng, BellConvention convention = BellConvention::Standard);

class DecodeTable;

// Built by enumerating all 64 GHZ pairs; throws std::logic_error if a triple
// would receive two codes or the table is not a partition into 8 x 8.
DecodeTable build_decode_table(BellConvention convention = BellConvention::Standard);

// Total map from the 64 Bell triples to 3-bit codes.
class DecodeTable {
 public:
  GhzCode lookup(BellTriple t) const;
  std::vector<BellTriple> preimages(GhzCode code) const;

 private:
  friend DecodeTable build_decode_table(BellConvention);
  std::array<GhzCode, 64> codes_{};
};

inline GhzCode decode_secret(BellTriple t, const DecodeTable& table) { return table.lookup(t); }

// The code decoded from every supported swap outcome of the pair; throws
// std::logic_error if the outcomes disagree.
GhzCode swap_cell(GhzLabel first, GhzLabel second, const DecodeTable& table,
                  BellConvention convention = BellConvention::Standard);

struct PairCoding {
  GhzCode secret;
  PairSelector selector;
  std::string word;  // code(first) followed by code(second)
};

inline PairCoding pair_selector_code(GhzLabel first, GhzLabel second) {
  return {code_of(first) ^ code_of(second), PairSelector(code_of(first)), code_of(first).str() + code_of(second).str()};
}

inline GhzCode recover_info(GhzCode prior_code, GhzCode secret) { return prior_code ^ secret; }

}  // namespace ghz_stego
