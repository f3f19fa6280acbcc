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

// Eight-state GHZ alphabet and its dense coding.
//
// Within a triplet qubit 0 is particle A, qubit 1 is B and qubit 2 is C.
// Dense-coding unitaries act on (A, B); C is never touched.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ghz_stego/statevec.hpp"

namespace ghz_stego {

// One of the eight GHZ states |Psi_k>, k in 1..8.
class GhzLabel {
 public:
  explicit GhzLabel(int k) : k_(k) {
    if (k < 1 || k > 8) throw std::out_of_range("GhzLabel: k must be in 1..8");
  }
  int value() const { return k_; }
  auto operator<=>(const GhzLabel&) const = default;

  static std::array<GhzLabel, 8> all() {
    return {GhzLabel(1), GhzLabel(2), GhzLabel(3), GhzLabel(4),
            GhzLabel(5), GhzLabel(6), GhzLabel(7), GhzLabel(8)};
  }

 private:
  int k_;
};

// A 3-bit word; printed most significant bit first ("100" is 4).
class GhzCode {
 public:
  constexpr GhzCode() = default;
  explicit GhzCode(unsigned bits) : bits_(static_cast<std::uint8_t>(bits)) {
    if (bits > 7) throw std::out_of_range("GhzCode: value must be in 0..7");
  }
  static GhzCode parse(std::string_view text) {
    if (text.size() != 3) throw std::invalid_argument("GhzCode: expected three binary digits");
    unsigned v = 0;
    for (char c : text) {
      if (c != '0' && c != '1') throw std::invalid_argument("GhzCode: expected three binary digits");
      v = (v << 1) | static_cast<unsigned>(c - '0');
    }
    return GhzCode(v);
  }

  unsigned bits() const { return bits_; }
  std::string str() const {
    return {static_cast<char>('0' + ((bits_ >> 2) & 1)), static_cast<char>('0' + ((bits_ >> 1) & 1)),
            static_cast<char>('0' + (bits_ & 1))};
  }

  friend GhzCode operator^(GhzCode a, GhzCode b) { return GhzCode(a.bits_ ^ b.bits_); }
  auto operator<=>(const GhzCode&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

// Which of the eight initial-state pairs carries a secret; equals the code
// of the first state of the pair.
class PairSelector {
 public:
  constexpr PairSelector() = default;
  explicit PairSelector(GhzCode code) : code_(code) {}
  GhzCode code() const { return code_; }
  std::string str() const { return code_.str(); }
  auto operator<=>(const PairSelector&) const = default;

 private:
  GhzCode code_;
};

inline GhzCode code_of(GhzLabel k) { return GhzCode(static_cast<unsigned>(k.value() - 1)); }
inline GhzLabel label_of(GhzCode code) { return GhzLabel(static_cast<int>(code.bits()) + 1); }

enum class Pauli { I, Z, X, iY };

inline std::string_view to_string(Pauli p) {
  switch (p) {
    case Pauli::I: return "I";
    case Pauli::Z: return "sigma_z";
    case Pauli::X: return "sigma_x";
    case Pauli::iY: return "i*sigma_y";
  }
  return "?";
}

struct PauliPair {
  Pauli on_first;
  Pauli on_second;
  bool operator==(const PauliPair&) const = default;
};

inline const std::array<PauliPair, 8>& dense_coding_table() {
  static const std::array<PauliPair, 8> table = {{
      {Pauli::Z, Pauli::Z},
      {Pauli::I, Pauli::Z},
      {Pauli::iY, Pauli::Z},
      {Pauli::X, Pauli::Z},
      {Pauli::I, Pauli::X},
      {Pauli::Z, Pauli::X},
      {Pauli::X, Pauli::X},
      {Pauli::iY, Pauli::X},
  }};
  return table;
}

inline PauliPair unitary_for(GhzLabel k) { return dense_coding_table()[static_cast<std::size_t>(k.value() - 1)]; }

inline bool is_dense_coding_pair(PauliPair pair) {
  for (const auto& entry : dense_coding_table()) {
    if (entry == pair) return true;
  }
  return false;
}

// iY is the real matrix |0><1| - |1><0|; plain sigma_y is not exposed.
template <typename Scalar = double>
Operator2<Scalar> pauli_matrix(Pauli p) {
  Operator2<Scalar> m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::iY: m << 0, 1, -1, 0; break;
  }
  return m;
}

template <typename Scalar = double>
StateVector<Scalar> ghz_state(GhzLabel k) {
  static constexpr std::array<std::array<std::string_view, 2>, 4> kets = {{
      {"000", "111"},
      {"100", "011"},
      {"010", "101"},
      {"110", "001"},
  }};
  const auto& pair = kets[static_cast<std::size_t>((k.value() - 1) / 2)];
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  const Scalar sign = (k.value() % 2 == 1) ? Scalar(1) : Scalar(-1);
  return StateVector<Scalar>::from_kets({{pair[0], h}, {pair[1], sign * h}});
}

// Applies U_k to (particle1, particle2) of a register holding a triplet.
template <typename Scalar>
StateVector<Scalar> encode(const StateVector<Scalar>& state, GhzLabel k, int particle1 = 0, int particle2 = 1) {
  if (particle1 == particle2) throw std::invalid_argument("encode: particles must be distinct");
  if (particle1 < 0 || particle2 < 0 || particle1 >= state.num_qubits() || particle2 >= state.num_qubits()) {
    throw std::out_of_range("encode: particle index out of range");
  }
  const PauliPair pair = unitary_for(k);
  auto out = apply_single_qubit(state, particle1, pauli_matrix<Scalar>(pair.on_first));
  return apply_single_qubit(out, particle2, pauli_matrix<Scalar>(pair.on_second));
}

// Inverse of encode(., k): the adjoint of the Pauli pair.
template <typename Scalar>
StateVector<Scalar> decode_unitary(const StateVector<Scalar>& state, GhzLabel k, int particle1 = 0,
                                   int particle2 = 1) {
  const PauliPair pair = unitary_for(k);
  auto out = apply_single_qubit(state, particle2, Operator2<Scalar>(pauli_matrix<Scalar>(pair.on_second).adjoint()));
  return apply_single_qubit(out, particle1, Operator2<Scalar>(pauli_matrix<Scalar>(pair.on_first).adjoint()));
}

// Outcome index i corresponds to GhzLabel(i + 1).
template <typename Scalar = double>
OrthonormalBasis<Scalar> ghz_basis(std::vector<int> qubits = {0, 1, 2}) {
  std::vector<StateVector<Scalar>> vectors;
  for (GhzLabel k : GhzLabel::all()) vectors.push_back(ghz_state<Scalar>(k));
  return OrthonormalBasis<Scalar>(std::move(qubits), std::move(vectors));
}

enum class DetectionBasis { Z, X };

// A: Alice holds A, Bob measures B and C. B: Alice holds A and B, Bob measures C.
enum class CheckStage { A, B };

inline std::string_view to_string(DetectionBasis b) { return b == DetectionBasis::Z ? "Z" : "X"; }
inline std::string_view to_string(CheckStage s) { return s == CheckStage::A ? "A" : "B"; }

// bit 0 is |0> or |+>, bit 1 is |1> or |->.
struct DetectionOutcome {
  DetectionBasis basis;
  int bit;
};

template <typename Scalar = double>
OrthonormalBasis<Scalar> detection_basis(DetectionBasis basis, int qubit) {
  return basis == DetectionBasis::Z ? z_basis<Scalar>(qubit) : x_basis<Scalar>(qubit);
}

// Z: all three results identical. X: an even number of |-> among A, B, C.
inline bool detection_consistent(std::span<const DetectionOutcome> alice, std::span<const DetectionOutcome> bob,
                                 DetectionBasis basis, CheckStage stage) {
  const std::size_t alice_expected = stage == CheckStage::A ? 1 : 2;
  if (alice.size() != alice_expected || alice.size() + bob.size() != 3) {
    throw std::invalid_argument("detection_consistent: outcome counts do not match the check stage");
  }
  int ones = 0;
  for (auto group : {alice, bob}) {
    for (const auto& o : group) {
      if (o.basis != basis) throw std::invalid_argument("detection_consistent: mixed-basis outcomes");
      if (o.bit != 0 && o.bit != 1) throw std::invalid_argument("detection_consistent: outcome bit must be 0 or 1");
      ones += o.bit;
    }
  }
  if (basis == DetectionBasis::Z) return ones == 0 || ones == 3;
  return ones % 2 == 0;
}

struct DetectionCheck {
  std::vector<DetectionOutcome> alice;
  std::vector<DetectionOutcome> bob;
  bool consistent;
};

// One eavesdropping check on a triplet register (qubits 0..2 are A, B, C):
// Alice measures her particles in `basis`, then Bob measures the rest.
template <typename Scalar>
DetectionCheck check_triplet(const StateVector<Scalar>& triplet, CheckStage stage, DetectionBasis basis, Rng& rng) {
  const int alice_count = stage == CheckStage::A ? 1 : 2;
  DetectionCheck check{{}, {}, false};
  StateVector<Scalar> state = triplet;
  for (int q = 0; q < 3; ++q) {
    auto record = measure(state, detection_basis<Scalar>(basis, q), rng);
    const DetectionOutcome o{basis, static_cast<int>(record.outcome_index)};
    (q < alice_count ? check.alice : check.bob).push_back(o);
    state = std::move(record.post_state);
  }
  check.consistent = detection_consistent(check.alice, check.bob, basis, stage);
  return check;
}

}  // namespace ghz_stego
