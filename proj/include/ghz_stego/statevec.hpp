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

// Exact dense state-vector engine for registers of up to eight qubits.
//
// Convention: qubit q is bit q of the amplitude index, so in a ket string
// such as "110" the first character is qubit 0. tensor(a, b) places a's
// qubits at the low indices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghz_stego/rng.hpp"

namespace ghz_stego {

inline constexpr int kMaxQubits = 8;

template <typename Scalar>
constexpr Scalar norm_tolerance() {
  if constexpr (sizeof(Scalar) >= sizeof(double)) {
    return Scalar(1e-12);
  } else {
    return Scalar(1e-5);
  }
}

template <typename Scalar>
using Amplitude = std::complex<Scalar>;

template <typename Scalar>
using Operator2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
using OperatorX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

// Index of a computational-basis ket written with qubit 0 first.
inline std::size_t ket_index(std::string_view ket) {
  if (ket.empty() || ket.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("ket_index: bad ket length");
  }
  std::size_t index = 0;
  for (std::size_t q = 0; q < ket.size(); ++q) {
    if (ket[q] == '1') {
      index |= std::size_t{1} << q;
    } else if (ket[q] != '0') {
      throw std::invalid_argument("ket_index: ket must contain only 0/1");
    }
  }
  return index;
}

inline std::string ket_string(std::size_t index, int num_qubits) {
  std::string ket(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((index >> q) & 1U) ket[static_cast<std::size_t>(q)] = '1';
  }
  return ket;
}

template <typename Scalar = double>
class StateVector {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  // Validates length, finiteness and normalization.
  StateVector(int num_qubits, Amplitudes amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
      throw std::invalid_argument("StateVector: qubit count must be in 1..8");
    }
    if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << num_qubits_)) {
      throw std::invalid_argument("StateVector: amplitude count must be 2^num_qubits");
    }
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (!std::isfinite(amps_[i].real()) || !std::isfinite(amps_[i].imag())) {
        throw std::invalid_argument("StateVector: non-finite amplitude");
      }
    }
    if (std::abs(amps_.squaredNorm() - Scalar(1)) > norm_tolerance<Scalar>()) {
      throw std::invalid_argument("StateVector: state is not normalized");
    }
  }

  static StateVector basis_state(int num_qubits, std::size_t index) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw std::invalid_argument("StateVector: qubit count must be in 1..8");
    }
    Amplitudes amps = Amplitudes::Zero(Eigen::Index{1} << num_qubits);
    if (index >= static_cast<std::size_t>(amps.size())) {
      throw std::out_of_range("StateVector: basis index out of range");
    }
    amps[static_cast<Eigen::Index>(index)] = Complex(1);
    return StateVector(num_qubits, std::move(amps));
  }

  // Builds a state from (ket, amplitude) terms; all kets must have equal length.
  static StateVector from_kets(std::initializer_list<std::pair<std::string_view, Complex>> terms) {
    if (terms.size() == 0) throw std::invalid_argument("from_kets: no terms");
    const int n = static_cast<int>(terms.begin()->first.size());
    Amplitudes amps = Amplitudes::Zero(Eigen::Index{1} << n);
    for (const auto& [ket, amp] : terms) {
      if (static_cast<int>(ket.size()) != n) throw std::invalid_argument("from_kets: ragged kets");
      amps[static_cast<Eigen::Index>(ket_index(ket))] += amp;
    }
    return StateVector(n, std::move(amps));
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
  const Amplitudes& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
  Complex amplitude(std::string_view ket) const {
    if (static_cast<int>(ket.size()) != num_qubits_) throw std::invalid_argument("amplitude: ket length");
    return amplitude(ket_index(ket));
  }
  Scalar norm_squared() const { return amps_.squaredNorm(); }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.num_qubits_ == b.num_qubits_ && a.amps_ == b.amps_;
  }

 private:
  int num_qubits_;
  Amplitudes amps_;
};

using StateVectord = StateVector<double>;

template <typename Scalar>
std::complex<Scalar> inner_product(const StateVector<Scalar>& bra, const StateVector<Scalar>& ket) {
  if (bra.num_qubits() != ket.num_qubits()) throw std::invalid_argument("inner_product: dimension mismatch");
  return bra.amplitudes().dot(ket.amplitudes());
}

// Kronecker product; a's qubits occupy the low indices of the result.
template <typename Scalar>
StateVector<Scalar> tensor(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > kMaxQubits) throw std::length_error("tensor: more than 8 qubits");
  using Amps = typename StateVector<Scalar>::Amplitudes;
  const Eigen::Index da = static_cast<Eigen::Index>(a.dimension());
  const Eigen::Index db = static_cast<Eigen::Index>(b.dimension());
  Amps out(da * db);
  for (Eigen::Index j = 0; j < db; ++j) {
    out.segment(j * da, da) = b.amplitudes()[j] * a.amplitudes();
  }
  // Renormalize away the O(eps) drift of the product of two unit vectors.
  out /= out.norm();
  return StateVector<Scalar>(n, std::move(out));
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& op, typename Derived::RealScalar tol) {
  if (op.rows() != op.cols()) return false;
  using Plain = typename Derived::PlainObject;
  return ((op.adjoint() * op) - Plain::Identity(op.rows(), op.cols())).cwiseAbs().maxCoeff() <= tol;
}

namespace detail {

inline std::size_t subset_mask(std::span<const int> qubits) {
  std::size_t mask = 0;
  for (int q : qubits) mask |= std::size_t{1} << q;
  return mask;
}

// Gathers the subset bits of a full index into a compact local index.
inline std::size_t local_index(std::size_t full, std::span<const int> qubits) {
  std::size_t local = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    local |= ((full >> qubits[j]) & 1U) << j;
  }
  return local;
}

inline std::size_t scatter_index(std::size_t rest, std::size_t local, std::span<const int> qubits) {
  std::size_t full = rest;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    full |= ((local >> j) & 1U) << qubits[j];
  }
  return full;
}

inline void check_subset(std::span<const int> qubits, int num_qubits) {
  if (qubits.empty()) throw std::invalid_argument("qubit subset is empty");
  std::size_t seen = 0;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index out of range");
    if ((seen >> q) & 1U) throw std::invalid_argument("qubit subset has duplicates");
    seen |= std::size_t{1} << q;
  }
}

}  // namespace detail

// Applies a 2^k x 2^k unitary to the ordered qubit subset; qubits[0] is the
// operator's least significant local bit.
template <typename Scalar>
StateVector<Scalar> apply_unitary(const StateVector<Scalar>& state, std::span<const int> qubits,
                                  const OperatorX<Scalar>& op) {
  detail::check_subset(qubits, state.num_qubits());
  const std::size_t local_dim = std::size_t{1} << qubits.size();
  if (static_cast<std::size_t>(op.rows()) != local_dim || static_cast<std::size_t>(op.cols()) != local_dim) {
    throw std::invalid_argument("apply_unitary: operator size does not match subset");
  }
  if (!is_unitary(op, norm_tolerance<Scalar>())) throw std::invalid_argument("apply_unitary: operator is not unitary");

  using Amps = typename StateVector<Scalar>::Amplitudes;
  const std::size_t mask = detail::subset_mask(qubits);
  Amps out = state.amplitudes();
  Amps local(static_cast<Eigen::Index>(local_dim));
  for (std::size_t rest = 0; rest < state.dimension(); ++rest) {
    if (rest & mask) continue;
    for (std::size_t l = 0; l < local_dim; ++l) {
      local[static_cast<Eigen::Index>(l)] = state.amplitude(detail::scatter_index(rest, l, qubits));
    }
    const Amps mixed = op * local;
    for (std::size_t l = 0; l < local_dim; ++l) {
      out[static_cast<Eigen::Index>(detail::scatter_index(rest, l, qubits))] = mixed[static_cast<Eigen::Index>(l)];
    }
  }
  out /= out.norm();
  return StateVector<Scalar>(state.num_qubits(), std::move(out));
}

template <typename Scalar>
StateVector<Scalar> apply_single_qubit(const StateVector<Scalar>& state, int qubit, const Operator2<Scalar>& op) {
  const int qubits[] = {qubit};
  return apply_unitary(state, std::span<const int>(qubits), OperatorX<Scalar>(op));
}

// A complete orthonormal basis over an ordered subset of a register's qubits.
template <typename Scalar = double>
class OrthonormalBasis {
 public:
  OrthonormalBasis(std::vector<int> subset, std::vector<StateVector<Scalar>> vectors)
      : subset_(std::move(subset)), vectors_(std::move(vectors)) {
    detail::check_subset(subset_, kMaxQubits);
    const int k = static_cast<int>(subset_.size());
    if (vectors_.size() != (std::size_t{1} << k)) {
      throw std::invalid_argument("OrthonormalBasis: need 2^k vectors");
    }
    for (const auto& v : vectors_) {
      if (v.num_qubits() != k) throw std::invalid_argument("OrthonormalBasis: vector size mismatch");
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      for (std::size_t j = i; j < vectors_.size(); ++j) {
        const Scalar expected = i == j ? Scalar(1) : Scalar(0);
        if (std::abs(inner_product(vectors_[i], vectors_[j]) - std::complex<Scalar>(expected)) >
            norm_tolerance<Scalar>()) {
          throw std::invalid_argument("OrthonormalBasis: vectors are not orthonormal");
        }
      }
    }
  }

  const std::vector<int>& subset() const { return subset_; }
  const std::vector<StateVector<Scalar>>& vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }
  const StateVector<Scalar>& operator[](std::size_t i) const { return vectors_.at(i); }

  // Same vectors, relocated onto another subset of equal size.
  OrthonormalBasis on(std::vector<int> subset) const { return OrthonormalBasis(std::move(subset), vectors_); }

 private:
  std::vector<int> subset_;
  std::vector<StateVector<Scalar>> vectors_;
};

template <typename Scalar = double>
OrthonormalBasis<Scalar> z_basis(int qubit) {
  return OrthonormalBasis<Scalar>({qubit}, {StateVector<Scalar>::basis_state(1, 0), StateVector<Scalar>::basis_state(1, 1)});
}

// Outcome 0 is |+>, outcome 1 is |->.
template <typename Scalar = double>
OrthonormalBasis<Scalar> x_basis(int qubit) {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  using S = StateVector<Scalar>;
  return OrthonormalBasis<Scalar>({qubit}, {S::from_kets({{"0", h}, {"1", h}}), S::from_kets({{"0", h}, {"1", -h}})});
}

// Outcome index i1 + |first| * i2, matching tensor().
template <typename Scalar>
OrthonormalBasis<Scalar> product_basis(const OrthonormalBasis<Scalar>& first, const OrthonormalBasis<Scalar>& second) {
  std::vector<int> subset = first.subset();
  subset.insert(subset.end(), second.subset().begin(), second.subset().end());
  std::vector<StateVector<Scalar>> vectors;
  vectors.reserve(first.size() * second.size());
  for (const auto& v2 : second.vectors()) {
    for (const auto& v1 : first.vectors()) vectors.push_back(tensor(v1, v2));
  }
  return OrthonormalBasis<Scalar>(std::move(subset), std::move(vectors));
}

template <typename Scalar = double>
struct OutcomeProbability {
  std::size_t outcome_index;
  Scalar probability;
};

template <typename Scalar = double>
struct MeasurementRecord {
  std::size_t outcome_index;
  Scalar probability;
  StateVector<Scalar> post_state;
};

namespace detail {

// <v|_subset psi, indexed by full indices with the subset bits cleared.
template <typename Scalar>
typename StateVector<Scalar>::Amplitudes contract(const StateVector<Scalar>& state, std::span<const int> qubits,
                                                  const StateVector<Scalar>& v) {
  using Amps = typename StateVector<Scalar>::Amplitudes;
  const std::size_t mask = subset_mask(qubits);
  Amps c = Amps::Zero(static_cast<Eigen::Index>(state.dimension()));
  for (std::size_t x = 0; x < state.dimension(); ++x) {
    c[static_cast<Eigen::Index>(x & ~mask)] += std::conj(v.amplitude(local_index(x, qubits))) * state.amplitude(x);
  }
  return c;
}

template <typename Scalar>
void check_basis_fits(const StateVector<Scalar>& state, const OrthonormalBasis<Scalar>& basis) {
  detail::check_subset(basis.subset(), state.num_qubits());
}

}  // namespace detail

template <typename Scalar>
std::vector<OutcomeProbability<Scalar>> outcome_distribution(const StateVector<Scalar>& state,
                                                             const OrthonormalBasis<Scalar>& basis) {
  detail::check_basis_fits(state, basis);
  std::vector<OutcomeProbability<Scalar>> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.push_back({i, detail::contract(state, basis.subset(), basis[i]).squaredNorm()});
  }
  return out;
}

// Probabilities at or below this are treated as impossible outcomes.
template <typename Scalar>
constexpr Scalar kImpossible = Scalar(1e-14);

// Projection onto one basis outcome; nullopt when the outcome is impossible.
template <typename Scalar>
std::optional<MeasurementRecord<Scalar>> project(const StateVector<Scalar>& state, const OrthonormalBasis<Scalar>& basis,
                                                 std::size_t outcome) {
  detail::check_basis_fits(state, basis);
  const auto& v = basis[outcome];
  const auto c = detail::contract(state, basis.subset(), v);
  const Scalar p = c.squaredNorm();
  if (p <= kImpossible<Scalar>) return std::nullopt;
  using Amps = typename StateVector<Scalar>::Amplitudes;
  Amps post(static_cast<Eigen::Index>(state.dimension()));
  const std::size_t mask = detail::subset_mask(basis.subset());
  for (std::size_t x = 0; x < state.dimension(); ++x) {
    post[static_cast<Eigen::Index>(x)] =
        v.amplitude(detail::local_index(x, basis.subset())) * c[static_cast<Eigen::Index>(x & ~mask)];
  }
  post /= post.norm();
  return MeasurementRecord<Scalar>{outcome, p, StateVector<Scalar>(state.num_qubits(), std::move(post))};
}

// Projective measurement with Born-rule sampling; the post-state keeps every
// qubit and is renormalized.
template <typename Scalar>
MeasurementRecord<Scalar> measure(const StateVector<Scalar>& state, const OrthonormalBasis<Scalar>& basis, Rng& rng) {
  const auto dist = outcome_distribution(state, basis);
  Scalar total = 0;
  for (const auto& o : dist) {
    if (o.probability > kImpossible<Scalar>) total += o.probability;
  }
  const Scalar u = static_cast<Scalar>(rng.uniform01()) * total;
  std::size_t chosen = dist.size();
  Scalar cumulative = 0;
  for (const auto& o : dist) {
    if (o.probability <= kImpossible<Scalar>) continue;
    chosen = o.outcome_index;
    cumulative += o.probability;
    if (u < cumulative) break;
  }
  if (chosen == dist.size()) throw std::logic_error("measure: no outcome with nonzero probability");
  return *project(state, basis, chosen);
}

// Removes a qubit known to be in the computational state |value>. Throws if
// the qubit is still entangled with the rest of the register.
template <typename Scalar>
StateVector<Scalar> drop_qubit(const StateVector<Scalar>& state, int qubit, int value) {
  if (qubit < 0 || qubit >= state.num_qubits()) throw std::out_of_range("drop_qubit: qubit out of range");
  if (state.num_qubits() == 1) throw std::invalid_argument("drop_qubit: cannot empty a register");
  using Amps = typename StateVector<Scalar>::Amplitudes;
  const std::size_t reduced_dim = state.dimension() / 2;
  Amps kept(static_cast<Eigen::Index>(reduced_dim));
  const std::size_t low_mask = (std::size_t{1} << qubit) - 1;
  for (std::size_t r = 0; r < reduced_dim; ++r) {
    const std::size_t full = (r & low_mask) | ((r & ~low_mask) << 1) | (static_cast<std::size_t>(value) << qubit);
    kept[static_cast<Eigen::Index>(r)] = state.amplitude(full);
  }
  if (std::abs(kept.squaredNorm() - Scalar(1)) > Scalar(1e-9)) {
    throw std::invalid_argument("drop_qubit: qubit is not in the stated basis state");
  }
  kept /= kept.norm();
  return StateVector<Scalar>(state.num_qubits() - 1, std::move(kept));
}

// True iff some unit-modulus c gives ||a - c b|| <= tol.
template <typename Scalar>
bool equal_up_to_global_phase(const StateVector<Scalar>& a, const StateVector<Scalar>& b, Scalar tol = Scalar(1e-9)) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
  const std::complex<Scalar> overlap = inner_product(b, a);
  const Scalar mag = std::abs(overlap);
  const std::complex<Scalar> phase = mag > Scalar(0) ? overlap / mag : std::complex<Scalar>(1);
  return (a.amplitudes() - phase * b.amplitudes()).norm() <= tol;
}

}  // namespace ghz_stego
