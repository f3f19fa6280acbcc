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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ghz_stego/rng.hpp"
#include "ghz_stego/statevec.hpp"

using namespace ghz_stego;
using C = std::complex<double>;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

StateVectord random_state(int n, Rng& rng) {
  StateVectord::Amplitudes a(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = C(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  a /= a.norm();
  return StateVectord(n, a);
}

// Random unitary from the QR factorization of a random complex matrix.
OperatorX<double> random_unitary(int dim, Rng& rng) {
  OperatorX<double> m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = C(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  }
  Eigen::HouseholderQR<OperatorX<double>> qr(m);
  return qr.householderQ() * OperatorX<double>::Identity(dim, dim);
}

// Full-register matrix of a single-qubit gate on qubit q, built by Kronecker
// products (qubit 0 is the fastest-varying index).
OperatorX<double> lift(const Operator2<double>& g, int q, int n) {
  OperatorX<double> full = OperatorX<double>::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    const OperatorX<double> f = k == q ? OperatorX<double>(g) : OperatorX<double>::Identity(2, 2);
    OperatorX<double> next(full.rows() * 2, full.cols() * 2);
    for (int r = 0; r < full.rows(); ++r) {
      for (int c = 0; c < full.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = full(r, c) * f;
    }
    full = next;
  }
  return full;
}

Operator2<double> hadamard() {
  Operator2<double> h;
  h << kH, kH, kH, -kH;
  return h;
}

}  // namespace

TEST_CASE("ket strings list qubit 0 first") {
  CHECK(ket_index("100") == 1);
  CHECK(ket_index("001") == 4);
  CHECK(ket_string(6, 3) == "011");
  CHECK_THROWS_AS(ket_index("012"), std::invalid_argument);
  CHECK_THROWS_AS(ket_index(""), std::invalid_argument);
}

TEST_CASE("state construction validates size, finiteness and norm") {
  StateVectord::Amplitudes good(2);
  good << C(kH), C(0, kH);
  CHECK_NOTHROW(StateVectord(1, good));

  StateVectord::Amplitudes unnormalized(2);
  unnormalized << C(1), C(1);
  CHECK_THROWS_AS(StateVectord(1, unnormalized), std::invalid_argument);

  StateVectord::Amplitudes wrong_size(3);
  wrong_size << C(1), C(0), C(0);
  CHECK_THROWS_AS(StateVectord(1, wrong_size), std::invalid_argument);

  StateVectord::Amplitudes nan(2);
  nan << C(std::nan(""), 0), C(0);
  CHECK_THROWS_AS(StateVectord(1, nan), std::invalid_argument);

  CHECK_THROWS_AS(StateVectord::basis_state(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(StateVectord::basis_state(9, 0), std::invalid_argument);
  CHECK_THROWS_AS(StateVectord::basis_state(2, 4), std::out_of_range);
  CHECK(StateVectord::basis_state(8, 255).num_qubits() == 8);
}

TEST_CASE("tensor puts the first factor on the low qubits") {
  const auto zero = StateVectord::basis_state(1, 0);
  const auto one = StateVectord::basis_state(1, 1);
  const auto s = tensor(one, zero);
  CHECK(std::abs(s.amplitude("10") - C(1)) < 1e-15);
  const auto plus = StateVectord::from_kets({{"0", kH}, {"1", kH}});
  const auto t = tensor(plus, one);
  CHECK(std::abs(t.amplitude("01") - C(kH)) < 1e-15);
  CHECK(std::abs(t.amplitude("11") - C(kH)) < 1e-15);
  CHECK(std::abs(t.amplitude("10")) < 1e-15);

  const auto five = StateVectord::basis_state(5, 0);
  CHECK_THROWS_AS(tensor(five, StateVectord::basis_state(4, 0)), std::length_error);
}

TEST_CASE("unitarity check") {
  CHECK(is_unitary(hadamard(), 1e-12));
  Operator2<double> bad;
  bad << 1, 1, 0, 1;
  CHECK_FALSE(is_unitary(bad, 1e-12));
  const auto s = StateVectord::basis_state(1, 0);
  const int q[] = {0};
  CHECK_THROWS_AS(apply_unitary(s, std::span<const int>(q), OperatorX<double>(bad)), std::invalid_argument);
}

TEST_CASE("apply_unitary validates the qubit subset") {
  const auto s = StateVectord::basis_state(3, 0);
  const int dup[] = {1, 1};
  const int out_of_range[] = {0, 3};
  const OperatorX<double> id4 = OperatorX<double>::Identity(4, 4);
  CHECK_THROWS(apply_unitary(s, std::span<const int>(dup), id4));
  CHECK_THROWS(apply_unitary(s, std::span<const int>(out_of_range), id4));
  const int one[] = {0};
  CHECK_THROWS(apply_unitary(s, std::span<const int>(one), id4));
}

TEST_CASE("single-qubit gates agree with the Kronecker-product oracle") {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n) {
    for (int q = 0; q < n; ++q) {
      const auto psi = random_state(n, rng);
      const Operator2<double> g = random_unitary(2, rng);
      const auto got = apply_single_qubit(psi, q, g);
      const StateVectord::Amplitudes want = lift(g, q, n) * psi.amplitudes();
      CHECK((got.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("two-qubit gate on a non-adjacent reversed subset matches the oracle") {
  // CNOT with control = local bit 0. Applied on (3, 1) it flips qubit 1 when qubit 3 is set.
  OperatorX<double> cnot = OperatorX<double>::Zero(4, 4);
  cnot(0, 0) = 1;
  cnot(3, 1) = 1;
  cnot(2, 2) = 1;
  cnot(1, 3) = 1;
  const int qubits[] = {3, 1};
  for (std::size_t x = 0; x < 16; ++x) {
    const auto out = apply_unitary(StateVectord::basis_state(4, x), std::span<const int>(qubits), cnot);
    const std::size_t expected = ((x >> 3) & 1U) ? (x ^ 2U) : x;
    CHECK(std::abs(out.amplitude(expected) - C(1)) < 1e-15);
  }
}

TEST_CASE("norm preservation under random unitaries on random subsets") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_index(8));
    const int k = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(std::min(n, 3))));
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) std::swap(all[static_cast<std::size_t>(i)], all[rng.uniform_index(static_cast<std::size_t>(i + 1))]);
    std::vector<int> subset(all.begin(), all.begin() + k);
    const auto out = apply_unitary(random_state(n, rng), std::span<const int>(subset), random_unitary(1 << k, rng));
    CHECK(std::abs(out.norm_squared() - 1.0) < 1e-12);
  }
}

TEST_CASE("x basis has |+> as outcome 0") {
  const auto b = x_basis<double>(0);
  CHECK(std::abs(b[0].amplitude("0") - C(kH)) < 1e-15);
  CHECK(std::abs(b[0].amplitude("1") - C(kH)) < 1e-15);
  CHECK(std::abs(b[1].amplitude("1") - C(-kH)) < 1e-15);
}

TEST_CASE("orthonormal basis rejects bad inputs") {
  const auto zero = StateVectord::basis_state(1, 0);
  const auto plus = StateVectord::from_kets({{"0", kH}, {"1", kH}});
  CHECK_THROWS_AS(OrthonormalBasis<double>({0}, {zero, plus}), std::invalid_argument);
  CHECK_THROWS_AS(OrthonormalBasis<double>({0}, {zero}), std::invalid_argument);
  CHECK_THROWS_AS(OrthonormalBasis<double>({0, 0}, {zero, zero, zero, zero}), std::invalid_argument);
}

TEST_CASE("Born rule and completeness on random states and product bases") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random_state(4, rng);
    const auto basis = product_basis(x_basis<double>(2), z_basis<double>(0));
    const auto dist = outcome_distribution(psi, basis);
    double total = 0.0;
    for (const auto& o : dist) {
      // Oracle: <psi|P|psi> with P the projector lifted by explicit kets.
      const std::size_t i_x = o.outcome_index & 1U;
      const std::size_t i_z = (o.outcome_index >> 1) & 1U;
      double p = 0.0;
      for (std::size_t rest = 0; rest < 4; ++rest) {
        C amp = 0;
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
          const double coeff = i_x == 0 ? kH : (b2 == 0 ? kH : -kH);
          const std::size_t idx = i_z | ((rest & 1U) << 1) | (b2 << 2) | ((rest >> 1) << 3);
          amp += coeff * psi.amplitude(idx);
        }
        p += std::norm(amp);
      }
      CHECK(std::abs(o.probability - p) < 1e-12);
      total += o.probability;
      if (auto r = project(psi, basis, o.outcome_index)) {
        CHECK(std::abs(r->post_state.norm_squared() - 1.0) < 1e-12);
        CHECK(std::abs(r->probability - p) < 1e-12);
      }
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("projection onto an impossible outcome is empty") {
  const auto zero = StateVectord::basis_state(2, 0);
  CHECK_FALSE(project(zero, z_basis<double>(1), 1).has_value());
  CHECK(project(zero, z_basis<double>(1), 0).has_value());
}

TEST_CASE("sampling frequencies match the Born distribution within 5 sigma") {
  const auto psi = StateVectord::from_kets({{"00", C(0.5)}, {"10", C(0, 0.5)}, {"01", C(std::sqrt(0.3))},
                                            {"11", C(std::sqrt(0.2))}});
  const auto basis = product_basis(z_basis<double>(0), z_basis<double>(1));
  const auto dist = outcome_distribution(psi, basis);
  Rng rng(2024);
  const std::size_t trials = 100000;
  std::vector<std::size_t> counts(4, 0);
  for (std::size_t t = 0; t < trials; ++t) ++counts[measure(psi, basis, rng).outcome_index];
  for (const auto& o : dist) {
    const double se = std::sqrt(o.probability * (1 - o.probability) / trials);
    CHECK(std::abs(static_cast<double>(counts[o.outcome_index]) / trials - o.probability) <= 5 * se);
  }
}

TEST_CASE("measurement collapses to the basis vector") {
  const auto plus = StateVectord::from_kets({{"00", kH}, {"11", kH}});
  Rng rng(3);
  const auto r = measure(plus, z_basis<double>(0), rng);
  const std::size_t other = r.outcome_index == 0 ? 0 : 3;
  CHECK(std::abs(std::abs(r.post_state.amplitude(other)) - 1.0) < 1e-12);
  CHECK(std::abs(r.probability - 0.5) < 1e-12);
}

TEST_CASE("drop_qubit removes a definite qubit") {
  const auto s = tensor(StateVectord::from_kets({{"0", kH}, {"1", C(0, kH)}}), StateVectord::basis_state(1, 1));
  const auto reduced = drop_qubit(s, 1, 1);
  CHECK(reduced.num_qubits() == 1);
  CHECK(std::abs(reduced.amplitude("1") - C(0, kH)) < 1e-15);
  CHECK_THROWS(drop_qubit(s, 1, 0));
}

TEST_CASE("global phase equality") {
  const auto psi = StateVectord::from_kets({{"0", C(0.6)}, {"1", C(0, 0.8)}});
  const auto minus_psi = StateVectord(1, -psi.amplitudes());
  const auto i_psi = StateVectord(1, C(0, 1) * psi.amplitudes());
  CHECK(equal_up_to_global_phase(psi, minus_psi));
  CHECK(equal_up_to_global_phase(psi, i_psi));
  CHECK_FALSE(equal_up_to_global_phase(StateVectord::basis_state(1, 0), StateVectord::basis_state(1, 1)));

  Operator2<double> iy;
  iy << 0, 1, -1, 0;
  Operator2<double> x;
  x << 0, 1, 1, 0;
  const auto zero = StateVectord::basis_state(1, 0);
  CHECK(equal_up_to_global_phase(apply_single_qubit(zero, 0, iy), apply_single_qubit(zero, 0, x)));
}

TEST_CASE("inner product conjugates the bra") {
  const auto a = StateVectord::from_kets({{"0", C(0, kH)}, {"1", C(kH)}});
  const auto b = StateVectord::basis_state(1, 0);
  CHECK(std::abs(inner_product(a, b) - C(0, -kH)) < 1e-15);
  CHECK_THROWS_AS(inner_product(a, StateVectord::basis_state(2, 0)), std::invalid_argument);
}

TEST_CASE("single-precision instantiation") {
  using SF = StateVector<float>;
  const auto s = SF::basis_state(2, 1);
  Operator2<float> h;
  const float r = 1.0f / std::sqrt(2.0f);
  h << r, r, r, -r;
  const auto out = apply_single_qubit(s, 0, h);
  CHECK(std::abs(out.norm_squared() - 1.0f) < 1e-5f);
}
