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

#include "ghz_stego/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ghz_stego {

EveStrategy EveStrategy::entangle_measure(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12) {
    throw std::invalid_argument("EveStrategy: probe needs alpha^2 + beta^2 = 1");
  }
  return EveStrategy(EveKind::EntangleMeasure, alpha, beta);
}

EveStrategy EveStrategy::entangle_measure_beta2(double beta2) {
  if (!(beta2 >= 0.0 && beta2 <= 1.0)) throw std::invalid_argument("EveStrategy: beta^2 must be in [0, 1]");
  return entangle_measure(std::sqrt(1.0 - beta2), std::sqrt(beta2));
}

std::string EveStrategy::name() const {
  switch (kind_) {
    case EveKind::MeasureResendZ: return "measure-resend-z";
    case EveKind::MeasureResendX: return "measure-resend-x";
    case EveKind::MeasureResendRandom: return "measure-resend-random";
    case EveKind::EntangleMeasure: {
      std::ostringstream out;
      out.precision(12);
      out << "entangle-measure(beta2=" << beta_ * beta_ << ")";
      return out.str();
    }
  }
  return "unknown";
}

OperatorX<double> probe_unitary(double alpha, double beta) {
  // Columns are images of |s,e> at local index s + 2e.
  OperatorX<double> u = OperatorX<double>::Zero(4, 4);
  u(0, 0) = alpha;  // |0,0> -> alpha|0,0> + beta|1,1>
  u(3, 0) = beta;
  u(2, 1) = -beta;  // |1,0> -> -beta|0,1> + alpha|1,0>
  u(1, 1) = alpha;
  u(2, 2) = alpha;  // |0,1> -> alpha|0,1> + beta|1,0>
  u(1, 2) = beta;
  u(0, 3) = -beta;  // |1,1> -> -beta|0,0> + alpha|1,1>
  u(3, 3) = alpha;
  return u;
}

namespace {

StateVectord attach_probe(const StateVectord& state, int qubit, const EveStrategy& strategy) {
  const auto with_ancilla = tensor(state, StateVectord::basis_state(1, 0));
  const int qubits[] = {qubit, state.num_qubits()};
  return apply_unitary(with_ancilla, std::span<const int>(qubits), probe_unitary(strategy.alpha(), strategy.beta()));
}

DetectionBasis eve_basis(EveKind kind) { return kind == EveKind::MeasureResendX ? DetectionBasis::X : DetectionBasis::Z; }

}  // namespace

InterceptResult intercept(const StateVectord& state, int qubit, const EveStrategy& strategy, Rng& rng) {
  if (qubit < 0 || qubit >= state.num_qubits()) throw std::out_of_range("intercept: qubit out of range");
  if (strategy.kind() == EveKind::EntangleMeasure) {
    const auto probed = attach_probe(state, qubit, strategy);
    const int ancilla = state.num_qubits();
    auto readout = measure(probed, z_basis<double>(ancilla), rng);
    const int bit = static_cast<int>(readout.outcome_index);
    return {drop_qubit(readout.post_state, ancilla, bit), {strategy.kind(), std::nullopt, bit}};
  }
  DetectionBasis basis = eve_basis(strategy.kind());
  if (strategy.kind() == EveKind::MeasureResendRandom) basis = rng.coin() ? DetectionBasis::X : DetectionBasis::Z;
  auto record = measure(state, detection_basis<double>(basis, qubit), rng);
  return {std::move(record.post_state), {strategy.kind(), basis, static_cast<int>(record.outcome_index)}};
}

std::vector<std::pair<double, StateVectord>> intercept_branches(const StateVectord& state, int qubit,
                                                                const EveStrategy& strategy) {
  std::vector<std::pair<double, StateVectord>> branches;
  if (strategy.kind() == EveKind::EntangleMeasure) {
    const auto probed = attach_probe(state, qubit, strategy);
    const int ancilla = state.num_qubits();
    const auto basis = z_basis<double>(ancilla);
    for (std::size_t bit = 0; bit < 2; ++bit) {
      if (auto r = project(probed, basis, bit)) {
        branches.emplace_back(r->probability, drop_qubit(r->post_state, ancilla, static_cast<int>(bit)));
      }
    }
    return branches;
  }
  std::vector<std::pair<double, DetectionBasis>> bases;
  if (strategy.kind() == EveKind::MeasureResendRandom) {
    bases = {{0.5, DetectionBasis::Z}, {0.5, DetectionBasis::X}};
  } else {
    bases = {{1.0, eve_basis(strategy.kind())}};
  }
  for (const auto& [weight, basis] : bases) {
    const auto b = detection_basis<double>(basis, qubit);
    for (std::size_t bit = 0; bit < 2; ++bit) {
      if (auto r = project(state, b, bit)) branches.emplace_back(weight * r->probability, r->post_state);
    }
  }
  return branches;
}

double theoretical_error(const EveStrategy& strategy, CheckStage) {
  switch (strategy.kind()) {
    case EveKind::MeasureResendZ: return 0.25;
    case EveKind::MeasureResendX: return 0.375;
    case EveKind::MeasureResendRandom: return 0.5 * (0.25 + 0.375);
    case EveKind::EntangleMeasure: return strategy.beta() * strategy.beta();
  }
  return 0.0;
}

double exact_error(const EveStrategy& strategy, CheckStage stage, DetectionBasis basis) {
  const int target = stage == CheckStage::A ? 0 : 1;
  const auto check = product_basis(product_basis(detection_basis<double>(basis, 0), detection_basis<double>(basis, 1)),
                                   detection_basis<double>(basis, 2));
  const std::size_t alice_count = stage == CheckStage::A ? 1 : 2;
  double error = 0.0;
  for (const auto& [weight, post] : intercept_branches(ghz_state<double>(GhzLabel(1)), target, strategy)) {
    for (const auto& o : outcome_distribution(post, check)) {
      std::vector<DetectionOutcome> alice, bob;
      for (std::size_t q = 0; q < 3; ++q) {
        const DetectionOutcome d{basis, static_cast<int>((o.outcome_index >> q) & 1U)};
        (q < alice_count ? alice : bob).push_back(d);
      }
      if (!detection_consistent(alice, bob, basis, stage)) error += weight * o.probability;
    }
  }
  return error;
}

double exact_error(const EveStrategy& strategy, CheckStage stage) {
  return 0.5 * (exact_error(strategy, stage, DetectionBasis::Z) + exact_error(strategy, stage, DetectionBasis::X));
}

bool AttackStats::within(double expected, double sigmas) const {
  const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  return std::abs(empirical_rate - expected) <= sigmas * se;
}

AttackStats run_attack_experiment(const EveStrategy& strategy, CheckStage stage, std::size_t trials,
                                  std::uint64_t seed) {
  if (trials < 10000) throw std::invalid_argument("run_attack_experiment: need at least 10^4 trials");
  Rng rng(seed);
  const int target = stage == CheckStage::A ? 0 : 1;
  const auto fresh = ghz_state<double>(GhzLabel(1));
  AttackStats stats{strategy.name(), stage, seed, trials, 0, 0, 0, 0, 0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t t = 0; t < trials; ++t) {
    auto attacked = intercept(fresh, target, strategy, rng);
    const DetectionBasis basis = rng.coin() ? DetectionBasis::X : DetectionBasis::Z;
    const bool ok = check_triplet(attacked.state, stage, basis, rng).consistent;
    if (basis == DetectionBasis::Z) {
      ++stats.z_checks;
      if (!ok) ++stats.z_mismatches;
    } else {
      ++stats.x_checks;
      if (!ok) ++stats.x_mismatches;
    }
    if (!ok) ++stats.mismatches;
  }
  stats.empirical_rate = static_cast<double>(stats.mismatches) / static_cast<double>(trials);
  stats.theoretical_rate = theoretical_error(strategy, stage);
  stats.exact_rate = exact_error(strategy, stage);
  stats.std_error = std::sqrt(stats.theoretical_rate * (1.0 - stats.theoretical_rate) / static_cast<double>(trials));
  return stats;
}

LeakAnalysis leak_m_attack(BellLabel a_pair, BellLabel b_pair, const DecodeTable& table) {
  LeakAnalysis leak{a_pair, b_pair, {}, {}};
  for (const auto& c : BellLabel::all()) {
    const GhzCode code = decode_secret({a_pair, b_pair, c}, table);
    leak.posterior[code.bits()] += 0.25;
  }
  for (unsigned s = 0; s < 8; ++s) {
    if (leak.posterior[s] > 0.0) leak.consistent_secrets.emplace_back(s);
  }
  return leak;
}

LeakAnalysis leak_m_attack(const HiddenChannelView& transcript, const DecodeTable& table) {
  return leak_m_attack(transcript.swap_outcome.a, transcript.swap_outcome.b, table);
}

}  // namespace ghz_stego
