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

// Eavesdropper models for the Bob -> Alice transmissions and the Monte Carlo
// harness that measures the detection error they induce.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghz_stego/ghz_coding.hpp"
#include "ghz_stego/rng.hpp"
#include "ghz_stego/statevec.hpp"
#include "ghz_stego/swapping.hpp"

namespace ghz_stego {

enum class EveKind { MeasureResendZ, MeasureResendX, MeasureResendRandom, EntangleMeasure };

class EveStrategy {
 public:
  static EveStrategy measure_resend_z() { return EveStrategy(EveKind::MeasureResendZ, 1.0, 0.0); }
  static EveStrategy measure_resend_x() { return EveStrategy(EveKind::MeasureResendX, 1.0, 0.0); }
  static EveStrategy measure_resend_random() { return EveStrategy(EveKind::MeasureResendRandom, 1.0, 0.0); }
  // Real probe amplitudes; alpha^2 + beta^2 must equal 1 within 1e-12.
  static EveStrategy entangle_measure(double alpha, double beta);
  // Probe with beta = sqrt(beta2), alpha = sqrt(1 - beta2).
  static EveStrategy entangle_measure_beta2(double beta2);

  EveKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::string name() const;

 private:
  EveStrategy(EveKind kind, double alpha, double beta) : kind_(kind), alpha_(alpha), beta_(beta) {}
  EveKind kind_;
  double alpha_;
  double beta_;
};

// Probe on (system, ancilla), local bit 0 = system:
//   |0>|0> -> alpha|0>|e00> + beta|1>|e01>,  |1>|0> -> beta|0>|e10> + alpha|1>|e11>
// with e00 = |0>, e01 = |1>, e10 = -|1>, e11 = |0>, completed to a 4x4 unitary.
OperatorX<double> probe_unitary(double alpha, double beta);

struct InterceptRecord {
  EveKind kind;
  std::optional<DetectionBasis> basis;  // measure-resend only
  int outcome;                          // Eve's measured bit, or her ancilla readout
};

struct InterceptResult {
  StateVectord state;
  InterceptRecord record;
};

// Eve acts on one in-transit qubit of `state`. Measure-resend collapses the
// register and forwards the eigenstate; entangle-and-measure couples a fresh
// ancilla through probe_unitary, reads the ancilla in Z and keeps the result.
InterceptResult intercept(const StateVectord& state, int qubit, const EveStrategy& strategy, Rng& rng);

// Analytic branches of intercept(): (probability, post-state) pairs.
std::vector<std::pair<double, StateVectord>> intercept_branches(const StateVectord& state, int qubit,
                                                                const EveStrategy& strategy);

// Error rates claimed for each strategy: 0.25, 0.375, their mean for the
// random-basis variant, and beta^2 for the probe.
double theoretical_error(const EveStrategy& strategy, CheckStage stage);

// Detection error rate computed exactly from the engine's outcome
// distributions, Alice's basis uniform over {Z, X}.
double exact_error(const EveStrategy& strategy, CheckStage stage);

// Same, conditioned on Alice's basis.
double exact_error(const EveStrategy& strategy, CheckStage stage, DetectionBasis basis);

struct AttackStats {
  std::string strategy;
  CheckStage stage;
  std::uint64_t seed;
  std::size_t trials;
  std::size_t mismatches;
  std::size_t z_checks;
  std::size_t z_mismatches;
  std::size_t x_checks;
  std::size_t x_mismatches;
  double empirical_rate;
  double theoretical_rate;
  double exact_rate;
  double std_error;  // binomial, at the theoretical rate

  // |empirical - expected| within `sigmas` binomial standard errors at `expected`.
  bool within(double expected, double sigmas) const;
};

// Independent detection samples on fresh GHZ triplets under attack.
// Requires trials >= 10^4.
AttackStats run_attack_experiment(const EveStrategy& strategy, CheckStage stage, std::size_t trials,
                                  std::uint64_t seed);

// What Eve learns from the hidden block when granted m and the A/B Bell
// outcomes but not the C outcome.
struct LeakAnalysis {
  BellLabel a_pair;
  BellLabel b_pair;
  std::vector<GhzCode> consistent_secrets;  // ascending
  std::array<double, 8> posterior{};        // uniform prior over the C outcome
};

LeakAnalysis leak_m_attack(BellLabel a_pair, BellLabel b_pair, const DecodeTable& table);

// Position of the hidden block and Bob's swap outcome, as a transcript would
// record them.
struct HiddenChannelView {
  std::size_t m;
  BellTriple swap_outcome;
};

LeakAnalysis leak_m_attack(const HiddenChannelView& transcript, const DecodeTable& table);

}  // namespace ghz_stego
