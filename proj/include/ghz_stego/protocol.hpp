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

// The steganographic QSDC round: preparation, two-stage transmission with
// eavesdropping checks, cover dense coding, hidden-block embedding at a
// position m, and Bob's decoding.
//
// Positions are 0-based indices into the sequence of triplets that survive
// both detection stages. A hidden block at m uses triplets m-1, m and the
// auxiliary m+1, so 1 <= m <= L-2.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz_stego/adversary.hpp"
#include "ghz_stego/ghz_coding.hpp"
#include "ghz_stego/rng.hpp"
#include "ghz_stego/statevec.hpp"
#include "ghz_stego/swapping.hpp"

namespace ghz_stego {

class NoValidPosition : public std::runtime_error {
 public:
  NoValidPosition() : std::runtime_error("no cover position satisfies the consistency condition") {}
};

enum class Owner { Bob, InTransit, Alice };
enum class Actor { Alice, Bob, Eve };
enum class TripletStatus { Intact, ConsumedByDetection, Measured };

std::string_view to_string(Owner owner);
std::string_view to_string(Actor actor);

struct CustodyEvent {
  std::size_t triplet;
  int particle;  // 0 = A, 1 = B, 2 = C
  Owner from;
  Owner to;
};

struct MeasurementEvent {
  std::size_t triplet;
  int particle;
  Actor actor;
};

struct Triplet {
  StateVectord state;
  std::array<Owner, 3> owner{Owner::Bob, Owner::Bob, Owner::Bob};
  std::array<bool, 3> measured{false, false, false};
  TripletStatus status = TripletStatus::Intact;
  std::optional<GhzCode> encoded;  // Alice's last dense-coding word
  bool auxiliary = false;
};

// G_A, G_B, G_C as per-triplet registers with custody tags and an audit log.
class TripletStore {
 public:
  explicit TripletStore(std::size_t n);

  std::size_t size() const { return triplets_.size(); }
  const Triplet& at(std::size_t id) const { return triplets_.at(id); }
  Triplet& at(std::size_t id) { return triplets_.at(id); }

  // Ids of intact triplets, in order; position p of a cover maps to intact()[p].
  std::vector<std::size_t> intact() const;

  // C particles never leave Bob.
  void transfer(std::size_t id, int particle, Owner to);
  // Honest parties measure a particle at most once, and only while holding it.
  void record_measurement(std::size_t id, int particle, Actor actor);
  void record_interception(std::size_t id, int particle) { eve_log_.push_back({id, particle, Actor::Eve}); }

  bool stage_done(CheckStage stage) const { return stage == CheckStage::A ? stage_a_done_ : stage_b_done_; }
  void mark_stage_done(CheckStage stage) { (stage == CheckStage::A ? stage_a_done_ : stage_b_done_) = true; }

  const std::vector<CustodyEvent>& custody_log() const { return custody_log_; }
  const std::vector<MeasurementEvent>& measurement_log() const { return measurement_log_; }
  const std::vector<MeasurementEvent>& interception_log() const { return eve_log_; }

  // True iff no C particle ever moved and only Bob measured C particles.
  bool c_particles_local() const;

 private:
  std::vector<Triplet> triplets_;
  std::vector<CustodyEvent> custody_log_;
  std::vector<MeasurementEvent> measurement_log_;
  std::vector<MeasurementEvent> eve_log_;
  bool stage_a_done_ = false;
  bool stage_b_done_ = false;
};

struct EveConfig {
  EveStrategy strategy;
  bool stage_a = true;
  bool stage_b = false;
};

struct ProtocolConfig {
  std::size_t n = 1024;
  double detect_fraction = 0.25;
  std::uint64_t seed = 1;
  GhzCode secret;
  PairSelector selector;
  bool embed = true;
  std::optional<EveConfig> eve;
  double abort_threshold = 0.0;
  std::optional<std::vector<GhzCode>> cover;  // length must equal surviving_count()
  int max_cover_attempts = 8;

  // Throws std::invalid_argument.
  void validate() const;
};

// Sample size drawn from `available` triplets at one detection stage.
std::size_t detection_sample_size(std::size_t available, double fraction);
// Triplets left after both detection stages.
std::size_t surviving_count(std::size_t n, double fraction);

struct DetectionReport {
  CheckStage stage;
  std::size_t transmitted = 0;
  std::size_t intercepted = 0;
  std::size_t samples = 0;
  std::size_t z_checks = 0;
  std::size_t x_checks = 0;
  std::size_t mismatches = 0;
  double error_rate = 0.0;
  double threshold = 0.0;
  bool aborted = false;
};

using CoverSequence = std::vector<GhzCode>;

struct HiddenBlock {
  std::size_t m;
  GhzCode secret;
  PairSelector selector;
};

// Preparation: n triplets in ghz(1), every particle with Bob.
TripletStore s1_prepare(const ProtocolConfig& config);

// One transmission stage: Bob sends G_A (stage A) or G_B (stage B) through Eve, if
// present, to Alice; a detect_fraction sample is checked and consumed.
DetectionReport s2_transmit_and_detect(TripletStore& store, CheckStage stage, double detect_fraction,
                                       double abort_threshold, Rng& rng, const std::optional<EveConfig>& eve);

// Dense-code words[p] onto surviving triplet p.
void s3_encode_cover(TripletStore& store, const CoverSequence& words);

// Positions satisfying the consistency condition for (secret, selector).
std::vector<std::size_t> eligible_positions(const CoverSequence& words, GhzCode secret, PairSelector selector);

// Uniform choice among the eligible positions; throws NoValidPosition.
std::size_t choose_m(const CoverSequence& words, GhzCode secret, PairSelector selector, Rng& rng);

// Triplet m+1 is re-encoded to copy words[m-1] and becomes auxiliary.
void s4_hide(TripletStore& store, const CoverSequence& words, std::size_t m);

// Alice returns G'_A and G'_B.
void return_to_bob(TripletStore& store);

// Ideal authenticated classical channel carrying m.
struct SideChannel {
  std::optional<std::size_t> m;
  std::size_t cost_bits = 0;  // ceil(log2 L)
};

SideChannel send_position(std::optional<std::size_t> m, std::size_t cover_length);

struct DecodedRound {
  std::optional<GhzCode> secret;
  std::optional<PairSelector> selector;
  std::optional<GhzCode> info_at_m;
  std::optional<BellTriple> swap_outcome;
  // Bob's reading per position; position m holds info_at_m and m+1 is empty.
  std::vector<std::optional<GhzCode>> cover_words;
};

// Bob decodes: GHZ measurement at m-1, swap of (m, m+1), GHZ measurement elsewhere.
DecodedRound s5_decode(TripletStore& store, const SideChannel& channel, const DecodeTable& table, Rng& rng);

enum class RoundStatus { Completed, DetectionAbort, NoValidPosition };
std::string_view to_string(RoundStatus status);

struct BitAccounting {
  std::size_t cover_bits = 0;
  std::size_t covert_bits = 0;
  std::size_t detection_consumed = 0;
  std::size_t auxiliary_consumed = 0;
  std::size_t side_channel_bits = 0;
};

struct RoundReport {
  ProtocolConfig config;
  RoundStatus status = RoundStatus::Completed;
  std::optional<CheckStage> abort_stage;
  std::vector<DetectionReport> stages;
  std::size_t survivors = 0;
  int cover_attempts = 0;
  std::size_t eligible_count = 0;
  std::optional<std::size_t> m;
  std::optional<GhzCode> decoded_secret;
  std::optional<PairSelector> decoded_selector;
  std::optional<GhzCode> info_at_m;
  std::optional<BellTriple> swap_outcome;
  CoverSequence alice_cover;
  std::vector<std::optional<GhzCode>> bob_cover;
  std::size_t cover_errors = 0;  // decoded positions where Bob disagrees with Alice
  BitAccounting bits;
  bool c_particles_local = true;

  bool hidden_block_decoded() const;
};

// Full round; deterministic given config.seed.
RoundReport run_round(const ProtocolConfig& config, const DecodeTable& table);
RoundReport run_round(const ProtocolConfig& config);

}  // namespace ghz_stego
