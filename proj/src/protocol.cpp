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

#include "ghz_stego/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ghz_stego {

std::string_view to_string(Owner owner) {
  switch (owner) {
    case Owner::Bob: return "bob";
    case Owner::InTransit: return "in-transit";
    case Owner::Alice: return "alice";
  }
  return "?";
}

std::string_view to_string(Actor actor) {
  switch (actor) {
    case Actor::Alice: return "alice";
    case Actor::Bob: return "bob";
    case Actor::Eve: return "eve";
  }
  return "?";
}

std::string_view to_string(RoundStatus status) {
  switch (status) {
    case RoundStatus::Completed: return "completed";
    case RoundStatus::DetectionAbort: return "detection-abort";
    case RoundStatus::NoValidPosition: return "no-valid-position";
  }
  return "?";
}

TripletStore::TripletStore(std::size_t n) {
  const auto initial = ghz_state<double>(GhzLabel(1));
  const Triplet fresh{initial, {Owner::Bob, Owner::Bob, Owner::Bob}, {false, false, false}, TripletStatus::Intact,
                      std::nullopt, false};
  triplets_.assign(n, fresh);
}

std::vector<std::size_t> TripletStore::intact() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < triplets_.size(); ++i) {
    if (triplets_[i].status == TripletStatus::Intact) ids.push_back(i);
  }
  return ids;
}

void TripletStore::transfer(std::size_t id, int particle, Owner to) {
  Triplet& t = at(id);
  if (particle < 0 || particle > 2) throw std::out_of_range("transfer: particle index");
  if (particle == 2) throw std::logic_error("transfer: C particles stay with Bob");
  custody_log_.push_back({id, particle, t.owner[static_cast<std::size_t>(particle)], to});
  t.owner[static_cast<std::size_t>(particle)] = to;
}

void TripletStore::record_measurement(std::size_t id, int particle, Actor actor) {
  Triplet& t = at(id);
  const auto p = static_cast<std::size_t>(particle);
  if (t.measured.at(p)) throw std::logic_error("record_measurement: particle measured twice");
  const Owner holder = actor == Actor::Alice ? Owner::Alice : Owner::Bob;
  if (t.owner[p] != holder) throw std::logic_error("record_measurement: party does not hold the particle");
  t.measured[p] = true;
  measurement_log_.push_back({id, particle, actor});
}

bool TripletStore::c_particles_local() const {
  for (const auto& e : custody_log_) {
    if (e.particle == 2) return false;
  }
  for (const auto& e : measurement_log_) {
    if (e.particle == 2 && e.actor != Actor::Bob) return false;
  }
  for (const auto& e : eve_log_) {
    if (e.particle == 2) return false;
  }
  return true;
}

std::size_t detection_sample_size(std::size_t available, double fraction) {
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(available)));
  return std::clamp<std::size_t>(k, available == 0 ? 0 : 1, available);
}

std::size_t surviving_count(std::size_t n, double fraction) {
  const std::size_t after_a = n - detection_sample_size(n, fraction);
  return after_a - detection_sample_size(after_a, fraction);
}

void ProtocolConfig::validate() const {
  if (n < 16) throw std::invalid_argument("ProtocolConfig: n must be at least 16");
  if (!(detect_fraction > 0.0 && detect_fraction < 1.0)) {
    throw std::invalid_argument("ProtocolConfig: detect_fraction must be in (0, 1)");
  }
  const std::size_t survivors = surviving_count(n, detect_fraction);
  if (survivors < 3) throw std::invalid_argument("ProtocolConfig: detection leaves fewer than 3 triplets");
  if (!(abort_threshold >= 0.0 && abort_threshold <= 1.0)) {
    throw std::invalid_argument("ProtocolConfig: abort_threshold must be in [0, 1]");
  }
  if (max_cover_attempts < 1) throw std::invalid_argument("ProtocolConfig: max_cover_attempts must be positive");
  if (cover && cover->size() != survivors) {
    throw std::invalid_argument("ProtocolConfig: cover length must equal the surviving triplet count " +
                                std::to_string(survivors));
  }
}

TripletStore s1_prepare(const ProtocolConfig& config) {
  config.validate();
  return TripletStore(config.n);
}

DetectionReport s2_transmit_and_detect(TripletStore& store, CheckStage stage, double detect_fraction,
                                       double abort_threshold, Rng& rng, const std::optional<EveConfig>& eve) {
  if (store.stage_done(stage)) throw std::logic_error("s2: stage already transmitted");
  if (stage == CheckStage::B && !store.stage_done(CheckStage::A)) throw std::logic_error("s2: stage A must come first");

  DetectionReport report;
  report.stage = stage;
  report.threshold = abort_threshold;
  const int particle = stage == CheckStage::A ? 0 : 1;
  const bool attacked = eve && (stage == CheckStage::A ? eve->stage_a : eve->stage_b);

  std::vector<std::size_t> ids = store.intact();
  for (std::size_t id : ids) {
    store.transfer(id, particle, Owner::InTransit);
    if (attacked) {
      Triplet& t = store.at(id);
      t.state = intercept(t.state, particle, eve->strategy, rng).state;
      store.record_interception(id, particle);
      ++report.intercepted;
    }
    store.transfer(id, particle, Owner::Alice);
  }
  report.transmitted = ids.size();

  // Partial Fisher-Yates: the first k entries become the check sample.
  const std::size_t k = detection_sample_size(ids.size(), detect_fraction);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(ids[i], ids[i + rng.uniform_index(ids.size() - i)]);
  }
  std::vector<std::size_t> sample(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(sample.begin(), sample.end());

  const int alice_count = stage == CheckStage::A ? 1 : 2;
  for (std::size_t id : sample) {
    Triplet& t = store.at(id);
    const DetectionBasis basis = rng.coin() ? DetectionBasis::X : DetectionBasis::Z;
    const auto check = check_triplet(t.state, stage, basis, rng);
    for (int q = 0; q < 3; ++q) store.record_measurement(id, q, q < alice_count ? Actor::Alice : Actor::Bob);
    t.status = TripletStatus::ConsumedByDetection;
    ++(basis == DetectionBasis::Z ? report.z_checks : report.x_checks);
    if (!check.consistent) ++report.mismatches;
  }
  report.samples = k;
  report.error_rate = k == 0 ? 0.0 : static_cast<double>(report.mismatches) / static_cast<double>(k);
  report.aborted = report.error_rate > abort_threshold;
  store.mark_stage_done(stage);
  return report;
}

void s3_encode_cover(TripletStore& store, const CoverSequence& words) {
  if (!store.stage_done(CheckStage::A) || !store.stage_done(CheckStage::B)) {
    throw std::logic_error("s3: both transmission stages must be complete");
  }
  const auto ids = store.intact();
  if (words.size() != ids.size()) throw std::invalid_argument("s3: cover length must equal the intact triplet count");
  for (std::size_t p = 0; p < ids.size(); ++p) {
    Triplet& t = store.at(ids[p]);
    if (t.owner[0] != Owner::Alice || t.owner[1] != Owner::Alice) {
      throw std::logic_error("s3: Alice must hold particles A and B");
    }
    t.state = encode(t.state, label_of(words[p]));
    t.encoded = words[p];
  }
}

std::vector<std::size_t> eligible_positions(const CoverSequence& words, GhzCode secret, PairSelector selector) {
  std::vector<std::size_t> out;
  const GhzCode second = selector.code() ^ secret;
  for (std::size_t p = 1; p + 1 < words.size(); ++p) {
    if (words[p - 1] == selector.code() && words[p] == second) out.push_back(p);
  }
  return out;
}

std::size_t choose_m(const CoverSequence& words, GhzCode secret, PairSelector selector, Rng& rng) {
  if (words.size() < 3) throw std::invalid_argument("choose_m: cover needs at least 3 words");
  const auto eligible = eligible_positions(words, secret, selector);
  if (eligible.empty()) throw NoValidPosition();
  return eligible[rng.uniform_index(eligible.size())];
}

void s4_hide(TripletStore& store, const CoverSequence& words, std::size_t m) {
  const auto ids = store.intact();
  if (words.size() != ids.size()) throw std::invalid_argument("s4: cover length must equal the intact triplet count");
  if (m < 1 || m + 1 >= ids.size()) throw std::out_of_range("s4: m must satisfy 1 <= m <= L-2");
  Triplet& aux = store.at(ids[m + 1]);
  if (!aux.encoded) throw std::logic_error("s4: cover must be encoded first");
  aux.state = decode_unitary(aux.state, label_of(*aux.encoded));
  aux.state = encode(aux.state, label_of(words[m - 1]));
  aux.encoded = words[m - 1];
  aux.auxiliary = true;
}

void return_to_bob(TripletStore& store) {
  for (std::size_t id : store.intact()) {
    for (int q = 0; q < 2; ++q) {
      if (store.at(id).owner[static_cast<std::size_t>(q)] == Owner::Alice) {
        store.transfer(id, q, Owner::InTransit);
        store.transfer(id, q, Owner::Bob);
      }
    }
  }
}

SideChannel send_position(std::optional<std::size_t> m, std::size_t cover_length) {
  SideChannel channel;
  channel.m = m;
  if (m) channel.cost_bits = cover_length <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(cover_length - 1));
  return channel;
}

namespace {

GhzCode ghz_measure(TripletStore& store, std::size_t id, Rng& rng) {
  static const auto basis = ghz_basis<double>();
  Triplet& t = store.at(id);
  const auto record = measure(t.state, basis, rng);
  for (int q = 0; q < 3; ++q) store.record_measurement(id, q, Actor::Bob);
  t.state = record.post_state;
  t.status = TripletStatus::Measured;
  return GhzCode(static_cast<unsigned>(record.outcome_index));
}

}  // namespace

DecodedRound s5_decode(TripletStore& store, const SideChannel& channel, const DecodeTable& table, Rng& rng) {
  const auto ids = store.intact();
  for (std::size_t id : ids) {
    for (Owner o : store.at(id).owner) {
      if (o != Owner::Bob) throw std::logic_error("s5: Bob must hold every particle");
    }
  }
  DecodedRound out;
  out.cover_words.resize(ids.size());
  std::optional<std::size_t> m = channel.m;
  if (m) {
    if (*m < 1 || *m + 1 >= ids.size()) throw std::out_of_range("s5: m must satisfy 1 <= m <= L-2");
    const PairSelector selector(ghz_measure(store, ids[*m - 1], rng));

    Triplet& first = store.at(ids[*m]);
    Triplet& second = store.at(ids[*m + 1]);
    const BellTriple outcome = swap_measure(tensor(first.state, second.state), rng);
    for (std::size_t id : {ids[*m], ids[*m + 1]}) {
      for (int q = 0; q < 3; ++q) store.record_measurement(id, q, Actor::Bob);
      store.at(id).status = TripletStatus::Measured;
    }
    const GhzCode secret = decode_secret(outcome, table);
    out.secret = secret;
    out.selector = selector;
    out.swap_outcome = outcome;
    out.info_at_m = recover_info(selector.code(), secret);
    out.cover_words[*m - 1] = selector.code();
    out.cover_words[*m] = out.info_at_m;
  }
  for (std::size_t p = 0; p < ids.size(); ++p) {
    if (m && p + 1 >= *m && p <= *m + 1) continue;
    out.cover_words[p] = ghz_measure(store, ids[p], rng);
  }
  return out;
}

bool RoundReport::hidden_block_decoded() const {
  return status == RoundStatus::Completed && config.embed && m && decoded_secret == config.secret &&
         decoded_selector == config.selector && info_at_m == alice_cover.at(*m);
}

RoundReport run_round(const ProtocolConfig& config, const DecodeTable& table) {
  config.validate();
  Rng rng(config.seed);
  RoundReport report;
  report.config = config;

  TripletStore store = s1_prepare(config);
  for (CheckStage stage : {CheckStage::A, CheckStage::B}) {
    const auto detection =
        s2_transmit_and_detect(store, stage, config.detect_fraction, config.abort_threshold, rng, config.eve);
    report.stages.push_back(detection);
    if (detection.aborted) {
      report.status = RoundStatus::DetectionAbort;
      report.abort_stage = stage;
      report.c_particles_local = store.c_particles_local();
      return report;
    }
  }

  const std::size_t length = store.intact().size();
  report.survivors = length;
  report.bits.detection_consumed = config.n - length;

  CoverSequence words;
  std::vector<std::size_t> eligible;
  const int attempts = config.cover ? 1 : config.max_cover_attempts;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    report.cover_attempts = attempt;
    if (config.cover) {
      words = *config.cover;
    } else {
      words.clear();
      for (std::size_t p = 0; p < length; ++p) words.emplace_back(static_cast<unsigned>(rng.uniform_index(8)));
    }
    if (!config.embed) break;
    eligible = eligible_positions(words, config.secret, config.selector);
    if (!eligible.empty()) break;
  }
  report.alice_cover = words;
  report.eligible_count = eligible.size();
  if (config.embed && eligible.empty()) {
    report.status = RoundStatus::NoValidPosition;
    report.c_particles_local = store.c_particles_local();
    return report;
  }

  s3_encode_cover(store, words);
  std::optional<std::size_t> m;
  if (config.embed) {
    m = choose_m(words, config.secret, config.selector, rng);
    s4_hide(store, words, *m);
  }
  return_to_bob(store);
  const SideChannel channel = send_position(m, length);
  const DecodedRound decoded = s5_decode(store, channel, table, rng);

  report.m = m;
  report.decoded_secret = decoded.secret;
  report.decoded_selector = decoded.selector;
  report.info_at_m = decoded.info_at_m;
  report.swap_outcome = decoded.swap_outcome;
  report.bob_cover = decoded.cover_words;
  for (std::size_t p = 0; p < length; ++p) {
    if (decoded.cover_words[p] && *decoded.cover_words[p] != words[p]) ++report.cover_errors;
  }
  report.bits.side_channel_bits = channel.cost_bits;
  if (m) {
    report.bits.cover_bits = 3 * (length - 1);
    report.bits.covert_bits = 6;
    report.bits.auxiliary_consumed = 1;
  } else {
    report.bits.cover_bits = 3 * length;
  }
  report.c_particles_local = store.c_particles_local();
  return report;
}

RoundReport run_round(const ProtocolConfig& config) { return run_round(config, build_decode_table()); }

}  // namespace ghz_stego
