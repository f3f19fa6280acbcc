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

#include "ghz_stego/report.hpp"

namespace ghz_stego {

namespace {

template <typename T, typename F>
Json optional_json(const std::optional<T>& value, F&& convert) {
  return value ? Json(convert(*value)) : Json(nullptr);
}

Json header(const char* kind) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = kind;
  return j;
}

}  // namespace

std::string cover_string(const std::vector<GhzCode>& words) {
  std::string out;
  out.reserve(words.size());
  for (GhzCode w : words) out.push_back(static_cast<char>('0' + w.bits()));
  return out;
}

std::string cover_string(const std::vector<std::optional<GhzCode>>& words) {
  std::string out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w ? static_cast<char>('0' + w->bits()) : '-');
  return out;
}

Json to_json(const DetectionReport& r) {
  Json j;
  j["stage"] = std::string(to_string(r.stage));
  j["transmitted"] = r.transmitted;
  j["intercepted"] = r.intercepted;
  j["samples"] = r.samples;
  j["z_checks"] = r.z_checks;
  j["x_checks"] = r.x_checks;
  j["mismatches"] = r.mismatches;
  j["error_rate"] = r.error_rate;
  j["threshold"] = r.threshold;
  j["aborted"] = r.aborted;
  return j;
}

Json to_json(const RoundReport& r) {
  Json j = header("round");
  const ProtocolConfig& c = r.config;
  Json config;
  config["n"] = c.n;
  config["detect_fraction"] = c.detect_fraction;
  config["seed"] = c.seed;
  config["secret"] = c.secret.str();
  config["selector"] = c.selector.str();
  config["embed"] = c.embed;
  if (c.eve) {
    Json eve;
    eve["strategy"] = c.eve->strategy.name();
    eve["alpha"] = c.eve->strategy.alpha();
    eve["beta"] = c.eve->strategy.beta();
    Json stages = Json::array();
    if (c.eve->stage_a) stages.push_back("A");
    if (c.eve->stage_b) stages.push_back("B");
    eve["stages"] = stages;
    config["eve"] = eve;
  } else {
    config["eve"] = nullptr;
  }
  config["abort_threshold"] = c.abort_threshold;
  config["cover_supplied"] = c.cover.has_value();
  config["max_cover_attempts"] = c.max_cover_attempts;
  j["config"] = config;

  j["status"] = std::string(to_string(r.status));
  j["abort_stage"] = optional_json(r.abort_stage, [](CheckStage s) { return std::string(to_string(s)); });
  Json stages = Json::array();
  for (const auto& s : r.stages) stages.push_back(to_json(s));
  j["stages"] = stages;
  j["survivors"] = r.survivors;
  j["cover_attempts"] = r.cover_attempts;
  j["eligible_positions"] = r.eligible_count;
  j["m"] = optional_json(r.m, [](std::size_t m) { return m; });

  Json decoded;
  const auto code = [](GhzCode g) { return g.str(); };
  decoded["secret"] = optional_json(r.decoded_secret, code);
  decoded["selector"] = optional_json(r.decoded_selector, [](PairSelector s) { return s.str(); });
  decoded["info_at_m"] = optional_json(r.info_at_m, code);
  decoded["swap_outcome"] = optional_json(r.swap_outcome, [](const BellTriple& t) { return t.str(); });
  decoded["hidden_block_decoded"] = r.hidden_block_decoded();
  j["decoded"] = decoded;

  Json cover;
  cover["alice"] = cover_string(r.alice_cover);
  cover["bob"] = cover_string(r.bob_cover);
  cover["errors"] = r.cover_errors;
  j["cover"] = cover;

  Json bits;
  bits["cover_bits"] = r.bits.cover_bits;
  bits["covert_bits"] = r.bits.covert_bits;
  bits["detection_consumed"] = r.bits.detection_consumed;
  bits["auxiliary_consumed"] = r.bits.auxiliary_consumed;
  bits["side_channel_bits"] = r.bits.side_channel_bits;
  j["bits"] = bits;
  j["c_particles_local"] = r.c_particles_local;
  return j;
}

Json to_json(const AttackStats& s) {
  Json j = header("attack");
  j["strategy"] = s.strategy;
  j["stage"] = std::string(to_string(s.stage));
  j["seed"] = s.seed;
  j["trials"] = s.trials;
  j["mismatches"] = s.mismatches;
  j["z_checks"] = s.z_checks;
  j["z_mismatches"] = s.z_mismatches;
  j["x_checks"] = s.x_checks;
  j["x_mismatches"] = s.x_mismatches;
  j["empirical_rate"] = s.empirical_rate;
  j["theoretical_rate"] = s.theoretical_rate;
  j["exact_rate"] = s.exact_rate;
  j["std_error"] = s.std_error;
  return j;
}

Json to_json(const LeakAnalysis& leak) {
  Json j = header("leak");
  j["a_pair"] = leak.a_pair.str();
  j["b_pair"] = leak.b_pair.str();
  Json secrets = Json::array();
  for (GhzCode s : leak.consistent_secrets) secrets.push_back(s.str());
  j["consistent_secrets"] = secrets;
  Json posterior;
  for (unsigned s = 0; s < 8; ++s) posterior[GhzCode(s).str()] = leak.posterior[s];
  j["posterior"] = posterior;
  return j;
}

Json tables_json(const DecodeTable& table) {
  Json j = header("tables");
  Json codes = Json::array();
  for (GhzLabel i : GhzLabel::all()) {
    Json row = Json::array();
    for (GhzLabel k : GhzLabel::all()) row.push_back(swap_cell(i, k, table).str());
    codes.push_back(row);
  }
  j["labels"] = {"000", "001", "010", "011", "100", "101", "110", "111"};
  j["code_table"] = codes;
  Json decode = Json::array();
  for (int t = 0; t < 64; ++t) {
    const BellTriple triple = BellTriple::from_index(t);
    Json entry;
    entry["a"] = triple.a.str();
    entry["b"] = triple.b.str();
    entry["c"] = triple.c.str();
    entry["code"] = table.lookup(triple).str();
    decode.push_back(entry);
  }
  j["decode_table"] = decode;
  return j;
}

}  // namespace ghz_stego
