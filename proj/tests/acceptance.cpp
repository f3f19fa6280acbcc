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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ghz_stego/adversary.hpp"
#include "ghz_stego/ghz_coding.hpp"
#include "ghz_stego/imperceptibility.hpp"
#include "ghz_stego/protocol.hpp"
#include "ghz_stego/swapping.hpp"
#include "ghz_stego/verify.hpp"

using namespace ghz_stego;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

std::set<int> support_indices(const std::vector<BellTriple>& ts) {
  std::set<int> out;
  for (const auto& t : ts) out.insert(t.index());
  return out;
}

Outcome ac1_alphabet() {
  Outcome o;
  const auto psi1 = ghz_state<double>(GhzLabel(1));
  for (GhzLabel k : GhzLabel::all()) {
    o.require(equal_up_to_global_phase(encode(psi1, k), ghz_state<double>(k), 1e-9),
              "U_" + std::to_string(k.value()) + " maps the first state onto state " + std::to_string(k.value()));
  }
  const char* codes[] = {"000", "001", "010", "011", "100", "101", "110", "111"};
  for (GhzLabel k : GhzLabel::all()) {
    o.require(code_of(k).str() == codes[k.value() - 1], "code of U_" + std::to_string(k.value()));
    o.require(label_of(code_of(k)) == k, "code bijection at " + std::to_string(k.value()));
  }
  return o;
}

Outcome ac2_swapping() {
  Outcome o;
  const auto table = build_decode_table();
  int cells = 0;
  for (GhzLabel i : GhzLabel::all()) {
    for (GhzLabel j : GhzLabel::all()) {
      const auto dist = swap_distribution(i, j);
      bool ok = dist.equidistributed(1e-12);
      for (const auto& t : dist.support()) ok = ok && decode_secret(t, table) == (code_of(i) ^ code_of(j));
      o.require(ok, "pair (" + std::to_string(i.value()) + "," + std::to_string(j.value()) + ")");
      if (ok) ++cells;
    }
  }
  o.note(std::to_string(cells) + "/64 pairs equidistributed and decoding to code(i) xor code(j)");
  const auto& refs = reference_supports();
  for (int j = 1; j <= 4; ++j) {
    o.require(support_indices(swap_distribution(GhzLabel(1), GhzLabel(j)).support()) ==
                  support_indices(refs[static_cast<std::size_t>(j - 1)]),
              "reference support for (1," + std::to_string(j) + ")");
  }
  for (const auto& t : reference_code7_triples()) {
    o.require(decode_secret(t, table).str() == "111", t.str() + " -> 111");
  }
  return o;
}

Outcome ac3_detection() {
  Outcome o;
  const auto psi1 = ghz_state<double>(GhzLabel(1));
  for (DetectionBasis basis : {DetectionBasis::Z, DetectionBasis::X}) {
    const auto b = product_basis(product_basis(detection_basis<double>(basis, 0), detection_basis<double>(basis, 1)),
                                 detection_basis<double>(basis, 2));
    for (CheckStage stage : {CheckStage::A, CheckStage::B}) {
      const std::size_t na = stage == CheckStage::A ? 1 : 2;
      double mass = 0.0;
      for (const auto& out : outcome_distribution(psi1, b)) {
        if (out.probability < 1e-14) continue;
        std::vector<DetectionOutcome> alice, bob;
        for (std::size_t q = 0; q < 3; ++q) {
          (q < na ? alice : bob).push_back({basis, static_cast<int>((out.outcome_index >> q) & 1U)});
        }
        if (detection_consistent(alice, bob, basis, stage)) mass += out.probability;
      }
      o.require(std::abs(mass - 1.0) < 1e-12, std::string("basis ") + std::string(to_string(basis)) + " stage " +
                                                  std::string(to_string(stage)) + " consistent mass " + fmt(mass, 12));
    }
  }
  return o;
}

Outcome ac4_attacks() {
  Outcome o;
  const std::size_t trials = 100000;
  auto check = [&](const EveStrategy& s, double expected, std::uint64_t seed) {
    const auto stats = run_attack_experiment(s, CheckStage::A, trials, seed);
    const double se = std::sqrt(expected * (1 - expected) / trials);
    const double z = se > 0 ? (stats.empirical_rate - expected) / se : 0.0;
    const bool ok = stats.within(expected, 5.0);
    o.note(s.name() + ": empirical " + fmt(stats.empirical_rate) + " vs " + fmt(expected) + " (z = " + fmt(z, 2) +
           ", exact " + fmt(stats.exact_rate) + ")");
    o.require(ok, s.name() + " within 5 sigma of " + fmt(expected, 4));
    if (!ok) {
      o.note("  Z-checks " + std::to_string(stats.z_mismatches) + "/" + std::to_string(stats.z_checks) +
             " mismatched, X-checks " + std::to_string(stats.x_mismatches) + "/" + std::to_string(stats.x_checks));
      if (s.kind() == EveKind::MeasureResendX) {
        o.note("  after an X measurement of A the state is |+>(|00>+|11>) or |->(|00>-|11>);");
        o.note("  X-basis outcomes of both always have even minus parity, so only Z-checks fail (1/2),");
        o.note("  giving a total of 1/4 rather than 3/8");
      }
    }
  };
  check(EveStrategy::measure_resend_z(), 0.25, 101);
  check(EveStrategy::measure_resend_x(), 0.375, 102);
  std::uint64_t seed = 200;
  for (double b2 : {0.0, 0.1, 0.3, 0.5}) check(EveStrategy::entangle_measure_beta2(b2), b2, seed++);
  return o;
}

Outcome ac5_capacity() {
  Outcome o;
  const auto table = build_decode_table();
  int successes = 0;
  for (unsigned s = 0; s < 8; ++s) {
    for (unsigned sel = 0; sel < 8; ++sel) {
      ProtocolConfig c;
      c.n = 1024;
      c.secret = GhzCode(s);
      c.selector = PairSelector(GhzCode(sel));
      c.seed = 5000 + 8 * s + sel;
      const auto r = run_round(c, table);
      const bool ok = r.status == RoundStatus::Completed && r.hidden_block_decoded() && r.bits.covert_bits == 6;
      o.require(ok, "secret " + GhzCode(s).str() + " selector " + GhzCode(sel).str());
      if (ok) ++successes;
    }
  }
  o.note(std::to_string(successes) + "/64 rounds decoded 6 covert bits and the word at m");
  return o;
}

Outcome ac6_imperceptibility() {
  Outcome o;
  const auto rows = run_sweep({6400}, 100, 6400);
  double worst = 0.0;
  for (const auto& r : rows) {
    const bool ok = std::abs(r.frequency - r.expected) <= 5.0 * r.std_error;
    worst = std::max(worst, std::abs(r.z_score));
    if (!ok) {
      o.require(false, std::string(r.kind == SweepKind::Pattern ? "pattern " + r.selector->str() + "|" : "secret ") +
                           r.secret.str() + " frequency " + fmt(r.frequency));
    }
  }
  o.note(std::to_string(rows.size()) + " rows (64 patterns, 8 secrets), max |z| = " + fmt(worst, 2));
  return o;
}

Outcome ac7_opacity() {
  Outcome o;
  const auto table = build_decode_table();
  std::size_t smallest = 8;
  for (const auto& a : BellLabel::all()) {
    for (const auto& b : BellLabel::all()) {
      const auto leak = leak_m_attack(a, b, table);
      smallest = std::min(smallest, leak.consistent_secrets.size());
      o.require(leak.consistent_secrets.size() > 1, a.str() + "," + b.str());
    }
  }
  o.note("16/16 A/B outcome pairs; smallest consistent-secret set has " + std::to_string(smallest) + " codes");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac8_determinism() {
  Outcome o;
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "ghz_stego_acceptance";
  std::filesystem::create_directories(dir);
  const std::string bin = GHZ_STEGO_CLI;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "verify"},
      {"tables", "tables --format json --json {out}"},
      {"run", "run --secret 110 --selector 011 --seed 42 --json {out}"},
      {"run-eve", "run --eve probe --beta2 0.2 --eve-stage both --abort-threshold 1 --seed 43 --json {out}"},
      {"attack", "attack --strategy mrr --stage B --trials 20000 --seed 44 --json {out}"},
      {"sweep", "sweep --lengths 640,64 --reps 10 --seed 45 --csv {out}"},
  };
  for (const auto& [name, pattern] : commands) {
    std::string reports[2], stdouts[2];
    for (int pass = 0; pass < 2; ++pass) {
      const auto report = dir / (name + ".out");
      const auto console = dir / (name + "_" + std::to_string(pass) + ".txt");
      std::filesystem::remove(report);
      std::string args = pattern;
      if (auto at = args.find("{out}"); at != std::string::npos) args.replace(at, 5, "'" + report.string() + "'");
      const std::string cmd = "'" + bin + "' " + args + " > '" + console.string() + "' 2>&1";
      const int rc = std::system(cmd.c_str());
      o.require(rc == 0, name + " exited with status " + std::to_string(rc));
      stdouts[pass] = slurp(console);
      reports[pass] = std::filesystem::exists(report) ? slurp(report) : std::string();
    }
    o.require(!stdouts[0].empty() && stdouts[0] == stdouts[1], name + " console output identical");
    o.require(reports[0] == reports[1], name + " report file identical");
  }
  o.note(std::to_string(commands.size()) + " subcommand invocations compared byte for byte");
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "alphabet and 3-bit coding", 1.0, ac1_alphabet},
      {"AC2", "entanglement-swapping algebra", 5.0, ac2_swapping},
      {"AC3", "detection correlations", 1.0, ac3_detection},
      {"AC4", "attack error rates", 30.0, ac4_attacks},
      {"AC5", "six covert bits per round", 60.0, ac5_capacity},
      {"AC6", "eligible-position statistics", 60.0, ac6_imperceptibility},
      {"AC7", "hidden-channel opacity", 1.0, ac7_opacity},
      {"AC8", "CLI determinism", 60.0, ac8_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget_seconds, "runtime " + fmt(secs, 2) + " s over budget " + fmt(c.budget_seconds, 0) + " s");
    if (!o.passed) ++failures;
    std::cout << (o.passed ? "PASS " : "FAIL ") << c.id << " " << c.title << " (" << fmt(secs, 2) << " s)\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " acceptance criteria passed\n";
  return failures == 0 ? 0 : 1;
}
