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

#include "ghz_stego/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ghz_stego/adversary.hpp"
#include "ghz_stego/imperceptibility.hpp"
#include "ghz_stego/protocol.hpp"
#include "ghz_stego/report.hpp"
#include "ghz_stego/swapping.hpp"
#include "ghz_stego/verify.hpp"

namespace ghz_stego {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GHZ_STEGO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      // fall through to the built-in default
    }
  }
  return 1;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GhzCode parse_code(const std::string& text, const char* flag) {
  try {
    return GhzCode::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects three binary digits, got '" + text + "'");
  }
}

std::optional<EveStrategy> parse_strategy(const std::string& name, double beta2) {
  if (name == "none") return std::nullopt;
  if (name == "measure-resend-z" || name == "mrz") return EveStrategy::measure_resend_z();
  if (name == "measure-resend-x" || name == "mrx") return EveStrategy::measure_resend_x();
  if (name == "measure-resend-random" || name == "mrr") return EveStrategy::measure_resend_random();
  if (name == "entangle-measure" || name == "probe") return EveStrategy::entangle_measure_beta2(beta2);
  throw UsageError("unknown strategy '" + name + "'");
}

CheckStage parse_stage(const std::string& s) {
  if (s == "A" || s == "a") return CheckStage::A;
  if (s == "B" || s == "b") return CheckStage::B;
  throw UsageError("stage must be A or B, got '" + s + "'");
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << body;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

int do_verify(bool perturb, std::ostream& out) {
  const auto checks = run_verification(perturb ? BellConvention::SwappedPhiMinusPsiMinus : BellConvention::Standard);
  const IdentityCheck* first_failure = nullptr;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
    if (!c.passed && !first_failure) first_failure = &c;
  }
  if (first_failure) {
    out << "verification failed at: " << first_failure->name << '\n';
    return kExitFailure;
  }
  out << "all " << checks.size() << " identity checks passed\n";
  return kExitOk;
}

int do_tables(const std::string& format, const std::string& json_path, std::ostream& out) {
  const DecodeTable table = build_decode_table();
  const Json doc = tables_json(table);
  if (!json_path.empty()) write_file(json_path, doc.dump(2) + "\n");
  if (format == "json") {
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  out << "swap result codes (row: first triplet, column: second triplet)\n      ";
  for (GhzLabel k : GhzLabel::all()) out << ' ' << code_of(k).str();
  out << '\n';
  for (GhzLabel i : GhzLabel::all()) {
    out << "  " << code_of(i).str() << ' ';
    for (GhzLabel j : GhzLabel::all()) out << ' ' << swap_cell(i, j, table).str();
    out << '\n';
  }
  out << "\ndecode table (A1A2, B1B2, C1C2) -> code\n";
  for (unsigned c = 0; c < 8; ++c) {
    out << "  " << GhzCode(c).str() << ':';
    for (const auto& t : table.preimages(GhzCode(c))) out << ' ' << t.str();
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GHZ-state quantum steganography simulator"};
  app.name("ghz-stego");
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();

  bool perturb = false;
  auto* verify = app.add_subcommand("verify", "Run the exhaustive analytic identity checks");
  verify->add_flag("--perturb-bell-convention", perturb, "Negative control: relabel Phi-/Psi-")->group("");

  std::string format = "text";
  std::string tables_json_path;
  auto* tables = app.add_subcommand("tables", "Print the 8x8 swap code table and the 64-entry decode table");
  tables->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  tables->add_option("--json", tables_json_path, "Also write the JSON document to PATH");

  ProtocolConfig config;
  std::string secret = "000", selector = "000", eve = "none", eve_stage = "A", cover_text, run_json;
  double beta2 = 0.1;
  bool no_hidden = false;
  auto* run = app.add_subcommand("run", "Run one protocol round");
  run->add_option("--n", config.n, "Number of GHZ triplets (>= 16)");
  run->add_option("--secret", secret, "3-bit secret, e.g. 100");
  run->add_option("--selector", selector, "3-bit initial-state pair selector");
  run->add_option("--detect-fraction", config.detect_fraction, "Fraction checked per transmission stage");
  run->add_option("--eve", eve,
                  "none | measure-resend-z (mrz) | measure-resend-x (mrx) | measure-resend-random (mrr) | "
                  "entangle-measure (probe)");
  run->add_option("--eve-stage", eve_stage, "A, B or both")->check(CLI::IsMember({"A", "B", "both"}));
  run->add_option("--beta2", beta2, "Probe strength beta^2 for entangle-measure");
  run->add_option("--abort-threshold", config.abort_threshold, "Abort when a stage's error rate exceeds this");
  run->add_option("--max-cover-attempts", config.max_cover_attempts, "Random cover redraws before giving up");
  run->add_option("--cover", cover_text, "Cover words as octal digits, one per surviving triplet");
  run->add_flag("--no-hidden", no_hidden, "Send the cover only, with no hidden block");
  run->add_option("--seed", seed, "RNG seed (default: $GHZ_STEGO_SEED or 1)");
  run->add_option("--json", run_json, "Write the round report to PATH");

  std::string strategy = "mrz", stage = "A", attack_json;
  std::size_t trials = 100000;
  double sigma = 5.0;
  bool check_band = false;
  auto* attack = app.add_subcommand("attack", "Measure the detection error rate induced by an eavesdropper");
  attack->add_option("--strategy", strategy, "mrz | mrx | mrr | probe (or the long names)");
  attack->add_option("--stage", stage, "A or B");
  attack->add_option("--trials", trials, "Detection samples (>= 10000)");
  attack->add_option("--beta2", beta2, "Probe strength beta^2");
  attack->add_option("--seed", seed, "RNG seed (default: $GHZ_STEGO_SEED or 1)");
  attack->add_option("--sigma", sigma, "Band half-width in binomial standard errors");
  attack->add_flag("--check", check_band, "Exit 1 when the empirical rate is outside the band");
  attack->add_option("--json", attack_json, "Write the attack report to PATH");

  std::vector<std::size_t> lengths{6400};
  std::size_t reps = 100;
  std::string csv_path;
  auto* sweep = app.add_subcommand("sweep", "Eligible-position statistics over random covers (CSV)");
  sweep->add_option("--lengths", lengths, "Cover lengths (>= 64), comma separated")->delimiter(',');
  sweep->add_option("--reps", reps, "Covers per length");
  sweep->add_option("--seed", seed, "RNG seed (default: $GHZ_STEGO_SEED or 1)");
  sweep->add_option("--sigma", sigma, "Confidence band half-width in standard errors");
  sweep->add_option("--csv", csv_path, "Write CSV to PATH instead of stdout");
  sweep->footer(std::string("CSV columns: ") + kSweepCsvHeader +
                "\n  kind=pattern rows are per (selector, secret); kind=secret rows sum over selectors."
                "\n  frequency = mean_count / candidates; expected is 1/64 or 1/8.");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) return do_verify(perturb, out);
    if (*tables) return do_tables(format, tables_json_path, out);

    if (*run) {
      config.seed = seed;
      config.secret = parse_code(secret, "--secret");
      config.selector = PairSelector(parse_code(selector, "--selector"));
      config.embed = !no_hidden;
      if (auto s = parse_strategy(eve, beta2)) {
        config.eve = EveConfig{*s, eve_stage != "B", eve_stage != "A"};
      }
      if (!cover_text.empty()) {
        std::vector<GhzCode> words;
        for (char c : cover_text) {
          if (c < '0' || c > '7') throw UsageError("--cover expects octal digits");
          words.emplace_back(static_cast<unsigned>(c - '0'));
        }
        config.cover = std::move(words);
      }
      try {
        config.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      out << "# ghz-stego run --n " << config.n << " --secret " << secret << " --selector " << selector
          << " --detect-fraction " << config.detect_fraction << " --eve " << eve;
      if (config.eve) out << " --eve-stage " << eve_stage << " --beta2 " << beta2;
      out << " --abort-threshold " << config.abort_threshold << " --max-cover-attempts " << config.max_cover_attempts
          << (no_hidden ? " --no-hidden" : "") << (cover_text.empty() ? "" : " --cover " + cover_text) << " --seed "
          << seed << '\n';

      const RoundReport report = run_round(config);
      const Json doc = to_json(report);
      if (!run_json.empty()) write_file(run_json, doc.dump(2) + "\n");
      out << "status: " << to_string(report.status) << '\n';
      for (const auto& s : report.stages) {
        out << "stage " << to_string(s.stage) << ": transmitted " << s.transmitted << ", intercepted " << s.intercepted
            << ", checked " << s.samples << " (Z " << s.z_checks << ", X " << s.x_checks << "), mismatches "
            << s.mismatches << ", error rate " << fixed(s.error_rate) << (s.aborted ? "  -> ABORT" : "") << '\n';
      }
      if (report.status == RoundStatus::DetectionAbort) return kExitDetectionAbort;
      out << "surviving triplets: " << report.survivors << ", eligible positions: " << report.eligible_count
          << ", cover attempts: " << report.cover_attempts << '\n';
      if (report.status == RoundStatus::NoValidPosition) return kExitNoValidPosition;
      if (report.m) {
        out << "m: " << *report.m << " (side channel " << report.bits.side_channel_bits << " bits)\n";
        out << "swap outcome: " << report.swap_outcome->str() << '\n';
        out << "decoded secret: " << report.decoded_secret->str() << ", selector: " << report.decoded_selector->str()
            << ", info at m: " << report.info_at_m->str() << '\n';
        out << "hidden block decoded: " << (report.hidden_block_decoded() ? "yes" : "no") << '\n';
      }
      out << "cover errors: " << report.cover_errors << '\n';
      out << "bits: cover " << report.bits.cover_bits << ", covert " << report.bits.covert_bits << ", consumed "
          << report.bits.detection_consumed + report.bits.auxiliary_consumed << " triplets\n";
      return kExitOk;
    }

    if (*attack) {
      const auto s = parse_strategy(strategy, beta2);
      if (!s) throw UsageError("--strategy must name an attack");
      if (trials < 10000) throw UsageError("--trials must be at least 10000");
      const CheckStage st = parse_stage(stage);
      const AttackStats stats = run_attack_experiment(*s, st, trials, seed);
      const bool ok = stats.within(stats.theoretical_rate, sigma);
      Json doc = to_json(stats);
      doc["sigma"] = sigma;
      doc["within_band"] = ok;
      if (!attack_json.empty()) write_file(attack_json, doc.dump(2) + "\n");
      out << "# ghz-stego attack --strategy " << strategy << " --stage " << to_string(st) << " --trials " << trials
          << " --beta2 " << beta2 << " --seed " << seed << '\n';
      out << "strategy        " << stats.strategy << '\n'
          << "stage           " << to_string(stats.stage) << '\n'
          << "trials          " << stats.trials << '\n'
          << "mismatches      " << stats.mismatches << " (Z " << stats.z_mismatches << "/" << stats.z_checks << ", X "
          << stats.x_mismatches << "/" << stats.x_checks << ")\n"
          << "empirical rate  " << fixed(stats.empirical_rate) << '\n'
          << "theoretical     " << fixed(stats.theoretical_rate) << " +- " << fixed(stats.std_error) << '\n'
          << "exact (engine)  " << fixed(stats.exact_rate) << '\n'
          << "within " << sigma << " sigma  " << (ok ? "yes" : "no") << '\n';
      return (check_band && !ok) ? kExitFailure : kExitOk;
    }

    if (*sweep) {
      for (std::size_t l : lengths) {
        if (l < 64) throw UsageError("--lengths must all be >= 64");
      }
      if (reps == 0) throw UsageError("--reps must be positive");
      const auto rows = run_sweep(lengths, reps, seed, sigma);
      if (csv_path.empty()) {
        write_sweep_csv(out, rows);
      } else {
        std::ostringstream body;
        write_sweep_csv(body, rows);
        write_file(csv_path, body.str());
        out << "wrote " << rows.size() << " rows to " << csv_path << '\n';
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ghz_stego
