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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ghz_stego/cli.hpp"
#include "ghz_stego/imperceptibility.hpp"
#include "ghz_stego/report.hpp"

using namespace ghz_stego;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ghz_stego_test_" + name);
}

}  // namespace

TEST_CASE("round report JSON") {
  ProtocolConfig c;
  c.secret = GhzCode::parse("110");
  c.selector = PairSelector(GhzCode::parse("001"));
  const auto j = to_json(run_round(c));
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["kind"] == "round");
  CHECK(j["status"] == "completed");
  CHECK(j["decoded"]["secret"] == "110");
  CHECK(j["decoded"]["selector"] == "001");
  CHECK(j["decoded"]["hidden_block_decoded"] == true);
  CHECK(j["bits"]["covert_bits"] == 6);
  CHECK(j["config"]["eve"].is_null());
  CHECK(j["stages"].size() == 2);
  CHECK(j["cover"]["alice"].get<std::string>().size() == j["survivors"].get<std::size_t>());
  CHECK(j["cover"]["bob"].get<std::string>().find('-') != std::string::npos);
  CHECK(j.begin().key() == "schema");
}

TEST_CASE("cover strings") {
  CHECK(cover_string(std::vector<GhzCode>{GhzCode(0), GhzCode(7), GhzCode(4)}) == "074");
  CHECK(cover_string(std::vector<std::optional<GhzCode>>{GhzCode(1), std::nullopt}) == "1-");
}

TEST_CASE("tables JSON") {
  const auto j = tables_json(build_decode_table());
  CHECK(j["kind"] == "tables");
  CHECK(j["code_table"].size() == 8);
  CHECK(j["code_table"][2][6] == "100");
  CHECK(j["decode_table"].size() == 64);
}

TEST_CASE("attack and leak JSON") {
  const auto stats = run_attack_experiment(EveStrategy::measure_resend_z(), CheckStage::A, 10000, 2);
  const auto j = to_json(stats);
  CHECK(j["kind"] == "attack");
  CHECK(j["trials"] == 10000);
  CHECK(j["theoretical_rate"] == 0.25);
  const auto leak = to_json(leak_m_attack(BellLabel::from_index(0), BellLabel::from_index(1), build_decode_table()));
  CHECK(leak["kind"] == "leak");
  CHECK(leak["consistent_secrets"].size() == 4);
}

TEST_CASE("cli exit codes") {
  CHECK(cli({"verify"}).code == kExitOk);
  const auto perturbed = cli({"verify", "--perturb-bell-convention"});
  CHECK(perturbed.code != kExitOk);
  CHECK(perturbed.out.find("verification failed at: swap support of Psi_1 x Psi_1") != std::string::npos);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"run", "--bogus"}).code == kExitUsage);
  CHECK(cli({"run", "--secret", "12"}).code == kExitUsage);
  CHECK(cli({"run", "--n", "8"}).code == kExitUsage);
  CHECK(cli({"run", "--eve", "nobody"}).code == kExitUsage);
  CHECK(cli({"run", "--cover", "0123"}).code == kExitUsage);
  CHECK(cli({"attack", "--trials", "100"}).code == kExitUsage);
  CHECK(cli({"sweep", "--lengths", "10"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"run", "--eve", "mrz"}).code == kExitDetectionAbort);
  CHECK(cli({"run", "--n", "16", "--secret", "100", "--cover", "777777777"}).code == kExitNoValidPosition);
  CHECK(cli({"run", "--n", "16", "--secret", "100", "--selector", "000", "--cover", "777777047"}).code == kExitOk);
}

TEST_CASE("sweep help documents the CSV columns") {
  const auto r = cli({"sweep", "--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find(kSweepCsvHeader) != std::string::npos);
}

TEST_CASE("run prints a replayable invocation line and writes JSON") {
  const auto path = temp_path("run.json");
  const auto r = cli({"run", "--secret", "101", "--selector", "010", "--seed", "5", "--json", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("# ghz-stego run ", 0) == 0);
  const std::string line = r.out.substr(2, r.out.find('\n') - 2);
  std::istringstream words(line);
  std::vector<std::string> args;
  for (std::string w; words >> w;) args.push_back(w);
  args.erase(args.begin());
  const auto replay = cli(args);
  CHECK(replay.out == r.out);
  const auto doc = Json::parse(slurp(path));
  CHECK(doc["decoded"]["secret"] == "101");
  CHECK(doc["config"]["seed"] == 5);
  std::filesystem::remove(path);
}

TEST_CASE("attack band check") {
  CHECK(cli({"attack", "--strategy", "mrz", "--trials", "20000", "--check"}).code == kExitOk);
  CHECK(cli({"attack", "--strategy", "probe", "--beta2", "0.3", "--stage", "B", "--trials", "20000", "--check"})
            .code == kExitOk);
}

TEST_CASE("seed defaults to the environment variable") {
  const std::string bin = GHZ_STEGO_CLI;
  auto capture = [](const std::string& cmd) {
    std::string out;
    if (FILE* p = popen(cmd.c_str(), "r")) {
      char buf[4096];
      while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
      pclose(p);
    }
    return out;
  };
  const auto with_env = capture("GHZ_STEGO_SEED=31 '" + bin + "' run");
  const auto explicit_seed = capture("'" + bin + "' run --seed 31");
  CHECK(with_env.find("--seed 31") != std::string::npos);
  CHECK(with_env == explicit_seed);
}
