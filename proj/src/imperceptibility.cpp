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

#include "ghz_stego/imperceptibility.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ghz_stego/rng.hpp"

namespace ghz_stego {

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
};

SweepRow make_row(std::size_t length, std::size_t reps, SweepKind kind, GhzCode secret,
                  std::optional<PairSelector> selector, const Moments& m, double expected, double sigmas) {
  const double candidates = static_cast<double>(length - 2);
  const double n = static_cast<double>(reps);
  const double mean = m.sum / n;
  SweepRow row{length, reps, kind, secret, selector, length - 2, mean, mean / candidates, expected,
               0.0, 0.0, 0.0, 0.0, 0.0};
  row.binomial_error = std::sqrt(expected * (1.0 - expected) / (n * candidates));
  if (reps >= 2) {
    const double var = std::max(0.0, (m.sum_sq - n * mean * mean) / (n - 1.0));
    row.std_error = std::sqrt(var / n) / candidates;
  } else {
    row.std_error = row.binomial_error;
  }
  row.z_score = row.std_error > 0.0 ? (row.frequency - expected) / row.std_error : 0.0;
  row.ci_low = row.frequency - sigmas * row.std_error;
  row.ci_high = row.frequency + sigmas * row.std_error;
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const std::vector<std::size_t>& lengths, std::size_t reps, std::uint64_t seed,
                                double sigmas) {
  if (reps == 0) throw std::invalid_argument("run_sweep: reps must be positive");
  Rng rng(seed);
  std::vector<SweepRow> rows;
  for (std::size_t length : lengths) {
    if (length < 64) throw std::invalid_argument("run_sweep: lengths must be at least 64");
    std::array<Moments, 64> pattern{};
    std::array<Moments, 8> secret{};
    std::vector<unsigned> words(length);
    for (std::size_t r = 0; r < reps; ++r) {
      for (auto& w : words) w = static_cast<unsigned>(rng.uniform_index(8));
      std::array<std::size_t, 64> counts{};
      for (std::size_t p = 1; p + 1 < length; ++p) ++counts[words[p - 1] * 8 + words[p]];
      std::array<std::size_t, 8> per_secret{};
      for (unsigned sel = 0; sel < 8; ++sel) {
        for (unsigned second = 0; second < 8; ++second) {
          const std::size_t c = counts[sel * 8 + second];
          pattern[sel * 8 + (sel ^ second)].add(static_cast<double>(c));
          per_secret[sel ^ second] += c;
        }
      }
      for (unsigned s = 0; s < 8; ++s) secret[s].add(static_cast<double>(per_secret[s]));
    }
    for (unsigned sel = 0; sel < 8; ++sel) {
      for (unsigned s = 0; s < 8; ++s) {
        rows.push_back(make_row(length, reps, SweepKind::Pattern, GhzCode(s), PairSelector(GhzCode(sel)),
                                pattern[sel * 8 + s], 1.0 / 64.0, sigmas));
      }
    }
    for (unsigned s = 0; s < 8; ++s) {
      rows.push_back(make_row(length, reps, SweepKind::Secret, GhzCode(s), std::nullopt, secret[s], 1.0 / 8.0, sigmas));
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  const auto flags = out.flags();
  const auto precision = out.precision();
  out.precision(10);
  for (const auto& r : rows) {
    out << r.length << ',' << r.reps << ',' << (r.kind == SweepKind::Pattern ? "pattern" : "secret") << ','
        << r.secret.str() << ',' << (r.selector ? r.selector->str() : std::string("*")) << ',' << r.candidates << ','
        << r.mean_count << ',' << r.frequency << ',' << r.expected << ',' << r.std_error << ',' << r.binomial_error
        << ',' << r.z_score << ',' << r.ci_low << ',' << r.ci_high << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace ghz_stego
