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

#include "ghz_stego/verify.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ghz_stego {

namespace {

BellLabel parse_label(const std::string& text) {
  for (const auto& l : BellLabel::all()) {
    if (l.str() == text) return l;
  }
  throw std::invalid_argument("parse_label: unknown Bell label '" + text + "'");
}

std::vector<BellTriple> parse_all(std::initializer_list<const char*> texts) {
  std::vector<BellTriple> out;
  for (const char* t : texts) out.push_back(parse_triple(t));
  return out;
}

std::vector<int> sorted_indices(const std::vector<BellTriple>& triples) {
  std::vector<int> out;
  for (const auto& t : triples) out.push_back(t.index());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BellTriple parse_triple(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '(') body.erase(body.begin());
  if (!body.empty() && body.back() == ')') body.pop_back();
  std::stringstream in(body);
  std::string a, b, c, extra;
  if (!std::getline(in, a, ',') || !std::getline(in, b, ',') || !std::getline(in, c, ',') ||
      std::getline(in, extra, ',')) {
    throw std::invalid_argument("parse_triple: expected three comma-separated labels");
  }
  return {parse_label(a), parse_label(b), parse_label(c)};
}

const std::vector<std::vector<BellTriple>>& reference_supports() {
  static const std::vector<std::vector<BellTriple>> supports = {
      parse_all({"Phi+,Phi+,Phi+", "Phi+,Phi-,Phi-", "Phi-,Phi+,Phi-", "Phi-,Phi-,Phi+", "Psi+,Psi+,Psi+",
                 "Psi+,Psi-,Psi-", "Psi-,Psi+,Psi-", "Psi-,Psi-,Psi+"}),
      parse_all({"Phi+,Phi+,Phi-", "Phi+,Phi-,Phi+", "Phi-,Phi+,Phi+", "Phi-,Phi-,Phi-", "Psi+,Psi+,Psi-",
                 "Psi+,Psi-,Psi+", "Psi-,Psi+,Psi+", "Psi-,Psi-,Psi-"}),
      parse_all({"Psi+,Phi+,Phi+", "Psi+,Phi-,Phi-", "Psi-,Phi+,Phi-", "Psi-,Phi-,Phi+", "Phi+,Psi+,Psi+",
                 "Phi+,Psi-,Psi-", "Phi-,Psi+,Psi-", "Phi-,Psi-,Psi+"}),
      parse_all({"Psi+,Phi+,Phi-", "Psi+,Phi-,Phi+", "Psi-,Phi+,Phi+", "Psi-,Phi-,Phi-", "Phi+,Psi+,Psi-",
                 "Phi+,Psi-,Psi+", "Phi-,Psi+,Psi+", "Phi-,Psi-,Psi-"}),
  };
  return supports;
}

const std::vector<BellTriple>& reference_code7_triples() {
  static const std::vector<BellTriple> triples =
      parse_all({"Phi+,Phi+,Psi-", "Phi+,Phi-,Psi+", "Phi-,Phi+,Psi+", "Phi-,Phi-,Psi-"});
  return triples;
}

std::vector<IdentityCheck> run_verification(BellConvention convention) {
  std::vector<IdentityCheck> checks;
  const auto run = [&checks](std::string name, auto&& body) {
    try {
      std::string detail;
      const bool ok = body(detail);
      checks.push_back({std::move(name), ok, std::move(detail)});
    } catch (const std::exception& e) {
      checks.push_back({std::move(name), false, e.what()});
    }
  };

  run("GHZ basis orthonormality", [](std::string& detail) {
    const auto basis = ghz_basis<double>();
    int pairs = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        if (std::abs(inner_product(basis[i], basis[j]) - std::complex<double>(expected)) > 1e-12) return false;
        ++pairs;
      }
    }
    detail = std::to_string(pairs) + " inner products";
    return true;
  });

  run("dense coding U_k maps Psi_1 to Psi_k", [](std::string& detail) {
    const auto initial = ghz_state<double>(GhzLabel(1));
    for (GhzLabel k : GhzLabel::all()) {
      if (!equal_up_to_global_phase(encode(initial, k), ghz_state<double>(k), 1e-9)) {
        detail = "k=" + std::to_string(k.value());
        return false;
      }
    }
    detail = "8/8 labels";
    return true;
  });

  run("3-bit code bijection", [](std::string& detail) {
    for (GhzLabel k : GhzLabel::all()) {
      if (label_of(code_of(k)) != k || code_of(k).bits() != static_cast<unsigned>(k.value() - 1)) return false;
    }
    detail = "U_1 -> 000 ... U_8 -> 111";
    return true;
  });

  run("detection correlations on undisturbed Psi_1", [](std::string& detail) {
    const auto state = ghz_state<double>(GhzLabel(1));
    int supports = 0;
    for (DetectionBasis basis : {DetectionBasis::Z, DetectionBasis::X}) {
      const auto b = product_basis(product_basis(detection_basis<double>(basis, 0), detection_basis<double>(basis, 1)),
                                   detection_basis<double>(basis, 2));
      for (const auto& o : outcome_distribution(state, b)) {
        if (o.probability <= 1e-12) continue;
        for (CheckStage stage : {CheckStage::A, CheckStage::B}) {
          const std::size_t split = stage == CheckStage::A ? 1 : 2;
          std::vector<DetectionOutcome> alice, bob;
          for (std::size_t q = 0; q < 3; ++q) {
            (q < split ? alice : bob).push_back({basis, static_cast<int>((o.outcome_index >> q) & 1U)});
          }
          if (!detection_consistent(alice, bob, basis, stage)) return false;
          ++supports;
        }
      }
    }
    detail = std::to_string(supports) + " supported outcomes consistent";
    return true;
  });

  run("swap equidistribution over 64 pairs", [convention](std::string& detail) {
    for (GhzLabel i : GhzLabel::all()) {
      for (GhzLabel j : GhzLabel::all()) {
        if (!swap_distribution(i, j, convention).equidistributed()) return false;
      }
    }
    detail = "64/64 pairs with 8 outcomes of 1/8";
    return true;
  });

  const auto& refs = reference_supports();
  for (std::size_t k = 0; k < refs.size(); ++k) {
    run("swap support of Psi_1 x Psi_" + std::to_string(k + 1), [&, k](std::string& detail) {
      const auto got = sorted_indices(swap_distribution(GhzLabel(1), GhzLabel(static_cast<int>(k) + 1), convention).support());
      const bool ok = got == sorted_indices(refs[k]);
      detail = ok ? "matches the 8 reference triples" : "support differs from the reference triples";
      return ok;
    });
  }

  std::optional<DecodeTable> table;
  run("decode table construction", [&](std::string& detail) {
    table = build_decode_table(convention);
    detail = "64 triples, 8 per code";
    return true;
  });

  run("code 111 reference triples", [&](std::string& detail) {
    if (!table) return false;
    for (const auto& t : reference_code7_triples()) {
      if (table->lookup(t) != GhzCode(7)) {
        detail = t.str() + " decodes to " + table->lookup(t).str();
        return false;
      }
    }
    detail = "4/4 map to 111";
    return true;
  });

  run("swap outcome decodes to code(i) xor code(j)", [&](std::string& detail) {
    if (!table) return false;
    int passed = 0;
    for (GhzLabel i : GhzLabel::all()) {
      for (GhzLabel j : GhzLabel::all()) {
        if (swap_cell(i, j, *table, convention) == (code_of(i) ^ code_of(j))) ++passed;
      }
    }
    detail = std::to_string(passed) + "/64 pair checks passed";
    return passed == 64;
  });

  run("decode table partitions the 64 triples", [&](std::string& detail) {
    if (!table) return false;
    std::vector<int> all;
    for (unsigned c = 0; c < 8; ++c) {
      const auto pre = table->preimages(GhzCode(c));
      if (pre.size() != 8) return false;
      for (const auto& t : pre) all.push_back(t.index());
    }
    std::sort(all.begin(), all.end());
    const bool ok = std::adjacent_find(all.begin(), all.end()) == all.end() && all.size() == 64;
    detail = "8 collections of 8";
    return ok;
  });

  run("pair selector equals code of the first state", [](std::string& detail) {
    for (GhzLabel i : GhzLabel::all()) {
      for (GhzLabel j : GhzLabel::all()) {
        const auto pc = pair_selector_code(i, j);
        if (pc.selector.code() != code_of(i) || pc.secret != (code_of(i) ^ code_of(j))) return false;
      }
    }
    detail = "64/64 pairs";
    return true;
  });

  return checks;
}

}  // namespace ghz_stego
