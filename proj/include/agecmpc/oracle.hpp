// Copyright 2026 The agecmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Grid validation of the closed-form Gamma against the explicit sumset
// support, plus decodability and agreement of the minimizer.

#ifndef AGECMPC_ORACLE_HPP
#define AGECMPC_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "agecmpc/powersets.hpp"
#include "agecmpc/workercount.hpp"

namespace agecmpc {

using GammaFn = std::function<GammaValue(const PartitionScheme&)>;

struct Counterexample {
  std::int64_t s, t, z, lambda;
  Count gamma;
  Count support_size;
  std::string label;
};

struct OracleSummary {
  std::int64_t tuples = 0;                     // (s, t, z, lambda) with t >= 2
  std::int64_t gamma_mismatches = 0;           // gamma != |product_support|
  std::map<std::string, std::int64_t> mismatches_by_case;
  std::optional<Counterexample> first_counterexample;
  std::int64_t no_case_matched = 0;
  std::int64_t decodability_checked = 0;       // includes t = 1
  std::int64_t decodability_failures = 0;
  std::int64_t triples = 0;                    // (s, t, z) with t >= 2
  std::int64_t minimum_mismatches = 0;         // min Gamma != min |P|, or |P(lambda*)| != min
  std::int64_t minimizer_ties = 0;             // smallest minimizers differ, minima agree

  bool gamma_equivalent() const { return gamma_mismatches == 0 && no_case_matched == 0; }
  bool decodable() const { return decodability_failures == 0; }
  bool minimum_agrees() const { return minimum_mismatches == 0; }
  bool all() const { return gamma_equivalent() && decodable() && minimum_agrees(); }
};

/// Walks s in [1, s_max], t in [1, t_max], z in [1, z_max], lambda in [0, z].
/// Gamma is checked for t >= 2; decodability for every tuple.
inline OracleSummary run_oracle(std::int64_t s_max, std::int64_t t_max, std::int64_t z_max,
                                const GammaFn& gamma_fn = [](const PartitionScheme& p) { return gamma(p); }) {
  OracleSummary out;
  for (std::int64_t s = 1; s <= s_max; ++s) {
    for (std::int64_t t = 1; t <= t_max; ++t) {
      if (s == 1 && t == 1) continue;
      for (std::int64_t z = 1; z <= z_max; ++z) {
        std::optional<Count> best_gamma, best_support;
        std::int64_t lam_gamma = -1, lam_support = -1;
        std::map<std::int64_t, Count> sizes;
        for (std::int64_t lam = 0; lam <= z; ++lam) {
          const PartitionScheme p = PartitionScheme::make(s, t, z, lam);
          ++out.decodability_checked;
          if (!check_decodability(p)) ++out.decodability_failures;
          if (t == 1) continue;
          ++out.tuples;
          const auto size = static_cast<Count>(product_support(p).size());
          sizes[lam] = size;
          GammaValue g{};
          try {
            g = gamma_fn(p);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kNoCaseMatched) throw;
            ++out.no_case_matched;
            continue;
          }
          if (g.count != size) {
            ++out.gamma_mismatches;
            ++out.mismatches_by_case[to_string(g.label)];
            if (!out.first_counterexample) out.first_counterexample = Counterexample{s, t, z, lam, g.count, size, to_string(g.label)};
          }
          if (!best_gamma || g.count < *best_gamma) best_gamma = g.count, lam_gamma = lam;
          if (!best_support || size < *best_support) best_support = size, lam_support = lam;
        }
        if (t == 1) continue;
        ++out.triples;
        if (!best_gamma || best_gamma != best_support || sizes[lam_gamma] != *best_support) {
          ++out.minimum_mismatches;
        } else if (lam_gamma != lam_support) {
          ++out.minimizer_ties;
        }
      }
    }
  }
  return out;
}

inline nlohmann::json to_json(const OracleSummary& o) {
  nlohmann::json j;
  j["tuples"] = o.tuples;
  j["gamma_mismatches"] = o.gamma_mismatches;
  j["mismatches_by_case"] = o.mismatches_by_case;
  j["no_case_matched"] = o.no_case_matched;
  j["decodability_checked"] = o.decodability_checked;
  j["decodability_failures"] = o.decodability_failures;
  j["triples"] = o.triples;
  j["minimum_mismatches"] = o.minimum_mismatches;
  j["minimizer_ties"] = o.minimizer_ties;
  if (o.first_counterexample) {
    const auto& c = *o.first_counterexample;
    j["first_counterexample"] = {{"s", c.s}, {"t", c.t}, {"z", c.z}, {"lambda", c.lambda},
                                 {"gamma", c.gamma}, {"support_size", c.support_size}, {"case", c.label}};
  } else {
    j["first_counterexample"] = nullptr;
  }
  return j;
}

}  // namespace agecmpc

#endif  // AGECMPC_ORACLE_HPP
