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

// Closed-form worker counts for AGE-CMPC and the baseline CMPC schemes.

#ifndef AGECMPC_WORKERCOUNT_HPP
#define AGECMPC_WORKERCOUNT_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agecmpc/errors.hpp"
#include "agecmpc/powersets.hpp"

namespace agecmpc {

using Count = std::int64_t;

/// Which closed-form branch produced Gamma(lambda).
enum class UpsilonCase { k1 = 1, k2, k3, k4, k5, k6, k7, k8, k9 };

inline std::string to_string(UpsilonCase c) { return "U" + std::to_string(static_cast<int>(c)); }

struct GammaValue {
  Count count;
  UpsilonCase label;
  friend bool operator==(const GammaValue&, const GammaValue&) = default;
};

/// Closed-form value of branch `c` at the scheme's lambda (no guard check).
inline Count upsilon_value(UpsilonCase c, const PartitionScheme& p) {
  const Count s = p.s(), t = p.t(), z = p.z(), lam = p.lambda();
  const Count ts = p.ts(), th = p.theta(), q = p.q();
  switch (c) {
    case UpsilonCase::k1: return 2 * s * t * t + 2 * z - 1;
    case UpsilonCase::k2: return s * t * t + 3 * s * t - 2 * s + t * (z - 1) + 1;
    case UpsilonCase::k3: return 2 * ts + (ts + z) * (t - 1) + 2 * z - 1;
    case UpsilonCase::k4: return (q + 2) * ts + th * (t - 1) + 2 * z - 1;
    case UpsilonCase::k5: return 3 * ts + th * (t - 1) + 2 * z - 1;
    case UpsilonCase::k6: return 2 * ts + th * (t - 1) + (q + 2) * z - q - 1;
    case UpsilonCase::k7:
      return th * (t + 1) + q * (z - 1) - 2 * lam + z + ts + std::min<Count>(0, z + s * (1 - t) - lam * q - 1);
    case UpsilonCase::k8: return 2 * ts + th * (t - 1) + 3 * z + (lam + s - 1) * q - lam - s - 1;
    case UpsilonCase::k9:
      return th * (t + 1) + q * (s - 1) - 3 * lam + 3 * z - 1 + std::min<Count>(0, ts - z + 1 + lam * q - s);
  }
  return 0;
}

/// Every branch whose guard holds for the scheme, in branch order.
inline std::vector<UpsilonCase> matching_cases(const PartitionScheme& p) {
  const Count s = p.s(), z = p.z(), lam = p.lambda(), ts = p.ts(), q = p.q();
  const bool interior = 0 < lam && lam < z;
  std::vector<UpsilonCase> out;
  if (z > ts - s && lam == 0) out.push_back(UpsilonCase::k1);
  if (z <= ts - s && lam == 0) out.push_back(UpsilonCase::k2);
  if (lam == z) out.push_back(UpsilonCase::k3);
  if (z > ts && interior) out.push_back(UpsilonCase::k4);
  if (z <= ts && interior && ts < lam + s - 1) out.push_back(UpsilonCase::k5);
  const bool mid = lam + s - 1 < z && z <= ts && interior;
  if (mid && q * lam >= s) out.push_back(UpsilonCase::k6);
  if (mid && q * lam < s) out.push_back(UpsilonCase::k7);
  const bool low = z <= lam + s - 1 && lam + s - 1 <= ts && interior;
  if (low && q * lam >= s) out.push_back(UpsilonCase::k8);
  if (low && q * lam < s) out.push_back(UpsilonCase::k9);
  return out;
}

/// Gamma(lambda) for t >= 2: number of nonzero terms of H(x) predicted by the
/// nine-branch closed form. The first branch whose guard holds is used; a
/// tuple matching none raises NoCaseMatched.
inline GammaValue gamma(const PartitionScheme& p) {
  if (p.t() == 1) throw Error(ErrorCode::kInvalidScheme, "gamma is defined for t >= 2 only");
  const auto cases = matching_cases(p);
  if (cases.empty()) throw Error(ErrorCode::kNoCaseMatched, "no Gamma branch for " + p.to_string());
  return {upsilon_value(cases.front(), p), cases.front()};
}

struct AgeCount {
  Count n;
  std::optional<std::int64_t> lambda_star;  // absent when t = 1
};

/// N_AGE = min over lambda in [0, z] of Gamma; smallest minimizer wins ties.
/// t = 1 gives 2s + 2z - 1.
inline AgeCount n_age(const PartitionScheme& p) {
  if (p.t() == 1) return {2 * p.s() + 2 * p.z() - 1, std::nullopt};
  AgeCount best{0, std::nullopt};
  for (std::int64_t lam = 0; lam <= p.z(); ++lam) {
    const Count g = gamma(p.with_lambda(lam)).count;
    if (!best.lambda_star || g < best.n) best = {g, lam};
  }
  return best;
}

inline Count n_entangled(const PartitionScheme& p) {
  const Count s = p.s(), t = p.t(), z = p.z(), ts = p.ts();
  if (t == 1) return 2 * s + 2 * z - 1;
  if (z > ts - s) return 2 * s * t * t + 2 * z - 1;
  return s * t * t + 3 * s * t - 2 * s + t * (z - 1) + 1;
}

inline Count n_ssmm(const PartitionScheme& p) {
  if (p.t() == 1) return 2 * p.s() + 2 * p.z() - 1;
  return (p.t() + 1) * (p.ts() + p.z()) - 1;
}

// Batch size one.
inline Count n_gcsa_na(const PartitionScheme& p) {
  if (p.t() == 1) return 2 * p.s() + 2 * p.z() - 1;
  return 2 * p.s() * p.t() * p.t() + 2 * p.z() - 1;
}

/// PolyDot-CMPC worker count where a closed form is known; nullopt in the
/// regions where only an inequality against SSMM is available.
inline std::optional<Count> n_polydot(const PartitionScheme& p) {
  const Count s = p.s(), t = p.t(), z = p.z(), ts = p.ts();
  if (t == 1) return 2 * s + 2 * z - 1;
  if (z > ts) {
    if (s == 1) return 2 * t * t + 2 * z - 1;
    const Count qq = std::min<Count>((z - 1) / (ts - t), t - 1);
    return (qq + 2) * ts + (2 * ts - t) * (t - 1) + 2 * z - 1;
  }
  if (s == 1) return t * t + 2 * t + t * z - 1;
  // ((t-1)/(t-2)) (ts - t) < z, cross-multiplied; undefined for t = 2.
  if (t > 2 && z * (t - 2) > (t - 1) * (ts - t)) return 2 * ts + (2 * ts - t) * (t - 1) + 3 * z - 1;
  return std::nullopt;
}

struct GammaRow {
  std::int64_t lambda;
  GammaValue value;
};

struct DominanceChecks {
  bool vs_entangled = false;  // n_age <= n_entangled, equality iff lambda* = 0
  bool vs_ssmm = false;       // n_age <= n_ssmm, equality iff Gamma(z) = n_age
  bool vs_gcsa_na = false;    // n_age <= n_gcsa_na
  bool vs_polydot = false;    // n_age <= n_polydot where defined
  bool all() const { return vs_entangled && vs_ssmm && vs_gcsa_na && vs_polydot; }
};

struct WorkerCountReport {
  std::int64_t s = 0, t = 0, z = 0;
  Count n_age = 0;
  std::optional<std::int64_t> lambda_star;
  std::vector<GammaRow> gamma_table;  // empty when t = 1
  Count n_entangled = 0;
  Count n_ssmm = 0;
  Count n_gcsa_na = 0;
  std::optional<Count> n_polydot;
  DominanceChecks dominance;
};

/// All counts for (s, t, z) plus the four comparison verdicts. The scheme's
/// own lambda is ignored.
inline WorkerCountReport compare(const PartitionScheme& p) {
  WorkerCountReport r;
  r.s = p.s();
  r.t = p.t();
  r.z = p.z();
  const AgeCount age = n_age(p);
  r.n_age = age.n;
  r.lambda_star = age.lambda_star;
  if (p.t() != 1) {
    for (std::int64_t lam = 0; lam <= p.z(); ++lam) r.gamma_table.push_back({lam, gamma(p.with_lambda(lam))});
  }
  r.n_entangled = n_entangled(p);
  r.n_ssmm = n_ssmm(p);
  r.n_gcsa_na = n_gcsa_na(p);
  r.n_polydot = n_polydot(p);

  const bool lambda_zero = !r.lambda_star || *r.lambda_star == 0;
  r.dominance.vs_entangled = r.n_age <= r.n_entangled && ((r.n_age == r.n_entangled) == lambda_zero);
  const bool gamma_z_optimal = p.t() == 1 || r.gamma_table.back().value.count == r.n_age;
  r.dominance.vs_ssmm = r.n_age <= r.n_ssmm && ((r.n_age == r.n_ssmm) == gamma_z_optimal);
  r.dominance.vs_gcsa_na = r.n_age <= r.n_gcsa_na;
  r.dominance.vs_polydot = !r.n_polydot || r.n_age <= *r.n_polydot;
  return r;
}

}  // namespace agecmpc

#endif  // AGECMPC_WORKERCOUNT_HPP
