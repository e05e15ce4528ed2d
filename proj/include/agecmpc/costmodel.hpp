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

// Per-worker computation and storage and total worker-to-worker traffic,
// predicted in closed form and reconciled against simulator counters.

#ifndef AGECMPC_COSTMODEL_HPP
#define AGECMPC_COSTMODEL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "agecmpc/errors.hpp"
#include "agecmpc/powersets.hpp"
#include "agecmpc/protocol.hpp"
#include "agecmpc/workercount.hpp"

namespace agecmpc {

struct CostReport {
  PartitionScheme scheme = PartitionScheme::make(1, 2, 1, 0);
  Count n = 0;
  std::int64_t xi = 0;     // scalar multiplications per worker
  std::int64_t sigma = 0;  // stored scalars per worker
  std::int64_t zeta = 0;   // scalars exchanged among workers
};

/// xi = m^3/(st^2) + m^2 + N(t^2+z-1) m^2/t^2
/// sigma = (2N+z+1) m^2/t^2 + 2m^2/(st) + t^2
/// zeta = N(N-1) m^2/t^2
inline CostReport predicted_costs(const PartitionScheme& p, Count n) {
  if (!p.m()) throw Error(ErrorCode::kIndivisibleDimensions, "cost model needs m");
  const std::int64_t m = *p.m(), s = p.s(), t = p.t(), z = p.z();
  if ((m * m) % (t * t) != 0 || (m * m) % (s * t) != 0) {
    throw Error(ErrorCode::kIndivisibleDimensions, "m^2 not divisible by t^2 and st for " + p.to_string());
  }
  const std::int64_t block = m * m / (t * t);
  CostReport r;
  r.scheme = p;
  r.n = n;
  r.xi = (m / t) * (m / s) * (m / t) + m * m + n * (t * t + z - 1) * block;
  r.sigma = (2 * n + z + 1) * block + 2 * m * m / (s * t) + t * t;
  r.zeta = n * (n - 1) * block;
  return r;
}

struct FieldDiff {
  std::string name;
  std::int64_t predicted = 0;
  std::int64_t measured = 0;
  std::int64_t delta = 0;  // measured - predicted
};

struct Reconciliation {
  std::vector<FieldDiff> fields;  // xi, sigma, zeta
  bool workers_uniform = true;    // every worker reported the same xi and sigma

  bool exact() const {
    return workers_uniform && std::all_of(fields.begin(), fields.end(), [](const FieldDiff& d) { return d.delta == 0; });
  }
};

/// Measured per-worker values are the maximum over workers; any spread
/// between workers clears `workers_uniform`.
inline Reconciliation reconcile(const Transcript& tr, const CostReport& report) {
  if (!(tr.scheme == report.scheme) || static_cast<Count>(tr.n_workers()) != report.n) {
    throw Error(ErrorCode::kSchemeMismatch, "transcript " + tr.scheme.to_string() + " with N = " +
                                                std::to_string(tr.n_workers()) + " vs report " +
                                                report.scheme.to_string() + " with N = " + std::to_string(report.n));
  }
  Reconciliation r;
  std::uint64_t mul_max = 0, mul_min = ~0ULL, sto_max = 0, sto_min = ~0ULL;
  for (const WorkerCounters& c : tr.workers) {
    mul_max = std::max(mul_max, c.multiplications);
    mul_min = std::min(mul_min, c.multiplications);
    sto_max = std::max(sto_max, c.stored_scalars);
    sto_min = std::min(sto_min, c.stored_scalars);
  }
  r.workers_uniform = mul_max == mul_min && sto_max == sto_min;
  auto field = [](std::string name, std::int64_t predicted, std::uint64_t measured) {
    const auto m = static_cast<std::int64_t>(measured);
    return FieldDiff{std::move(name), predicted, m, m - predicted};
  };
  r.fields.push_back(field("xi", report.xi, mul_max));
  r.fields.push_back(field("sigma", report.sigma, sto_max));
  r.fields.push_back(field("zeta", report.zeta, tr.phase2_traffic()));
  return r;
}

/// One scheme's worker count and costs at one (s, t).
struct SweepRow {
  std::int64_t s = 0, t = 0, z = 0, m = 0;
  std::string scheme_name;
  std::optional<Count> n;
  std::optional<std::int64_t> lambda_star;
  std::optional<CostReport> costs;
};

/// Rows for every divisor pair (s, t) of st, s ascending, five schemes each.
/// Baseline costs substitute the baseline N into the same formulas.
inline std::vector<SweepRow> sweep(std::int64_t st, std::int64_t z, std::int64_t m) {
  std::vector<SweepRow> rows;
  for (std::int64_t s = 1; s <= st; ++s) {
    if (st % s != 0) continue;
    const std::int64_t t = st / s;
    const PartitionScheme p = PartitionScheme::make(s, t, z, 0, m);
    const WorkerCountReport wc = compare(p);
    auto row = [&](std::string name, std::optional<Count> n, std::optional<std::int64_t> lam) {
      SweepRow r{s, t, z, m, std::move(name), n, lam, std::nullopt};
      if (n) r.costs = predicted_costs(p, *n);
      rows.push_back(std::move(r));
    };
    row("AGE", wc.n_age, wc.lambda_star);
    row("Entangled", wc.n_entangled, std::nullopt);
    row("SSMM", wc.n_ssmm, std::nullopt);
    row("GCSA-NA", wc.n_gcsa_na, std::nullopt);
    row("PolyDot", wc.n_polydot, std::nullopt);
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "s,t,z,m,scheme_name,N,lambda_star,xi,sigma,zeta\n";
  for (const SweepRow& r : rows) {
    os << r.s << ',' << r.t << ',' << r.z << ',' << r.m << ',' << r.scheme_name << ',';
    if (r.n) os << *r.n;
    os << ',';
    if (r.lambda_star) os << *r.lambda_star;
    os << ',';
    if (r.costs) os << r.costs->xi << ',' << r.costs->sigma << ',' << r.costs->zeta;
    else os << ",,";
    os << '\n';
  }
}

}  // namespace agecmpc

#endif  // AGECMPC_COSTMODEL_HPP
