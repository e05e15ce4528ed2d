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

// Deterministic simulation of the three AGE-CMPC phases: sources share
// F_A(alpha_n) and F_B(alpha_n), workers multiply and re-share G_n, the master
// interpolates I(x) from t^2 + z responses.

#ifndef AGECMPC_PROTOCOL_HPP
#define AGECMPC_PROTOCOL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "agecmpc/coding.hpp"
#include "agecmpc/errors.hpp"
#include "agecmpc/field.hpp"
#include "agecmpc/powersets.hpp"
#include "agecmpc/rng.hpp"

namespace agecmpc {

inline constexpr int kTranscriptSchemaVersion = 1;

/// Party identifiers on the message bus. Workers are 1..N.
inline constexpr std::int64_t kMaster = 0;
inline constexpr std::int64_t kSourceA = -1;
inline constexpr std::int64_t kSourceB = -2;

/// FNV-1a over the little-endian bytes of every entry.
inline std::uint64_t digest(const BlockMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(m.rows());
  feed(m.cols());
  for (Fe x : m.data()) feed(x.v);
  return h;
}

struct Message {
  std::int64_t sender;
  std::int64_t receiver;
  int phase;
  std::uint64_t scalars;
  std::uint64_t payload_digest;
  friend bool operator==(const Message&, const Message&) = default;
};

struct WorkerCounters {
  std::uint64_t multiplications = 0;
  std::uint64_t stored_scalars = 0;
  std::uint64_t sent_scalars = 0;
  friend bool operator==(const WorkerCounters&, const WorkerCounters&) = default;
};

/// Everything observable about a run except the block payloads themselves.
struct Transcript {
  PartitionScheme scheme = PartitionScheme::make(1, 2, 1, 0);
  std::uint64_t prime = 0;
  std::vector<Fe> points;               // alpha_1..alpha_N
  std::vector<Message> messages;        // sorted by (phase, sender, receiver)
  std::vector<WorkerCounters> workers;  // index n-1
  std::vector<std::int64_t> master_received;
  std::uint64_t y_digest = 0;

  std::size_t n_workers() const { return points.size(); }

  /// Scalars moved worker to worker in phase 2.
  std::uint64_t phase2_traffic() const {
    std::uint64_t total = 0;
    for (const Message& msg : messages)
      if (msg.phase == 2) total += msg.scalars;
    return total;
  }
};

inline nlohmann::json to_json(const Transcript& tr) {
  nlohmann::json j;
  j["schema_version"] = kTranscriptSchemaVersion;
  j["scheme"] = {{"s", tr.scheme.s()}, {"t", tr.scheme.t()}, {"z", tr.scheme.z()}, {"lambda", tr.scheme.lambda()}};
  if (tr.scheme.m()) j["scheme"]["m"] = *tr.scheme.m();
  j["prime"] = tr.prime;
  j["points"] = nlohmann::json::array();
  for (Fe x : tr.points) j["points"].push_back(x.v);
  j["counters"] = nlohmann::json::array();
  for (std::size_t n = 0; n < tr.workers.size(); ++n) {
    const auto& c = tr.workers[n];
    j["counters"].push_back({{"worker", n + 1},
                             {"multiplications", c.multiplications},
                             {"stored_scalars", c.stored_scalars},
                             {"sent_scalars", c.sent_scalars}});
  }
  j["messages"] = nlohmann::json::array();
  for (const Message& msg : tr.messages) {
    j["messages"].push_back({{"sender", msg.sender},
                             {"receiver", msg.receiver},
                             {"phase", msg.phase},
                             {"scalars", msg.scalars},
                             {"digest", msg.payload_digest}});
  }
  j["master_received"] = tr.master_received;
  j["y_digest"] = tr.y_digest;
  return j;
}

/// Local state of worker n, kept for inspection after a run.
struct WorkerState {
  std::int64_t id = 0;
  Fe alpha{0};
  BlockMatrix share_a;
  BlockMatrix share_b;
  BlockMatrix h;                   // H(alpha_n)
  std::vector<Fe> rows;            // r_n^{(i,l)} in important_powers order
  std::vector<BlockMatrix> masks;  // R_w^{(n)}, w in [0, z-1]
  BlockMatrix i_value;             // I(alpha_n)
  WorkerCounters counters;
};

/// Row k holds r_n^{(k)} for n = 0..N-1: sum_n r_n^{(k)} P(alpha_n) is the
/// coefficient of x^{targets[k]} of any polynomial P supported on `support`.
inline BlockMatrix interpolation_rows(const PrimeField& f, const PowerSet& support, std::span<const Fe> points,
                                      std::span<const Exponent> targets) {
  const BlockMatrix inv = invert_on_support(f, points, support);
  BlockMatrix rows(targets.size(), points.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const std::size_t j = support.index_of(targets[k]);
    if (j == support.size()) {
      throw Error(ErrorCode::kShapeMismatch, "target exponent " + std::to_string(targets[k]) + " not in support");
    }
    for (std::size_t n = 0; n < points.size(); ++n) rows(k, n) = inv(j, n);
  }
  return rows;
}

/// r_n^{(i,l)} for the scheme's important powers, in important_powers order.
inline BlockMatrix phase2_interpolation_rows(const PrimeField& f, const PartitionScheme& p, const PowerSet& support,
                                             std::span<const Fe> points) {
  std::vector<Exponent> targets;
  for (const auto& ip : important_powers(p)) targets.push_back(ip.exponent);
  return interpolation_rows(f, support, points, targets);
}

/// G_n(x) = sum_{i,l} r_n^{(i,l)} H(alpha_n) x^{i+tl} + sum_w R_w x^{t^2+w}.
inline MaskedPolynomial build_gn(const PrimeField& f, const WorkerState& w, const PartitionScheme& p,
                                 MulCounter* counter = nullptr) {
  const auto t = p.t();
  MaskedPolynomial g;
  g.block_rows = w.h.rows();
  g.block_cols = w.h.cols();
  const auto imp = important_powers(p);
  for (std::size_t k = 0; k < imp.size(); ++k) g.coeffs.emplace(imp[k].i + t * imp[k].l, scale(f, w.rows[k], w.h, counter));
  for (std::size_t r = 0; r < w.masks.size(); ++r) g.coeffs.emplace(t * t + static_cast<Exponent>(r), w.masks[r]);
  return g;
}

struct Response {
  Fe alpha;
  BlockMatrix value;
};

/// Interpolates I(x) (degree t^2 + z - 1) and reads Y_{i,l} at x^{i+tl}.
/// Extra responses beyond t^2 + z must agree with the interpolant.
inline BlockGrid phase3_reconstruct(const PrimeField& f, std::span<const Response> responses,
                                    const PartitionScheme& p) {
  const auto t = static_cast<std::size_t>(p.t());
  const std::size_t k = t * t + static_cast<std::size_t>(p.z());
  if (responses.size() < k) {
    throw Error(ErrorCode::kInsufficientResponders,
                std::to_string(responses.size()) + " responses, need " + std::to_string(k));
  }
  std::vector<Fe> points;
  for (const auto& r : responses) points.push_back(r.alpha);
  require_distinct(points);
  std::vector<BlockMatrix> values;
  for (std::size_t n = 0; n < k; ++n) values.push_back(responses[n].value);
  const auto coeffs = solve_vandermonde(f, std::span<const Fe>(points).first(k), values);

  if (responses.size() > k) {
    MaskedPolynomial ipoly;
    ipoly.block_rows = coeffs.front().rows();
    ipoly.block_cols = coeffs.front().cols();
    for (std::size_t e = 0; e < coeffs.size(); ++e) ipoly.coeffs.emplace(static_cast<Exponent>(e), coeffs[e]);
    for (std::size_t n = k; n < responses.size(); ++n) {
      if (!(evaluate(f, ipoly, responses[n].alpha) == responses[n].value)) {
        throw Error(ErrorCode::kInconsistentResponses,
                    "response at alpha = " + std::to_string(responses[n].alpha.v) + " disagrees with I(x)");
      }
    }
  }

  BlockGrid y;
  y.rows = t;
  y.cols = t;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t l = 0; l < t; ++l) y.blocks.push_back(coeffs[i + t * l]);
  return y;
}

struct ProtocolResult {
  BlockMatrix y;
  Transcript transcript;
  std::vector<WorkerState> workers;
  std::vector<Response> all_responses;  // I(alpha_n) for every worker, by id
};

inline constexpr int kPointRetryBudget = 16;

/// Runs all three phases with N = |product_support(scheme)| workers. The
/// phase-3 responders default to workers 1..t^2+z.
inline ProtocolResult run_protocol(const PrimeField& f, const BlockMatrix& a, const BlockMatrix& b,
                                   const PartitionScheme& scheme, std::uint64_t seed,
                                   std::optional<std::vector<std::int64_t>> phase3_subset = std::nullopt) {
  const std::size_t m = require_divisible(a, scheme);
  require_divisible(b, scheme);
  require_same_shape(a, b, "run_protocol");
  const PartitionScheme p = scheme.m() ? scheme : scheme.with_m(static_cast<std::int64_t>(m));
  const PowerSet support = product_support(p);
  const std::size_t n_workers = support.size();
  const auto t = static_cast<std::size_t>(p.t());
  const auto z = static_cast<std::size_t>(p.z());
  const std::size_t threshold = t * t + z;
  if (f.prime() <= n_workers) {
    throw Error(ErrorCode::kInvalidPrime, "prime " + std::to_string(f.prime()) + " leaves no room for " +
                                              std::to_string(n_workers) + " distinct nonzero points");
  }

  std::vector<std::int64_t> responders;
  if (phase3_subset) {
    responders = *phase3_subset;
    std::unordered_set<std::int64_t> seen;
    for (std::int64_t id : responders) {
      if (id < 1 || static_cast<std::size_t>(id) > n_workers) {
        throw Error(ErrorCode::kShapeMismatch, "worker id " + std::to_string(id) + " outside [1, N]");
      }
      if (!seen.insert(id).second) throw Error(ErrorCode::kDuplicatePoints, "worker " + std::to_string(id) + " listed twice");
    }
    if (responders.size() < threshold) {
      throw Error(ErrorCode::kInsufficientResponders,
                  std::to_string(responders.size()) + " responders, need " + std::to_string(threshold));
    }
  } else {
    for (std::size_t n = 1; n <= threshold; ++n) responders.push_back(static_cast<std::int64_t>(n));
  }

  // Evaluation points: alpha_n = n, resampled while the support matrix is singular.
  std::vector<Fe> points;
  for (std::size_t n = 1; n <= n_workers; ++n) points.push_back(f.from_int(static_cast<std::int64_t>(n)));
  BlockMatrix rows;
  CounterRng point_rng(seed, stream_id(Stream::kEvaluationPoints));
  for (int attempt = 0;; ++attempt) {
    try {
      rows = phase2_interpolation_rows(f, p, support, points);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSingularSupportMatrix || attempt + 1 >= kPointRetryBudget) throw;
      std::unordered_set<std::uint64_t> used;
      points.clear();
      while (points.size() < n_workers) {
        const Fe x(1 + point_rng.below(f.prime() - 1));
        if (used.insert(x.v).second) points.push_back(x);
      }
    }
  }

  const SharePolynomials shares =
      build_masked_polynomials(f, {a, Role::kA}, {b, Role::kB}, p, seed, MaskMode::kUniform);

  const auto mm = static_cast<std::uint64_t>(m);
  const auto st = static_cast<std::uint64_t>(p.s() * p.t());
  const auto tt = static_cast<std::uint64_t>(t * t);
  const std::uint64_t share_a_scalars = mm * mm / st;
  const std::uint64_t gblock = mm * mm / tt;

  ProtocolResult out;
  Transcript& tr = out.transcript;
  tr.scheme = p;
  tr.prime = f.prime();
  tr.points = points;
  out.workers.resize(n_workers);

  // Phase 1: sources share; workers multiply and build G_n.
  std::vector<MaskedPolynomial> gs(n_workers);
  for (std::size_t n = 0; n < n_workers; ++n) {
    WorkerState& w = out.workers[n];
    w.id = static_cast<std::int64_t>(n + 1);
    w.alpha = points[n];
    w.share_a = evaluate(f, shares.fa, w.alpha);
    w.share_b = evaluate(f, shares.fb, w.alpha);
    tr.messages.push_back({kSourceA, w.id, 1, w.share_a.size(), digest(w.share_a)});
    tr.messages.push_back({kSourceB, w.id, 1, w.share_b.size(), digest(w.share_b)});
    MulCounter mul;
    w.h = multiply(f, w.share_a, w.share_b, &mul);
    for (std::size_t k = 0; k < rows.rows(); ++k) w.rows.push_back(rows(k, n));
    CounterRng rng(seed, worker_stream(n + 1));
    for (std::size_t r = 0; r < z; ++r) w.masks.push_back(rng.uniform_block(f, w.h.rows(), w.h.cols()));
    gs[n] = build_gn(f, w, p, &mul);
    w.counters.multiplications = mul.multiplications;
    // Both shares, H(alpha_n), the t^2 scalars r and the z mask blocks.
    w.counters.stored_scalars = 2 * share_a_scalars + gblock + tt + z * gblock;
  }

  // Phase 2: G_n(alpha_{n'}) for every n', self-term kept locally.
  for (std::size_t n = 0; n < n_workers; ++n) {
    out.workers[n].i_value = BlockMatrix(gs[n].block_rows, gs[n].block_cols);
  }
  for (std::size_t n = 0; n < n_workers; ++n) {
    WorkerState& w = out.workers[n];
    MulCounter mul;
    for (std::size_t dst = 0; dst < n_workers; ++dst) {
      const BlockMatrix g_at = evaluate(f, gs[n], points[dst], &mul);
      add_into(f, out.workers[dst].i_value, g_at);
      if (dst != n) {
        tr.messages.push_back({w.id, static_cast<std::int64_t>(dst + 1), 2, g_at.size(), digest(g_at)});
        w.counters.sent_scalars += g_at.size();
      }
    }
    w.counters.multiplications += mul.multiplications;
    // N computed evaluations of G_n, N-1 received ones, and I(alpha_n).
    w.counters.stored_scalars += (2 * n_workers - 1) * gblock + gblock;
  }

  for (const WorkerState& w : out.workers) out.all_responses.push_back({w.alpha, w.i_value});

  // Phase 3: selected workers answer the master.
  std::sort(responders.begin(), responders.end());
  std::vector<Response> responses;
  for (std::int64_t id : responders) {
    WorkerState& w = out.workers[static_cast<std::size_t>(id - 1)];
    responses.push_back({w.alpha, w.i_value});
    tr.messages.push_back({w.id, kMaster, 3, w.i_value.size(), digest(w.i_value)});
    w.counters.sent_scalars += w.i_value.size();
    tr.master_received.push_back(id);
  }
  out.y = assemble(phase3_reconstruct(f, responses, p));
  tr.y_digest = digest(out.y);

  std::stable_sort(tr.messages.begin(), tr.messages.end(), [](const Message& x, const Message& y) {
    return std::tie(x.phase, x.sender, x.receiver) < std::tie(y.phase, y.sender, y.receiver);
  });
  for (const WorkerState& w : out.workers) tr.workers.push_back(w.counters);
  return out;
}

/// Messages delivered to any of the colluding workers.
struct AdversaryView {
  std::vector<std::int64_t> colluders;
  std::vector<Message> received;
};

inline void require_colluders(const PartitionScheme& p, const std::vector<std::int64_t>& colluders) {
  if (static_cast<std::int64_t>(colluders.size()) > p.z()) {
    throw Error(ErrorCode::kTooManyColluders,
                std::to_string(colluders.size()) + " colluders exceed z = " + std::to_string(p.z()));
  }
}

inline AdversaryView adversary_view(const Transcript& tr, std::vector<std::int64_t> colluders) {
  require_colluders(tr.scheme, colluders);
  std::sort(colluders.begin(), colluders.end());
  AdversaryView v;
  v.colluders = colluders;
  for (const Message& msg : tr.messages)
    if (std::binary_search(colluders.begin(), colluders.end(), msg.receiver)) v.received.push_back(msg);
  return v;
}

/// True iff [x^p] over the given points and powers has full row rank.
inline bool full_row_rank(const PrimeField& f, std::span<const Fe> points, const PowerSet& powers) {
  return rank(f, generalized_vandermonde(f, points, powers)) == points.size();
}

/// Structural privacy witness: the colluders' mask matrices over
/// powers_secret_a, powers_secret_b and {t^2..t^2+z-1} all have full row rank.
inline bool mask_rank_check(const PrimeField& f, const PartitionScheme& p, std::span<const Fe> colluder_points) {
  if (static_cast<std::int64_t>(colluder_points.size()) > p.z()) {
    throw Error(ErrorCode::kTooManyColluders,
                std::to_string(colluder_points.size()) + " colluders exceed z = " + std::to_string(p.z()));
  }
  const PowerSet g_masks = PowerSet::interval(p.t() * p.t(), p.t() * p.t() + p.z() - 1);
  return full_row_rank(f, colluder_points, powers_secret_a(p)) &&
         full_row_rank(f, colluder_points, powers_secret_b(p)) && full_row_rank(f, colluder_points, g_masks);
}

}  // namespace agecmpc

#endif  // AGECMPC_PROTOCOL_HPP
