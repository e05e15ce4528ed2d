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

// Exponent-set algebra of AGE-coded MPC: where the coded and secret terms of
// F_A and F_B live, which exponents of H = F_A * F_B carry the product
// blocks, and the full support of H as an explicit sumset.

#ifndef AGECMPC_POWERSETS_HPP
#define AGECMPC_POWERSETS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agecmpc/errors.hpp"
#include "agecmpc/power_set.hpp"

namespace agecmpc {

/// (m, s, t, z, lambda): A and B are m x m, split into s row and t column
/// partitions, privacy against z colluders, gap parameter lambda.
class PartitionScheme {
 public:
  static PartitionScheme make(std::int64_t s, std::int64_t t, std::int64_t z, std::int64_t lambda,
                              std::optional<std::int64_t> m = std::nullopt) {
    if (s < 1 || t < 1) throw Error(ErrorCode::kInvalidScheme, "s and t must be >= 1");
    if (s == 1 && t == 1) throw Error(ErrorCode::kInvalidScheme, "s = t = 1 (no partitioning) is excluded");
    if (z < 1) throw Error(ErrorCode::kInvalidScheme, "z must be >= 1");
    if (lambda < 0 || lambda > z) {
      throw Error(ErrorCode::kInvalidScheme, "lambda must lie in [0, z], got " + std::to_string(lambda));
    }
    if (m) {
      if (*m < 1 || *m % s != 0 || *m % t != 0) {
        throw Error(ErrorCode::kIndivisibleDimensions,
                    "m = " + std::to_string(*m) + " must be divisible by s and t");
      }
    }
    PartitionScheme p;
    p.s_ = s;
    p.t_ = t;
    p.z_ = z;
    p.lambda_ = lambda;
    p.m_ = m;
    return p;
  }

  std::int64_t s() const { return s_; }
  std::int64_t t() const { return t_; }
  std::int64_t z() const { return z_; }
  std::int64_t lambda() const { return lambda_; }
  std::optional<std::int64_t> m() const { return m_; }
  std::int64_t ts() const { return t_ * s_; }
  std::int64_t theta() const { return t_ * s_ + lambda_; }

  /// Number of full gap intervals used by the A-side masks.
  std::int64_t q() const {
    if (lambda_ == 0) return t_ - 1;
    return std::min((z_ - 1) / lambda_, t_ - 1);
  }

  PartitionScheme with_lambda(std::int64_t lambda) const { return make(s_, t_, z_, lambda, m_); }
  PartitionScheme with_m(std::int64_t m) const { return make(s_, t_, z_, lambda_, m); }

  std::string to_string() const {
    std::string out = "(s=" + std::to_string(s_) + ",t=" + std::to_string(t_) + ",z=" + std::to_string(z_) +
                      ",lambda=" + std::to_string(lambda_);
    if (m_) out += ",m=" + std::to_string(*m_);
    return out + ")";
  }

  friend bool operator==(const PartitionScheme&, const PartitionScheme&) = default;

 private:
  PartitionScheme() = default;
  std::int64_t s_ = 1, t_ = 2, z_ = 1, lambda_ = 0;
  std::optional<std::int64_t> m_;
};

// A_{i,j} sits at x^{j + s i}: always {0, ..., ts-1}.
inline PowerSet powers_coded_a(const PartitionScheme& p) { return PowerSet::interval(0, p.ts() - 1); }

// B_{k,l} sits at x^{(s-1-k) + theta l}.
inline PowerSet powers_coded_b(const PartitionScheme& p) {
  std::vector<Exponent> out;
  for (std::int64_t l = 0; l < p.t(); ++l)
    for (std::int64_t k = 0; k < p.s(); ++k) out.push_back((p.s() - 1 - k) + p.theta() * l);
  return PowerSet(std::move(out));
}

/// The z smallest exponents that keep S_A * C_B clear of the important
/// powers. For 0 < lambda < z they fill the first q gaps of C_B (lambda
/// slots each) and continue at ts + q*theta.
inline PowerSet powers_secret_a(const PartitionScheme& p) {
  const std::int64_t ts = p.ts(), z = p.z(), lam = p.lambda(), th = p.theta();
  if (p.t() == 1) return PowerSet::interval(p.s(), p.s() + z - 1);
  if (lam == z) return PowerSet::interval(ts, ts + z - 1);
  const std::int64_t q = p.q();
  PowerSet out;
  // Empty when lambda = 0; q = t-1 then puts the whole run past the last gap.
  for (std::int64_t l = 0; l < q; ++l) out = out.set_union(PowerSet::interval(ts + th * l, (l + 1) * th - 1));
  return out.set_union(PowerSet::interval(ts + q * th, ts + q * th + z - 1 - q * lam));
}

// Starts one past the largest important power.
inline PowerSet powers_secret_b(const PartitionScheme& p) {
  const std::int64_t start = p.ts() + p.theta() * (p.t() - 1);
  return PowerSet::interval(start, start + p.z() - 1);
}

struct ImportantPower {
  std::int64_t i;
  std::int64_t l;
  Exponent exponent;
};

/// Exponent (s-1) + s i + theta l of H carrying Y_{i,l}; ordered by (l, i).
inline std::vector<ImportantPower> important_powers(const PartitionScheme& p) {
  std::vector<ImportantPower> out;
  out.reserve(static_cast<std::size_t>(p.t() * p.t()));
  for (std::int64_t l = 0; l < p.t(); ++l)
    for (std::int64_t i = 0; i < p.t(); ++i) out.push_back({i, l, (p.s() - 1) + p.s() * i + p.theta() * l});
  return out;
}

inline PowerSet important_power_set(const PartitionScheme& p) {
  std::vector<Exponent> xs;
  for (const auto& ip : important_powers(p)) xs.push_back(ip.exponent);
  return PowerSet(std::move(xs));
}

/// The four sumsets whose union is the support of H(x).
struct ProductTerms {
  PowerSet d1;  // C_A + C_B
  PowerSet d2;  // C_A + S_B
  PowerSet d3;  // S_A + C_B
  PowerSet d4;  // S_A + S_B

  PowerSet support() const { return d1.set_union(d2).set_union(d3).set_union(d4); }
  PowerSet garbage_masks() const { return d2.set_union(d3).set_union(d4); }
};

inline ProductTerms product_terms(const PowerSet& coded_a, const PowerSet& coded_b, const PowerSet& secret_a,
                                  const PowerSet& secret_b) {
  return {coded_a.sumset(coded_b), coded_a.sumset(secret_b), secret_a.sumset(coded_b),
          secret_a.sumset(secret_b)};
}

inline ProductTerms product_terms(const PartitionScheme& p) {
  return product_terms(powers_coded_a(p), powers_coded_b(p), powers_secret_a(p), powers_secret_b(p));
}

/// Exact support of H(x) = F_A(x) F_B(x); |result| is the worker count.
inline PowerSet product_support(const PartitionScheme& p) { return product_terms(p).support(); }

/// No important power lands in C_A+S_B, S_A+C_B or S_A+S_B.
/// The explicit-set overload lets callers test arbitrary mask placements.
inline bool check_secret_conditions(const PartitionScheme& p, const PowerSet& secret_a, const PowerSet& secret_b) {
  const ProductTerms terms = product_terms(powers_coded_a(p), powers_coded_b(p), secret_a, secret_b);
  return important_power_set(p).disjoint(terms.garbage_masks());
}

inline bool check_secret_conditions(const PartitionScheme& p) {
  return check_secret_conditions(p, powers_secret_a(p), powers_secret_b(p));
}

/// Cross-term exponents j + s i + (s-1-k) + theta l with j != k. Empty for s = 1.
inline PowerSet cross_term_powers(const PartitionScheme& p) {
  std::vector<Exponent> out;
  for (std::int64_t i = 0; i < p.t(); ++i)
    for (std::int64_t l = 0; l < p.t(); ++l)
      for (std::int64_t j = 0; j < p.s(); ++j)
        for (std::int64_t k = 0; k < p.s(); ++k)
          if (j != k) out.push_back(j + p.s() * i + (p.s() - 1 - k) + p.theta() * l);
  return PowerSet(std::move(out));
}

/// Y = A^T B is decodable from H: t^2 distinct important powers, none shared
/// with a cross term or a mask term.
inline bool check_decodability(const PartitionScheme& p) {
  const PowerSet imp = important_power_set(p);
  if (imp.size() != static_cast<std::size_t>(p.t() * p.t())) return false;
  if (!imp.disjoint(cross_term_powers(p))) return false;
  return check_secret_conditions(p);
}

}  // namespace agecmpc

#endif  // AGECMPC_POWERSETS_HPP
