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

// Prime-field scalars, dense block matrices over the field, and the
// (generalized) Vandermonde solvers used for interpolation.

#ifndef AGECMPC_FIELD_HPP
#define AGECMPC_FIELD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "agecmpc/errors.hpp"
#include "agecmpc/power_set.hpp"

namespace agecmpc {

/// Element of GF(p), stored reduced in [0, p).
struct Fe {
  std::uint64_t v = 0;

  constexpr Fe() = default;
  constexpr explicit Fe(std::uint64_t value) : v(value) {}

  friend constexpr bool operator==(Fe, Fe) = default;
};

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// GF(p) for a runtime prime p < 2^63.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p = kMersenne61) : p_(p) {
    if (p >= (std::uint64_t{1} << 63) || !is_prime_u64(p)) {
      throw Error(ErrorCode::kInvalidPrime, std::to_string(p) + " is not a prime below 2^63");
    }
  }

  std::uint64_t prime() const { return p_; }

  Fe from_int(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return Fe(static_cast<std::uint64_t>(r));
  }

  Fe add(Fe a, Fe b) const {
    std::uint64_t s = a.v + b.v;
    return Fe(s >= p_ ? s - p_ : s);
  }
  Fe sub(Fe a, Fe b) const { return Fe(a.v >= b.v ? a.v - b.v : a.v + p_ - b.v); }
  Fe neg(Fe a) const { return Fe(a.v == 0 ? 0 : p_ - a.v); }
  Fe mul(Fe a, Fe b) const { return Fe(detail::mulmod(a.v, b.v, p_)); }
  Fe pow(Fe a, std::uint64_t e) const { return Fe(detail::powmod(a.v, e, p_)); }

  /// Multiplicative inverse via Fermat; throws ZeroInverse for 0.
  Fe inv(Fe a) const {
    if (a.v == 0) throw Error(ErrorCode::kZeroInverse, "0 has no inverse mod " + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Counts scalar multiplications charged to a party.
struct MulCounter {
  std::uint64_t multiplications = 0;
};

/// Dense rows x cols matrix over GF(p), row-major. Also used as the scalar
/// matrix type of the linear solvers below.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static BlockMatrix identity(std::size_t n) {
    BlockMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Fe(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Fe& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Fe operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Fe> data() const { return data_; }
  std::span<Fe> data() { return data_; }

  bool is_zero() const {
    for (Fe x : data_)
      if (x.v != 0) return false;
    return true;
  }

  bool same_shape(const BlockMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  BlockMatrix transpose() const {
    BlockMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  BlockMatrix slice(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    BlockMatrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  void paste(std::size_t r0, std::size_t c0, const BlockMatrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fe> data_;
};

inline void require_same_shape(const BlockMatrix& a, const BlockMatrix& b, const char* what) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

inline BlockMatrix add(const PrimeField& f, const BlockMatrix& a, const BlockMatrix& b) {
  require_same_shape(a, b, "add");
  BlockMatrix out(a.rows(), a.cols());
  auto x = a.data();
  auto y = b.data();
  auto o = out.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = f.add(x[i], y[i]);
  return out;
}

inline void add_into(const PrimeField& f, BlockMatrix& acc, const BlockMatrix& b) {
  require_same_shape(acc, b, "add_into");
  auto o = acc.data();
  auto y = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = f.add(o[i], y[i]);
}

/// c * B; charges rows*cols multiplications.
inline BlockMatrix scale(const PrimeField& f, Fe c, const BlockMatrix& b, MulCounter* counter = nullptr) {
  BlockMatrix out(b.rows(), b.cols());
  auto x = b.data();
  auto o = out.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = f.mul(c, x[i]);
  if (counter) counter->multiplications += b.size();
  return out;
}

/// Schoolbook product; charges rows*inner*cols multiplications.
inline BlockMatrix multiply(const PrimeField& f, const BlockMatrix& a, const BlockMatrix& b,
                            MulCounter* counter = nullptr) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "multiply: inner dimensions " + std::to_string(a.cols()) +
                                               " and " + std::to_string(b.rows()));
  }
  BlockMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Fe aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
    }
  }
  if (counter) counter->multiplications += a.rows() * a.cols() * b.cols();
  return out;
}

/// Gauss-Jordan inverse of a square matrix; nullopt when singular.
inline std::optional<BlockMatrix> try_invert(const PrimeField& f, BlockMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kShapeMismatch, "try_invert: matrix not square");
  const std::size_t n = m.rows();
  BlockMatrix inv = BlockMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).v == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m(pivot, c), m(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Fe pinv = f.inv(m(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      m(col, c) = f.mul(m(col, c), pinv);
      inv(col, c) = f.mul(inv(col, c), pinv);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).v == 0) continue;
      const Fe factor = m(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(col, c)));
        inv(r, c) = f.sub(inv(r, c), f.mul(factor, inv(col, c)));
      }
    }
  }
  return inv;
}

/// Row rank by Gaussian elimination.
inline std::size_t rank(const PrimeField& f, BlockMatrix m) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, col).v == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(r, c));
    const Fe pinv = f.inv(m(r, col));
    for (std::size_t rr = r + 1; rr < m.rows(); ++rr) {
      if (m(rr, col).v == 0) continue;
      const Fe factor = f.mul(m(rr, col), pinv);
      for (std::size_t c = col; c < m.cols(); ++c) m(rr, c) = f.sub(m(rr, c), f.mul(factor, m(r, c)));
    }
    ++r;
  }
  return r;
}

inline void require_distinct(std::span<const Fe> points) {
  std::unordered_set<std::uint64_t> seen;
  for (Fe x : points) {
    if (!seen.insert(x.v).second) {
      throw Error(ErrorCode::kDuplicatePoints, "evaluation point " + std::to_string(x.v) + " repeated");
    }
  }
}

/// M[n][j] = points[n]^support[j].
inline BlockMatrix generalized_vandermonde(const PrimeField& f, std::span<const Fe> points,
                                           const PowerSet& support) {
  BlockMatrix m(points.size(), support.size());
  for (std::size_t n = 0; n < points.size(); ++n)
    for (std::size_t j = 0; j < support.size(); ++j)
      m(n, j) = f.pow(points[n], static_cast<std::uint64_t>(support[j]));
  return m;
}

/// Inverse of the generalized Vandermonde matrix on `support`. Row j of the
/// result maps evaluations at `points` to the coefficient of x^support[j].
inline BlockMatrix invert_on_support(const PrimeField& f, std::span<const Fe> points, const PowerSet& support) {
  if (points.size() != support.size()) {
    throw Error(ErrorCode::kShapeMismatch, "invert_on_support: " + std::to_string(points.size()) +
                                               " points for support of size " + std::to_string(support.size()));
  }
  require_distinct(points);
  for (Fe x : points) {
    if (x.v == 0) throw Error(ErrorCode::kSingularSupportMatrix, "evaluation point 0 is not allowed");
  }
  auto inv = try_invert(f, generalized_vandermonde(f, points, support));
  if (!inv) {
    throw Error(ErrorCode::kSingularSupportMatrix,
                "generalized Vandermonde on " + support.to_string() + " is singular for these points");
  }
  return *std::move(inv);
}

/// Coefficients c_0..c_{k-1} of the unique polynomial of degree < k through
/// (points[n], values[n]), with block-valued coefficients.
inline std::vector<BlockMatrix> solve_vandermonde(const PrimeField& f, std::span<const Fe> points,
                                                  std::span<const BlockMatrix> values) {
  if (points.size() != values.size() || points.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "solve_vandermonde: " + std::to_string(points.size()) +
                                               " points, " + std::to_string(values.size()) + " values");
  }
  require_distinct(points);
  for (const auto& v : values) require_same_shape(values.front(), v, "solve_vandermonde");
  const PowerSet dense = PowerSet::interval(0, static_cast<Exponent>(points.size()) - 1);
  auto inv = try_invert(f, generalized_vandermonde(f, points, dense));
  if (!inv) throw Error(ErrorCode::kDuplicatePoints, "Vandermonde matrix singular");
  std::vector<BlockMatrix> coeffs;
  coeffs.reserve(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    BlockMatrix c(values.front().rows(), values.front().cols());
    for (std::size_t n = 0; n < points.size(); ++n) {
      if ((*inv)(j, n).v != 0) add_into(f, c, scale(f, (*inv)(j, n), values[n]));
    }
    coeffs.push_back(std::move(c));
  }
  return coeffs;
}

}  // namespace agecmpc

#endif  // AGECMPC_FIELD_HPP
