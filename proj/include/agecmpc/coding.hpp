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

// Block partitioning of the inputs, the masked share polynomials F_A and F_B,
// their evaluation, and a coefficient-level product used as an oracle.

#ifndef AGECMPC_CODING_HPP
#define AGECMPC_CODING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "agecmpc/errors.hpp"
#include "agecmpc/field.hpp"
#include "agecmpc/powersets.hpp"
#include "agecmpc/rng.hpp"

namespace agecmpc {

enum class Role { kA, kB };

/// A source matrix together with the side of the product it feeds.
struct SourceInput {
  BlockMatrix matrix;
  Role role;
};

/// Row-major grid of equally shaped blocks.
struct BlockGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BlockMatrix> blocks;

  BlockMatrix& at(std::size_t r, std::size_t c) { return blocks[r * cols + c]; }
  const BlockMatrix& at(std::size_t r, std::size_t c) const { return blocks[r * cols + c]; }
};

inline std::size_t require_divisible(const BlockMatrix& m, const PartitionScheme& p) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                "input must be square, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const auto dim = static_cast<std::int64_t>(m.rows());
  if (dim == 0 || dim % p.s() != 0 || dim % p.t() != 0) {
    throw Error(ErrorCode::kIndivisibleDimensions,
                "m = " + std::to_string(dim) + " must be divisible by s = " + std::to_string(p.s()) +
                    " and t = " + std::to_string(p.t()));
  }
  if (p.m() && *p.m() != dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "input is " + std::to_string(dim) + "x" + std::to_string(dim) + " but scheme has m = " +
                    std::to_string(*p.m()));
  }
  return m.rows();
}

/// A side: t x s grid of (m/t) x (m/s) blocks A_{i,j} of A^T.
/// B side: s x t grid of (m/s) x (m/t) blocks B_{k,l} of B.
inline BlockGrid partition(const SourceInput& in, const PartitionScheme& p) {
  const std::size_t m = require_divisible(in.matrix, p);
  const auto s = static_cast<std::size_t>(p.s());
  const auto t = static_cast<std::size_t>(p.t());
  const BlockMatrix src = in.role == Role::kA ? in.matrix.transpose() : in.matrix;
  BlockGrid g;
  g.rows = in.role == Role::kA ? t : s;
  g.cols = in.role == Role::kA ? s : t;
  const std::size_t br = m / g.rows;
  const std::size_t bc = m / g.cols;
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) g.blocks.push_back(src.slice(r * br, c * bc, br, bc));
  return g;
}

/// Inverse of partition for any grid: stitches the blocks back together.
inline BlockMatrix assemble(const BlockGrid& g) {
  if (g.blocks.empty()) return {};
  const std::size_t br = g.blocks.front().rows();
  const std::size_t bc = g.blocks.front().cols();
  BlockMatrix out(g.rows * br, g.cols * bc);
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) {
      require_same_shape(g.blocks.front(), g.at(r, c), "assemble");
      out.paste(r * br, c * bc, g.at(r, c));
    }
  return out;
}

/// Sparse polynomial with matrix coefficients; keys of `coeffs` are the support.
struct MaskedPolynomial {
  std::map<Exponent, BlockMatrix> coeffs;
  std::size_t block_rows = 0;
  std::size_t block_cols = 0;

  PowerSet support() const {
    std::vector<Exponent> xs;
    xs.reserve(coeffs.size());
    for (const auto& [e, _] : coeffs) xs.push_back(e);
    return PowerSet(std::move(xs));
  }

  const BlockMatrix& at(Exponent e) const { return coeffs.at(e); }
};

enum class MaskMode {
  kUniform,  // masks drawn uniformly from the field
  kZero,     // masks forced to zero blocks (test hook)
};

struct SharePolynomials {
  MaskedPolynomial fa;
  MaskedPolynomial fb;
};

/// F_A = C_A + S_A and F_B = C_B + S_B. A_{i,j} sits at x^{j+si},
/// B_{k,l} at x^{(s-1-k)+theta l}; masks at powers_secret_a / powers_secret_b,
/// drawn from independent source streams of `seed`.
inline SharePolynomials build_masked_polynomials(const PrimeField& f, const SourceInput& a, const SourceInput& b,
                                                 const PartitionScheme& p, std::uint64_t seed,
                                                 MaskMode mode = MaskMode::kUniform) {
  if (a.role != Role::kA || b.role != Role::kB) {
    throw Error(ErrorCode::kShapeMismatch, "build_masked_polynomials expects an A-side and a B-side input");
  }
  const BlockGrid ga = partition(a, p);
  const BlockGrid gb = partition(b, p);
  const std::size_t m = a.matrix.rows();
  if (b.matrix.rows() != m) throw Error(ErrorCode::kShapeMismatch, "A and B must have the same size");
  const auto s = p.s(), t = p.t();

  SharePolynomials out;
  out.fa.block_rows = m / static_cast<std::size_t>(t);
  out.fa.block_cols = m / static_cast<std::size_t>(s);
  out.fb.block_rows = out.fa.block_cols;
  out.fb.block_cols = out.fa.block_rows;

  for (std::int64_t i = 0; i < t; ++i)
    for (std::int64_t j = 0; j < s; ++j)
      out.fa.coeffs.emplace(j + s * i, ga.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  for (std::int64_t l = 0; l < t; ++l)
    for (std::int64_t k = 0; k < s; ++k)
      out.fb.coeffs.emplace((s - 1 - k) + p.theta() * l,
                            gb.at(static_cast<std::size_t>(k), static_cast<std::size_t>(l)));

  auto add_masks = [&](MaskedPolynomial& poly, const PowerSet& powers, Stream stream) {
    CounterRng rng(seed, stream_id(stream));
    for (Exponent e : powers) {
      BlockMatrix mask = mode == MaskMode::kUniform ? rng.uniform_block(f, poly.block_rows, poly.block_cols)
                                                    : BlockMatrix(poly.block_rows, poly.block_cols);
      poly.coeffs.emplace(e, std::move(mask));
    }
  };
  add_masks(out.fa, powers_secret_a(p), Stream::kSourceA);
  add_masks(out.fb, powers_secret_b(p), Stream::kSourceB);
  return out;
}

/// Sum of coeff * x^e over the support, ascending. The x^0 term is added
/// without a scaling multiplication; every other term charges one block scale.
inline BlockMatrix evaluate(const PrimeField& f, const MaskedPolynomial& poly, Fe x, MulCounter* counter = nullptr) {
  BlockMatrix acc(poly.block_rows, poly.block_cols);
  Fe power(1);
  Exponent current = 0;
  for (const auto& [e, block] : poly.coeffs) {
    power = f.mul(power, f.pow(x, static_cast<std::uint64_t>(e - current)));
    current = e;
    if (e == 0) {
      add_into(f, acc, block);
    } else {
      add_into(f, acc, scale(f, power, block, counter));
    }
  }
  return acc;
}

/// Coefficient-level product F_A * F_B (block products, no evaluation).
inline MaskedPolynomial symbolic_product(const PrimeField& f, const MaskedPolynomial& fa,
                                         const MaskedPolynomial& fb) {
  if (fa.block_cols != fb.block_rows) {
    throw Error(ErrorCode::kShapeMismatch, "symbolic_product: block shapes " + std::to_string(fa.block_rows) +
                                               "x" + std::to_string(fa.block_cols) + " and " +
                                               std::to_string(fb.block_rows) + "x" +
                                               std::to_string(fb.block_cols) + " do not conform");
  }
  MaskedPolynomial h;
  h.block_rows = fa.block_rows;
  h.block_cols = fb.block_cols;
  for (const auto& [ea, ba] : fa.coeffs) {
    for (const auto& [eb, bb] : fb.coeffs) {
      BlockMatrix prod = multiply(f, ba, bb);
      auto [it, inserted] = h.coeffs.try_emplace(ea + eb, std::move(prod));
      if (!inserted) add_into(f, it->second, prod);
    }
  }
  return h;
}

/// Exponents of F_A * F_B whose coefficient block is nonzero.
inline PowerSet symbolic_product_support(const PrimeField& f, const MaskedPolynomial& fa,
                                         const MaskedPolynomial& fb) {
  const MaskedPolynomial h = symbolic_product(f, fa, fb);
  std::vector<Exponent> xs;
  for (const auto& [e, block] : h.coeffs)
    if (!block.is_zero()) xs.push_back(e);
  return PowerSet(std::move(xs));
}

}  // namespace agecmpc

#endif  // AGECMPC_CODING_HPP
