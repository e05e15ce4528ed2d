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


#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "agecmpc/coding.hpp"
#include "agecmpc/powersets.hpp"
#include "test_support.hpp"

namespace agecmpc {
namespace {

using testing::error_code_of;
using testing::random_matrix;
using testing::ref_mul;
using testing::ref_pow;

TEST(Partition, IdentitySplitsIntoDiagonalBlocks) {
  const auto p = PartitionScheme::make(2, 2, 2, 2);
  const BlockGrid g = partition({BlockMatrix::identity(4), Role::kA}, p);
  ASSERT_EQ(g.rows, 2u);
  ASSERT_EQ(g.cols, 2u);
  EXPECT_EQ(g.at(0, 0), BlockMatrix::identity(2));
  EXPECT_EQ(g.at(1, 1), BlockMatrix::identity(2));
  EXPECT_TRUE(g.at(0, 1).is_zero());
  EXPECT_TRUE(g.at(1, 0).is_zero());
}

TEST(Partition, ShapesAndRoundTrip) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 3, 1, 0);
  const BlockMatrix a = random_matrix(f, 12, 12, 1);
  const BlockGrid ga = partition({a, Role::kA}, p);
  EXPECT_EQ(ga.rows, 3u);
  EXPECT_EQ(ga.cols, 2u);
  EXPECT_EQ(ga.at(0, 0).rows(), 4u);
  EXPECT_EQ(ga.at(0, 0).cols(), 6u);
  EXPECT_EQ(assemble(ga), a.transpose());
  const BlockGrid gb = partition({a, Role::kB}, p);
  EXPECT_EQ(gb.rows, 2u);
  EXPECT_EQ(gb.cols, 3u);
  EXPECT_EQ(assemble(gb), a);
}

TEST(Partition, SingleColumnTakesColumnSlicesOfTranspose) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 1, 1, 0);
  BlockMatrix a(2, 2);
  a(0, 0) = Fe(1);
  a(0, 1) = Fe(2);
  a(1, 0) = Fe(3);
  a(1, 1) = Fe(4);
  const BlockGrid g = partition({a, Role::kA}, p);
  ASSERT_EQ(g.blocks.size(), 2u);
  EXPECT_EQ(g.at(0, 0)(0, 0).v, 1u);
  EXPECT_EQ(g.at(0, 0)(1, 0).v, 2u);
  EXPECT_EQ(g.at(0, 1)(0, 0).v, 3u);
  EXPECT_EQ(g.at(0, 1)(1, 0).v, 4u);
}

TEST(Partition, RejectsIndivisibleInput) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 3, 1, 0);
  EXPECT_EQ(error_code_of([&] { partition({BlockMatrix(8, 8), Role::kA}, p); }), ErrorCode::kIndivisibleDimensions);
  EXPECT_EQ(error_code_of([&] { partition({BlockMatrix(6, 12), Role::kA}, p); }), ErrorCode::kShapeMismatch);
}

TEST(MaskedPolynomials, TwoByTwoSupportsAndShapes) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 2, 2, 2);
  const auto sh = build_masked_polynomials(f, {random_matrix(f, 4, 4, 1), Role::kA},
                                           {random_matrix(f, 4, 4, 2), Role::kB}, p, 5);
  EXPECT_EQ(sh.fa.support(), PowerSet::interval(0, 5));
  EXPECT_EQ(sh.fb.support(), (PowerSet{0, 1, 6, 7, 10, 11}));
  for (const auto& [e, blk] : sh.fa.coeffs) {
    EXPECT_EQ(blk.rows(), 2u);
    EXPECT_EQ(blk.cols(), 2u);
  }
}

TEST(MaskedPolynomials, CodedCoefficientsSitAtTheirPowers) {
  const PrimeField f;
  const auto p = PartitionScheme::make(3, 2, 4, 1);
  const BlockMatrix a = random_matrix(f, 6, 6, 3), b = random_matrix(f, 6, 6, 4);
  const auto sh = build_masked_polynomials(f, {a, Role::kA}, {b, Role::kB}, p, 9);
  const BlockGrid ga = partition({a, Role::kA}, p), gb = partition({b, Role::kB}, p);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(sh.fa.at(static_cast<Exponent>(j + 3 * i)), ga.at(i, j));
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t k = 0; k < 3; ++k)
      EXPECT_EQ(sh.fb.at(static_cast<Exponent>((2 - k) + p.theta() * static_cast<std::int64_t>(l))), gb.at(k, l));
}

TEST(MaskedPolynomials, DeterministicPerSeed) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 3, 3, 1);
  const BlockMatrix a = random_matrix(f, 6, 6, 1), b = random_matrix(f, 6, 6, 2);
  const auto x = build_masked_polynomials(f, {a, Role::kA}, {b, Role::kB}, p, 42);
  const auto y = build_masked_polynomials(f, {a, Role::kA}, {b, Role::kB}, p, 42);
  const auto z = build_masked_polynomials(f, {a, Role::kA}, {b, Role::kB}, p, 43);
  EXPECT_EQ(x.fa.coeffs, y.fa.coeffs);
  EXPECT_EQ(x.fb.coeffs, y.fb.coeffs);
  EXPECT_NE(x.fa.coeffs, z.fa.coeffs);
}

TEST(Evaluate, ZeroOneAndEntrywiseReference) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 2, 2, 2);
  const auto sh = build_masked_polynomials(f, {random_matrix(f, 4, 4, 1), Role::kA},
                                           {random_matrix(f, 4, 4, 2), Role::kB}, p, 5);
  EXPECT_EQ(evaluate(f, sh.fa, Fe(0)), sh.fa.at(0));
  EXPECT_TRUE(evaluate(f, sh.fb, Fe(0)) == sh.fb.at(0));
  BlockMatrix sum(2, 2);
  for (const auto& [e, blk] : sh.fa.coeffs) add_into(f, sum, blk);
  EXPECT_EQ(evaluate(f, sh.fa, Fe(1)), sum);

  const BlockMatrix at2 = evaluate(f, sh.fa, Fe(2));
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      unsigned __int128 acc = 0;
      for (const auto& [e, blk] : sh.fa.coeffs)
        acc = (acc + ref_mul(blk(r, c).v, ref_pow(2, static_cast<std::uint64_t>(e), f.prime()), f.prime())) %
              f.prime();
      EXPECT_EQ(at2(r, c).v, static_cast<std::uint64_t>(acc));
    }
}

TEST(Evaluate, ConstantTermIsNotCharged) {
  const PrimeField f;
  MaskedPolynomial g;
  g.block_rows = 2;
  g.block_cols = 3;
  for (Exponent e = 0; e < 5; ++e) g.coeffs.emplace(e, random_matrix(f, 2, 3, 10 + e));
  MulCounter c;
  (void)evaluate(f, g, Fe(7), &c);
  EXPECT_EQ(c.multiplications, 4u * 6u);
}

TEST(SymbolicProduct, TwoByTwoSupportIsDense) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 2, 2, 2);
  const auto sh = build_masked_polynomials(f, {random_matrix(f, 4, 4, 1), Role::kA},
                                           {random_matrix(f, 4, 4, 2), Role::kB}, p, 5);
  EXPECT_EQ(symbolic_product_support(f, sh.fa, sh.fb), PowerSet::interval(0, 16));
}

TEST(SymbolicProduct, ZeroInputsGiveEmptySupport) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 2, 2, 2);
  const auto sh = build_masked_polynomials(f, {BlockMatrix(4, 4), Role::kA}, {BlockMatrix(4, 4), Role::kB}, p, 5,
                                           MaskMode::kZero);
  EXPECT_TRUE(symbolic_product_support(f, sh.fa, sh.fb).empty());
}

TEST(SymbolicProduct, ShapeMismatch) {
  const PrimeField f;
  MaskedPolynomial x, y;
  x.block_rows = 2;
  x.block_cols = 3;
  y.block_rows = 2;
  y.block_cols = 2;
  EXPECT_EQ(error_code_of([&] { symbolic_product_support(f, x, y); }), ErrorCode::kShapeMismatch);
}

TEST(SymbolicProduct, ImportantCoefficientsAreBlockProducts) {
  const PrimeField f;
  for (auto mode : {MaskMode::kZero, MaskMode::kUniform}) {
    const auto p = PartitionScheme::make(2, 3, 3, 1);
    const BlockMatrix a = random_matrix(f, 6, 6, 21), b = random_matrix(f, 6, 6, 22);
    const auto sh = build_masked_polynomials(f, {a, Role::kA}, {b, Role::kB}, p, 8, mode);
    const MaskedPolynomial h = symbolic_product(f, sh.fa, sh.fb);
    const BlockMatrix y = testing::ref_atb(a, b, f.prime());
    for (const auto& ip : important_powers(p)) {
      const BlockMatrix expected = y.slice(static_cast<std::size_t>(ip.i) * 2, static_cast<std::size_t>(ip.l) * 2, 2, 2);
      EXPECT_EQ(h.at(ip.exponent), expected) << ip.i << "," << ip.l;
    }
  }
}

TEST(SymbolicProduct, ZeroMasksLeaveOnlyCodedTerms) {
  const PrimeField f;
  const auto p = PartitionScheme::make(2, 3, 4, 2);
  const auto sh = build_masked_polynomials(f, {random_matrix(f, 6, 6, 1), Role::kA},
                                           {random_matrix(f, 6, 6, 2), Role::kB}, p, 3, MaskMode::kZero);
  EXPECT_EQ(symbolic_product_support(f, sh.fa, sh.fb), product_terms(p).d1);
}

TEST(SymbolicProduct, AgreesWithSumsetSupportAcrossSchemes) {
  const PrimeField f;
  CounterRng rng(77, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = static_cast<std::int64_t>(1 + rng.below(4));
    const auto t = static_cast<std::int64_t>(1 + rng.below(4));
    if (s == 1 && t == 1) continue;
    const auto z = static_cast<std::int64_t>(1 + rng.below(8));
    const auto lam = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(z + 1)));
    const auto p = PartitionScheme::make(s, t, z, lam);
    const auto m = static_cast<std::size_t>(s * t);
    const auto sh = build_masked_polynomials(f, {random_matrix(f, m, m, 100 + trial), Role::kA},
                                             {random_matrix(f, m, m, 200 + trial), Role::kB}, p, trial);
    EXPECT_EQ(symbolic_product_support(f, sh.fa, sh.fb), product_support(p)) << p.to_string();
  }
}

}  // namespace
}  // namespace agecmpc
