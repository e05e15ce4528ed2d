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

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agecmpc/powersets.hpp"
#include "agecmpc/workercount.hpp"
#include "test_support.hpp"

namespace agecmpc {
namespace {

using testing::error_code_of;

PartitionScheme scheme(std::int64_t s, std::int64_t t, std::int64_t z, std::int64_t lambda = 0) {
  return PartitionScheme::make(s, t, z, lambda);
}

template <class Fn>
void for_each_grid_scheme(Fn&& fn) {
  for (std::int64_t s = 1; s <= 6; ++s)
    for (std::int64_t t = 2; t <= 6; ++t)
      for (std::int64_t z = 1; z <= 20; ++z)
        for (std::int64_t lam = 0; lam <= z; ++lam) fn(scheme(s, t, z, lam));
}

template <class Fn>
void for_each_grid_triple(Fn&& fn) {
  for (std::int64_t s = 1; s <= 6; ++s)
    for (std::int64_t t = 1; t <= 6; ++t) {
      if (s == 1 && t == 1) continue;
      for (std::int64_t z = 1; z <= 20; ++z) fn(scheme(s, t, z));
    }
}

TEST(Gamma, TwoByTwoByTwo) {
  EXPECT_EQ(gamma(scheme(2, 2, 2, 2)), (GammaValue{17, UpsilonCase::k3}));
  EXPECT_EQ(gamma(scheme(2, 2, 2, 0)), (GammaValue{19, UpsilonCase::k2}));
  EXPECT_EQ(gamma(scheme(2, 2, 2, 1)), (GammaValue{18, UpsilonCase::k9}));
  EXPECT_EQ(to_string(UpsilonCase::k9), "U9");
}

TEST(Gamma, RequiresTwoOrMoreColumnPartitions) {
  EXPECT_EQ(error_code_of([] { gamma(scheme(3, 1, 2, 1)); }), ErrorCode::kInvalidScheme);
}

TEST(Gamma, ExactlyOneGuardFiresOnGrid) {
  for_each_grid_scheme([](const PartitionScheme& p) {
    const auto cases = matching_cases(p);
    ASSERT_EQ(cases.size(), 1u) << p.to_string();
    EXPECT_EQ(gamma(p).label, cases.front());
  });
}

TEST(Gamma, BranchesWithoutBoundaryTermsMatchSupport) {
  for_each_grid_scheme([](const PartitionScheme& p) {
    const GammaValue g = gamma(p);
    const std::vector<UpsilonCase> exact{UpsilonCase::k1, UpsilonCase::k3, UpsilonCase::k4, UpsilonCase::k6,
                                         UpsilonCase::k8};
    if (std::find(exact.begin(), exact.end(), g.label) == exact.end()) return;
    ASSERT_EQ(g.count, static_cast<Count>(product_support(p).size())) << p.to_string() << " " << to_string(g.label);
  });
}

// Known disagreement between the closed form and the explicit sumset, per branch.
TEST(Gamma, DisagreementWithSupportIsConfinedToFourBranches) {
  std::map<std::string, int> by_case;
  for_each_grid_scheme([&](const PartitionScheme& p) {
    const GammaValue g = gamma(p);
    if (g.count != static_cast<Count>(product_support(p).size())) ++by_case[to_string(g.label)];
  });
  const std::map<std::string, int> expected{{"U2", 296}, {"U5", 55}, {"U7", 140}, {"U9", 11}};
  EXPECT_EQ(by_case, expected);
}

TEST(Gamma, SupportBoundedByMaskDegrees) {
  for_each_grid_scheme([](const PartitionScheme& p) {
    const Count bound = powers_secret_a(p).max() + powers_secret_b(p).max() + 1;
    ASSERT_LE(static_cast<Count>(product_support(p).size()), bound) << p.to_string();
  });
}

TEST(NAge, Examples) {
  const AgeCount ex1 = n_age(scheme(2, 2, 2));
  EXPECT_EQ(ex1.n, 17);
  EXPECT_EQ(ex1.lambda_star, 2);
  const AgeCount single = n_age(scheme(2, 1, 2));
  EXPECT_EQ(single.n, 7);
  EXPECT_FALSE(single.lambda_star.has_value());
  const AgeCount tie = n_age(scheme(2, 3, 3));
  EXPECT_EQ(tie.n, 35);
  EXPECT_EQ(tie.lambda_star, 1);
  std::vector<Count> g;
  for (std::int64_t lam = 0; lam <= 3; ++lam) g.push_back(gamma(scheme(2, 3, 3, lam)).count);
  EXPECT_EQ(g, (std::vector<Count>{39, 35, 35, 35}));
}

TEST(NAge, EqualsMinimumSupportOnGrid) {
  for_each_grid_triple([](const PartitionScheme& p) {
    if (p.t() == 1) return;
    Count best = -1;
    for (std::int64_t lam = 0; lam <= p.z(); ++lam) {
      const auto n = static_cast<Count>(product_support(p.with_lambda(lam)).size());
      if (best < 0 || n < best) best = n;
    }
    const AgeCount age = n_age(p);
    ASSERT_EQ(age.n, best) << p.to_string();
    ASSERT_EQ(static_cast<Count>(product_support(p.with_lambda(*age.lambda_star)).size()), best) << p.to_string();
  });
}

TEST(Baselines, Examples) {
  EXPECT_EQ(n_entangled(scheme(2, 2, 2)), 19);
  EXPECT_EQ(n_entangled(scheme(2, 1, 2)), 7);
  EXPECT_EQ(n_entangled(scheme(2, 3, 3)), 39);
  EXPECT_EQ(n_ssmm(scheme(2, 2, 2)), 17);
  EXPECT_EQ(n_ssmm(scheme(3, 1, 1)), 7);
  EXPECT_EQ(n_ssmm(scheme(1, 6, 42)), 335);
  EXPECT_EQ(n_gcsa_na(scheme(2, 2, 2)), 19);
  EXPECT_EQ(n_gcsa_na(scheme(2, 1, 2)), 7);
  EXPECT_EQ(n_gcsa_na(scheme(1, 36, 42)), 2675);
  EXPECT_EQ(n_polydot(scheme(4, 1, 3)), 13);
  EXPECT_EQ(n_polydot(scheme(2, 3, 10)), 61);
  EXPECT_FALSE(n_polydot(scheme(2, 2, 2)).has_value());
  EXPECT_EQ(n_polydot(scheme(1, 2, 1)), 9);
  EXPECT_EQ(n_polydot(scheme(1, 2, 2)), 11);
}

TEST(Baselines, EntangledEqualsGammaAtZero) {
  for_each_grid_triple([](const PartitionScheme& p) {
    if (p.t() == 1) return;
    ASSERT_EQ(n_entangled(p), gamma(p.with_lambda(0)).count) << p.to_string();
  });
}

TEST(Baselines, PolyDotLargeZMatchesGammaAtTsMinusT) {
  const auto p = scheme(2, 3, 10);
  EXPECT_EQ(gamma(p.with_lambda(p.ts() - p.t())).count, *n_polydot(p));
}

TEST(Compare, TwoByTwoByTwo) {
  const WorkerCountReport r = compare(scheme(2, 2, 2));
  EXPECT_EQ(r.n_age, 17);
  EXPECT_EQ(r.lambda_star, 2);
  EXPECT_EQ(r.gamma_table.size(), 3u);
  EXPECT_EQ(r.n_entangled, 19);
  EXPECT_EQ(r.n_ssmm, 17);
  EXPECT_EQ(r.n_gcsa_na, 19);
  EXPECT_FALSE(r.n_polydot.has_value());
  EXPECT_TRUE(r.dominance.all());
}

TEST(Compare, SingleColumnAllEqual) {
  for (std::int64_t s = 2; s <= 6; ++s) {
    const WorkerCountReport r = compare(scheme(s, 1, 3));
    const Count n = 2 * s + 5;
    EXPECT_EQ(r.n_age, n);
    EXPECT_EQ(r.n_entangled, n);
    EXPECT_EQ(r.n_ssmm, n);
    EXPECT_EQ(r.n_gcsa_na, n);
    EXPECT_EQ(r.n_polydot, n);
    EXPECT_TRUE(r.gamma_table.empty());
    EXPECT_TRUE(r.dominance.all());
  }
}

TEST(Compare, BaselinesDominatedOnGrid) {
  for_each_grid_triple([](const PartitionScheme& p) {
    const WorkerCountReport r = compare(p);
    ASSERT_TRUE(r.dominance.all()) << p.to_string();
  });
}

struct SweepRowRef {
  std::int64_t s;
  Count n_age;
  std::int64_t lambda_star;
  Count entangled, ssmm, gcsa, polydot;
};

TEST(Compare, FixedProductSweep) {
  const std::vector<SweepRowRef> rows{
      {1, 1840, 7, 2675, 2885, 2675, 2675}, {2, 1062, 11, 1379, 1481, 1379, 1145},
      {3, 777, 14, 947, 1013, 947, 851},    {4, 627, 14, 731, 779, 731, 695},
      {6, 476, 21, 515, 545, 515, 521},     {9, 362, 21, 371, 389, 371, 395},
      {12, 299, 0, 299, 311, 299, 329},     {18, 227, 0, 227, 233, 227, 261},
  };
  Count previous = -1;
  for (const auto& ref : rows) {
    const WorkerCountReport r = compare(scheme(ref.s, 36 / ref.s, 42));
    EXPECT_EQ(r.n_age, ref.n_age) << ref.s;
    EXPECT_EQ(r.lambda_star, ref.lambda_star) << ref.s;
    EXPECT_EQ(r.n_entangled, ref.entangled);
    EXPECT_EQ(r.n_ssmm, ref.ssmm);
    EXPECT_EQ(r.n_gcsa_na, ref.gcsa);
    EXPECT_EQ(r.n_polydot, ref.polydot);
    EXPECT_TRUE(r.dominance.all());
    if (previous >= 0) {
      EXPECT_LT(r.n_age, previous);  // s ascending means t descending
    }
    previous = r.n_age;
  }
  const WorkerCountReport last = compare(scheme(36, 1, 42));
  EXPECT_EQ(last.n_age, 155);
  EXPECT_FALSE(last.lambda_star.has_value());
}

}  // namespace
}  // namespace agecmpc
