// Copyright The skewsep Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "skewsep/criteria.hpp"
#include "skewsep/errors.hpp"
#include "skewsep/loo.hpp"
#include "skewsep/optimize.hpp"
#include "skewsep/zoo.hpp"

namespace skewsep {
namespace {

TEST(Strategy, ParseAndPrint) {
  for (auto s : {BasisStrategy::Canonical, BasisStrategy::Schmidt, BasisStrategy::Optimized})
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_FALSE(parse_strategy("best").has_value());
}

TEST(ReducedWitness, AgreesWithDirectEvaluation) {
  Rng rng(61);
  for (std::size_t d : {2u, 3u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = random_density(d, d, 1 + rep % (d * d), rng);
      const RealMatrix oa = random_orthogonal(d * d, rng);
      const RealMatrix ob = random_orthogonal(d * d, rng);
      const BasisPair bp = rotated_pair(d, oa, ob);
      for (auto kind : {CriterionKind::Lur, CriterionKind::Skew}) {
        const ReducedWitness w = reduced_witness(rho, kind);
        EXPECT_NEAR(w.value(oa, ob), evaluate_pair(rho, kind, bp).value, 1e-11);
      }
    }
  }
}

TEST(ReducedWitness, ExtremeMatchesEigenNuclearNorm) {
  Rng rng(62);
  const DensityMatrix rho = random_density(3, 3, 5, rng);
  for (auto kind : {CriterionKind::Lur, CriterionKind::Skew}) {
    const ReducedWitness w = reduced_witness(rho, kind);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(testing::to_eigen(w.coupling));
    EXPECT_NEAR(w.extreme_value(), w.offset + w.sign * svd.singularValues().sum(), 1e-11);
  }
}

TEST(Optimize, NeverBeatsTheExtremeAndGetsClose) {
  Rng rng(63);
  for (std::size_t d : {2u, 3u}) {
    for (int rep = 0; rep < 6; ++rep) {
      const DensityMatrix rho = random_density(d, d, 1 + rep % (d * d), rng);
      for (auto kind : {CriterionKind::Lur, CriterionKind::Skew}) {
        const auto res = optimize_basis(rho, kind, {}, 1000 + rep);
        const double extreme = res.report.detail["extreme_value"].get<double>();
        const double gap = kind == CriterionKind::Lur ? res.report.value - extreme : extreme - res.report.value;
        EXPECT_GE(gap, -1e-9);
        EXPECT_LT(gap, 1e-3);
        EXPECT_TRUE(verify_loo(res.bases.a).pass);
        EXPECT_TRUE(verify_loo(res.bases.b).pass);
      }
    }
  }
}

TEST(Optimize, ImprovesOnSchmidtStart) {
  Rng rng(64);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho = random_density(3, 3, 3, rng);
    const double s_skew = evaluate_criterion(rho, CriterionKind::Skew, BasisStrategy::Schmidt, {}, 0).value;
    const double o_skew = evaluate_criterion(rho, CriterionKind::Skew, BasisStrategy::Optimized, {}, 5).value;
    EXPECT_GE(o_skew, s_skew - 1e-12);
    const double s_lur = evaluate_criterion(rho, CriterionKind::Lur, BasisStrategy::Schmidt, {}, 0).value;
    const double o_lur = evaluate_criterion(rho, CriterionKind::Lur, BasisStrategy::Optimized, {}, 5).value;
    EXPECT_LE(o_lur, s_lur + 1e-12);
  }
}

TEST(Optimize, ZeroBudgetReturnsSchmidt) {
  Rng rng(65);
  const DensityMatrix rho = random_density(2, 2, 2, rng);
  OptimizerConfig none;
  none.restarts = 0;
  none.steps = 0;
  for (auto kind : {CriterionKind::Lur, CriterionKind::Skew}) {
    const double opt = optimize_basis(rho, kind, none, 9).report.value;
    const double sch = evaluate_criterion(rho, kind, BasisStrategy::Schmidt, none, 9).value;
    EXPECT_DOUBLE_EQ(opt, sch);
  }
}

TEST(Optimize, DeterministicPerSeed) {
  Rng rng(66);
  const DensityMatrix rho = random_density(3, 3, 6, rng);
  const auto a = optimize_basis(rho, CriterionKind::Skew, {}, 77);
  const auto b = optimize_basis(rho, CriterionKind::Skew, {}, 77);
  EXPECT_EQ(a.report.value, b.report.value);
  EXPECT_EQ(a.bases.rotationA, b.bases.rotationA);
  EXPECT_EQ(to_json(a.report).dump(), to_json(b.report).dump());
}

TEST(Optimize, SchmidtOrientationPerCriterion) {
  const DensityMatrix rho = bell_state(3);
  const BasisPair lur = schmidt_pair(rho, CriterionKind::Lur);
  const BasisPair skew = schmidt_pair(rho, CriterionKind::Skew);
  for (std::size_t k = 0; k < 9; ++k) {
    EXPECT_LT(max_abs_diff(lur.a[k], skew.a[k]), 1e-15);
    EXPECT_LT(max_abs_diff(lur.b[k], -1.0 * skew.b[k]), 1e-15);
  }
  // |phi+_3>, all nine Schmidt weights 1/3, marginals I/3:
  //   LUR  = 1 - 3 - 0 = -2
  //   skew = 1 + 3 - (1/2) <I/sqrt3 (x) 1 + 1 (x) I/sqrt3>^2 = 4 - 2/3
  EXPECT_NEAR(evaluate_pair(rho, CriterionKind::Lur, lur).value, -2.0, 1e-12);
  EXPECT_NEAR(evaluate_pair(rho, CriterionKind::Skew, skew).value, 10.0 / 3.0, 1e-12);
}

TEST(Optimize, RejectsUnequalDims) {
  EXPECT_THROW(reduced_witness(DensityMatrix::maximally_mixed(2, 3), CriterionKind::Lur), Error);
}

}  // namespace
}  // namespace skewsep
