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
#include "skewsep/linalg.hpp"
#include "skewsep/loo.hpp"
#include "skewsep/optimize.hpp"
#include "skewsep/zoo.hpp"

namespace skewsep {
namespace {

using testing::oracle_skew;
using testing::oracle_variance;
using testing::random_hermitian;
using testing::to_eigen;

TEST(SkewInformation, MatchesDefinition) {
  Rng rng(51);
  for (std::size_t d = 2; d <= 5; ++d) {
    for (std::size_t rank = 1; rank <= d; ++rank) {
      const DensityMatrix rho = random_density(d, 1, rank, rng);
      const ComplexMatrix m = random_hermitian(d, rng);
      const Observable obs(m);
      EXPECT_NEAR(skew_information(rho, obs), oracle_skew(to_eigen(rho.matrix()), to_eigen(m)), 1e-11);
      EXPECT_NEAR(variance(rho, obs), oracle_variance(to_eigen(rho.matrix()), to_eigen(m)), 1e-11);
      EXPECT_NEAR(expectation(rho, obs), (to_eigen(rho.matrix()) * to_eigen(m)).trace().real(), 1e-12);
    }
  }
}

TEST(SkewInformation, QubitClosedForm) {
  // rho = diag(a, 1-a), M = sigma_x: I = 1 - 2 sqrt(a(1-a)), var = 1.
  ComplexMatrix x(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  for (double a : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
    const DensityMatrix rho(ComplexMatrix::diagonal(std::vector<double>{a, 1.0 - a}), 2);
    EXPECT_NEAR(skew_information(rho, Observable(x)), 1.0 - 2.0 * std::sqrt(a * (1.0 - a)), 1e-13) << a;
    EXPECT_NEAR(variance(rho, Observable(x)), 1.0, 1e-14);
  }
}

TEST(SkewInformation, CommutingObservableGivesZero) {
  Rng rng(52);
  const DensityMatrix rho = random_density(4, 1, 3, rng);
  // rho itself commutes with rho.
  EXPECT_NEAR(skew_information(rho, Observable(rho.matrix())), 0.0, 1e-13);
  EXPECT_NEAR(skew_information(rho, Observable(ComplexMatrix::identity(4))), 0.0, 1e-13);
}

TEST(Reports, DirectionAndMargin) {
  const auto up = make_report("x", 1.0 + 5e-8, 1.0, Direction::DetectIfGreater);
  EXPECT_FALSE(up.detected);
  EXPECT_TRUE(make_report("x", 1.0 + 2e-7, 1.0, Direction::DetectIfGreater).detected);
  EXPECT_FALSE(make_report("x", -5e-8, 0.0, Direction::DetectIfLess).detected);
  EXPECT_TRUE(make_report("x", -2e-7, 0.0, Direction::DetectIfLess).detected);
  EXPECT_FALSE(make_report("x", 0.0, 0.0, Direction::DetectIfLess, 0.0).detected);
}

// Maximally entangled |phi+> on two qubits, worked by hand:
//   LUR in its Schmidt basis: 1 - 4 * (1/2) - 0 = -1
//   skew, unoriented Schmidt pair: 1 - 2 - 0 = -1 (not detected)
//   skew, oriented pair (G^A, -G^B): 1 + 2 - (1/2)(sqrt2)^2 = 2
TEST(BellState, HandComputedValues) {
  const DensityMatrix rho = bell_state(2);
  const SchmidtDecomposition s = schmidt_loos(rho);
  for (double l : s.lambdas) EXPECT_NEAR(l, 0.5, 1e-14);

  const auto lur = lur_ccn_value(rho, s.basisA, s.basisB);
  EXPECT_NEAR(lur.value, -1.0, 1e-12);
  EXPECT_TRUE(lur.detected);

  const auto literal = skew_ccn_value(rho, s.basisA, s.basisB);
  EXPECT_NEAR(literal.value, -1.0, 1e-12);
  EXPECT_FALSE(literal.detected);

  const auto oriented = skew_ccn_value(rho, s.basisA, negate_loo(s.basisB));
  EXPECT_NEAR(oriented.value, 2.0, 1e-12);
  EXPECT_TRUE(oriented.detected);

  EXPECT_NEAR(ccn_value(rho).value, 2.0, 1e-12);
  EXPECT_NEAR(ppt_report(rho).value, -0.5, 1e-12);
}

TEST(Werner, AnalyticValuesAlongFamily) {
  for (int step = 0; step <= 20; ++step) {
    const double p = step / 20.0;
    const DensityMatrix rho = werner2(p);
    // min eigenvalue of the partial transpose
    EXPECT_NEAR(ppt_report(rho).value, std::min((1.0 - 3.0 * p) / 4.0, (1.0 + p) / 4.0), 1e-12) << p;
    EXPECT_NEAR(ccn_value(rho).value, (1.0 + 3.0 * p) / 2.0, 1e-12) << p;
    const auto skew = evaluate_criterion(rho, CriterionKind::Skew, BasisStrategy::Schmidt, {}, 0);
    const double expected = (1.0 + 3.0 * p) / 2.0 - 1.5 * std::sqrt((1.0 + 3.0 * p) * (1.0 - p));
    EXPECT_NEAR(skew.value, expected, 1e-10) << p;
    const auto lur = evaluate_criterion(rho, CriterionKind::Lur, BasisStrategy::Schmidt, {}, 0);
    EXPECT_NEAR(lur.value, 0.5 - 1.5 * p, 1e-10) << p;
  }
}

TEST(SkewWitness, DoubleEntryAgreesOnRandomStates) {
  Rng rng(53);
  for (std::size_t d : {2u, 3u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const DensityMatrix rho = random_density(d, d, 1 + rep % (d * d), rng);
      const RealMatrix oa = random_orthogonal(d * d, rng);
      const RealMatrix ob = random_orthogonal(d * d, rng);
      const BasisPair bp = rotated_pair(d, oa, ob);
      const auto r = skew_ccn_value(rho, bp.a, bp.b);
      const double t1 = local_skew_sum(rho, bp.a, bp.b, Sign::Minus);
      EXPECT_NEAR(2.0 * r.value, t1 - (2.0 * d - 2.0), 1e-9);
      EXPECT_LT(r.detail["double_entry_residual"].get<double>(), 1e-9);
    }
  }
}

TEST(LocalSkewSum, MatchesTermByTermOracle) {
  Rng rng(54);
  const std::size_t d = 3;
  const DensityMatrix rho = random_density(d, d, 4, rng);
  const LooBasis a = canonical_loo(d);
  const LooBasis b = rotate_loo(canonical_loo(d), random_orthogonal(d * d, rng));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd r = to_eigen(rho.matrix());
  double plus = 0.0, minus = 0.0;
  for (std::size_t k = 0; k < d * d; ++k) {
    const Eigen::MatrixXcd ga = Eigen::kroneckerProduct(to_eigen(a[k]), id);
    const Eigen::MatrixXcd gb = Eigen::kroneckerProduct(id, to_eigen(b[k]));
    plus += oracle_skew(r, ga + gb);
    minus += oracle_skew(r, ga - gb);
  }
  EXPECT_NEAR(local_skew_sum(rho, a, b, Sign::Plus), plus, 1e-11);
  EXPECT_NEAR(local_skew_sum(rho, a, b, Sign::Minus), minus, 1e-11);
}

TEST(Ppt, OracleFlagAndUnequalDims) {
  Rng rng(55);
  const DensityMatrix prod = tensor(random_density(2, 1, 2, rng), random_density(3, 1, 3, rng));
  const auto r = ppt_report(prod);
  EXPECT_GE(r.value, 0.0);
  EXPECT_FALSE(r.detected);
  EXPECT_TRUE(r.detail["exact_separability_oracle"].get<bool>());
  EXPECT_FALSE(ppt_report(bell_state(3)).detail["exact_separability_oracle"].get<bool>());
  const auto c = ccn_value(prod);
  EXPECT_LE(c.value, 1.0 + 1e-12);
  EXPECT_FALSE(c.detected);
}

TEST(Ccn, ProductPureStateSitsOnBoundary) {
  const std::vector<cplx> psi{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const DensityMatrix rho = DensityMatrix::pure(psi, 2, 3);
  const auto c = ccn_value(rho);
  EXPECT_NEAR(c.value, 1.0, 1e-12);
  EXPECT_FALSE(c.detected);
}

TEST(MixtureBounds, HoldForRandomMixtures) {
  Rng rng(56);
  for (int rep = 0; rep < 20; ++rep) {
    MixtureSpec spec;
    spec.weights = {0.2, 0.3, 0.5};
    for (int k = 0; k < 3; ++k) spec.components.push_back(random_density(3, 1, 1 + k, rng));
    std::vector<Observable> ms;
    for (int k = 0; k < 4; ++k) ms.emplace_back(random_hermitian(3, rng));
    EXPECT_TRUE(mixture_bounds(spec, ms, BoundKind::Skew).holds(1e-12));
    EXPECT_TRUE(mixture_bounds(spec, ms, BoundKind::Variance).holds(1e-12));
  }
}

}  // namespace
}  // namespace skewsep
