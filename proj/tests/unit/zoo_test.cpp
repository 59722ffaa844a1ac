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
#include "skewsep/linalg.hpp"
#include "skewsep/zoo.hpp"

namespace skewsep {
namespace {

std::size_t numeric_rank(const DensityMatrix& rho) {
  std::size_t r = 0;
  for (double l : rho.eigenvalues()) r += l > 1e-10 ? 1 : 0;
  return r;
}

TEST(Families, RegistryBuildsValidStates) {
  ASSERT_FALSE(state_families().empty());
  for (const auto& f : state_families()) {
    EXPECT_EQ(find_family(f.name), &f);
    for (double t : {0.0, 0.5, 1.0}) {
      for (std::size_t dim : {2u, 3u}) {
        if (f.name == "werner2" || f.name == "tiles") dim = f.name == "tiles" ? 3 : 2;
        // the rank of a random state is bounded by the total dimension
        const double hi = f.name == "random" ? std::min(f.hi, static_cast<double>(dim * dim)) : f.hi;
        double p = f.lo + t * (hi - f.lo);
        if (f.integer_param) p = std::round(p);
        const DensityMatrix rho = f.make(p, dim, 5);
        EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12) << f.name;
        EXPECT_GE(rho.eigenvalues().front(), -1e-12) << f.name;
      }
    }
  }
  EXPECT_EQ(find_family("no-such-family"), nullptr);
}

TEST(Werner, Entries) {
  const double p = 0.3;
  const DensityMatrix rho = werner2(p);
  const ComplexMatrix& m = rho.matrix();
  EXPECT_NEAR(m(0, 0).real(), (1.0 - p) / 4.0, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), p / 2.0 + (1.0 - p) / 4.0, 1e-15);
  EXPECT_NEAR(m(1, 2).real(), -p / 2.0, 1e-15);
  EXPECT_NEAR(m(0, 3).real(), 0.0, 1e-15);
  EXPECT_THROW(werner2(1.2), Error);
}

TEST(Isotropic, FidelityAndPptBoundary) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const DensityMatrix bell = bell_state(d);
    for (double f : {0.0, 0.2, 1.0 / d, 0.6, 1.0}) {
      const DensityMatrix rho = isotropic(d, f);
      // <phi+| rho |phi+> = Tr(rho * phi+)
      EXPECT_NEAR(trace_product(rho.matrix(), bell.matrix()).real(), f, 1e-13);
      // rho = a 1 + b phi+, and phi+^T_B = swap / d has eigenvalues +/- 1/d, so
      // the smallest partial-transpose eigenvalue a - b/d changes sign at F = 1/d.
      const double v = ppt_report(rho).value;
      if (f < 1.0 / d - 1e-9) {
        EXPECT_GT(v, 0.0);
      }
      if (f > 1.0 / d + 1e-9) {
        EXPECT_LT(v, 0.0);
      }
    }
  }
}

TEST(Tiles, BoundEntangledSignature) {
  const DensityMatrix rho = tiles_upb();
  EXPECT_EQ(numeric_rank(rho), 4u);
  for (double l : rho.eigenvalues())
    if (l > 1e-10) {
      EXPECT_NEAR(l, 0.25, 1e-12);
    }
  EXPECT_GE(ppt_report(rho).value, -1e-12);  // PPT ...
  EXPECT_NEAR(ccn_value(rho).value, 1.0874, 1e-4);  // ... yet realignment detects it
}

TEST(RandomDensity, RankAndGinibrePurity) {
  Rng rng(71);
  for (std::size_t rank = 1; rank <= 4; ++rank) EXPECT_EQ(numeric_rank(random_density(2, 2, rank, rng)), rank);
  // Hilbert-Schmidt ensemble on C^n: E[Tr rho^2] = 2n / (n^2 + 1).
  const std::size_t n = 4, samples = 4000;
  double purity = 0.0;
  for (std::size_t s = 0; s < samples; ++s) purity += random_density(2, 2, n, rng).purity();
  EXPECT_NEAR(purity / samples, 2.0 * n / (n * n + 1.0), 0.005);
}

TEST(RandomDensity, SeedDeterminism) {
  EXPECT_EQ(random_density(3, 3, 4, 99).matrix(), random_density(3, 3, 4, 99).matrix());
  EXPECT_FALSE(random_density(3, 3, 4, 99).matrix() == random_density(3, 3, 4, 100).matrix());
}

TEST(RandomSeparable, IsPpt) {
  Rng rng(72);
  for (int rep = 0; rep < 50; ++rep) {
    EXPECT_GE(ppt_report(random_separable(2, 2, 1 + rep % 6, rng)).value, -1e-12);
    EXPECT_GE(ppt_report(random_separable(2, 3, 1 + rep % 6, rng)).value, -1e-12);
  }
}

TEST(Noisy, InterpolatesToMaximallyMixed) {
  const DensityMatrix bell = bell_state(2);
  EXPECT_LT(max_abs_diff(noisy(bell, 0.0).matrix(), bell.matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(noisy(bell, 1.0).matrix(), DensityMatrix::maximally_mixed(2, 2).matrix()), 1e-15);
}

TEST(LocalUnitary, PreservesSpectrumAndMarginalSpectra) {
  Rng rng(73);
  const DensityMatrix rho = random_density(3, 3, 5, rng);
  const ComplexMatrix u = random_unitary(3, rng);
  const ComplexMatrix v = random_unitary(3, rng);
  EXPECT_LT(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(3)), 1e-13);
  const DensityMatrix out = local_unitary(rho, u, v);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(out.eigenvalues()[i], rho.eigenvalues()[i], 1e-12);
  const DensityMatrix rho_a = rho.reduced(Side::A);
  const DensityMatrix out_a = out.reduced(Side::A);
  const auto ra = rho_a.eigenvalues();
  const auto oa = out_a.eigenvalues();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(ra[i], oa[i], 1e-12);
}

}  // namespace
}  // namespace skewsep
