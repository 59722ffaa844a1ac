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
#include "skewsep/errors.hpp"
#include "skewsep/linalg.hpp"
#include "skewsep/state.hpp"

namespace skewsep {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

TEST(DensityMatrix, ValidatesInput) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m *= 0.25;
  EXPECT_NO_THROW(DensityMatrix(m, 2, 2));

  ComplexMatrix wrong_trace = m;
  wrong_trace(0, 0) += 0.1;
  EXPECT_EQ(code_of([&] { DensityMatrix(wrong_trace, 2, 2); }), ErrorCode::InvalidState);

  ComplexMatrix non_herm = m;
  non_herm(0, 1) = cplx(0.0, 0.1);
  EXPECT_EQ(code_of([&] { DensityMatrix(non_herm, 2, 2); }), ErrorCode::InvalidState);

  ComplexMatrix negative = ComplexMatrix::diagonal(std::vector<double>{0.6, 0.5, -0.1});
  EXPECT_EQ(code_of([&] { DensityMatrix(negative, 3); }), ErrorCode::InvalidState);

  EXPECT_EQ(code_of([&] { DensityMatrix(m, 2, 3); }), ErrorCode::DimensionMismatch);
}

TEST(DensityMatrix, PureStateAndMarginals) {
  // (|00> + |11>)/sqrt(2), unnormalised input
  const std::vector<cplx> psi{2.0, 0.0, 0.0, 2.0};
  const DensityMatrix rho = DensityMatrix::pure(psi, 2, 2);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
  EXPECT_NEAR(rho.matrix()(0, 3).real(), 0.5, 1e-15);
  const DensityMatrix a = rho.reduced(Side::A);
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_LT(max_abs_diff(a.matrix(), DensityMatrix::maximally_mixed(2).matrix()), 1e-15);
  EXPECT_NEAR(a.purity(), 0.5, 1e-15);
  // sqrt of a pure state is itself
  EXPECT_LT(max_abs_diff(rho.sqrt(), rho.matrix()), 1e-12);
}

TEST(DensityMatrix, SqrtSquaresToState) {
  Rng rng(31);
  for (std::size_t n : {2u, 3u, 4u, 6u, 9u}) {
    const ComplexMatrix g = testing::random_complex(n, n, rng);
    ComplexMatrix m = g * g.adjoint();
    m *= 1.0 / m.trace().real();
    const DensityMatrix rho(m, n);
    EXPECT_LT(max_abs_diff(rho.sqrt() * rho.sqrt(), rho.matrix()), 1e-12);
    double sum = 0.0;
    for (double l : rho.eigenvalues()) sum += l;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Mix, WeightsAndDimensions) {
  const DensityMatrix a = DensityMatrix::maximally_mixed(2);
  const DensityMatrix b = DensityMatrix::pure(std::vector<cplx>{1.0, 0.0}, 2);
  const std::vector<DensityMatrix> comps{a, b};
  const DensityMatrix m = mix(std::vector<double>{0.5, 0.5}, comps);
  EXPECT_NEAR(m.matrix()(0, 0).real(), 0.75, 1e-15);
  EXPECT_EQ(code_of([&] { mix(std::vector<double>{0.5, 0.6}, comps); }), ErrorCode::BadWeights);
  EXPECT_EQ(code_of([&] { mix(std::vector<double>{1.5, -0.5}, comps); }), ErrorCode::BadWeights);
  EXPECT_EQ(code_of([&] { mix(std::vector<double>{1.0}, comps); }), ErrorCode::BadWeights);
  const std::vector<DensityMatrix> mismatched{a, DensityMatrix::maximally_mixed(3)};
  EXPECT_EQ(code_of([&] { mix(std::vector<double>{0.5, 0.5}, mismatched); }), ErrorCode::DimensionMismatch);
}

TEST(Tensor, ProductOfMarginals) {
  Rng rng(32);
  const ComplexMatrix g = testing::random_complex(3, 3, rng);
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  const DensityMatrix a(m, 3);
  const DensityMatrix b = DensityMatrix::pure(std::vector<cplx>{1.0, cplx(0.0, 1.0)}, 2);
  const DensityMatrix ab = tensor(a, b);
  EXPECT_EQ(ab.dA(), 3u);
  EXPECT_EQ(ab.dB(), 2u);
  EXPECT_LT(max_abs_diff(ab.reduced(Side::A).matrix(), a.matrix()), 1e-14);
  EXPECT_LT(max_abs_diff(ab.reduced(Side::B).matrix(), b.matrix()), 1e-14);
}

TEST(Observable, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { Observable o(m); }), ErrorCode::NotHermitian);
}

}  // namespace
}  // namespace skewsep
