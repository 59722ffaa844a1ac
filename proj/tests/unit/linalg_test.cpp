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

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "skewsep/errors.hpp"
#include "skewsep/linalg.hpp"

namespace skewsep {
namespace {

using testing::random_complex;
using testing::random_hermitian;
using testing::random_real;
using testing::to_eigen;

TEST(Eig, MatchesEigenSpectrumAndReconstructs) {
  Rng rng(21);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const ComplexMatrix h = random_hermitian(n, rng);
      const auto es = eig_hermitian(h);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(es.eigenvalues[i], ref.eigenvalues()(i), 1e-11);
      EXPECT_TRUE(std::is_sorted(es.eigenvalues.begin(), es.eigenvalues.end()));
      EXPECT_LT(max_abs_diff(reassemble(es, es.eigenvalues), h), 1e-11);
      const ComplexMatrix vv = es.eigenvectors.adjoint() * es.eigenvectors;
      EXPECT_LT(max_abs_diff(vv, ComplexMatrix::identity(n)), 1e-12);
    }
  }
}

TEST(Eig, DegenerateSpectrum) {
  // Projector onto a random 2-plane in C^5: eigenvalues 0,0,0,1,1.
  Rng rng(22);
  const ComplexMatrix g = random_complex(5, 2, rng);
  const auto es = eig_hermitian(g * g.adjoint());
  const ComplexMatrix v = es.eigenvectors;
  ComplexMatrix p(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) p(i, j) = v(i, 3) * std::conj(v(j, 3)) + v(i, 4) * std::conj(v(j, 4));
  const auto es2 = eig_hermitian(p);
  EXPECT_NEAR(es2.eigenvalues[0], 0.0, 1e-12);
  EXPECT_NEAR(es2.eigenvalues[2], 0.0, 1e-12);
  EXPECT_NEAR(es2.eigenvalues[3], 1.0, 1e-12);
  EXPECT_NEAR(es2.eigenvalues[4], 1.0, 1e-12);
}

TEST(Eig, RejectsNonHermitianAndSweepCap) {
  Rng rng(23);
  const ComplexMatrix x = random_complex(4, 4, rng);
  try {
    eig_hermitian(x);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
  try {
    eig_hermitian(random_hermitian(6, rng), 1e-10, 0);
    FAIL() << "expected NoConvergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(SqrtPsd, SquaresBackAndRejectsNegative) {
  Rng rng(24);
  for (std::size_t n = 1; n <= 9; ++n) {
    const ComplexMatrix g = random_complex(n, std::max<std::size_t>(1, n / 2), rng);
    const ComplexMatrix p = g * g.adjoint();
    const ComplexMatrix s = sqrt_psd(p);
    EXPECT_LT(max_abs_diff(s * s, p), 1e-10 * std::max(1.0, p.max_abs()));
    EXPECT_LT(hermiticity_defect(s), 1e-12);
    const auto es = eig_hermitian(s);
    EXPECT_GE(es.eigenvalues.front(), -1e-12);
  }
  ComplexMatrix neg = ComplexMatrix::identity(3);
  neg(1, 1) = -1e-3;
  try {
    sqrt_psd(neg);
    FAIL() << "expected NotPSD";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPSD);
  }
  neg(1, 1) = -1e-12;  // within tolerance: clamped
  EXPECT_NEAR(sqrt_psd(neg)(1, 1).real(), 0.0, 1e-15);
}

TEST(Kron, MatchesEigenKroneckerByIndex) {
  Rng rng(25);
  const ComplexMatrix a = random_complex(2, 3, rng);
  const ComplexMatrix b = random_complex(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6u);
  ASSERT_EQ(k.cols(), 6u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(PartialOps, TraceAndTransposeByIndex) {
  Rng rng(26);
  for (auto [dA, dB] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const ComplexMatrix r = random_complex(dA * dB, dA * dB, rng);
    const ComplexMatrix ta = partial_trace(r, dA, dB, Side::A);
    const ComplexMatrix tb = partial_trace(r, dA, dB, Side::B);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j) {
        cplx acc;
        for (std::size_t k = 0; k < dB; ++k) acc += r(i * dB + k, j * dB + k);
        EXPECT_LT(std::abs(ta(i, j) - acc), 1e-13);
      }
    for (std::size_t k = 0; k < dB; ++k)
      for (std::size_t l = 0; l < dB; ++l) {
        cplx acc;
        for (std::size_t i = 0; i < dA; ++i) acc += r(i * dB + k, i * dB + l);
        EXPECT_LT(std::abs(tb(k, l) - acc), 1e-13);
      }
    const ComplexMatrix pb = partial_transpose(r, dA, dB, Side::B);
    const ComplexMatrix pa = partial_transpose(r, dA, dB, Side::A);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t k = 0; k < dB; ++k)
          for (std::size_t l = 0; l < dB; ++l) {
            EXPECT_EQ(pb(i * dB + k, j * dB + l), r(i * dB + l, j * dB + k));
            EXPECT_EQ(pa(i * dB + k, j * dB + l), r(j * dB + k, i * dB + l));
          }
  }
}

TEST(CorrelationMatrix, MatchesDirectTraces) {
  Rng rng(27);
  const std::size_t dA = 2, dB = 3;
  const ComplexMatrix g = random_complex(dA * dB, dA * dB, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  std::vector<ComplexMatrix> xs, ys;
  for (int k = 0; k < 4; ++k) xs.push_back(random_hermitian(dA, rng));
  for (int k = 0; k < 5; ++k) ys.push_back(random_hermitian(dB, rng));
  const RealMatrix t = correlation_matrix(rho, xs, ys);
  for (std::size_t k = 0; k < xs.size(); ++k)
    for (std::size_t l = 0; l < ys.size(); ++l) {
      const auto direct = (to_eigen(rho) * to_eigen(kron(xs[k], ys[l]))).trace();
      EXPECT_NEAR(t(k, l), direct.real(), 1e-12);
    }
  // A non-Hermitian "state" gives complex correlations.
  const ComplexMatrix bad = random_complex(dA * dB, dA * dB, rng);
  try {
    correlation_matrix(bad, xs, ys);
    FAIL() << "expected NonRealCorrelation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonRealCorrelation);
  }
}

TEST(Svd, MatchesEigenAndReconstructs) {
  Rng rng(28);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {4, 4}, {9, 9}, {4, 9}, {9, 4}, {16, 16}, {3, 7}}) {
    const RealMatrix t = random_real(m, n, rng);
    const RealSvd s = svd_real(t);
    Eigen::JacobiSVD<Eigen::MatrixXd> ref(to_eigen(t));
    ASSERT_EQ(s.singular_values.size(), std::min(m, n));
    for (std::size_t i = 0; i < s.singular_values.size(); ++i)
      EXPECT_NEAR(s.singular_values[i], ref.singularValues()(i), 1e-11);
    EXPECT_LT(orthogonality_defect(s.u), 1e-12);
    EXPECT_LT(orthogonality_defect(s.v), 1e-12);
    RealMatrix sig(m, n);
    for (std::size_t i = 0; i < s.singular_values.size(); ++i) sig(i, i) = s.singular_values[i];
    EXPECT_LT(max_abs_diff(s.u * sig * s.v.transpose(), t), 1e-11);
  }
}

TEST(Svd, RankDeficientAndZero) {
  Rng rng(29);
  const RealMatrix a = random_real(6, 2, rng);
  const RealMatrix b = random_real(2, 6, rng);
  const RealMatrix t = a * b;
  const RealSvd s = svd_real(t);
  EXPECT_GT(s.singular_values[1], 1e-3);
  for (std::size_t i = 2; i < 6; ++i) EXPECT_LT(s.singular_values[i], 1e-12);
  EXPECT_LT(orthogonality_defect(s.u), 1e-12);
  const RealSvd z = svd_real(RealMatrix(5, 5));
  for (double x : z.singular_values) EXPECT_EQ(x, 0.0);
  EXPECT_LT(orthogonality_defect(z.u), 1e-12);
}

TEST(Orthonormalize, QrWithPositiveDiagonal) {
  Rng rng(30);
  for (std::size_t n = 1; n <= 10; ++n) {
    const RealMatrix a = random_real(n, n, rng);
    const RealMatrix q = orthonormalize_columns(a);
    EXPECT_LT(orthogonality_defect(q), 1e-13);
    const RealMatrix r = q.transpose() * a;  // upper triangular, positive diagonal
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GT(r(i, i), 0.0);
      for (std::size_t j = 0; j < i; ++j) EXPECT_NEAR(r(i, j), 0.0, 1e-11);
    }
  }
}

}  // namespace
}  // namespace skewsep
