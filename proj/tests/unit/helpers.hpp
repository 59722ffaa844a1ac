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

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>

#include "skewsep/matrix.hpp"
#include "skewsep/rng.hpp"
#include "skewsep/state.hpp"

namespace skewsep::testing {

inline ComplexMatrix random_complex(std::size_t r, std::size_t c, Rng& rng) {
  ComplexMatrix m(r, c);
  for (auto& z : m.data()) z = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  ComplexMatrix x = random_complex(n, n, rng);
  ComplexMatrix h = x + x.adjoint();
  h *= 0.5;
  return h;
}

inline RealMatrix random_real(std::size_t r, std::size_t c, Rng& rng) {
  RealMatrix m(r, c);
  for (auto& x : m.data()) x = rng.normal();
  return m;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

// Eigen-based square root of a PSD matrix, clamping the rounding floor.
inline Eigen::MatrixXcd eigen_sqrt(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  Eigen::VectorXd ev = es.eigenvalues();
  const double floor = 1e-15 * static_cast<double>(ev.size()) * ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > floor ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// I(rho, M) straight from the definition.
inline double oracle_skew(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd s = eigen_sqrt(rho);
  return (rho * m * m).trace().real() - (s * m * s * m).trace().real();
}

inline double oracle_variance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& m) {
  const double mean = (rho * m).trace().real();
  return (rho * m * m).trace().real() - mean * mean;
}

}  // namespace skewsep::testing
