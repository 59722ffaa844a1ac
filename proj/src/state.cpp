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

#include "skewsep/state.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "skewsep/errors.hpp"

namespace skewsep {

Observable::Observable(ComplexMatrix m, double hermiticity_tol) : m_(std::move(m)) {
  const double defect = hermiticity_defect(m_);
  if (defect > hermiticity_tol) {
    throw Error(ErrorCode::NotHermitian, "observable is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::size_t dA, std::size_t dB, const StateTolerances& tol)
    : m_(std::move(m)), dA_(dA), dB_(dB) {
  if (dA_ == 0 || dB_ == 0 || !m_.square() || m_.rows() != dA_ * dB_) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix shape does not match dA*dB");
  }
  if (!m_.all_finite()) throw Error(ErrorCode::InvalidState, "non-finite entry");
  const double herm = hermiticity_defect(m_);
  if (herm > tol.hermiticity) {
    throw Error(ErrorCode::InvalidState, "not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw Error(ErrorCode::InvalidState, "trace " + std::to_string(tr) + " != 1");
  }
  eig_ = eig_hermitian(m_, tol.hermiticity);
  if (eig_.eigenvalues.front() < -tol.negativity) {
    throw Error(ErrorCode::InvalidState, "negative eigenvalue " + std::to_string(eig_.eigenvalues.front()));
  }
  sqrt_ = sqrt_psd(eig_, tol.negativity);
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi, std::size_t dA, std::size_t dB) {
  double nrm = 0.0;
  for (const auto& z : psi) nrm += std::norm(z);
  if (!(nrm > 0.0)) throw Error(ErrorCode::InvalidState, "zero state vector");
  const std::size_t n = psi.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = psi[i] * std::conj(psi[j]) / nrm;
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i).real();
  return DensityMatrix(std::move(m), dA, dB);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dA, std::size_t dB) {
  ComplexMatrix m = ComplexMatrix::identity(dA * dB);
  m *= 1.0 / static_cast<double>(dA * dB);
  return DensityMatrix(std::move(m), dA, dB);
}

double DensityMatrix::purity() const {
  double p = 0.0;
  for (double l : eig_.eigenvalues) p += l * l;
  return p;
}

DensityMatrix DensityMatrix::reduced(Side keep) const {
  const std::size_t d = keep == Side::A ? dA_ : dB_;
  return DensityMatrix(partial_trace(m_, dA_, dB_, keep), d, 1);
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> components) {
  if (weights.size() != components.size() || weights.empty()) {
    throw Error(ErrorCode::BadWeights, "weights and components differ in count");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::BadWeights, "negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::BadWeights, "weights sum to " + std::to_string(total));
  const std::size_t dA = components.front().dA();
  const std::size_t dB = components.front().dB();
  ComplexMatrix acc(dA * dB, dA * dB);
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (components[k].dA() != dA || components[k].dB() != dB) {
      throw Error(ErrorCode::DimensionMismatch, "mixture components differ in dimension");
    }
    acc += weights[k] * components[k].matrix();
  }
  return DensityMatrix(std::move(acc), dA, dB);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()), a.dim(), b.dim());
}

}  // namespace skewsep
