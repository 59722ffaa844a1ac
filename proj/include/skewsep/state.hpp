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

#include <cstddef>
#include <span>
#include <vector>

#include "skewsep/linalg.hpp"
#include "skewsep/matrix.hpp"

namespace skewsep {

/// Hermitian operator. Construction checks Hermiticity.
class Observable {
 public:
  explicit Observable(ComplexMatrix m, double hermiticity_tol = 1e-10);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

struct StateTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double negativity = 1e-9;
};

/// Validated density matrix on C^dA (x) C^dB (dB = 1 for a single system).
/// The spectrum and the PSD square root are computed once at construction.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix m, std::size_t dA, std::size_t dB = 1, const StateTolerances& tol = {});

  /// |psi><psi| / <psi|psi>
  static DensityMatrix pure(std::span<const cplx> psi, std::size_t dA, std::size_t dB = 1);
  static DensityMatrix maximally_mixed(std::size_t dA, std::size_t dB = 1);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dA() const noexcept { return dA_; }
  std::size_t dB() const noexcept { return dB_; }
  std::size_t dim() const noexcept { return m_.rows(); }

  std::span<const double> eigenvalues() const noexcept { return eig_.eigenvalues; }
  const HermitianEigenSystem& eigensystem() const noexcept { return eig_; }
  const ComplexMatrix& sqrt() const noexcept { return sqrt_; }

  double purity() const;
  /// Marginal on one side as a single-system state.
  DensityMatrix reduced(Side keep) const;

 private:
  ComplexMatrix m_;
  std::size_t dA_;
  std::size_t dB_;
  HermitianEigenSystem eig_;
  ComplexMatrix sqrt_;
};

/// Convex combination sum_k w_k rho_k; validates weights and dimensions.
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> components);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace skewsep
