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

#include "skewsep/matrix.hpp"

namespace skewsep {

/// Tolerances used by the dense kernels. Defaults are the values the
/// acceptance suite is pinned to.
struct LinalgTolerances {
  double hermiticity = 1e-10;
  double negativity = 1e-9;
  double imaginary_residue = 1e-10;
  int max_sweeps = 100;
};

struct HermitianEigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

/// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
HermitianEigenSystem eig_hermitian(const ComplexMatrix& h, double hermiticity_tol = 1e-10, int max_sweeps = 100);

/// Principal square root of a PSD matrix; eigenvalues in [-negativity_tol, 0)
/// are clamped to zero, anything lower throws NotPSD.
ComplexMatrix sqrt_psd(const ComplexMatrix& rho, double negativity_tol = 1e-9);
ComplexMatrix sqrt_psd(const HermitianEigenSystem& eig, double negativity_tol = 1e-9);

/// V diag(f(lambda)) V^dagger
ComplexMatrix reassemble(const HermitianEigenSystem& eig, std::span<const double> values);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Side { A, B };

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, Side keep);
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, Side side);

/// T[k][l] = Tr(rho * (obsA[k] (x) obsB[l])). Throws NonRealCorrelation when
/// an entry carries more than imaginary_tol of imaginary part.
RealMatrix correlation_matrix(const ComplexMatrix& rho, std::span<const ComplexMatrix> obsA,
                              std::span<const ComplexMatrix> obsB, double imaginary_tol = 1e-10);

/// T = U diag(s) V^T with U (m x m), V (n x n) orthogonal, s descending,
/// length min(m, n).
struct RealSvd {
  RealMatrix u;
  std::vector<double> singular_values;
  RealMatrix v;
};

/// One-sided (Hestenes) Jacobi SVD.
RealSvd svd_real(const RealMatrix& t, int max_sweeps = 100);

/// Modified Gram-Schmidt (two passes) on the columns of a square matrix.
/// The implied triangular factor has a nonnegative diagonal.
RealMatrix orthonormalize_columns(const RealMatrix& a);

/// max |O^T O - I|
double orthogonality_defect(const RealMatrix& o);

}  // namespace skewsep
