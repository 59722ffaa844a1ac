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
#include <cstdint>
#include <span>
#include <vector>

#include "skewsep/matrix.hpp"
#include "skewsep/rng.hpp"
#include "skewsep/state.hpp"

namespace skewsep {

/// Ordered set of d^2 d x d observables meant to be orthonormal in the
/// Hilbert-Schmidt inner product. Construction only checks shapes; use
/// verify_loo for the orthonormality contract.
class LooBasis {
 public:
  LooBasis(std::size_t d, std::vector<ComplexMatrix> observables);

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return obs_.size(); }
  const ComplexMatrix& operator[](std::size_t k) const { return obs_[k]; }
  std::span<const ComplexMatrix> observables() const noexcept { return obs_; }

 private:
  std::size_t d_;
  std::vector<ComplexMatrix> obs_;
};

/// Identity/sqrt(d) followed by the generalised Gell-Mann matrices scaled to
/// Tr(G^2) = 1, in the order: symmetric (j<k, lexicographic), antisymmetric
/// (j<k, lexicographic), diagonal (l = 1..d-1).
LooBasis canonical_loo(std::size_t d);

struct LooReport {
  bool pass = false;
  double orthonormality = 0.0;  // max |Tr(G_k G_l) - delta_kl|
  double hermiticity = 0.0;     // max_k |G_k - G_k^dagger|_max
  double completeness = 0.0;    // max |sum_k G_k X G_k - Tr(X) I| over probe X
};

LooReport verify_loo(const LooBasis& basis, double tol = 1e-10);

/// G'_k = sum_l O[k][l] G_l. Throws NotOrthogonal when |O^T O - I| > tol.
LooBasis rotate_loo(const LooBasis& basis, const RealMatrix& o, double tol = 1e-9);

/// {-G_k}; still a valid LOO basis.
LooBasis negate_loo(const LooBasis& basis);

struct SchmidtDecomposition {
  std::vector<double> lambdas;  // descending, >= 0
  LooBasis basisA;
  LooBasis basisB;
  // Rotations of the canonical bases: basisA = rotate_loo(canonical, rotationA).
  RealMatrix rotationA;
  RealMatrix rotationB;
};

/// Operator-Schmidt decomposition rho = sum_k lambda_k G^A_k (x) G^B_k via the
/// SVD of the canonical correlation matrix. Requires dA == dB.
SchmidtDecomposition schmidt_loos(const DensityMatrix& rho);

/// Haar-distributed orthogonal matrix (Gaussian matrix, QR with a positive
/// triangular diagonal).
RealMatrix random_orthogonal(std::size_t n, std::uint64_t seed);
RealMatrix random_orthogonal(std::size_t n, Rng& rng);

/// Swap operator on C^d (x) C^d.
ComplexMatrix swap_operator(std::size_t d);

}  // namespace skewsep
