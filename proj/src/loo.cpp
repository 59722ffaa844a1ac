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

#include "skewsep/loo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skewsep/errors.hpp"
#include "skewsep/linalg.hpp"

namespace skewsep {

LooBasis::LooBasis(std::size_t d, std::vector<ComplexMatrix> observables) : d_(d), obs_(std::move(observables)) {
  if (d_ < 1 || obs_.size() != d_ * d_) {
    throw Error(ErrorCode::DimensionMismatch, "LOO basis for d=" + std::to_string(d_) + " needs d^2 observables");
  }
  for (const auto& g : obs_) {
    if (g.rows() != d_ || g.cols() != d_) throw Error(ErrorCode::DimensionMismatch, "LOO element has wrong size");
  }
}

LooBasis canonical_loo(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::RangeError, "canonical_loo needs d >= 2");
  std::vector<ComplexMatrix> obs;
  obs.reserve(d * d);
  ComplexMatrix id = ComplexMatrix::identity(d);
  id *= 1.0 / std::sqrt(static_cast<double>(d));
  obs.push_back(std::move(id));
  const double r2 = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix g(d, d);
      g(j, k) = r2;
      g(k, j) = r2;
      obs.push_back(std::move(g));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix g(d, d);
      g(j, k) = cplx(0.0, -r2);
      g(k, j) = cplx(0.0, r2);
      obs.push_back(std::move(g));
    }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix g(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t m = 0; m < l; ++m) g(m, m) = scale;
    g(l, l) = -static_cast<double>(l) * scale;
    obs.push_back(std::move(g));
  }
  return LooBasis(d, std::move(obs));
}

LooReport verify_loo(const LooBasis& basis, double tol) {
  LooReport rep;
  const std::size_t n = basis.size();
  const std::size_t d = basis.dim();
  for (std::size_t k = 0; k < n; ++k) {
    rep.hermiticity = std::max(rep.hermiticity, hermiticity_defect(basis[k]));
    for (std::size_t l = k; l < n; ++l) {
      const cplx g = trace_product(basis[k], basis[l]);
      rep.orthonormality = std::max(rep.orthonormality, std::abs(g - cplx(k == l ? 1.0 : 0.0)));
    }
  }
  // Fixed probes: a real non-symmetric matrix and a complex one.
  Rng rng(0x5eedL);
  for (int probe = 0; probe < 3; ++probe) {
    ComplexMatrix x(d, d);
    for (auto& z : x.data()) z = rng.complex_normal();
    ComplexMatrix acc(d, d);
    for (std::size_t k = 0; k < n; ++k) acc += basis[k] * x * basis[k];
    ComplexMatrix expect = ComplexMatrix::identity(d);
    expect *= x.trace();
    rep.completeness = std::max(rep.completeness, max_abs_diff(acc, expect));
  }
  rep.pass = rep.orthonormality <= tol && rep.hermiticity <= tol && rep.completeness <= 10 * tol;
  return rep;
}

LooBasis rotate_loo(const LooBasis& basis, const RealMatrix& o, double tol) {
  const std::size_t n = basis.size();
  if (o.rows() != n || o.cols() != n) throw Error(ErrorCode::DimensionMismatch, "rotation size != basis size");
  const double defect = orthogonality_defect(o);
  if (defect > tol) throw Error(ErrorCode::NotOrthogonal, "|O^T O - I| = " + std::to_string(defect));
  const std::size_t d = basis.dim();
  std::vector<ComplexMatrix> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix g(d, d);
    for (std::size_t l = 0; l < n; ++l) {
      const double w = o(k, l);
      if (w == 0.0) continue;
      for (std::size_t e = 0; e < d * d; ++e) g.data()[e] += w * basis[l].data()[e];
    }
    out.push_back(std::move(g));
  }
  return LooBasis(d, std::move(out));
}

LooBasis negate_loo(const LooBasis& basis) {
  std::vector<ComplexMatrix> out(basis.observables().begin(), basis.observables().end());
  for (auto& g : out) g *= -1.0;
  return LooBasis(basis.dim(), std::move(out));
}

SchmidtDecomposition schmidt_loos(const DensityMatrix& rho) {
  if (rho.dA() != rho.dB()) throw Error(ErrorCode::DimensionMismatch, "schmidt_loos requires dA == dB");
  const LooBasis canon = canonical_loo(rho.dA());
  const RealMatrix t = correlation_matrix(rho.matrix(), canon.observables(), canon.observables());
  RealSvd svd = svd_real(t);
  RealMatrix ra = svd.u.transpose();
  RealMatrix rb = svd.v.transpose();
  LooBasis a = rotate_loo(canon, ra);
  LooBasis b = rotate_loo(canon, rb);
  return {std::move(svd.singular_values), std::move(a), std::move(b), std::move(ra), std::move(rb)};
}

RealMatrix random_orthogonal(std::size_t n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::RangeError, "random_orthogonal needs n >= 1");
  RealMatrix g(n, n);
  for (auto& x : g.data()) x = rng.normal();
  return orthonormalize_columns(g);
}

RealMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal(n, rng);
}

ComplexMatrix swap_operator(std::size_t d) {
  ComplexMatrix s(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

}  // namespace skewsep
