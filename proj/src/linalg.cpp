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

#include "skewsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "skewsep/errors.hpp"
#include "skewsep/kernels.hpp"

namespace skewsep {
namespace {

// Completes `cols_done` orthonormal columns of q to a full orthonormal basis
// by orthogonalising unit vectors against what is already there.
void complete_basis(RealMatrix& q, std::size_t cols_done) {
  const std::size_t n = q.rows();
  std::vector<double> cand(n);
  for (std::size_t j = cols_done; j < q.cols(); ++j) {
    double best_norm = -1.0;
    std::vector<double> best;
    for (std::size_t e = 0; e < n; ++e) {
      std::fill(cand.begin(), cand.end(), 0.0);
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < j; ++c) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += q(i, c) * cand[i];
          for (std::size_t i = 0; i < n; ++i) cand[i] -= dot * q(i, c);
        }
      }
      double nrm = 0.0;
      for (double x : cand) nrm += x * x;
      if (nrm > best_norm) {
        best_norm = nrm;
        best = cand;
      }
    }
    const double inv = 1.0 / std::sqrt(best_norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = best[i] * inv;
  }
}

}  // namespace

HermitianEigenSystem eig_hermitian(const ComplexMatrix& h, double hermiticity_tol, int max_sweeps) {
  if (!h.square()) throw Error(ErrorCode::DimensionMismatch, "eig_hermitian needs a square matrix");
  if (!h.all_finite()) throw Error(ErrorCode::NotHermitian, "non-finite entry");
  const double defect = hermiticity_defect(h);
  if (defect > hermiticity_tol) {
    throw Error(ErrorCode::NotHermitian, "|H - H^dagger|_max = " + std::to_string(defect));
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tiny = 1e-300 + 1e-20 * a.frobenius_norm();

  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx z = a(p, q);
        const double r = std::abs(z);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (r <= tiny || (std::abs(app) + 1e2 * r == std::abs(app) && std::abs(aqq) + 1e2 * r == std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx e = z / r;
        const cplx jpq = s * e;
        const cplx jqp = -s * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + akq * jqp;
          a(k, q) = akp * jpq + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + vkq * jqp;
          v(k, q) = vkp * jpq + c * vkq;
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    converged = !rotated;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

ComplexMatrix reassemble(const HermitianEigenSystem& eig, std::span<const double> values) {
  const ComplexMatrix& v = eig.eigenvectors;
  const std::size_t n = v.rows();
  ComplexMatrix scaled(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scaled(r, c) = v(r, c) * values[c];
  ComplexMatrix out = scaled * v.adjoint();
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

ComplexMatrix sqrt_psd(const HermitianEigenSystem& eig, double negativity_tol) {
  std::vector<double> roots(eig.eigenvalues.size());
  // Eigenvalues within the solver's rounding floor are indistinguishable from
  // zero; their square roots would be ~1e-8 noise.
  double top = 0.0;
  for (double lam : eig.eigenvalues) top = std::max(top, std::abs(lam));
  const double floor = std::numeric_limits<double>::epsilon() * static_cast<double>(roots.size()) * top;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double lam = eig.eigenvalues[i];
    if (lam < -negativity_tol) {
      throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lam) + " below -" + std::to_string(negativity_tol));
    }
    roots[i] = lam > floor ? std::sqrt(lam) : 0.0;
  }
  return reassemble(eig, roots);
}

ComplexMatrix sqrt_psd(const ComplexMatrix& rho, double negativity_tol) {
  return sqrt_psd(eig_hermitian(rho), negativity_tol);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

namespace {

void require_bipartite(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  if (!rho.square() || rho.rows() != dA * dB || dA == 0 || dB == 0) {
    throw Error(ErrorCode::DimensionMismatch, "expected a " + std::to_string(dA * dB) + "x" +
                                                  std::to_string(dA * dB) + " bipartite operator");
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, Side keep) {
  require_bipartite(rho, dA, dB);
  if (keep == Side::A) {
    ComplexMatrix out(dA, dA);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t k = 0; k < dB; ++k) out(i, j) += rho(i * dB + k, j * dB + k);
    return out;
  }
  ComplexMatrix out(dB, dB);
  for (std::size_t k = 0; k < dB; ++k)
    for (std::size_t l = 0; l < dB; ++l)
      for (std::size_t i = 0; i < dA; ++i) out(k, l) += rho(i * dB + k, i * dB + l);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, Side side) {
  require_bipartite(rho, dA, dB);
  ComplexMatrix out(dA * dB, dA * dB);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t k = 0; k < dB; ++k)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t l = 0; l < dB; ++l) {
          const cplx v = rho(i * dB + k, j * dB + l);
          if (side == Side::B) {
            out(i * dB + l, j * dB + k) = v;
          } else {
            out(j * dB + k, i * dB + l) = v;
          }
        }
  return out;
}

RealMatrix correlation_matrix(const ComplexMatrix& rho, std::span<const ComplexMatrix> obsA,
                              std::span<const ComplexMatrix> obsB, double imaginary_tol) {
  if (obsA.empty() || obsB.empty()) throw Error(ErrorCode::DimensionMismatch, "empty observable list");
  const std::size_t dA = obsA.front().rows();
  const std::size_t dB = obsB.front().rows();
  require_bipartite(rho, dA, dB);
  RealMatrix t(obsA.size(), obsB.size());
  for (std::size_t l = 0; l < obsB.size(); ++l) {
    const ComplexMatrix& y = obsB[l];
    if (y.rows() != dB || y.cols() != dB) throw Error(ErrorCode::DimensionMismatch, "Bob observable size");
    // Z = Tr_B[rho (I (x) Y)],  Z_ij = sum_{k,m} rho_{(i,k),(j,m)} Y_{m,k}
    ComplexMatrix z(dA, dA);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < dB; ++k)
          for (std::size_t m = 0; m < dB; ++m) acc += rho(i * dB + k, j * dB + m) * y(m, k);
        z(i, j) = acc;
      }
    for (std::size_t k = 0; k < obsA.size(); ++k) {
      const ComplexMatrix& x = obsA[k];
      if (x.rows() != dA || x.cols() != dA) throw Error(ErrorCode::DimensionMismatch, "Alice observable size");
      const cplx v = trace_product(z, x);
      if (std::abs(v.imag()) > imaginary_tol) {
        throw Error(ErrorCode::NonRealCorrelation,
                    "entry (" + std::to_string(k) + "," + std::to_string(l) + ") imaginary part " +
                        std::to_string(v.imag()));
      }
      t(k, l) = v.real();
    }
  }
  return t;
}

RealSvd svd_real(const RealMatrix& t, int max_sweeps) {
  if (!t.all_finite()) throw Error(ErrorCode::NoConvergence, "non-finite input to svd_real");
  if (t.rows() < t.cols()) {
    RealSvd tr = svd_real(t.transpose(), max_sweeps);
    return {std::move(tr.v), std::move(tr.singular_values), std::move(tr.u)};
  }
  const std::size_t m = t.rows();
  const std::size_t n = t.cols();
  // Column-major working copy: w[j] is column j.
  std::vector<std::vector<double>> w(n, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) w[j][i] = t(i, j);
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) v[j][j] = 1.0;

  const auto& kt = kernels::active();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += kt.ddot(m, w[j].data(), w[j].data());
  const double rel_tol = std::numeric_limits<double>::epsilon() * static_cast<double>(m);
  const double abs_tol = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon() * total;
  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = kt.ddot(m, w[p].data(), w[p].data());
        const double beta = kt.ddot(m, w[q].data(), w[q].data());
        const double gamma = kt.ddot(m, w[p].data(), w[q].data());
        if (std::abs(gamma) <= rel_tol * std::sqrt(alpha * beta) || std::abs(gamma) <= abs_tol) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double tt = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = c * tt;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w[p][i], wq = w[q][i];
          w[p][i] = c * wp - s * wq;
          w[q][i] = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v[p][i], vq = v[q][i];
          v[p][i] = c * vp - s * vq;
          v[q][i] = s * vp + c * vq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "one-sided Jacobi sweep cap reached");

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(kt.ddot(m, w[j].data(), w[j].data()));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  RealSvd out{RealMatrix(m, m), std::vector<double>(n), RealMatrix(n, n)};
  const double cutoff = static_cast<double>(std::max(m, n)) * 1e-15 * (n ? sigma[order[0]] : 0.0);
  std::size_t good = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t j = order[c];
    out.singular_values[c] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, c) = v[j][i];
    if (sigma[j] > cutoff && sigma[j] > 0.0 && good == c) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, c) = w[j][i] / sigma[j];
      ++good;
    }
  }
  complete_basis(out.u, good);
  return out;
}

RealMatrix orthonormalize_columns(const RealMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "orthonormalize_columns needs a square matrix");
  const std::size_t n = a.rows();
  RealMatrix q = a;
  std::size_t good = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < j; ++c) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q(i, c) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, c);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += q(i, j) * q(i, j);
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-12)) break;
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    good = j + 1;
  }
  if (good < n) complete_basis(q, good);
  return q;
}

double orthogonality_defect(const RealMatrix& o) {
  const RealMatrix g = o.transpose() * o;
  return max_abs_diff(g, RealMatrix::identity(o.cols()));
}

}  // namespace skewsep
