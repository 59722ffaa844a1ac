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

#include "skewsep/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "skewsep/errors.hpp"
#include "skewsep/kernels.hpp"
#include "skewsep/linalg.hpp"

namespace skewsep {
namespace {

// Rows i and j of m (n columns) <- [[c, -s], [s, c]] applied to them.
void rotate_rows(double* m, std::size_t n, std::size_t i, std::size_t j, double c, double s) {
  double* ri = m + i * n;
  double* rj = m + j * n;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = ri[k], y = rj[k];
    ri[k] = c * x - s * y;
    rj[k] = s * x + c * y;
  }
}

void rotate_cols(double* m, std::size_t n, std::size_t i, std::size_t j, double c, double s) {
  for (std::size_t k = 0; k < n; ++k) {
    const double x = m[k * n + i], y = m[k * n + j];
    m[k * n + i] = c * x - s * y;
    m[k * n + j] = s * x + c * y;
  }
}

// One restart: stochastic ascent of Tr(R_A C R_B^T) over (ra, rb), in place.
// Each step sweeps every coordinate plane on both sides with a rotation whose
// tangent is uniform in [-step, step], keeping only improvements. S = R_A C R_B^T
// is tracked so a proposal costs O(1) and an accepted one O(n).
double climb(const RealMatrix& coupling, RealMatrix& ra, RealMatrix& rb, const OptimizerConfig& cfg, Rng& rng) {
  const std::size_t n = coupling.rows();
  RealMatrix sm = ra * coupling * rb.transpose();
  double* sp = sm.data().data();
  double* pa = ra.data().data();
  double* pb = rb.data().data();
  double current = sm.trace();
  double step = cfg.initial_step;
  for (std::size_t it = 0; it < cfg.steps; ++it) {
    for (int side = 0; side < 2; ++side) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double t = step * (2.0 * rng.uniform() - 1.0);
          const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
          const double sii = sp[i * n + i], sjj = sp[j * n + j], sij = sp[i * n + j], sji = sp[j * n + i];
          // G S (left) or S G^T (right), G = [[c, -s], [s, c]] in plane (i, j)
          const double skew = side == 0 ? sij - sji : sji - sij;
          const double delta = (c - 1.0) * (sii + sjj) + s * skew;
          if (!(delta > 0.0)) continue;
          current += delta;
          if (side == 0) {
            rotate_rows(sp, n, i, j, c, s);
            rotate_rows(pa, n, i, j, c, s);
          } else {
            rotate_cols(sp, n, i, j, c, s);
            rotate_rows(pb, n, i, j, c, s);
          }
        }
      }
    }
    step *= cfg.decay;
  }
  return current;
}

}  // namespace

const char* to_string(CriterionKind k) noexcept { return k == CriterionKind::Lur ? "lur" : "skew"; }

const char* to_string(BasisStrategy s) noexcept {
  switch (s) {
    case BasisStrategy::Canonical: return "canonical";
    case BasisStrategy::Schmidt: return "schmidt";
    case BasisStrategy::Optimized: return "optimized";
  }
  return "?";
}

std::optional<BasisStrategy> parse_strategy(std::string_view name) noexcept {
  if (name == "canonical") return BasisStrategy::Canonical;
  if (name == "schmidt") return BasisStrategy::Schmidt;
  if (name == "optimized") return BasisStrategy::Optimized;
  return std::nullopt;
}

BasisPair rotated_pair(std::size_t d, const RealMatrix& rotationA, const RealMatrix& rotationB) {
  const LooBasis canon = canonical_loo(d);
  return {rotate_loo(canon, rotationA), rotate_loo(canon, rotationB), rotationA, rotationB};
}

BasisPair canonical_pair(std::size_t d) {
  const RealMatrix id = RealMatrix::identity(d * d);
  return rotated_pair(d, id, id);
}

BasisPair schmidt_pair(const DensityMatrix& rho, CriterionKind kind) {
  SchmidtDecomposition s = schmidt_loos(rho);
  if (kind == CriterionKind::Skew) {
    RealMatrix rb = s.rotationB;
    rb *= -1.0;
    return {std::move(s.basisA), negate_loo(s.basisB), std::move(s.rotationA), std::move(rb)};
  }
  return {std::move(s.basisA), std::move(s.basisB), std::move(s.rotationA), std::move(s.rotationB)};
}

double ReducedWitness::coupling_trace(const RealMatrix& ra, const RealMatrix& rb) const {
  // Tr(R_A C R_B^T) = <R_A C, R_B>_F
  const RealMatrix rc = ra * coupling;
  return kernels::active().ddot(rc.data().size(), rc.data().data(), rb.data().data());
}

double ReducedWitness::extreme_value() const {
  double nuclear = 0.0;
  for (double s : svd_real(coupling).singular_values) nuclear += s;
  return offset + sign * nuclear;
}

ReducedWitness reduced_witness(const DensityMatrix& rho, CriterionKind kind) {
  if (rho.dA() != rho.dB()) throw Error(ErrorCode::DimensionMismatch, "witness needs dA == dB");
  const std::size_t d = rho.dA();
  const std::size_t n = d * d;
  const LooBasis canon = canonical_loo(d);
  const RealMatrix t = correlation_matrix(rho.matrix(), canon.observables(), canon.observables());
  ReducedWitness w;
  w.kind = kind;
  if (kind == CriterionKind::Lur) {
    const ComplexMatrix ra = partial_trace(rho.matrix(), d, d, Side::A);
    const ComplexMatrix rb = partial_trace(rho.matrix(), d, d, Side::B);
    std::vector<double> a(n), b(n);
    double norms = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      a[l] = hs_inner(canon[l], ra).real();
      b[l] = hs_inner(canon[l], rb).real();
      norms += a[l] * a[l] + b[l] * b[l];
    }
    w.coupling = t;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) w.coupling(k, l) -= a[k] * b[l];
    w.offset = 1.0 - 0.5 * norms;
    w.sign = -1.0;
    return w;
  }
  const ComplexMatrix id = ComplexMatrix::identity(d);
  std::vector<ComplexMatrix> ya, yb;
  ya.reserve(n);
  yb.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    ya.push_back(rho.sqrt() * kron(canon[l], id));
    yb.push_back(rho.sqrt() * kron(id, canon[l]));
  }
  double diag = 0.0;
  for (std::size_t l = 0; l < n; ++l) diag += trace_product(ya[l], ya[l]).real() + trace_product(yb[l], yb[l]).real();
  w.coupling = RealMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) w.coupling(k, l) = trace_product(ya[k], yb[l]).real() - t(k, l);
  w.offset = 1.0 - 0.5 * diag;
  w.sign = 1.0;
  return w;
}

CriterionReport evaluate_pair(const DensityMatrix& rho, CriterionKind kind, const BasisPair& bases, double margin) {
  return kind == CriterionKind::Lur ? lur_ccn_value(rho, bases.a, bases.b, margin)
                                    : skew_ccn_value(rho, bases.a, bases.b, margin);
}

OptimizationResult optimize_basis(const DensityMatrix& rho, CriterionKind kind, const OptimizerConfig& cfg,
                                  std::uint64_t seed, double margin) {
  const std::size_t d = rho.dA();
  const std::size_t n = d * d;
  const ReducedWitness w = reduced_witness(rho, kind);
  const BasisPair start = schmidt_pair(rho, kind);

  RealMatrix bestA = start.rotationA;
  RealMatrix bestB = start.rotationB;
  double best = w.coupling_trace(bestA, bestB);

  for (std::size_t r = 0; r <= cfg.restarts; ++r) {
    Rng rng = Rng::stream(seed, r);
    RealMatrix ra = start.rotationA;
    RealMatrix rb = start.rotationB;
    if (r > 0) {
      ra = random_orthogonal(n, rng) * ra;
      rb = random_orthogonal(n, rng) * rb;
    }
    const double current = climb(w.coupling, ra, rb, cfg, rng);
    if (current > best) {
      best = current;
      bestA = std::move(ra);
      bestB = std::move(rb);
    }
  }
  // Products of many near-identity factors drift from orthogonality.
  if (orthogonality_defect(bestA) > 1e-12) bestA = orthonormalize_columns(bestA);
  if (orthogonality_defect(bestB) > 1e-12) bestB = orthonormalize_columns(bestB);

  BasisPair bases = (bestA == start.rotationA && bestB == start.rotationB) ? start : rotated_pair(d, bestA, bestB);
  CriterionReport report = evaluate_pair(rho, kind, bases, margin);
  const double reduced = w.value(bestA, bestB);
  if (std::abs(reduced - report.value) > kDoubleEntryTol) {
    throw Error(ErrorCode::Internal, "reduced witness disagrees with direct evaluation by " +
                                         std::to_string(std::abs(reduced - report.value)));
  }
  report.detail["strategy"] = "optimized";
  report.detail["restarts"] = cfg.restarts;
  report.detail["steps"] = cfg.steps;
  report.detail["seed"] = seed;
  report.detail["extreme_value"] = w.extreme_value();
  return {std::move(bases), std::move(report)};
}

CriterionReport evaluate_criterion(const DensityMatrix& rho, CriterionKind kind, BasisStrategy strategy,
                                   const OptimizerConfig& cfg, std::uint64_t seed, double margin) {
  switch (strategy) {
    case BasisStrategy::Canonical: {
      CriterionReport r = evaluate_pair(rho, kind, canonical_pair(rho.dA()), margin);
      r.detail["strategy"] = "canonical";
      return r;
    }
    case BasisStrategy::Schmidt: {
      CriterionReport r = evaluate_pair(rho, kind, schmidt_pair(rho, kind), margin);
      r.detail["strategy"] = "schmidt";
      return r;
    }
    case BasisStrategy::Optimized: return optimize_basis(rho, kind, cfg, seed, margin).report;
  }
  throw Error(ErrorCode::Internal, "unknown basis strategy");
}

}  // namespace skewsep
