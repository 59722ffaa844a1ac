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

#include "skewsep/criteria.hpp"

#include <cmath>
#include <string>

#include "skewsep/errors.hpp"
#include "skewsep/linalg.hpp"

namespace skewsep {
namespace {

void require_dim(const DensityMatrix& rho, const Observable& m) {
  if (m.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "observable and state differ in dimension");
}

// Values that are nonnegative in exact arithmetic: clamp roundoff, reject
// anything beyond it.
double clamp_nonnegative(double v, double scale, const char* what) {
  if (v < -1e-10 * std::max(1.0, scale)) {
    throw Error(ErrorCode::Internal, std::string(what) + " is negative: " + std::to_string(v));
  }
  return v > 0.0 ? v : 0.0;
}

void require_loo_pair(const DensityMatrix& rho, const LooBasis& a, const LooBasis& b) {
  if (rho.dA() != rho.dB() || a.dim() != rho.dA() || b.dim() != rho.dB()) {
    throw Error(ErrorCode::DimensionMismatch, "criterion needs dA == dB == basis dimension");
  }
}

}  // namespace

const char* to_string(Direction d) noexcept {
  return d == Direction::DetectIfGreater ? "detect-if-greater" : "detect-if-less";
}

CriterionReport make_report(std::string name, double value, double threshold, Direction direction, double margin) {
  CriterionReport r;
  r.criterion = std::move(name);
  r.value = value;
  r.threshold = threshold;
  r.direction = direction;
  r.detected = direction == Direction::DetectIfGreater ? value > threshold + margin : value < threshold - margin;
  return r;
}

double expectation(const DensityMatrix& rho, const Observable& m) {
  require_dim(rho, m);
  return hs_inner(m.matrix(), rho.matrix()).real();
}

double variance(const DensityMatrix& rho, const Observable& m) {
  require_dim(rho, m);
  const ComplexMatrix p = rho.matrix() * m.matrix();
  const double second = hs_inner(m.matrix(), p).real();
  const double first = hs_inner(m.matrix(), rho.matrix()).real();
  return clamp_nonnegative(second - first * first, second, "variance");
}

double skew_information(const DensityMatrix& rho, const Observable& m) {
  require_dim(rho, m);
  const ComplexMatrix y = rho.sqrt() * m.matrix();
  // Tr(rho M^2) = |rho^{1/2} M|_F^2 and Tr(rho^{1/2} M rho^{1/2} M) = Tr(Y Y).
  const double second = hs_inner(y, y).real();
  const cplx cross = trace_product(y, y);
  if (std::abs(cross.imag()) > 1e-10 * std::max(1.0, second)) {
    throw Error(ErrorCode::Internal, "skew information has imaginary residue " + std::to_string(cross.imag()));
  }
  return clamp_nonnegative(second - cross.real(), second, "skew information");
}

MixtureBounds mixture_bounds(const MixtureSpec& spec, std::span<const Observable> ms, BoundKind kind) {
  const DensityMatrix mixed = mix(spec.weights, spec.components);
  auto functional = [&](const DensityMatrix& rho) {
    double s = 0.0;
    for (const auto& m : ms) s += kind == BoundKind::Skew ? skew_information(rho, m) : variance(rho, m);
    return s;
  };
  MixtureBounds out;
  out.kind = kind;
  out.lhs = functional(mixed);
  for (std::size_t k = 0; k < spec.components.size(); ++k) out.rhs += spec.weights[k] * functional(spec.components[k]);
  return out;
}

double local_skew_sum(const DensityMatrix& rho, std::span<const Observable> as, std::span<const Observable> bs,
                    Sign sign) {
  if (as.size() != bs.size()) throw Error(ErrorCode::DimensionMismatch, "|As| != |Bs|");
  const ComplexMatrix idA = ComplexMatrix::identity(rho.dA());
  const ComplexMatrix idB = ComplexMatrix::identity(rho.dB());
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  double total = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].dim() != rho.dA() || bs[i].dim() != rho.dB()) {
      throw Error(ErrorCode::DimensionMismatch, "local observable dimension");
    }
    ComplexMatrix m = kron(as[i].matrix(), idB);
    m += s * kron(idA, bs[i].matrix());
    total += skew_information(rho, Observable(std::move(m)));
  }
  return total;
}

std::vector<Observable> as_observables(const LooBasis& basis) {
  std::vector<Observable> out;
  out.reserve(basis.size());
  for (const auto& g : basis.observables()) out.emplace_back(g);
  return out;
}

double local_skew_sum(const DensityMatrix& rho, const LooBasis& as, const LooBasis& bs, Sign sign) {
  const auto oa = as_observables(as);
  const auto ob = as_observables(bs);
  return local_skew_sum(rho, oa, ob, sign);
}

double skew_loo_sum(const DensityMatrix& local, const LooBasis& basis) {
  if (local.dim() != basis.dim()) throw Error(ErrorCode::DimensionMismatch, "state and basis differ in dimension");
  double s = 0.0;
  for (const auto& g : basis.observables()) s += skew_information(local, Observable(g));
  return s;
}

CriterionReport lur_ccn_value(const DensityMatrix& rho, const LooBasis& basisA, const LooBasis& basisB,
                              double margin) {
  require_loo_pair(rho, basisA, basisB);
  const ComplexMatrix rhoA = partial_trace(rho.matrix(), rho.dA(), rho.dB(), Side::A);
  const ComplexMatrix rhoB = partial_trace(rho.matrix(), rho.dA(), rho.dB(), Side::B);
  double corr = 0.0;
  double mean_sq = 0.0;
  nlohmann::ordered_json corr_terms = nlohmann::ordered_json::array();
  nlohmann::ordered_json mean_terms = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < basisA.size(); ++k) {
    const double c = hs_inner(kron(basisA[k], basisB[k]), rho.matrix()).real();
    const double mk = hs_inner(basisA[k], rhoA).real() - hs_inner(basisB[k], rhoB).real();
    corr += c;
    mean_sq += mk * mk;
    corr_terms.push_back(c);
    mean_terms.push_back(mk);
  }
  CriterionReport r = make_report("lur", 1.0 - corr - 0.5 * mean_sq, 0.0, Direction::DetectIfLess, margin);
  r.detail["sum_correlations"] = corr;
  r.detail["sum_squared_means"] = mean_sq;
  r.detail["correlations"] = std::move(corr_terms);
  r.detail["means"] = std::move(mean_terms);
  return r;
}

CriterionReport skew_ccn_value(const DensityMatrix& rho, const LooBasis& basisA, const LooBasis& basisB,
                               double margin) {
  require_loo_pair(rho, basisA, basisB);
  const std::size_t d = rho.dA();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  double corr = 0.0;
  double overlap = 0.0;
  nlohmann::ordered_json overlap_terms = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < basisA.size(); ++k) {
    corr += hs_inner(kron(basisA[k], basisB[k]), rho.matrix()).real();
    ComplexMatrix m = kron(basisA[k], id);
    m -= kron(id, basisB[k]);
    const ComplexMatrix y = rho.sqrt() * m;
    const double s = trace_product(y, y).real();
    overlap += s;
    overlap_terms.push_back(s);
  }
  const double value = 1.0 - corr - 0.5 * overlap;
  const double t1 = local_skew_sum(rho, basisA, basisB, Sign::Minus);
  const double equivalent = t1 - (2.0 * static_cast<double>(d) - 2.0);
  const double mismatch = std::abs(2.0 * value - equivalent);
  if (mismatch > kDoubleEntryTol) {
    throw Error(ErrorCode::Internal, "skew witness double entry disagrees by " + std::to_string(mismatch));
  }
  CriterionReport r = make_report("skew", value, 0.0, Direction::DetectIfGreater, margin);
  r.detail["sum_correlations"] = corr;
  r.detail["sum_sqrt_overlaps"] = overlap;
  r.detail["sqrt_overlaps"] = std::move(overlap_terms);
  r.detail["local_skew_sum"] = t1;
  r.detail["double_entry_form"] = equivalent;
  r.detail["double_entry_residual"] = mismatch;
  return r;
}

CriterionReport ccn_value(const DensityMatrix& rho, double margin) {
  if (rho.dA() < 2 || rho.dB() < 2) throw Error(ErrorCode::DimensionMismatch, "ccn needs a bipartite state");
  const LooBasis ca = canonical_loo(rho.dA());
  const LooBasis cb = canonical_loo(rho.dB());
  const RealMatrix t = correlation_matrix(rho.matrix(), ca.observables(), cb.observables());
  const RealSvd svd = svd_real(t);
  double sum = 0.0;
  for (double s : svd.singular_values) sum += s;
  CriterionReport r = make_report("ccn", sum, 1.0, Direction::DetectIfGreater, margin);
  r.detail["lambdas"] = svd.singular_values;
  return r;
}

CriterionReport ppt_report(const DensityMatrix& rho, double margin) {
  if (rho.dA() < 2 || rho.dB() < 2) throw Error(ErrorCode::DimensionMismatch, "ppt needs a bipartite state");
  const ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dA(), rho.dB(), Side::B);
  const HermitianEigenSystem eig = eig_hermitian(pt);
  CriterionReport r = make_report("ppt", eig.eigenvalues.front(), 0.0, Direction::DetectIfLess, margin);
  r.detail["exact_separability_oracle"] = rho.dA() * rho.dB() <= 6;
  r.detail["pt_spectrum"] = eig.eigenvalues;
  return r;
}

nlohmann::ordered_json to_json(const CriterionReport& r) {
  nlohmann::ordered_json j;
  j["criterion"] = r.criterion;
  j["value"] = r.value;
  j["threshold"] = r.threshold;
  j["direction"] = to_string(r.direction);
  j["detected"] = r.detected;
  j["detail"] = r.detail;
  return j;
}

}  // namespace skewsep
