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
#include <string>
#include <vector>

#include "json.hpp"
#include "skewsep/loo.hpp"
#include "skewsep/state.hpp"

namespace skewsep {

enum class Direction { DetectIfGreater, DetectIfLess };

const char* to_string(Direction d) noexcept;

/// Outcome of one separability criterion on one state.
struct CriterionReport {
  std::string criterion;
  double value = 0.0;
  double threshold = 0.0;
  Direction direction = Direction::DetectIfGreater;
  bool detected = false;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

/// Margin applied toward non-detection on every criterion.
inline constexpr double kDetectionMargin = 1e-7;
/// Allowed disagreement between the two evaluations of the skew witness.
inline constexpr double kDoubleEntryTol = 1e-8;

CriterionReport make_report(std::string name, double value, double threshold, Direction direction,
                            double margin = kDetectionMargin);

double expectation(const DensityMatrix& rho, const Observable& m);

/// <M^2> - <M>^2
double variance(const DensityMatrix& rho, const Observable& m);

/// Wigner-Yanase skew information Tr(rho M^2) - Tr(rho^{1/2} M rho^{1/2} M).
double skew_information(const DensityMatrix& rho, const Observable& m);

struct MixtureSpec {
  std::vector<double> weights;
  std::vector<DensityMatrix> components;
};

enum class BoundKind { Variance, Skew };

struct MixtureBounds {
  double lhs = 0.0;  // functional of the mixed state
  double rhs = 0.0;  // weighted functionals of the components
  BoundKind kind = BoundKind::Skew;

  /// Variance: lhs >= rhs - tol (concavity). Skew: lhs <= rhs + tol (convexity).
  bool holds(double tol = 1e-9) const noexcept { return kind == BoundKind::Skew ? lhs <= rhs + tol : lhs >= rhs - tol; }
};

MixtureBounds mixture_bounds(const MixtureSpec& mix, std::span<const Observable> ms, BoundKind kind);

enum class Sign { Plus, Minus };

/// sum_i I(rho, A_i (x) 1 +/- 1 (x) B_i)
double local_skew_sum(const DensityMatrix& rho, std::span<const Observable> as, std::span<const Observable> bs, Sign sign);
double local_skew_sum(const DensityMatrix& rho, const LooBasis& as, const LooBasis& bs, Sign sign);

/// Upper bound on sum_k I(rho, G_k) over a local LOO basis of dimension d.
inline double loo_skew_bound(std::size_t d) { return static_cast<double>(d) - 1.0; }

/// sum_k I(rho, G_k) over a local basis.
double skew_loo_sum(const DensityMatrix& local, const LooBasis& basis);

std::vector<Observable> as_observables(const LooBasis& basis);

/// 1 - sum_k <G^A_k (x) G^B_k> - 1/2 sum_k <G^A_k (x) 1 - 1 (x) G^B_k>^2;
/// separable states give >= 0.
CriterionReport lur_ccn_value(const DensityMatrix& rho, const LooBasis& basisA, const LooBasis& basisB,
                              double margin = kDetectionMargin);

/// 1 - sum_k <G^A_k (x) G^B_k> - 1/2 sum_k Tr(rho^{1/2} M_k rho^{1/2} M_k),
/// M_k = G^A_k (x) 1 - 1 (x) G^B_k; separable states give <= 0. The value is
/// also computed as (local_skew_sum(-) - (2d - 2)) / 2 and the two must agree.
CriterionReport skew_ccn_value(const DensityMatrix& rho, const LooBasis& basisA, const LooBasis& basisB,
                               double margin = kDetectionMargin);

/// Sum of operator-Schmidt coefficients; entangled if > 1.
CriterionReport ccn_value(const DensityMatrix& rho, double margin = kDetectionMargin);

/// Minimum eigenvalue of the partial transpose; entangled if < 0.
CriterionReport ppt_report(const DensityMatrix& rho, double margin = kDetectionMargin);

nlohmann::ordered_json to_json(const CriterionReport& r);

}  // namespace skewsep
