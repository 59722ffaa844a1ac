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
#include <optional>
#include <string_view>

#include "skewsep/criteria.hpp"
#include "skewsep/loo.hpp"

namespace skewsep {

enum class CriterionKind { Lur, Skew };
enum class BasisStrategy { Canonical, Schmidt, Optimized };

const char* to_string(CriterionKind k) noexcept;
const char* to_string(BasisStrategy s) noexcept;
std::optional<BasisStrategy> parse_strategy(std::string_view name) noexcept;

struct OptimizerConfig {
  std::size_t restarts = 8;
  std::size_t steps = 200;
  double initial_step = 0.3;  // radians
  double decay = 0.99;
};

/// A pair of LOO bases written as rotations of the canonical basis.
struct BasisPair {
  LooBasis a;
  LooBasis b;
  RealMatrix rotationA;
  RealMatrix rotationB;
};

BasisPair rotated_pair(std::size_t d, const RealMatrix& rotationA, const RealMatrix& rotationB);
BasisPair canonical_pair(std::size_t d);

/// Schmidt LOOs oriented toward the criterion's detection side: (G^A, G^B)
/// for the LUR witness, (G^A, -G^B) for the skew witness.
BasisPair schmidt_pair(const DensityMatrix& rho, CriterionKind kind);

/// Both witnesses are affine in the basis rotations:
///   value(R_A, R_B) = offset + sign * Tr(R_A C R_B^T)
/// with sign = +1 (skew, detect-if-greater) or -1 (LUR, detect-if-less), so
/// larger coupling_trace always means a stronger violation.
struct ReducedWitness {
  CriterionKind kind = CriterionKind::Skew;
  double offset = 0.0;
  double sign = 1.0;
  RealMatrix coupling;

  double coupling_trace(const RealMatrix& ra, const RealMatrix& rb) const;
  double value(const RealMatrix& ra, const RealMatrix& rb) const { return offset + sign * coupling_trace(ra, rb); }
  /// Most violating value over all LOO pairs (nuclear norm of the coupling).
  double extreme_value() const;
};

ReducedWitness reduced_witness(const DensityMatrix& rho, CriterionKind kind);

CriterionReport evaluate_pair(const DensityMatrix& rho, CriterionKind kind, const BasisPair& bases,
                              double margin = kDetectionMargin);

struct OptimizationResult {
  BasisPair bases;
  CriterionReport report;
};

/// Random-restart hill climbing over (O_A, O_B) applied to the Schmidt pair.
/// Start 0 is the Schmidt pair itself; each further restart begins from a
/// Haar-random rotation of it. Deterministic for a fixed seed.
OptimizationResult optimize_basis(const DensityMatrix& rho, CriterionKind kind, const OptimizerConfig& cfg,
                                  std::uint64_t seed, double margin = kDetectionMargin);

CriterionReport evaluate_criterion(const DensityMatrix& rho, CriterionKind kind, BasisStrategy strategy,
                                   const OptimizerConfig& cfg, std::uint64_t seed, double margin = kDetectionMargin);

}  // namespace skewsep
