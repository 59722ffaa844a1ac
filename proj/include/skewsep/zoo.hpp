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
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "skewsep/rng.hpp"
#include "skewsep/state.hpp"

namespace skewsep {

/// Maximally entangled |Phi_d> = sum_i |ii> / sqrt(d).
DensityMatrix bell_state(std::size_t d);

/// p |psi-><psi-| + (1 - p) I/4
DensityMatrix werner2(double p);

/// F |Phi_d><Phi_d| + (1 - F) (I - |Phi_d><Phi_d|) / (d^2 - 1)
DensityMatrix isotropic(std::size_t d, double fidelity);

/// 3x3 bound entangled state from the tiles unextendible product basis.
DensityMatrix tiles_upb();

/// Ginibre state G G^dagger / Tr with G of shape (dA dB) x rank.
DensityMatrix random_density(std::size_t dA, std::size_t dB, std::size_t rank, Rng& rng);
DensityMatrix random_density(std::size_t dA, std::size_t dB, std::size_t rank, std::uint64_t seed);
/// Single-system variant.
DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);

/// sum_k p_k rho^A_k (x) rho^B_k with Dirichlet(1,...,1) weights and Ginibre
/// factors of uniformly random rank.
DensityMatrix random_separable(std::size_t dA, std::size_t dB, std::size_t terms, Rng& rng);
DensityMatrix random_separable(std::size_t dA, std::size_t dB, std::size_t terms, std::uint64_t seed);

/// (1 - q) rho + q I / (dA dB)
DensityMatrix noisy(const DensityMatrix& rho, double q);

/// Haar unitary (QR of a complex Ginibre matrix, phases fixed).
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// (U (x) V) rho (U (x) V)^dagger
DensityMatrix local_unitary(const DensityMatrix& rho, const ComplexMatrix& u, const ComplexMatrix& v);

/// A named one-parameter family. `make(param, dim, seed)` builds a member;
/// families without a parameter ignore it, deterministic ones ignore the seed.
struct StateFamily {
  std::string name;
  bool has_param = true;
  bool integer_param = false;
  double lo = 0.0;
  double hi = 1.0;
  std::function<DensityMatrix(double param, std::size_t dim, std::uint64_t seed)> make;
};

std::span<const StateFamily> state_families();
/// nullptr when unknown.
const StateFamily* find_family(std::string_view name);

}  // namespace skewsep
