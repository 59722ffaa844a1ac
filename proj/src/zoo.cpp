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

#include "skewsep/zoo.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "skewsep/errors.hpp"
#include "skewsep/linalg.hpp"

namespace skewsep {
namespace {

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::RangeError, std::string(what) + " must lie in [0, 1]");
}

std::vector<cplx> bell_vector(std::size_t d) {
  std::vector<cplx> psi(d * d);
  for (std::size_t i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  return psi;
}

ComplexMatrix projector(std::span<const cplx> psi) {
  const std::size_t n = psi.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return m;
}

std::vector<cplx> product(std::span<const double> a, std::span<const double> b) {
  std::vector<cplx> out;
  out.reserve(a.size() * b.size());
  for (double x : a)
    for (double y : b) out.emplace_back(x * y);
  return out;
}

ComplexMatrix ginibre_matrix(std::size_t dim, std::size_t rank, Rng& rng) {
  ComplexMatrix g(dim, rank);
  for (auto& z : g.data()) z = rng.complex_normal();
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < dim; ++j) m(j, i) = std::conj(m(i, j));
  }
  return m;
}

}  // namespace

DensityMatrix bell_state(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::RangeError, "bell_state needs d >= 2");
  const auto psi = bell_vector(d);
  return DensityMatrix::pure(psi, d, d);
}

DensityMatrix werner2(double p) {
  require_unit_interval(p, "werner2 p");
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<cplx, 4> singlet{0.0, r, -r, 0.0};
  ComplexMatrix m = projector(singlet);
  m *= p;
  m += ((1.0 - p) / 4.0) * ComplexMatrix::identity(4);
  return DensityMatrix(std::move(m), 2, 2);
}

DensityMatrix isotropic(std::size_t d, double fidelity) {
  if (d < 2) throw Error(ErrorCode::RangeError, "isotropic needs d >= 2");
  require_unit_interval(fidelity, "isotropic F");
  const auto psi = bell_vector(d);
  const ComplexMatrix phi = projector(psi);
  const double dd = static_cast<double>(d * d);
  ComplexMatrix m = ComplexMatrix::identity(d * d) - phi;
  m *= (1.0 - fidelity) / (dd - 1.0);
  m += fidelity * phi;
  return DensityMatrix(std::move(m), d, d);
}

DensityMatrix tiles_upb() {
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<double, 3> k0{1, 0, 0}, k1{0, 1, 0}, k2{0, 0, 1};
  const std::array<double, 3> m01{r, -r, 0}, m12{0, r, -r};
  const double t = 1.0 / std::sqrt(3.0);
  const std::array<double, 3> all{t, t, t};
  const std::array<std::vector<cplx>, 5> tiles{product(k0, m01), product(k2, m12), product(m01, k2),
                                               product(m12, k0), product(all, all)};
  ComplexMatrix m = ComplexMatrix::identity(9);
  for (const auto& v : tiles) m -= projector(v);
  m *= 0.25;
  return DensityMatrix(std::move(m), 3, 3);
}

DensityMatrix random_density(std::size_t dA, std::size_t dB, std::size_t rank, Rng& rng) {
  const std::size_t dim = dA * dB;
  if (rank < 1 || rank > dim) throw Error(ErrorCode::RangeError, "rank must lie in [1, dA*dB]");
  return DensityMatrix(ginibre_matrix(dim, rank, rng), dA, dB);
}

DensityMatrix random_density(std::size_t dA, std::size_t dB, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dA, dB, rank, rng);
}

DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
  return random_density(d, 1, rank, seed);
}

DensityMatrix random_separable(std::size_t dA, std::size_t dB, std::size_t terms, Rng& rng) {
  if (terms < 1) throw Error(ErrorCode::RangeError, "random_separable needs terms >= 1");
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());
  ComplexMatrix acc(dA * dB, dA * dB);
  for (std::size_t k = 0; k < terms; ++k) {
    const std::size_t ra = rng.uniform_int(1, dA);
    const ComplexMatrix a = ginibre_matrix(dA, ra, rng);
    const std::size_t rb = rng.uniform_int(1, dB);
    const ComplexMatrix b = ginibre_matrix(dB, rb, rng);
    acc += (w[k] / total) * kron(a, b);
  }
  return DensityMatrix(std::move(acc), dA, dB);
}

DensityMatrix random_separable(std::size_t dA, std::size_t dB, std::size_t terms, std::uint64_t seed) {
  Rng rng(seed);
  return random_separable(dA, dB, terms, rng);
}

DensityMatrix noisy(const DensityMatrix& rho, double q) {
  require_unit_interval(q, "noise q");
  const std::size_t n = rho.dim();
  ComplexMatrix m = (1.0 - q) * rho.matrix();
  m += (q / static_cast<double>(n)) * ComplexMatrix::identity(n);
  return DensityMatrix(std::move(m), rho.dA(), rho.dB());
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix q(d, d);
  for (auto& z : q.data()) z = rng.complex_normal();
  // Modified Gram-Schmidt on columns; the implied R has a positive diagonal.
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < j; ++c) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += std::conj(q(i, c)) * q(i, j);
        for (std::size_t i = 0; i < d; ++i) q(i, j) -= dot * q(i, c);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < d; ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < d; ++i) q(i, j) /= nrm;
  }
  return q;
}

DensityMatrix local_unitary(const DensityMatrix& rho, const ComplexMatrix& u, const ComplexMatrix& v) {
  const ComplexMatrix w = kron(u, v);
  ComplexMatrix m = w * rho.matrix() * w.adjoint();
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  return DensityMatrix(std::move(m), rho.dA(), rho.dB());
}

std::span<const StateFamily> state_families() {
  static const std::vector<StateFamily> families = [] {
    std::vector<StateFamily> f;
    f.push_back({"bell", false, false, 0.0, 0.0, [](double, std::size_t d, std::uint64_t) { return bell_state(d); }});
    f.push_back({"werner2", true, false, 0.0, 1.0, [](double p, std::size_t, std::uint64_t) { return werner2(p); }});
    f.push_back({"isotropic", true, false, 0.0, 1.0,
                 [](double fid, std::size_t d, std::uint64_t) { return isotropic(d, fid); }});
    f.push_back({"tiles", false, false, 0.0, 0.0, [](double, std::size_t, std::uint64_t) { return tiles_upb(); }});
    f.push_back({"random", true, true, 1.0, 16.0, [](double rank, std::size_t d, std::uint64_t seed) {
                   return random_density(d, d, static_cast<std::size_t>(std::lround(rank)), seed);
                 }});
    f.push_back({"random-separable", true, true, 1.0, 64.0, [](double terms, std::size_t d, std::uint64_t seed) {
                   return random_separable(d, d, static_cast<std::size_t>(std::lround(terms)), seed);
                 }});
    f.push_back({"noisy-bell", true, false, 0.0, 1.0,
                 [](double q, std::size_t d, std::uint64_t) { return noisy(bell_state(d), q); }});
    return f;
  }();
  return families;
}

const StateFamily* find_family(std::string_view name) {
  for (const auto& f : state_families())
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace skewsep
