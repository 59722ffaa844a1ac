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

#include "skewsep/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "skewsep/criteria.hpp"
#include "skewsep/linalg.hpp"
#include "skewsep/loo.hpp"
#include "skewsep/optimize.hpp"
#include "skewsep/rng.hpp"
#include "skewsep/zoo.hpp"

namespace skewsep {
namespace {

Observable random_observable(std::size_t d, Rng& rng) {
  ComplexMatrix x(d, d);
  for (auto& z : x.data()) z = rng.complex_normal();
  ComplexMatrix h = x + x.adjoint();
  h *= 0.5;
  return Observable(std::move(h));
}

DensityMatrix random_state(std::size_t d, Rng& rng) {
  const std::size_t rank = rng.uniform_int(1, d);
  return random_density(d, 1, rank, rng);
}

DensityMatrix random_bipartite(std::size_t d, Rng& rng) {
  const std::size_t rank = rng.uniform_int(1, d * d);
  return random_density(d, d, rank, rng);
}

DensityMatrix random_pure(std::size_t d, Rng& rng) { return random_density(d, 1, 1, rng); }

std::size_t pick_dim(std::size_t i) { return i % 2 == 0 ? 2 : 3; }

double trace_sqrt(const DensityMatrix& rho) {
  const auto& ev = rho.eigenvalues();
  const double floor = 1e-15 * static_cast<double>(ev.size()) * ev.back();
  double s = 0.0;
  for (double l : ev) s += l > floor ? std::sqrt(l) : 0.0;
  return s;
}

SuiteResult finish(std::string name, std::string property, std::size_t n, double worst, double tol) {
  return {std::move(name), std::move(property), n, worst, tol, worst <= tol};
}

SuiteResult loo_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0x1001);
  double worst = 0.0;
  std::size_t n = 0;
  for (std::size_t d = 2; d <= 4; ++d) {
    LooBasis canon = canonical_loo(d);
    if (o.corrupt_loo) {
      std::vector<ComplexMatrix> obs(canon.observables().begin(), canon.observables().end());
      obs[1] *= std::sqrt(2.0);
      canon = LooBasis(d, std::move(obs));
    }
    std::vector<LooBasis> bases{canon};
    for (int r = 0; r < 20; ++r) bases.push_back(rotate_loo(canon, random_orthogonal(d * d, rng)));
    for (const auto& b : bases) {
      const LooReport rep = verify_loo(b, 1e-10);
      worst = std::max({worst, rep.orthonormality, rep.hermiticity, rep.completeness});
      // sum_k G_k (x) G_k is the swap operator
      ComplexMatrix acc(d * d, d * d);
      for (const auto& g : b.observables()) acc += kron(g, g);
      worst = std::max(worst, max_abs_diff(acc, swap_operator(d)));
      ++n;
    }
  }
  return finish("loo-orthonormality", "Tr(G_k G_l) = delta_kl, completeness, swap identity", n, worst, 1e-9);
}

SuiteResult convexity_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0x2002);
  double worst = 0.0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t d = pick_dim(i);
    const DensityMatrix r1 = random_state(d, rng);
    const DensityMatrix r2 = random_state(d, rng);
    const double lam = rng.uniform();
    const Observable m = random_observable(d, rng);
    const std::vector<double> w{lam, 1.0 - lam};
    const std::vector<DensityMatrix> comps{r1, r2};
    const double lhs = skew_information(mix(w, comps), m);
    const double rhs = lam * skew_information(r1, m) + (1.0 - lam) * skew_information(r2, m);
    worst = std::max(worst, lhs - rhs);
  }
  return finish("skew-convexity", "I(l r1 + (1-l) r2, M) <= l I(r1, M) + (1-l) I(r2, M)", o.instances, worst, 1e-8);
}

SuiteResult additivity_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0x3003);
  double worst = 0.0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t d1 = pick_dim(i);
    const std::size_t d2 = pick_dim(i / 2);
    const DensityMatrix r1 = random_state(d1, rng);
    const DensityMatrix r2 = random_state(d2, rng);
    const Observable m1 = random_observable(d1, rng);
    const Observable m2 = random_observable(d2, rng);
    ComplexMatrix joint = kron(m1.matrix(), ComplexMatrix::identity(d2));
    joint += kron(ComplexMatrix::identity(d1), m2.matrix());
    const double lhs = skew_information(tensor(r1, r2), Observable(std::move(joint)));
    const double rhs = skew_information(r1, m1) + skew_information(r2, m2);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return finish("skew-additivity", "I(r1 (x) r2, M1 (x) 1 + 1 (x) M2) = I(r1, M1) + I(r2, M2)", o.instances, worst,
                1e-8);
}

SuiteResult mixture_suite(const SelftestOptions& o, BoundKind kind) {
  Rng rng(o.seed ^ (kind == BoundKind::Skew ? 0x4004 : 0x5005));
  double worst = 0.0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t d = pick_dim(i);
    MixtureSpec spec;
    const std::size_t k = rng.uniform_int(1, 4);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      spec.weights.push_back(rng.exponential());
      total += spec.weights.back();
      spec.components.push_back(i % 3 == 0 ? random_pure(d, rng) : random_state(d, rng));
    }
    for (auto& w : spec.weights) w /= total;
    double fix = 1.0;
    for (std::size_t c = 0; c + 1 < k; ++c) fix -= spec.weights[c];
    spec.weights.back() = fix;
    std::vector<Observable> ms;
    for (std::size_t m = 0; m < 3; ++m) ms.push_back(random_observable(d, rng));
    const MixtureBounds b = mixture_bounds(spec, ms, kind);
    worst = std::max(worst, kind == BoundKind::Skew ? b.lhs - b.rhs : b.rhs - b.lhs);
  }
  if (kind == BoundKind::Skew) {
    return finish("skew-mixture-bound", "sum_i I(mix, M_i) <= sum_k p_k sum_i I(r_k, M_i)", o.instances, worst, 1e-8);
  }
  return finish("variance-concavity", "sum_i var(mix, M_i) >= sum_k p_k sum_i var(r_k, M_i)", o.instances, worst,
                1e-8);
}

SuiteResult pure_reduction_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0x6006);
  double worst = 0.0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t d = pick_dim(i);
    const DensityMatrix rho = random_pure(d, rng);
    const Observable m = random_observable(d, rng);
    worst = std::max(worst, std::abs(skew_information(rho, m) - variance(rho, m)));
  }
  return finish("pure-state-reduction", "I(psi, M) = var(psi, M) on pure states", o.instances, worst, 1e-8);
}

SuiteResult skew_below_variance_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0x7007);
  double worst = 0.0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t d = pick_dim(i);
    const DensityMatrix rho = random_state(d, rng);
    const Observable m = random_observable(d, rng);
    worst = std::max(worst, skew_information(rho, m) - variance(rho, m));
  }
  return finish("skew-below-variance", "I(rho, M) <= var(rho, M)", o.instances, worst, 1e-8);
}

SuiteResult loo_closed_form_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0x8008);
  double worst = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t d = 2 + i % 3;
    const DensityMatrix rho = random_state(d, rng);
    const double closed = static_cast<double>(d) - std::pow(trace_sqrt(rho), 2);
    const LooBasis canon = canonical_loo(d);
    const LooBasis rotated = rotate_loo(canon, random_orthogonal(d * d, rng));
    const LooBasis schmidt = schmidt_loos(random_bipartite(d, rng)).basisA;
    for (const LooBasis* b : {&canon, &rotated, &schmidt}) {
      const double s = skew_loo_sum(rho, *b);
      worst = std::max({worst, std::abs(s - closed), s - loo_skew_bound(d)});
      ++n;
    }
  }
  return finish("loo-skew-closed-form", "sum_k I(rho, G_k) = d - (Tr rho^{1/2})^2 <= d - 1", n, worst, 1e-8);
}

SuiteResult double_entry_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0x9009);
  double worst = 0.0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::size_t d = pick_dim(i);
    const DensityMatrix rho = random_bipartite(d, rng);
    BasisPair bases = schmidt_pair(rho, CriterionKind::Skew);
    if (i % 2 == 1) {
      const RealMatrix oa = random_orthogonal(d * d, rng);
      const RealMatrix ob = random_orthogonal(d * d, rng);
      bases = rotated_pair(d, oa, ob);
    }
    const CriterionReport r = skew_ccn_value(rho, bases.a, bases.b);
    const double t1 = local_skew_sum(rho, bases.a, bases.b, Sign::Minus);
    worst = std::max(worst, std::abs(2.0 * r.value - (t1 - (2.0 * static_cast<double>(d) - 2.0))));
  }
  return finish("skew-witness-double-entry", "2 * witness = sum_k I(rho, M_k) - (2d - 2)", o.instances, worst, 1e-8);
}

SuiteResult soundness_suite(const SelftestOptions& o) {
  Rng rng(o.seed ^ 0xa00a);
  double worst = 0.0;
  const std::size_t count = std::max<std::size_t>(1, o.instances / 5);
  OptimizerConfig quick;
  quick.restarts = 2;
  quick.steps = 50;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = pick_dim(i);
    const std::size_t terms = rng.uniform_int(1, d * d);
    const DensityMatrix rho = random_separable(d, d, terms, rng);
    for (auto strategy : {BasisStrategy::Canonical, BasisStrategy::Schmidt, BasisStrategy::Optimized}) {
      const auto skew = evaluate_criterion(rho, CriterionKind::Skew, strategy, quick, rng.next_u64());
      const auto lur = evaluate_criterion(rho, CriterionKind::Lur, strategy, quick, rng.next_u64());
      worst = std::max({worst, skew.value, -lur.value});
    }
  }
  return finish("separable-soundness", "separable: skew witness <= 0, LUR witness >= 0", count, worst, 1e-7);
}

}  // namespace

bool SelftestReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

SelftestReport run_selftest(const SelftestOptions& opts) {
  SelftestReport r;
  r.suites.push_back(loo_suite(opts));
  r.suites.push_back(convexity_suite(opts));
  r.suites.push_back(additivity_suite(opts));
  r.suites.push_back(mixture_suite(opts, BoundKind::Variance));
  r.suites.push_back(mixture_suite(opts, BoundKind::Skew));
  r.suites.push_back(pure_reduction_suite(opts));
  r.suites.push_back(skew_below_variance_suite(opts));
  r.suites.push_back(loo_closed_form_suite(opts));
  r.suites.push_back(double_entry_suite(opts));
  r.suites.push_back(soundness_suite(opts));
  return r;
}

void print_report(const SelftestReport& report, std::ostream& os) {
  char line[256];
  for (const auto& s : report.suites) {
    std::snprintf(line, sizeof line, "%-4s %-28s n=%-5zu max_violation=%.3e tol=%.0e  %s\n", s.pass ? "PASS" : "FAIL",
                  s.name.c_str(), s.instances, s.max_violation, s.tolerance, s.property.c_str());
    os << line;
  }
  os << (report.pass() ? "selftest: all suites passed\n" : "selftest: FAILED\n");
}

}  // namespace skewsep
