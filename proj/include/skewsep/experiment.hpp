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
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "skewsep/criteria.hpp"
#include "skewsep/optimize.hpp"
#include "skewsep/state.hpp"

namespace skewsep {

/// Invalid command parameters (unknown family, empty grid, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string family = "werner2";
  std::size_t dim = 2;
  std::optional<double> param;
  std::vector<double> grid;
  std::optional<std::pair<double, double>> range;
  std::size_t range_points = 11;  // sweep over a range
  std::vector<std::string> criteria{"lur", "skew", "ccn", "ppt"};
  BasisStrategy strategy = BasisStrategy::Optimized;
  std::uint64_t seed = 0;
  std::size_t samples = 100000;
  std::string sampler = "default";
  double tol = 1e-6;
  double margin = kDetectionMargin;
  OptimizerConfig optimizer;
  std::string state_file;
  std::string out;
  std::size_t threads = 0;  // 0: hardware concurrency
};

/// Applies keys of a JSON config object onto cfg. Keys mirror the long CLI
/// flag names (family, dim, param, grid, range, criteria, strategy, seed, ...).
void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& j);

/// Runs fn(i) for i in [0, count) on a small thread pool; fn must only touch
/// slot i of any shared output.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Builds the state named by cfg (state_file wins over family/param).
DensityMatrix state_from_config(const ExperimentConfig& cfg);

/// Reports for every requested criterion. LUR/skew are skipped (absent) when
/// dA != dB.
std::vector<CriterionReport> evaluate_all(const DensityMatrix& rho, const ExperimentConfig& cfg, std::uint64_t seed);

nlohmann::ordered_json cmd_evaluate(const ExperimentConfig& cfg);

/// Deterministic CSV:
/// family,param,strategy,seed,ccn_value,ccn_det,lur_value,lur_det,skew_value,skew_det,ppt_value,ppt_det
std::string cmd_sweep(const ExperimentConfig& cfg);
std::vector<double> sweep_grid(const ExperimentConfig& cfg);

struct ThresholdResult {
  std::string family;
  std::string criterion;
  BasisStrategy strategy = BasisStrategy::Optimized;
  double p_star = 0.0;
  double lo = 0.0;  // bracket; verdicts at lo and hi differ
  double hi = 0.0;
  bool detected_lo = false;
  bool detected_hi = false;
  std::size_t bisection_steps = 0;
};

/// Bisection on the detection boundary of cfg.criteria.front() over the
/// family's parameter. Throws NonMonotone when the coarse pre-scan sees more
/// than one verdict flip, ConfigError when it sees none.
ThresholdResult cmd_threshold(const ExperimentConfig& cfg);
nlohmann::ordered_json to_json(const ThresholdResult& r, const ExperimentConfig& cfg);

/// Verdict of one named criterion ("lur", "skew", "ccn", "ppt").
CriterionReport evaluate_named(const DensityMatrix& rho, const std::string& criterion, const ExperimentConfig& cfg,
                               std::uint64_t seed);

enum class IndependenceCell { Neither, SkewOnly, LurOnly, Both };
const char* to_string(IndependenceCell c) noexcept;

struct Exemplar {
  IndependenceCell cell = IndependenceCell::Neither;
  std::size_t index = 0;
  std::uint64_t optimizer_seed = 0;
  DensityMatrix state;
};

struct IndependenceTally {
  std::size_t samples = 0;
  std::size_t skew_only = 0;
  std::size_t lur_only = 0;
  std::size_t both = 0;
  std::size_t neither = 0;
  // Detections (lur, skew or ccn) on states whose partial transpose is PSD.
  std::size_t ppt_inconsistent = 0;
  std::size_t ppt_entangled = 0;
  std::vector<Exemplar> exemplars;  // first sample of each nonempty off-diagonal cell
};

/// State of sample `index` from the named sampler.
DensityMatrix sample_state(const std::string& sampler, std::size_t dim, std::uint64_t seed, std::size_t index);

IndependenceCell classify(const DensityMatrix& rho, const ExperimentConfig& cfg, std::uint64_t optimizer_seed);

IndependenceTally cmd_independence(const ExperimentConfig& cfg);
nlohmann::ordered_json to_json(const IndependenceTally& t, const ExperimentConfig& cfg,
                               const std::vector<std::string>& exemplar_files);

/// Writes the tally JSON to `out` and exemplars next to it as
/// <stem>.<cell>.json. Returns the exemplar file names.
std::vector<std::string> write_independence(const IndependenceTally& t, const ExperimentConfig& cfg,
                                            const std::filesystem::path& out);

/// Reloads every exemplar listed in a tally file and re-classifies it.
/// Returns the number of exemplars whose cell does not reproduce.
std::size_t reverify_exemplars(const std::filesystem::path& tally_file);

}  // namespace skewsep
