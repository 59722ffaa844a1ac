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

#include "skewsep/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "skewsep/errors.hpp"
#include "skewsep/io.hpp"
#include "skewsep/rng.hpp"
#include "skewsep/zoo.hpp"

namespace skewsep {
namespace {

const std::vector<std::string> kCriteria{"lur", "skew", "ccn", "ppt"};

bool known_criterion(const std::string& c) { return std::find(kCriteria.begin(), kCriteria.end(), c) != kCriteria.end(); }

const StateFamily& require_family(const std::string& name) {
  const StateFamily* f = find_family(name);
  if (f == nullptr) throw ConfigError("unknown state family '" + name + "'");
  return *f;
}

std::vector<std::string> split_list(const nlohmann::json& j) {
  std::vector<std::string> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(e.get<std::string>());
  } else {
    std::stringstream ss(j.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
  }
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.dim < 2) throw ConfigError("dim must be >= 2");
  for (const auto& c : cfg.criteria)
    if (!known_criterion(c)) throw ConfigError("unknown criterion '" + c + "'");
  if (cfg.range && !(cfg.range->first < cfg.range->second)) throw ConfigError("range must satisfy lo < hi");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(cfg.margin >= 0.0)) throw ConfigError("margin must be nonnegative");
  if (!(cfg.optimizer.decay > 0.0 && cfg.optimizer.decay <= 1.0)) throw ConfigError("decay must lie in (0, 1]");
}

DensityMatrix family_member(const ExperimentConfig& cfg, const StateFamily& f, double param, std::uint64_t seed) {
  if (f.has_param && !(param >= f.lo && param <= f.hi)) {
    throw ConfigError(f.name + " parameter " + format_g12(param) + " outside [" + format_g12(f.lo) + ", " +
                      format_g12(f.hi) + "]");
  }
  try {
    return f.make(param, cfg.dim, seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RangeError) throw ConfigError(e.what());
    throw;
  }
}

std::string det(bool b) { return b ? "1" : "0"; }

}  // namespace

void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "family") cfg.family = v.get<std::string>();
      else if (key == "dim") cfg.dim = v.get<std::size_t>();
      else if (key == "param") cfg.param = v.get<double>();
      else if (key == "grid") cfg.grid = v.get<std::vector<double>>();
      else if (key == "range") {
        const auto r = v.get<std::vector<double>>();
        if (r.size() < 2 || r.size() > 3) throw ConfigError("range needs [lo, hi] or [lo, hi, points]");
        cfg.range = std::make_pair(r[0], r[1]);
        if (r.size() == 3) cfg.range_points = static_cast<std::size_t>(r[2]);
      } else if (key == "criteria") cfg.criteria = split_list(v);
      else if (key == "strategy") {
        const auto s = parse_strategy(v.get<std::string>());
        if (!s) throw ConfigError("unknown strategy '" + v.get<std::string>() + "'");
        cfg.strategy = *s;
      } else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "samples") cfg.samples = v.get<std::size_t>();
      else if (key == "sampler") cfg.sampler = v.get<std::string>();
      else if (key == "tol") cfg.tol = v.get<double>();
      else if (key == "margin") cfg.margin = v.get<double>();
      else if (key == "restarts") cfg.optimizer.restarts = v.get<std::size_t>();
      else if (key == "steps") cfg.optimizer.steps = v.get<std::size_t>();
      else if (key == "initial_step") cfg.optimizer.initial_step = v.get<double>();
      else if (key == "decay") cfg.optimizer.decay = v.get<double>();
      else if (key == "state") cfg.state_file = v.get<std::string>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "threads") cfg.threads = v.get<std::size_t>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

DensityMatrix state_from_config(const ExperimentConfig& cfg) {
  if (!cfg.state_file.empty()) return load_state(cfg.state_file);
  validate(cfg);
  const StateFamily& f = require_family(cfg.family);
  if (f.has_param && !cfg.param) throw ConfigError("family '" + f.name + "' needs --param");
  return family_member(cfg, f, cfg.param.value_or(0.0), cfg.seed);
}

CriterionReport evaluate_named(const DensityMatrix& rho, const std::string& criterion, const ExperimentConfig& cfg,
                               std::uint64_t seed) {
  if (criterion == "ccn") return ccn_value(rho, cfg.margin);
  if (criterion == "ppt") return ppt_report(rho, cfg.margin);
  const CriterionKind kind = criterion == "lur" ? CriterionKind::Lur : CriterionKind::Skew;
  if (criterion != "lur" && criterion != "skew") throw ConfigError("unknown criterion '" + criterion + "'");
  return evaluate_criterion(rho, kind, cfg.strategy, cfg.optimizer, seed, cfg.margin);
}

std::vector<CriterionReport> evaluate_all(const DensityMatrix& rho, const ExperimentConfig& cfg, std::uint64_t seed) {
  std::vector<CriterionReport> out;
  for (const auto& c : cfg.criteria) {
    if ((c == "lur" || c == "skew") && rho.dA() != rho.dB()) continue;
    out.push_back(evaluate_named(rho, c, cfg, seed));
  }
  return out;
}

nlohmann::ordered_json cmd_evaluate(const ExperimentConfig& cfg) {
  validate(cfg);
  const DensityMatrix rho = state_from_config(cfg);
  nlohmann::ordered_json j;
  nlohmann::ordered_json src;
  if (!cfg.state_file.empty()) {
    src["file"] = cfg.state_file;
  } else {
    src["family"] = cfg.family;
    src["dim"] = cfg.dim;
    if (cfg.param) src["param"] = *cfg.param;
  }
  src["dA"] = rho.dA();
  src["dB"] = rho.dB();
  j["state"] = std::move(src);
  j["strategy"] = to_string(cfg.strategy);
  j["seed"] = cfg.seed;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : evaluate_all(rho, cfg, cfg.seed)) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  return j;
}

std::vector<double> sweep_grid(const ExperimentConfig& cfg) {
  if (!cfg.grid.empty()) return cfg.grid;
  if (cfg.range) {
    if (cfg.range_points < 2) throw ConfigError("range sweep needs at least 2 points");
    std::vector<double> g(cfg.range_points);
    const auto [lo, hi] = *cfg.range;
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g.size() - 1);
    }
    g.back() = hi;
    return g;
  }
  if (cfg.param) return {*cfg.param};
  throw ConfigError("sweep needs --grid, --range or --param");
}

std::string cmd_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  const StateFamily& f = require_family(cfg.family);
  const std::vector<double> grid = sweep_grid(cfg);
  std::vector<std::string> rows(grid.size());
  ExperimentConfig all = cfg;
  all.criteria = kCriteria;
  parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
    const std::uint64_t row_seed = stream_seed(cfg.seed, i);
    const DensityMatrix rho = family_member(cfg, f, grid[i], row_seed);
    const bool square = rho.dA() == rho.dB();
    auto cell = [&](const std::string& name) {
      if (!square && (name == "lur" || name == "skew")) return std::string("nan,0");
      const CriterionReport r = evaluate_named(rho, name, all, row_seed);
      return format_g12(r.value) + "," + det(r.detected);
    };
    rows[i] = f.name + "," + format_g12(grid[i]) + "," + to_string(cfg.strategy) + "," + std::to_string(cfg.seed) +
              "," + cell("ccn") + "," + cell("lur") + "," + cell("skew") + "," + cell("ppt") + "\n";
  });
  std::string csv = "family,param,strategy,seed,ccn_value,ccn_det,lur_value,lur_det,skew_value,skew_det,ppt_value,ppt_det\n";
  for (const auto& r : rows) csv += r;
  return csv;
}

ThresholdResult cmd_threshold(const ExperimentConfig& cfg) {
  validate(cfg);
  const StateFamily& f = require_family(cfg.family);
  if (!f.has_param || f.integer_param) throw ConfigError("family '" + f.name + "' has no continuous parameter");
  if (cfg.criteria.size() != 1) throw ConfigError("threshold needs exactly one criterion");
  const std::string criterion = cfg.criteria.front();
  const double lo = cfg.range ? cfg.range->first : f.lo;
  const double hi = cfg.range ? cfg.range->second : f.hi;
  auto verdict = [&](double p) {
    const DensityMatrix rho = family_member(cfg, f, p, cfg.seed);
    return evaluate_named(rho, criterion, cfg, cfg.seed).detected;
  };

  constexpr std::size_t kScan = 21;
  std::vector<double> pts(kScan);
  std::vector<char> verdicts(kScan);
  parallel_for(kScan, cfg.threads, [&](std::size_t i) {
    pts[i] = i + 1 == kScan ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kScan - 1);
    verdicts[i] = verdict(pts[i]);
  });
  std::size_t flips = 0;
  std::size_t flip_at = 0;
  for (std::size_t i = 1; i < kScan; ++i) {
    if (verdicts[i] != verdicts[i - 1]) {
      ++flips;
      flip_at = i;
    }
  }
  if (flips > 1) throw Error(ErrorCode::NonMonotone, criterion + " verdict flips " + std::to_string(flips) + " times");
  if (flips == 0) throw ConfigError(criterion + " verdict never changes on [" + format_g12(lo) + ", " + format_g12(hi) + "]");

  ThresholdResult r;
  r.family = f.name;
  r.criterion = criterion;
  r.strategy = cfg.strategy;
  double a = pts[flip_at - 1];
  double b = pts[flip_at];
  const bool va = verdicts[flip_at - 1];
  while (b - a > cfg.tol) {
    const double mid = 0.5 * (a + b);
    (verdict(mid) == va ? a : b) = mid;
    ++r.bisection_steps;
  }
  r.lo = a;
  r.hi = b;
  r.detected_lo = va;
  r.detected_hi = !va;
  r.p_star = 0.5 * (a + b);
  return r;
}

nlohmann::ordered_json to_json(const ThresholdResult& r, const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["family"] = r.family;
  j["dim"] = cfg.dim;
  j["criterion"] = r.criterion;
  j["strategy"] = to_string(r.strategy);
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["p_star"] = r.p_star;
  j["bracket"] = {r.lo, r.hi};
  j["detected_at_bracket"] = {r.detected_lo, r.detected_hi};
  j["bisection_steps"] = r.bisection_steps;
  return j;
}

const char* to_string(IndependenceCell c) noexcept {
  switch (c) {
    case IndependenceCell::Neither: return "neither";
    case IndependenceCell::SkewOnly: return "skew_only";
    case IndependenceCell::LurOnly: return "lur_only";
    case IndependenceCell::Both: return "both";
  }
  return "?";
}

DensityMatrix sample_state(const std::string& sampler, std::size_t dim, std::uint64_t seed, std::size_t index) {
  Rng rng = Rng::stream(seed, index);
  const std::size_t n = dim * dim;
  if (sampler == "default") {
    if (rng.uniform() < 0.5) return noisy(bell_state(dim), rng.uniform());
    const std::size_t rank = rng.uniform_int(1, n);
    return random_density(dim, dim, rank, rng);
  }
  if (sampler == "noisy-bell") return noisy(bell_state(dim), rng.uniform());
  if (sampler == "random") {
    const std::size_t rank = rng.uniform_int(1, n);
    return random_density(dim, dim, rank, rng);
  }
  if (sampler == "random-separable") {
    const std::size_t terms = rng.uniform_int(1, n);
    return random_separable(dim, dim, terms, rng);
  }
  throw ConfigError("unknown sampler '" + sampler + "'");
}

IndependenceCell classify(const DensityMatrix& rho, const ExperimentConfig& cfg, std::uint64_t optimizer_seed) {
  const bool lur =
      evaluate_criterion(rho, CriterionKind::Lur, cfg.strategy, cfg.optimizer, optimizer_seed, cfg.margin).detected;
  const bool skew =
      evaluate_criterion(rho, CriterionKind::Skew, cfg.strategy, cfg.optimizer, optimizer_seed, cfg.margin).detected;
  if (lur && skew) return IndependenceCell::Both;
  if (skew) return IndependenceCell::SkewOnly;
  if (lur) return IndependenceCell::LurOnly;
  return IndependenceCell::Neither;
}

IndependenceTally cmd_independence(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  sample_state(cfg.sampler, cfg.dim, cfg.seed, 0);  // rejects unknown samplers up front

  struct Outcome {
    IndependenceCell cell;
    bool inconsistent;
    bool ppt_entangled;
  };
  std::vector<Outcome> outcomes(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) {
    const DensityMatrix rho = sample_state(cfg.sampler, cfg.dim, cfg.seed, i);
    const std::uint64_t opt_seed = stream_seed(stream_seed(cfg.seed, i), 1);
    const IndependenceCell cell = classify(rho, cfg, opt_seed);
    const bool ccn = ccn_value(rho, cfg.margin).detected;
    const bool ppt_neg = ppt_report(rho, cfg.margin).value < 0.0;
    outcomes[i] = {cell, (cell != IndependenceCell::Neither || ccn) && !ppt_neg, ppt_neg};
  });

  IndependenceTally t;
  t.samples = cfg.samples;
  bool have_skew = false, have_lur = false;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    t.ppt_inconsistent += o.inconsistent;
    t.ppt_entangled += o.ppt_entangled;
    switch (o.cell) {
      case IndependenceCell::Neither: ++t.neither; break;
      case IndependenceCell::Both: ++t.both; break;
      case IndependenceCell::SkewOnly:
        ++t.skew_only;
        if (!have_skew) {
          have_skew = true;
          t.exemplars.push_back({o.cell, i, stream_seed(stream_seed(cfg.seed, i), 1),
                                 sample_state(cfg.sampler, cfg.dim, cfg.seed, i)});
        }
        break;
      case IndependenceCell::LurOnly:
        ++t.lur_only;
        if (!have_lur) {
          have_lur = true;
          t.exemplars.push_back({o.cell, i, stream_seed(stream_seed(cfg.seed, i), 1),
                                 sample_state(cfg.sampler, cfg.dim, cfg.seed, i)});
        }
        break;
    }
  }
  std::stable_sort(t.exemplars.begin(), t.exemplars.end(),
                   [](const Exemplar& a, const Exemplar& b) { return a.cell < b.cell; });
  return t;
}

nlohmann::ordered_json to_json(const IndependenceTally& t, const ExperimentConfig& cfg,
                               const std::vector<std::string>& exemplar_files) {
  nlohmann::ordered_json j;
  j["sampler"] = cfg.sampler;
  j["dim"] = cfg.dim;
  j["strategy"] = to_string(cfg.strategy);
  j["seed"] = cfg.seed;
  j["margin"] = cfg.margin;
  j["optimizer"] = {{"restarts", cfg.optimizer.restarts},
                    {"steps", cfg.optimizer.steps},
                    {"initial_step", cfg.optimizer.initial_step},
                    {"decay", cfg.optimizer.decay}};
  j["samples"] = t.samples;
  j["cells"] = {{"skew_only", t.skew_only}, {"lur_only", t.lur_only}, {"both", t.both}, {"neither", t.neither}};
  j["ppt_entangled"] = t.ppt_entangled;
  j["ppt_inconsistent"] = t.ppt_inconsistent;
  nlohmann::ordered_json ex = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < t.exemplars.size(); ++k) {
    const auto& e = t.exemplars[k];
    nlohmann::ordered_json item;
    item["cell"] = to_string(e.cell);
    item["index"] = e.index;
    item["optimizer_seed"] = e.optimizer_seed;
    if (k < exemplar_files.size()) item["file"] = exemplar_files[k];
    ex.push_back(std::move(item));
  }
  j["exemplars"] = std::move(ex);
  return j;
}

std::vector<std::string> write_independence(const IndependenceTally& t, const ExperimentConfig& cfg,
                                            const std::filesystem::path& out) {
  std::vector<std::string> files;
  const std::filesystem::path dir = out.parent_path();
  for (const auto& e : t.exemplars) {
    const std::string name = out.stem().string() + "." + to_string(e.cell) + ".json";
    save_state(e.state, dir / name);
    files.push_back(name);
  }
  write_text(out, to_json(t, cfg, files).dump(2) + "\n");
  return files;
}

std::size_t reverify_exemplars(const std::filesystem::path& tally_file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(tally_file));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("tally file: ") + e.what());
  }
  ExperimentConfig cfg;
  const auto strategy = parse_strategy(j.at("strategy").get<std::string>());
  if (!strategy) throw InputError("tally file: unknown strategy");
  cfg.strategy = *strategy;
  cfg.margin = j.at("margin").get<double>();
  const auto& opt = j.at("optimizer");
  cfg.optimizer.restarts = opt.at("restarts").get<std::size_t>();
  cfg.optimizer.steps = opt.at("steps").get<std::size_t>();
  cfg.optimizer.initial_step = opt.at("initial_step").get<double>();
  cfg.optimizer.decay = opt.at("decay").get<double>();
  std::size_t failures = 0;
  for (const auto& e : j.at("exemplars")) {
    const DensityMatrix rho = load_state(tally_file.parent_path() / e.at("file").get<std::string>());
    const IndependenceCell cell = classify(rho, cfg, e.at("optimizer_seed").get<std::uint64_t>());
    if (to_string(cell) != e.at("cell").get<std::string>()) ++failures;
  }
  return failures;
}

}  // namespace skewsep
