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

// skewsep command-line driver.
//
// Exit status: 0 ok, 1 selftest failure, 2 invalid input file, 3 invalid
// configuration, 4 I/O failure, 5 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "skewsep/errors.hpp"
#include "skewsep/experiment.hpp"
#include "skewsep/io.hpp"
#include "skewsep/selftest.hpp"

namespace {

using skewsep::ConfigError;
using skewsep::ExperimentConfig;

enum Exit { kOk = 0, kSelftestFail = 1, kBadInput = 2, kBadConfig = 3, kIo = 4, kNumeric = 5 };

struct Flags {
  std::string config;
  std::string family;
  std::size_t dim = 0;
  double param = 0.0;
  std::vector<double> grid;
  std::vector<double> range;
  std::vector<std::string> criteria;
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string sampler;
  double tol = 0.0;
  double margin = 0.0;
  std::size_t restarts = 0;
  std::size_t steps = 0;
  std::string state;
  std::string out;
  std::size_t threads = 0;
  bool corrupt_loo = false;
};

struct Options {
  CLI::Option* family = nullptr;
  CLI::Option* dim = nullptr;
  CLI::Option* param = nullptr;
  CLI::Option* grid = nullptr;
  CLI::Option* range = nullptr;
  CLI::Option* criteria = nullptr;
  CLI::Option* strategy = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* sampler = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* margin = nullptr;
  CLI::Option* restarts = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* state = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* threads = nullptr;
};

Options add_common(CLI::App* sub, Flags& f) {
  Options o;
  sub->add_option("--config", f.config, "JSON config file; flags override its keys");
  o.family = sub->add_option("--family", f.family, "state family (bell, werner2, isotropic, tiles, random, ...)");
  o.dim = sub->add_option("--dim", f.dim, "local dimension d");
  o.param = sub->add_option("--param", f.param, "family parameter");
  o.grid = sub->add_option("--grid", f.grid, "comma-separated parameter grid")->delimiter(',');
  o.range = sub->add_option("--range", f.range, "lo,hi[,points]")->delimiter(',')->expected(2, 3);
  o.criteria = sub->add_option("--criteria", f.criteria, "comma-separated subset of lur,skew,ccn,ppt")->delimiter(',');
  o.strategy = sub->add_option("--strategy", f.strategy, "canonical | schmidt | optimized");
  o.seed = sub->add_option("--seed", f.seed, "master seed (fallback: SKEWSEP_SEED)");
  o.samples = sub->add_option("--samples", f.samples, "number of sampled states");
  o.sampler = sub->add_option("--sampler", f.sampler, "default | noisy-bell | random | random-separable");
  o.tol = sub->add_option("--tol", f.tol, "threshold bisection tolerance");
  o.margin = sub->add_option("--margin", f.margin, "detection margin");
  o.restarts = sub->add_option("--restarts", f.restarts, "optimizer restarts");
  o.steps = sub->add_option("--steps", f.steps, "optimizer steps per restart");
  o.state = sub->add_option("--state", f.state, "state JSON file (evaluate)");
  o.out = sub->add_option("--out", f.out, "output file (default: stdout)");
  o.threads = sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
  return o;
}

ExperimentConfig build_config(const Flags& f, const Options& o) {
  ExperimentConfig cfg;
  bool seed_set = false;
  if (!f.config.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(skewsep::read_text(f.config));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config " + f.config + ": " + e.what());
    }
    seed_set = j.is_object() && j.contains("seed");
    skewsep::apply_config_json(cfg, j);
  }
  if (o.family->count()) cfg.family = f.family;
  if (o.dim->count()) cfg.dim = f.dim;
  if (o.param->count()) cfg.param = f.param;
  if (o.grid->count()) cfg.grid = f.grid;
  if (o.range->count()) {
    cfg.range = std::make_pair(f.range[0], f.range[1]);
    if (f.range.size() == 3) {
      if (f.range[2] < 2.0 || f.range[2] != static_cast<double>(static_cast<std::size_t>(f.range[2]))) {
        throw ConfigError("--range points must be an integer >= 2");
      }
      cfg.range_points = static_cast<std::size_t>(f.range[2]);
    }
  }
  if (o.criteria->count()) cfg.criteria = f.criteria;
  if (o.strategy->count()) {
    const auto s = skewsep::parse_strategy(f.strategy);
    if (!s) throw ConfigError("unknown strategy '" + f.strategy + "'");
    cfg.strategy = *s;
  }
  if (o.seed->count()) {
    cfg.seed = f.seed;
  } else if (!seed_set) {
    if (const char* env = std::getenv("SKEWSEP_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t pos = 0;
        cfg.seed = std::stoull(env, &pos);
        if (env[pos] != '\0') throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ConfigError(std::string("SKEWSEP_SEED is not an unsigned integer: ") + env);
      }
    }
  }
  if (o.samples->count()) cfg.samples = f.samples;
  if (o.sampler->count()) cfg.sampler = f.sampler;
  if (o.tol->count()) cfg.tol = f.tol;
  if (o.margin->count()) cfg.margin = f.margin;
  if (o.restarts->count()) cfg.optimizer.restarts = f.restarts;
  if (o.steps->count()) cfg.optimizer.steps = f.steps;
  if (o.state->count()) cfg.state_file = f.state;
  if (o.out->count()) cfg.out = f.out;
  if (o.threads->count()) cfg.threads = f.threads;
  return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    skewsep::write_text(cfg.out, text);
  }
}

int run_selftest(const Flags& f, const ExperimentConfig& cfg, const Options& o) {
  skewsep::SelftestOptions opts;
  if (o.seed->count()) opts.seed = cfg.seed;
  opts.corrupt_loo = f.corrupt_loo;
  const auto report = skewsep::run_selftest(opts);
  std::ostringstream os;
  skewsep::print_report(report, os);
  emit(cfg, os.str());
  return report.pass() ? kOk : kSelftestFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewsep: entanglement criteria from skew information and local orthogonal observables"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate criteria on one state");
  CLI::App* sweep = app.add_subcommand("sweep", "criteria over a parameter grid (CSV)");
  CLI::App* threshold = app.add_subcommand("threshold", "bisect a detection threshold (JSON)");
  CLI::App* independence = app.add_subcommand("independence", "tally skew/LUR detection cells (JSON)");
  CLI::App* selftest = app.add_subcommand("selftest", "property checks on seeded random instances");

  // Each subcommand gets its own option objects bound to the shared Flags.
  std::vector<std::pair<CLI::App*, Options>> subs;
  for (CLI::App* s : {evaluate, sweep, threshold, independence, selftest}) subs.emplace_back(s, add_common(s, flags));
  selftest->add_flag("--corrupt-loo", flags.corrupt_loo)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  try {
    for (auto& [sub, opts] : subs) {
      if (!sub->parsed()) continue;
      ExperimentConfig cfg = build_config(flags, opts);
      if (sub == evaluate) {
        emit(cfg, skewsep::cmd_evaluate(cfg).dump(2) + "\n");
      } else if (sub == sweep) {
        emit(cfg, skewsep::cmd_sweep(cfg));
      } else if (sub == threshold) {
        const auto r = skewsep::cmd_threshold(cfg);
        emit(cfg, skewsep::to_json(r, cfg).dump(2) + "\n");
      } else if (sub == independence) {
        if (cfg.out.empty()) cfg.out = "independence.json";
        const auto tally = skewsep::cmd_independence(cfg);
        skewsep::write_independence(tally, cfg, cfg.out);
      } else {
        return run_selftest(flags, cfg, opts);
      }
    }
    return kOk;
  } catch (const skewsep::InputError& e) {
    std::cerr << "skewsep: invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const ConfigError& e) {
    std::cerr << "skewsep: invalid configuration: " << e.what() << "\n";
    return kBadConfig;
  } catch (const skewsep::IoError& e) {
    std::cerr << "skewsep: I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const skewsep::Error& e) {
    std::cerr << "skewsep: " << skewsep::to_string(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case skewsep::ErrorCode::NonMonotone:
      case skewsep::ErrorCode::RangeError:
      case skewsep::ErrorCode::DimensionMismatch:
        return kBadConfig;
      case skewsep::ErrorCode::InvalidState:
      case skewsep::ErrorCode::NotHermitian:
      case skewsep::ErrorCode::NotPSD:
        return kBadInput;
      default:
        return kNumeric;
    }
  }
}
