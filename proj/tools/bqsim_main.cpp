// Copyright 2026 The bqsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bqsim: Bayesian single-index quantile regression from the command line.
//
//   bqsim fit --data file.csv --response y --tau 0.5 --out run1
//   bqsim simulate --example 1 --n 100 --seed 7 --out sim
//   bqsim replicate --example 1 --n 100 --tau 0.5 --replications 20 --jobs 4 --out study
//   bqsim diagnose --chain run1/chain.csv --out run1/diag
//
// Any flag may also come from a key=value file given with --config; flags on
// the command line win.

#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "bqsim/commands.hpp"
#include "bqsim/config.hpp"
#include "bqsim/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> help = {
      {"tau", "quantile level in (0, 1)"},
      {"iters", "total MCMC iterations"},
      {"burnin", "burn-in iterations (discarded)"},
      {"thin", "keep every k-th post burn-in draw"},
      {"seed", "master random seed"},
      {"starts", "pilot runs from independent starting points (1 disables)"},
      {"start-iters", "iterations per pilot run"},
      {"sigma-beta-prop", "random-walk sd of the beta proposal"},
      {"sigma-gamma-prop", "random-walk sd of the log-gamma proposal"},
      {"jitter", "nugget added to the GP prior covariance, or 'auto'"},
      {"lambda-rate", "lambda conditional rate: conjugate or sigma-squared"},
      {"a-sigma", "sigma inverse-gamma shape"},
      {"b-sigma", "sigma inverse-gamma scale"},
      {"a-lambda", "lambda gamma shape"},
      {"b-lambda", "lambda gamma rate"},
      {"a-gamma", "gamma inverse-gamma shape"},
      {"b-gamma", "gamma inverse-gamma scale"},
      {"data", "input CSV with a header row"},
      {"response", "name of the response column"},
      {"out", "output directory"},
      {"chain", "chain.csv to diagnose"},
      {"example", "simulation example: 1, 2, 3, 4, 5a or 5b"},
      {"n", "simulated sample size"},
      {"replications", "number of simulated datasets"},
      {"jobs", "parallel replicate workers"},
      {"max-lag", "largest autocorrelation lag reported"},
      {"grid-points", "points on the fitted link grid"},
  };
  return help;
}

struct Subcommand {
  CLI::App* app = nullptr;
  std::string config_file;
  std::map<std::string, std::string> values;
  bool no_autotune = false;
  bool uncollapsed = false;
};

void register_flags(Subcommand& sc) {
  sc.app->add_option("--config", sc.config_file, "key=value configuration file");
  for (const auto& [key, help] : flag_help()) {
    sc.app->add_option("--" + key, sc.values[key], help);
  }
  sc.app->add_flag("--no-autotune", sc.no_autotune, "keep proposal scales fixed during burn-in");
  sc.app->add_flag("--uncollapsed", sc.uncollapsed,
                   "condition the beta and gamma updates on eta (comparison sampler)");
}

bqsim::RunConfig resolve(const Subcommand& sc) {
  bqsim::ConfigMap merged;
  if (!sc.config_file.empty()) merged = bqsim::read_config_file(sc.config_file);
  for (const auto& [key, value] : sc.values) {
    if (sc.app->count("--" + key) > 0) merged[key] = value;
  }
  if (sc.no_autotune) merged["no-autotune"] = "true";
  if (sc.uncollapsed) merged["uncollapsed"] = "true";
  return bqsim::RunConfig::from_map(merged);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian single-index quantile regression"};
  app.require_subcommand(1);

  Subcommand fit{app.add_subcommand("fit", "fit one chain to a CSV dataset")};
  Subcommand simulate{app.add_subcommand("simulate", "generate a simulation dataset")};
  Subcommand replicate{app.add_subcommand("replicate", "run a replicated simulation study")};
  Subcommand diagnose{app.add_subcommand("diagnose", "ACF and ESS of a stored chain")};
  for (Subcommand* sc : {&fit, &simulate, &replicate, &diagnose}) register_flags(*sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (fit.app->parsed()) {
      bqsim::command_fit(resolve(fit), std::cerr);
    } else if (simulate.app->parsed()) {
      bqsim::command_simulate(resolve(simulate), std::cerr);
    } else if (replicate.app->parsed()) {
      bqsim::command_replicate(resolve(replicate), std::cerr);
    } else if (diagnose.app->parsed()) {
      bqsim::command_diagnose(resolve(diagnose), std::cerr);
    }
  } catch (const bqsim::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bqsim::DataError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bqsim::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
