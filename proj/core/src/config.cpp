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

#include "bqsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "bqsim/csv.hpp"
#include "bqsim/errors.hpp"
#include "bqsim/simulation.hpp"

namespace bqsim {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return c != ' ' && c != '\t' && c != '\r'; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

bool is_known(const std::string& key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' expects an integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t to_seed(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + text + "'");
}

std::string from_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "a-gamma",   "a-lambda",      "a-sigma",          "b-gamma",          "b-lambda",
      "b-sigma",   "burnin",        "chain",            "data",             "example",
      "grid-points", "iters",       "jitter",           "jobs",             "lambda-rate",
      "max-lag",   "n",             "no-autotune",      "out",              "replications",
      "response",  "seed",          "sigma-beta-prop",  "sigma-gamma-prop", "start-iters",
      "starts",    "tau",           "thin",             "uncollapsed",
  };
  return keys;
}

ConfigMap parse_config(std::istream& in, const std::string& source) {
  ConfigMap out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!is_known(key)) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

RunConfig RunConfig::from_map(const ConfigMap& values) {
  RunConfig c;
  for (const auto& [key, value] : values) {
    if (!is_known(key)) throw ConfigError("unknown configuration key '" + key + "'");
    if (key == "tau") {
      c.sampler.tau = QuantileLevel(to_double(key, value));
    } else if (key == "iters") {
      c.sampler.iterations = static_cast<long>(to_integer(key, value));
    } else if (key == "burnin") {
      c.sampler.burn_in = static_cast<long>(to_integer(key, value));
    } else if (key == "thin") {
      c.sampler.thin = static_cast<long>(to_integer(key, value));
    } else if (key == "starts") {
      c.sampler.starts = static_cast<long>(to_integer(key, value));
    } else if (key == "start-iters") {
      c.sampler.start_iterations = static_cast<long>(to_integer(key, value));
    } else if (key == "seed") {
      c.sampler.seed = to_seed(key, value);
    } else if (key == "no-autotune") {
      c.sampler.autotune = !to_bool(key, value);
    } else if (key == "uncollapsed") {
      c.sampler.collapsed = !to_bool(key, value);
    } else if (key == "sigma-beta-prop") {
      c.hyper.beta_proposal_sd = to_double(key, value);
    } else if (key == "sigma-gamma-prop") {
      c.hyper.gamma_proposal_sd = to_double(key, value);
    } else if (key == "jitter") {
      if (value == "auto") {
        c.hyper.jitter.reset();
      } else {
        c.hyper.jitter = to_double(key, value);
      }
    } else if (key == "lambda-rate") {
      if (value == "conjugate") {
        c.hyper.lambda_rate = LambdaRate::kConjugate;
      } else if (value == "sigma-squared") {
        c.hyper.lambda_rate = LambdaRate::kSigmaSquared;
      } else {
        throw ConfigError("'lambda-rate' expects conjugate or sigma-squared, got '" + value + "'");
      }
    } else if (key == "a-sigma") {
      c.hyper.a_sigma = to_double(key, value);
    } else if (key == "b-sigma") {
      c.hyper.b_sigma = to_double(key, value);
    } else if (key == "a-lambda") {
      c.hyper.a_lambda = to_double(key, value);
    } else if (key == "b-lambda") {
      c.hyper.b_lambda = to_double(key, value);
    } else if (key == "a-gamma") {
      c.hyper.a_gamma = to_double(key, value);
    } else if (key == "b-gamma") {
      c.hyper.b_gamma = to_double(key, value);
    } else if (key == "data") {
      c.data = value;
    } else if (key == "response") {
      c.response = value;
    } else if (key == "out") {
      c.out = value;
    } else if (key == "chain") {
      c.chain = value;
    } else if (key == "example") {
      c.example = value;
    } else if (key == "n") {
      c.n = static_cast<long>(to_integer(key, value));
    } else if (key == "replications") {
      c.replications = static_cast<long>(to_integer(key, value));
    } else if (key == "jobs") {
      c.jobs = static_cast<int>(to_integer(key, value));
    } else if (key == "max-lag") {
      c.max_lag = static_cast<long>(to_integer(key, value));
    } else if (key == "grid-points") {
      c.grid_points = static_cast<long>(to_integer(key, value));
    }
  }
  c.validate();
  return c;
}

void RunConfig::validate() const {
  sampler.validate();
  hyper.validate();
  parse_example(example);
  if (n < 3) throw ConfigError("n must be at least 3");
  if (replications < 1) throw ConfigError("replications must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (max_lag < 1) throw ConfigError("max-lag must be at least 1");
  if (grid_points < 2) throw ConfigError("grid-points must be at least 2");
  if (response.empty()) throw ConfigError("response column name is empty");
}

ConfigMap RunConfig::to_map() const {
  ConfigMap m;
  m["tau"] = format_shortest(sampler.tau.value());
  m["iters"] = std::to_string(sampler.iterations);
  m["burnin"] = std::to_string(sampler.burn_in);
  m["thin"] = std::to_string(sampler.thin);
  m["seed"] = std::to_string(sampler.seed);
  m["starts"] = std::to_string(sampler.starts);
  m["start-iters"] = std::to_string(sampler.start_iterations);
  m["no-autotune"] = from_bool(!sampler.autotune);
  m["uncollapsed"] = from_bool(!sampler.collapsed);
  m["sigma-beta-prop"] = format_shortest(hyper.beta_proposal_sd);
  m["sigma-gamma-prop"] = format_shortest(hyper.gamma_proposal_sd);
  m["jitter"] = hyper.jitter ? format_shortest(*hyper.jitter) : "auto";
  m["lambda-rate"] =
      hyper.lambda_rate == LambdaRate::kConjugate ? "conjugate" : "sigma-squared";
  m["a-sigma"] = format_shortest(hyper.a_sigma);
  m["b-sigma"] = format_shortest(hyper.b_sigma);
  m["a-lambda"] = format_shortest(hyper.a_lambda);
  m["b-lambda"] = format_shortest(hyper.b_lambda);
  m["a-gamma"] = format_shortest(hyper.a_gamma);
  m["b-gamma"] = format_shortest(hyper.b_gamma);
  m["data"] = data.string();
  m["response"] = response;
  m["out"] = out.string();
  m["chain"] = chain.string();
  m["example"] = example;
  m["n"] = std::to_string(n);
  m["replications"] = std::to_string(replications);
  m["jobs"] = std::to_string(jobs);
  m["max-lag"] = std::to_string(max_lag);
  m["grid-points"] = std::to_string(grid_points);
  return m;
}

void write_config(std::ostream& out, const ConfigMap& values) {
  for (const auto& [key, value] : values) out << key << '=' << value << '\n';
}

}  // namespace bqsim
