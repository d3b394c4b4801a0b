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

#ifndef BQSIM_CONFIG_HPP_
#define BQSIM_CONFIG_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bqsim/sampler.hpp"

namespace bqsim {

// key -> value, keys spelled like the long CLI flags without the dashes.
using ConfigMap = std::map<std::string, std::string>;

// Every key accepted in a config file or on the command line.
const std::vector<std::string>& config_keys();

// Line-oriented key=value file. Blank lines and lines starting with '#' are
// skipped. Unknown keys and malformed lines throw ConfigError with the line
// number.
ConfigMap parse_config(std::istream& in, const std::string& source = "<config>");
ConfigMap read_config_file(const std::filesystem::path& path);

// Everything a command needs, validated before any sampling starts.
struct RunConfig {
  SamplerConfig sampler;
  Hyperparams hyper;

  std::filesystem::path data;
  std::string response = "y";
  std::filesystem::path out = "bqsim_out";
  std::filesystem::path chain;

  std::string example = "1";
  long n = 100;
  long replications = 20;
  int jobs = 1;
  long max_lag = 50;
  long grid_points = 101;

  // Values absent from the map keep their defaults. Throws ConfigError.
  static RunConfig from_map(const ConfigMap& values);
  // The full effective configuration, defaults included.
  ConfigMap to_map() const;
  void validate() const;
};

// Writes `key=value` lines in key order, readable by parse_config.
void write_config(std::ostream& out, const ConfigMap& values);

}  // namespace bqsim

#endif  // BQSIM_CONFIG_HPP_
