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

#ifndef BQSIM_COMMANDS_HPP_
#define BQSIM_COMMANDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bqsim/config.hpp"
#include "bqsim/dataset.hpp"
#include "bqsim/sampler.hpp"
#include "bqsim/simulation.hpp"

namespace bqsim {

// Column layouts of the files written by the commands.
std::vector<std::string> chain_csv_header(long p);
std::vector<std::string> summary_csv_header();
std::vector<std::string> mse_csv_header(long p);
std::vector<std::string> estimates_csv_header(long p);

// chain.csv: iteration, beta_raw_*, beta_norm_* (model scale), d, sigma,
// lambda, gamma; one row per retained draw.
void write_chain_csv(const std::filesystem::path& path, const ChainDraws& draws,
                     const Dataset& data);

// fit: one chain on an ingested CSV. Writes chain.csv, summary.csv,
// fitted.csv, acf.csv and meta.txt into cfg.out.
void command_fit(const RunConfig& cfg, std::ostream& log);

// simulate: one dataset of the chosen example; writes data.csv and truth.csv.
void command_simulate(const RunConfig& cfg, std::ostream& log);

// replicate: simulation study; writes mse.csv, estimates.csv and meta.txt.
ReplicationReport command_replicate(const RunConfig& cfg, std::ostream& log);

// diagnose: ACF and ESS of every parameter column in a stored chain.csv;
// writes acf.csv and ess.csv.
void command_diagnose(const RunConfig& cfg, std::ostream& log);

}  // namespace bqsim

#endif  // BQSIM_COMMANDS_HPP_
