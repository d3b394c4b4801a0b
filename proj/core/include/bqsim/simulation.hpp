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

#ifndef BQSIM_SIMULATION_HPP_
#define BQSIM_SIMULATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bqsim/ald.hpp"
#include "bqsim/random.hpp"
#include "bqsim/sampler.hpp"

namespace bqsim {

enum class Example { k1, k2, k3, k4, k5a, k5b };

// Accepts "1", "2", "3", "4", "5a", "5b". Throws ConfigError otherwise.
Example parse_example(std::string_view text);
std::string to_string(Example example);

// Raw (unstandardized) simulated data with the true index direction.
struct SimulatedData {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  // Index vector used to generate y (not necessarily unit norm).
  Eigen::VectorXd beta;
  // beta normalized to unit norm with a positive first component.
  Eigen::VectorXd truth;
};

// Homoscedastic sine link: sin(pi (t - A) / (C - A)).
inline const double kExample1A = 0.8660254037844386 - 1.645 / 3.4641016151377546;
inline const double kExample1C = 0.8660254037844386 + 1.645 / 3.4641016151377546;
double example1_link(double t);
double example2_link(double t);
double example3_link(double t);

// x ~ U[0,1]^3, beta = (1,1,1)/sqrt(3), y = sin-link + 0.1 Z.
SimulatedData generate_example1(long n, RandomStream& rng);
// x ~ N(0, 0.25^2)^2, beta = (1,2)/sqrt(5), y = 10 sin(0.75 t) + sqrt(sin(t) + 1) Z.
SimulatedData generate_example2(long n, RandomStream& rng);
// x ~ N(0,1)^2, beta = (1,2)/sqrt(5), y = 5 cos(t) + exp(-t^2) + Exp(mean 2).
SimulatedData generate_example3(long n, RandomStream& rng);
// Example 1 design with ALD(0, 0.05, tau) errors.
SimulatedData generate_example4(long n, QuantileLevel tau, RandomStream& rng);
// Example 1 link and noise with p = 10; variant a uses beta = (1,1,1,0,...,0)
// as written, variant b uses (1,...,1)/sqrt(10).
SimulatedData generate_example5(bool variant_a, long n, RandomStream& rng);

SimulatedData generate_example(Example example, long n, QuantileLevel tau, RandomStream& rng);

// Scale of the Example 4 ALD errors.
inline constexpr double kExample4Sigma = 0.05;

struct SimSpec {
  Example example = Example::k1;
  long n = 100;
  QuantileLevel tau{0.5};
  long replications = 20;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ReplicateResult {
  long index = 0;
  bool ok = false;
  std::string error;
  // Normalized posterior-mean index on the original predictor scale.
  Eigen::VectorXd estimate;
  // Posterior mean of sigma in original response units.
  double sigma_mean = 0.0;
  double beta_acceptance = 0.0;
  double gamma_acceptance = 0.0;
  double seconds = 0.0;
};

struct ReplicationReport {
  SimSpec spec;
  Eigen::VectorXd truth;
  std::vector<ReplicateResult> replicates;
  Eigen::VectorXd mse;  // over successful replicates only
  long failures = 0;
};

// Data stream of replicate r is substream(seed, 2r); its chain stream is
// substream(seed, 2r + 1). Results do not depend on `jobs`.
ReplicateResult run_replicate(const SimSpec& spec, long index, const SamplerConfig& cfg,
                              const Hyperparams& hp);

using ReplicateCallback = std::function<void(const ReplicateResult&)>;

ReplicationReport run_replication_study(const SimSpec& spec, const SamplerConfig& cfg,
                                        const Hyperparams& hp, int jobs = 1,
                                        const ReplicateCallback& on_done = {});

}  // namespace bqsim

#endif  // BQSIM_SIMULATION_HPP_
