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

#ifndef BQSIM_MH_HPP_
#define BQSIM_MH_HPP_

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "bqsim/random.hpp"

namespace bqsim {

// Metropolis accept/reject on a log acceptance ratio. Always consumes exactly
// one uniform, so the stream position does not depend on the decision.
inline bool metropolis_accept(double log_ratio, RandomStream& rng) {
  const double u = rng.uniform();
  return !std::isnan(log_ratio) && std::log(u) < log_ratio;
}

// Gaussian random-walk step on all coordinates jointly. `current` holds the
// log target at `x` and is updated on acceptance. A proposal whose target
// evaluates to -inf is always rejected.
template <class LogTarget>
bool random_walk_step(Eigen::VectorXd& x, double& current, LogTarget&& log_target, double sd,
                      RandomStream& rng) {
  Eigen::VectorXd proposal(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) proposal(j) = x(j) + sd * rng.normal();
  const double value = log_target(proposal);
  if (metropolis_accept(value - current, rng)) {
    x = std::move(proposal);
    current = value;
    return true;
  }
  return false;
}

// Random walk on log(x) for a positive scalar. The log Jacobian
// log(x') - log(x) of the transformation enters the acceptance ratio.
template <class LogTarget>
bool log_scale_step(double& x, double& current, LogTarget&& log_target, double sd,
                    RandomStream& rng) {
  const double log_x = std::log(x);
  const double log_proposal = log_x + sd * rng.normal();
  const double proposal = std::exp(log_proposal);
  const double value = proposal > 0.0 && std::isfinite(proposal)
                           ? log_target(proposal)
                           : -std::numeric_limits<double>::infinity();
  if (metropolis_accept(value - current + (log_proposal - log_x), rng)) {
    x = proposal;
    current = value;
    return true;
  }
  return false;
}

}  // namespace bqsim

#endif  // BQSIM_MH_HPP_
