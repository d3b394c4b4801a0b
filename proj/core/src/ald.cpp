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

#include "bqsim/ald.hpp"

#include <cmath>
#include <string>

#include "bqsim/errors.hpp"
#include "bqsim/random.hpp"

namespace bqsim {

QuantileLevel::QuantileLevel(double tau) : tau_(tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ConfigError("quantile level must lie in (0, 1), got " + std::to_string(tau));
  }
}

double check_loss(double u, QuantileLevel tau) noexcept {
  const double t = tau.value();
  return u <= 0.0 ? u * (t - 1.0) : u * t;
}

MixtureConstants mixture_constants(QuantileLevel tau) noexcept {
  const double t = tau.value();
  const double v = t * (1.0 - t);
  return {(1.0 - 2.0 * t) / v, 2.0 / v};
}

double ald_logpdf(double y, double mu, double sigma, QuantileLevel tau) {
  if (!(sigma > 0.0)) throw ConfigError("ALD scale must be positive");
  const double t = tau.value();
  return std::log(t * (1.0 - t) / sigma) - check_loss(y - mu, tau) / sigma;
}

double ald_cdf(double y, double mu, double sigma, QuantileLevel tau) {
  if (!(sigma > 0.0)) throw ConfigError("ALD scale must be positive");
  const double t = tau.value();
  const double u = (y - mu) / sigma;
  if (u <= 0.0) return t * std::exp((1.0 - t) * u);
  return 1.0 - (1.0 - t) * std::exp(-t * u);
}

double ald_sample(double mu, double sigma, QuantileLevel tau, RandomStream& rng) {
  if (!(sigma > 0.0)) throw ConfigError("ALD scale must be positive");
  const MixtureConstants k = mixture_constants(tau);
  const double e = sample_exponential(sigma, rng);
  const double z = rng.normal();
  return mu + k.k1 * e + std::sqrt(k.k2 * sigma * e) * z;
}

}  // namespace bqsim
