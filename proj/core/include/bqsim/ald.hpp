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

#ifndef BQSIM_ALD_HPP_
#define BQSIM_ALD_HPP_

namespace bqsim {

class RandomStream;

// A quantile level strictly inside (0, 1).
class QuantileLevel {
 public:
  // Throws ConfigError unless 0 < tau < 1.
  explicit QuantileLevel(double tau);

  double value() const noexcept { return tau_; }

 private:
  double tau_;
};

// Constants of the normal/exponential mixture representation of the
// asymmetric Laplace distribution:
//   y = mu + k1 * e + sqrt(k2 * sigma * e) * z,  e ~ Exp(mean sigma), z ~ N(0, 1)
struct MixtureConstants {
  double k1;
  double k2;
};

// rho_tau(u) = u * (tau - I(u <= 0)).
double check_loss(double u, QuantileLevel tau) noexcept;

MixtureConstants mixture_constants(QuantileLevel tau) noexcept;

// Log density of ALD(mu, sigma, tau). Throws ConfigError for sigma <= 0.
double ald_logpdf(double y, double mu, double sigma, QuantileLevel tau);

// Closed-form CDF, obtained by integrating the two exponential pieces.
double ald_cdf(double y, double mu, double sigma, QuantileLevel tau);

// Draw through the mixture representation.
double ald_sample(double mu, double sigma, QuantileLevel tau, RandomStream& rng);

}  // namespace bqsim

#endif  // BQSIM_ALD_HPP_
