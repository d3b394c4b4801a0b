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

#ifndef BQSIM_POSTERIOR_HPP_
#define BQSIM_POSTERIOR_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bqsim/dataset.hpp"
#include "bqsim/sampler.hpp"

namespace bqsim {

struct PosteriorSummary {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q975 = 0.0;
};

// Empirical quantile of sorted data by linear interpolation between order
// statistics: with h = (N - 1) * prob, returns x[floor(h)] + (h - floor(h)) *
// (x[floor(h) + 1] - x[floor(h)]). This is type 7 of Hyndman & Fan.
double sorted_quantile(std::span<const double> sorted, double prob);

// Mean, median, sample standard deviation (N - 1 denominator) and the 2.5% /
// 97.5% quantiles. Throws DataError for fewer than two draws.
PosteriorSummary summarize(std::span<const double> draws);

// Unit-norm direction with a fixed sign and the implied range d = 1/|beta|^2.
struct NormalizedIndex {
  Eigen::VectorXd direction;
  double d = 0.0;
};

// Components with |value| below this are skipped when choosing the sign.
inline constexpr double kSignThreshold = 1e-10;

// beta / |beta|, flipped so that the first component whose magnitude exceeds
// kSignThreshold is positive. Throws DataError for the zero vector.
NormalizedIndex normalize_index(const Eigen::VectorXd& beta_raw);

// Componentwise mean over estimates of (estimate_j - truth_j)^2.
Eigen::VectorXd mse_against_truth(const std::vector<Eigen::VectorXd>& estimates,
                                  const Eigen::VectorXd& truth);

// Sample autocorrelation r_k = c_k / c_0, c_k = (1/N) sum (x_t - xbar)(x_{t+k} - xbar),
// for k = 0..max_lag. Throws DataError if the series is constant or not
// longer than max_lag.
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

// N / tau with tau = -1 + 2 sum_{k>=0} (r_{2k} + r_{2k+1}), summed while the
// pair sums stay positive (Geyer's initial positive sequence). tau is floored
// at 1 / log10(N), so strongly antithetic chains report ESS > N.
double effective_sample_size(std::span<const double> series);

// Which predictor scale a normalized index refers to.
enum class IndexScale {
  kModel,     // standardized predictors the sampler saw
  kOriginal,  // predictors in their original units
};

// One normalized direction per retained draw (rows), each sign-fixed.
Eigen::MatrixXd normalized_index_draws(const ChainDraws& draws, const Dataset& data,
                                       IndexScale scale);

// Unit-norm point estimate: the posterior mean of the per-draw normalized
// directions, renormalized and sign-fixed.
Eigen::VectorXd posterior_index_estimate(const ChainDraws& draws, const Dataset& data,
                                         IndexScale scale);

// d = 1 / |beta_raw|^2 for each retained draw (model scale).
std::vector<double> range_draws(const ChainDraws& draws);

struct LinkFit {
  Eigen::VectorXd grid;
  Eigen::VectorXd mean;
  Eigen::VectorXd lower;  // pointwise 2.5% over draws
  Eigen::VectorXd upper;  // pointwise 97.5% over draws
};

// Posterior link curve on a grid of normalized-index values. For every
// retained draw the GP predictive mean given (beta, gamma, sigma, e) is
// evaluated at the grid; the curve is reported in original response units.
// Needs draws kept with SamplerConfig::keep_latent.
LinkFit fitted_link(const ChainDraws& draws, const Dataset& data, const Eigen::VectorXd& grid,
                    IndexScale scale, double jitter = 0.0);

}  // namespace bqsim

#endif  // BQSIM_POSTERIOR_HPP_
