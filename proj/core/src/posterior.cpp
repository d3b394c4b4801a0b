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

#include "bqsim/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bqsim/errors.hpp"
#include "bqsim/gp_kernel.hpp"

namespace bqsim {

double sorted_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw DataError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

PosteriorSummary summarize(std::span<const double> draws) {
  if (draws.size() < 2) throw DataError("summarize needs at least two draws");
  const double n = static_cast<double>(draws.size());
  const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : draws) ss += (x - mean) * (x - mean);
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  PosteriorSummary s;
  s.mean = mean;
  s.sd = std::sqrt(ss / (n - 1.0));
  s.median = sorted_quantile(sorted, 0.5);
  s.q025 = sorted_quantile(sorted, 0.025);
  s.q975 = sorted_quantile(sorted, 0.975);
  return s;
}

NormalizedIndex normalize_index(const Eigen::VectorXd& beta_raw) {
  const double norm = beta_raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DataError("cannot normalize a zero or non-finite index vector");
  }
  NormalizedIndex out;
  out.direction = beta_raw / norm;
  out.d = 1.0 / (norm * norm);
  for (Eigen::Index j = 0; j < out.direction.size(); ++j) {
    if (std::abs(out.direction(j)) > kSignThreshold) {
      if (out.direction(j) < 0.0) out.direction = -out.direction;
      break;
    }
  }
  return out;
}

Eigen::VectorXd mse_against_truth(const std::vector<Eigen::VectorXd>& estimates,
                                  const Eigen::VectorXd& truth) {
  if (estimates.empty()) throw DataError("no estimates to compare");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(truth.size());
  for (const auto& est : estimates) {
    if (est.size() != truth.size()) throw DataError("estimate and truth differ in length");
    acc += (est - truth).array().square().matrix();
  }
  return acc / static_cast<double>(estimates.size());
}

namespace {

struct Centered {
  std::vector<double> x;
  double c0;
};

Centered center(std::span<const double> series) {
  const double n = static_cast<double>(series.size());
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  Centered c;
  c.x.reserve(series.size());
  double ss = 0.0;
  for (double v : series) {
    c.x.push_back(v - mean);
    ss += (v - mean) * (v - mean);
  }
  c.c0 = ss / n;
  return c;
}

double autocovariance(const std::vector<double>& x, std::size_t lag) {
  double s = 0.0;
  for (std::size_t t = 0; t + lag < x.size(); ++t) s += x[t] * x[t + lag];
  return s / static_cast<double>(x.size());
}

}  // namespace

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
  if (series.size() <= max_lag) throw DataError("series must be longer than max_lag");
  const Centered c = center(series);
  if (!(c.c0 > 0.0)) throw DataError("autocorrelation of a constant series");
  std::vector<double> out(max_lag + 1);
  out[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) out[k] = autocovariance(c.x, k) / c.c0;
  return out;
}

double effective_sample_size(std::span<const double> series) {
  if (series.size() < 4) throw DataError("effective sample size needs at least four draws");
  const Centered c = center(series);
  if (!(c.c0 > 0.0)) throw DataError("effective sample size of a constant series");
  const std::size_t n = series.size();
  double sum_pairs = 0.0;
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
    const double r0 = k == 0 ? 1.0 : autocovariance(c.x, 2 * k) / c.c0;
    const double r1 = autocovariance(c.x, 2 * k + 1) / c.c0;
    const double pair = r0 + r1;
    if (!(pair > 0.0)) break;
    sum_pairs += pair;
  }
  const double nd = static_cast<double>(n);
  const double tau = std::max(-1.0 + 2.0 * sum_pairs, 1.0 / std::log10(nd));
  return nd / tau;
}

namespace {

// Model-scale weights w such that x_model^T beta = (x - m)^T w, plus the
// centering vector m (zero on the model scale).
struct ScaledIndex {
  Eigen::VectorXd weights;
  Eigen::VectorXd center;
};

ScaledIndex scaled_index(const Eigen::VectorXd& beta, const Dataset& data, IndexScale scale) {
  ScaledIndex s;
  if (scale == IndexScale::kModel) {
    s.weights = beta;
    s.center = Eigen::VectorXd::Zero(beta.size());
    return s;
  }
  s.weights = data.index_to_original_scale(beta);
  s.center.resize(beta.size());
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    s.center(j) = data.predictor_transforms()[j].mean;
  }
  return s;
}

}  // namespace

Eigen::MatrixXd normalized_index_draws(const ChainDraws& draws, const Dataset& data,
                                       IndexScale scale) {
  Eigen::MatrixXd out(draws.beta.rows(), draws.beta.cols());
  for (Eigen::Index i = 0; i < draws.beta.rows(); ++i) {
    const Eigen::VectorXd beta = draws.beta.row(i).transpose();
    out.row(i) = normalize_index(scaled_index(beta, data, scale).weights).direction.transpose();
  }
  return out;
}

Eigen::VectorXd posterior_index_estimate(const ChainDraws& draws, const Dataset& data,
                                         IndexScale scale) {
  if (draws.beta.rows() == 0) throw DataError("no retained draws");
  const Eigen::MatrixXd dirs = normalized_index_draws(draws, data, scale);
  return normalize_index(dirs.colwise().mean().transpose()).direction;
}

std::vector<double> range_draws(const ChainDraws& draws) {
  std::vector<double> out(static_cast<std::size_t>(draws.beta.rows()));
  for (Eigen::Index i = 0; i < draws.beta.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = 1.0 / draws.beta.row(i).squaredNorm();
  }
  return out;
}

LinkFit fitted_link(const ChainDraws& draws, const Dataset& data, const Eigen::VectorXd& grid,
                    IndexScale scale, double jitter) {
  if (grid.size() == 0) throw DataError("fitted_link: empty grid");
  const auto n_draws = static_cast<Eigen::Index>(draws.size());
  if (n_draws == 0) throw DataError("fitted_link: no retained draws");
  if (static_cast<Eigen::Index>(draws.e.size()) != n_draws) {
    throw DataError("fitted_link: draws were not kept with latent variables");
  }
  const MixtureConstants k = mixture_constants(draws.tau);
  const ColumnTransform& ytf = data.response_transform();
  Eigen::MatrixXd curves(n_draws, grid.size());
  for (Eigen::Index i = 0; i < n_draws; ++i) {
    const auto si = static_cast<std::size_t>(i);
    const Eigen::VectorXd beta = draws.beta.row(i).transpose();
    const ScaledIndex w = scaled_index(beta, data, scale);
    const double norm = w.weights.norm();
    const Eigen::VectorXd dir = normalize_index(w.weights).direction;
    // Sign relating the sign-fixed direction back to w.
    const double sign = dir.dot(w.weights) >= 0.0 ? 1.0 : -1.0;
    const double shift = w.center.dot(dir);
    const Eigen::VectorXd t_grid = (sign * norm) * (grid.array() - shift).matrix();

    const Eigen::VectorXd t_train = data.X() * beta;
    Eigen::MatrixXd C = build_kernel(t_train, draws.gamma[si]);
    C.diagonal().array() += jitter;
    const Eigen::VectorXd& e = draws.e[si];
    const auto fc = FactoredCovariance::factor(C, k.k2 * draws.sigma[si] * e);
    const Eigen::VectorXd r = data.y() - k.k1 * e;
    const GaussianMarginals pred = gp_predict(fc, t_train, t_grid, draws.gamma[si], r);
    curves.row(i) = (ytf.mean + ytf.sd * pred.mean.array()).matrix().transpose();
  }
  LinkFit fit;
  fit.grid = grid;
  fit.mean = curves.colwise().mean().transpose();
  fit.lower.resize(grid.size());
  fit.upper.resize(grid.size());
  std::vector<double> column(static_cast<std::size_t>(n_draws));
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    for (Eigen::Index i = 0; i < n_draws; ++i) column[static_cast<std::size_t>(i)] = curves(i, g);
    std::sort(column.begin(), column.end());
    fit.lower(g) = sorted_quantile(column, 0.025);
    fit.upper(g) = sorted_quantile(column, 0.975);
  }
  return fit;
}

}  // namespace bqsim
