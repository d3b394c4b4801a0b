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

// Joint-distribution (Geweke) check of the sampler. Draws of the parameters
// obtained by (a) sampling prior then data and (b) alternating data draws
// with sampler scans must have the same distribution. The forward simulator
// uses <random> only, never the library samplers.

#ifndef BQSIM_TESTS_GEWEKE_HPP_
#define BQSIM_TESTS_GEWEKE_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bqsim/ald.hpp"
#include "bqsim/dataset.hpp"
#include "bqsim/random.hpp"
#include "bqsim/sampler.hpp"
#include "oracles.hpp"

namespace bqsim::testing {

struct GewekeStatistic {
  std::string name;
  double forward_mean = 0.0;
  double chain_mean = 0.0;
  double z = 0.0;
};

struct GewekeReport {
  std::vector<GewekeStatistic> statistics;
  long failed_proposals = 0;
};

struct GewekeSetup {
  long n = 10;
  long p = 2;
  long rounds = 5000;
  // Sampler scans between successive data draws.
  long scans_per_round = 1;
  long forward_draws = 20000;
  double tau = 0.3;
  bool collapsed = true;
  LambdaRate lambda_rate = LambdaRate::kConjugate;
  // Nugget on the prior covariance; unset uses the sampler default.
  std::optional<double> jitter;
  std::uint64_t seed = 2024;
};

// Informative priors keep every monitored moment finite.
inline Hyperparams geweke_hyperparams() {
  Hyperparams hp;
  hp.a_sigma = 10.0;
  hp.b_sigma = 4.5;
  hp.a_lambda = 10.0;
  hp.b_lambda = 4.0;
  hp.a_gamma = 10.0;
  hp.b_gamma = 9.0;
  hp.beta_proposal_sd = 0.3;
  hp.gamma_proposal_sd = 0.4;
  return hp;
}

class ForwardModel {
 public:
  ForwardModel(const Eigen::MatrixXd& X, const Hyperparams& hp, double tau, double jitter,
               std::uint64_t seed)
      : X_(X), hp_(hp), jitter_(jitter), engine_(seed) {
    k1_ = (1.0 - 2.0 * tau) / (tau * (1.0 - tau));
    k2_ = 2.0 / (tau * (1.0 - tau));
  }

  ChainState draw_parameters() {
    ChainState s;
    s.lambda = gamma(hp_.a_lambda, hp_.b_lambda);
    s.sigma = 1.0 / gamma(hp_.a_sigma, hp_.b_sigma);
    s.gamma = 1.0 / gamma(hp_.a_gamma, hp_.b_gamma);
    s.beta.resize(X_.cols());
    for (Eigen::Index j = 0; j < X_.cols(); ++j) {
      const double mag = std::exponential_distribution<double>(s.lambda / s.sigma)(engine_);
      s.beta(j) = uniform() < 0.5 ? -mag : mag;
    }
    s.e.resize(X_.rows());
    for (Eigen::Index i = 0; i < X_.rows(); ++i) {
      s.e(i) = std::exponential_distribution<double>(1.0 / s.sigma)(engine_);
    }
    // Prior covariance may be singular; an eigendecomposition with clipped
    // eigenvalues samples it exactly.
    const Eigen::MatrixXd C =
        dense_kernel(X_, s.beta, s.gamma) +
        jitter_ * Eigen::MatrixXd::Identity(X_.rows(), X_.rows());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
    Eigen::VectorXd z(X_.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      z(i) = std::sqrt(std::max(eig.eigenvalues()(i), 0.0)) * normal();
    }
    s.eta = eig.eigenvectors() * z;
    return s;
  }

  Eigen::VectorXd draw_response(const ChainState& s) {
    Eigen::VectorXd y(X_.rows());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      y(i) = s.eta(i) + k1_ * s.e(i) + std::sqrt(k2_ * s.sigma * s.e(i)) * normal();
    }
    return y;
  }

 private:
  double gamma(double shape, double rate) {
    return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
  }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  Eigen::MatrixXd X_;
  Hyperparams hp_;
  double jitter_;
  double k1_ = 0.0;
  double k2_ = 0.0;
  std::mt19937_64 engine_;
};

inline std::vector<double> geweke_functionals(const ChainState& s) {
  return {s.sigma, s.lambda, std::log(s.gamma), s.beta.lpNorm<1>(), s.eta.mean()};
}

inline const std::vector<std::string>& geweke_names() {
  static const std::vector<std::string> names = {"sigma", "lambda", "log_gamma",
                                                 "beta_l1_norm", "eta_mean"};
  return names;
}

inline GewekeReport run_geweke(const GewekeSetup& setup) {
  Hyperparams hp = geweke_hyperparams();
  hp.lambda_rate = setup.lambda_rate;
  hp.jitter = setup.jitter;
  std::mt19937_64 design_engine(setup.seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd X(setup.n, setup.p);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = nd(design_engine);
  }
  const double jitter = hp.effective_jitter(setup.collapsed);
  ForwardModel forward(X, hp, setup.tau, jitter, setup.seed + 1);

  const std::size_t k = geweke_names().size();
  std::vector<std::vector<double>> fwd(k), chain(k);

  for (long r = 0; r < setup.forward_draws; ++r) {
    const auto g = geweke_functionals(forward.draw_parameters());
    for (std::size_t i = 0; i < k; ++i) fwd[i].push_back(g[i]);
  }

  ChainState state = forward.draw_parameters();
  const Eigen::VectorXd y0 = forward.draw_response(state);
  SamplerConfig cfg;
  cfg.tau = QuantileLevel(setup.tau);
  cfg.collapsed = setup.collapsed;
  cfg.autotune = false;
  const Dataset data = Dataset::on_model_scale(X, y0);
  Sampler sampler(data, cfg, hp);
  sampler.set_state(state);
  RandomStream rng(setup.seed + 2);
  for (long r = 0; r < setup.rounds; ++r) {
    sampler.set_response(forward.draw_response(sampler.state()));
    for (long k = 0; k < setup.scans_per_round; ++k) sampler.scan(rng);
    const auto g = geweke_functionals(sampler.state());
    for (std::size_t i = 0; i < k; ++i) chain[i].push_back(g[i]);
  }

  GewekeReport out;
  out.failed_proposals = sampler.failed_proposals();
  for (std::size_t i = 0; i < k; ++i) {
    GewekeStatistic st;
    st.name = geweke_names()[i];
    st.forward_mean = mean_of(fwd[i]);
    st.chain_mean = mean_of(chain[i]);
    const double se_f = std::sqrt(variance_of(fwd[i]) / static_cast<double>(fwd[i].size()));
    const double se_c = batch_means_se(chain[i]);
    st.z = (st.chain_mean - st.forward_mean) / std::sqrt(se_f * se_f + se_c * se_c);
    out.statistics.push_back(st);
  }
  return out;
}

}  // namespace bqsim::testing

#endif  // BQSIM_TESTS_GEWEKE_HPP_
