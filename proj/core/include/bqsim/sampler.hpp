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

#ifndef BQSIM_SAMPLER_HPP_
#define BQSIM_SAMPLER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bqsim/ald.hpp"
#include "bqsim/dataset.hpp"
#include "bqsim/gp_kernel.hpp"
#include "bqsim/random.hpp"

namespace bqsim {

// Nugget added to C_n by the uncollapsed sampler, whose beta and gamma
// targets need C_n^{-1} directly.
inline constexpr double kUncollapsedNugget = 1e-5;

// How the rate of the lambda full conditional scales with sigma.
enum class LambdaRate {
  // b_lambda + sum|beta_j| / sigma: conjugate to the Laplace prior on beta.
  kConjugate,
  // b_lambda + sum|beta_j| / sigma^2. Not the conditional implied by that
  // prior; kept as an alternative for comparison.
  kSigmaSquared,
};

struct Hyperparams {
  double a_sigma = 0.5;
  double b_sigma = 0.5;
  double a_lambda = 0.5;
  double b_lambda = 0.5;
  double a_gamma = 0.5;
  double b_gamma = 0.5;
  // Random-walk scale for the joint beta proposal.
  double beta_proposal_sd = 0.1;
  // Random-walk scale for log(gamma).
  double gamma_proposal_sd = 0.5;
  // Nugget on the prior covariance of the link values. Unset means 0 for the
  // collapsed sampler and kUncollapsedNugget for the uncollapsed one.
  std::optional<double> jitter;
  LambdaRate lambda_rate = LambdaRate::kConjugate;

  void validate() const;
  double effective_jitter(bool collapsed) const;
};

struct SamplerConfig {
  QuantileLevel tau{0.5};
  long iterations = 10000;
  long burn_in = 5000;
  long thin = 1;
  bool collapsed = true;
  // Rescale proposals every kTuneWindow burn-in iterations towards a 10%-30%
  // acceptance rate, then freeze them for the rest of the run.
  bool autotune = true;
  std::uint64_t seed = 1;
  // Keep eta and e for every retained draw (needed for link-curve bands).
  bool keep_latent = false;
  // Short pilot runs from independent starting points; the chain continues
  // from the pilot whose final state has the highest collapsed_log_posterior.
  // Guards against a poor start freezing the index in a minor mode once sigma
  // has shrunk. 1 disables the pilots.
  long starts = 10;
  long start_iterations = 100;

  static constexpr long kTuneWindow = 500;

  void validate() const;
  long retained() const noexcept { return (iterations - burn_in) / thin; }
};

// One state of the chain. beta is unconstrained; its norm plays the role of
// the inverse kernel range.
struct ChainState {
  Eigen::VectorXd beta;
  Eigen::VectorXd eta;
  Eigen::VectorXd e;
  double sigma = 1.0;
  double lambda = 1.0;
  double gamma = 1.0;

  bool is_valid() const;
  std::string describe() const;
};

struct MoveStats {
  long proposed = 0;
  long accepted = 0;

  double rate() const noexcept {
    return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  }
};

struct ChainDraws {
  QuantileLevel tau{0.5};
  std::vector<long> iteration;
  Eigen::MatrixXd beta;  // one row per retained draw, model scale
  std::vector<double> sigma;
  std::vector<double> lambda;
  std::vector<double> gamma;
  // Filled only with SamplerConfig::keep_latent.
  std::vector<Eigen::VectorXd> eta;
  std::vector<Eigen::VectorXd> e;
  Eigen::VectorXd eta_mean;

  // Counted after burn-in, i.e. with frozen proposal scales.
  MoveStats beta_moves;
  MoveStats gamma_moves;
  double beta_proposal_sd = 0.0;
  double gamma_proposal_sd = 0.0;
  long failed_proposals = 0;
  ChainState final_state;

  std::size_t size() const noexcept { return sigma.size(); }
};

// Parameters of the sigma and lambda full conditionals.
struct InverseGammaParams {
  double shape;
  double scale;
};
struct GammaParams {
  double shape;
  double rate;
};

InverseGammaParams sigma_conditional(const ChainState& s, const Eigen::VectorXd& y,
                                     MixtureConstants k, const Hyperparams& hp);
GammaParams lambda_conditional(const ChainState& s, const Hyperparams& hp);

// GIG(1/2, m_i, n0) parameters of each e_i given the current eta and sigma.
struct LatentScaleConditional {
  Eigen::VectorXd m;
  double n0;
};
LatentScaleConditional e_conditional(const ChainState& s, const Eigen::VectorXd& y,
                                     MixtureConstants k);

// Collapsed log targets (eta integrated out), up to additive constants.
// `include_constants` adds the Laplace normalizer p log(lambda / 2 sigma);
// it is constant at fixed (lambda, sigma) and only used for diagnostics.
double log_target_beta(const Eigen::VectorXd& beta, const ChainState& s, const Dataset& data,
                       QuantileLevel tau, const Hyperparams& hp, double jitter = 0.0,
                       bool include_constants = false);
double log_target_gamma(double gamma, const ChainState& s, const Dataset& data,
                        QuantileLevel tau, const Hyperparams& hp, double jitter = 0.0);

// Log joint density of (y, beta, gamma, sigma, lambda, e) with eta
// integrated out, up to a constant that depends only on n, p and the priors.
double collapsed_log_posterior(const ChainState& s, const Dataset& data, QuantileLevel tau,
                               const Hyperparams& hp, double jitter = 0.0);

// Uncollapsed targets: conditional on eta through the GP prior N(0, C_n + jitter I).
double uncollapsed_log_target_beta(const Eigen::VectorXd& beta, const ChainState& s,
                                   const Dataset& data, const Hyperparams& hp, double jitter);
double uncollapsed_log_target_gamma(double gamma, const ChainState& s, const Dataset& data,
                                    const Hyperparams& hp, double jitter);

// Metropolis-within-Gibbs sampler over (beta, gamma, eta, sigma, lambda, e).
//
// The collapsed scan draws beta and gamma from their conditionals with eta
// integrated out, then eta, sigma, lambda and e from their full conditionals.
// The factor of C_n + E is cached and reused by the beta, gamma and eta
// blocks until beta, gamma, sigma or e changes.
class Sampler {
 public:
  Sampler(const Dataset& data, const SamplerConfig& cfg, const Hyperparams& hp);

  // beta ~ N(0, 0.25 I), e = 1, sigma = lambda = gamma = 1, then one eta draw.
  void initialize(RandomStream& rng);
  void set_state(ChainState state);
  const ChainState& state() const noexcept { return state_; }

  // Replaces the response (used by joint-distribution tests).
  void set_response(const Eigen::VectorXd& y);
  const Eigen::VectorXd& response() const noexcept { return y_; }

  bool update_beta(RandomStream& rng);
  bool update_gamma(RandomStream& rng);
  void update_eta(RandomStream& rng);
  void update_sigma(RandomStream& rng);
  void update_lambda(RandomStream& rng);
  void update_e(RandomStream& rng);
  // beta -> gamma -> eta -> sigma -> lambda -> e
  void scan(RandomStream& rng);

  double beta_proposal_sd() const noexcept { return beta_sd_; }
  double gamma_proposal_sd() const noexcept { return gamma_sd_; }
  void set_proposal_sds(double beta_sd, double gamma_sd);

  // Added to every beta/gamma log-target evaluation. A constant shift must
  // leave all accept/reject decisions unchanged.
  void set_log_target_offset(double offset) noexcept { offset_ = offset; }

  long failed_proposals() const noexcept { return failed_proposals_; }
  double current_log_target_beta();

 private:
  struct Factored {
    Eigen::MatrixXd correlation;  // exp(-(t_i - t_j)^2)
    Eigen::MatrixXd prior;        // gamma * correlation + jitter I
    FactoredCovariance factor;    // prior + E (collapsed) or prior (uncollapsed)
  };

  Eigen::MatrixXd prior_from(const Eigen::MatrixXd& correlation, double gamma) const;
  Eigen::VectorXd noise_diagonal() const;
  Eigen::VectorXd shifted_response() const;
  // Factor used by the beta/gamma targets for the given kernel pieces.
  Factored make_target_factor(Eigen::MatrixXd correlation, double gamma) const;
  double gaussian_term(const Factored& f) const;
  double beta_target(const Factored& f, const Eigen::VectorXd& beta) const;
  double gamma_target(const Factored& f, double gamma) const;
  const Factored& current_target_factor();
  void invalidate() noexcept;

  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  SamplerConfig cfg_;
  Hyperparams hp_;
  MixtureConstants k_;
  double jitter_;
  double beta_sd_;
  double gamma_sd_;
  double offset_ = 0.0;
  long failed_proposals_ = 0;
  ChainState state_;
  // Collapsed: factor of prior + E, invalidated by sigma/e changes.
  // Uncollapsed: factor of prior alone.
  std::optional<Factored> cache_;
};

// Runs a full chain: initialization (with pilot starts), optional burn-in
// tuning, retention. Pilot scans come before, and do not count towards,
// SamplerConfig::iterations.
// Numerical failures abort with a NumericError naming the iteration and the
// state at the time.
ChainDraws run_chain(const Dataset& data, const SamplerConfig& cfg, const Hyperparams& hp,
                     RandomStream& rng);

}  // namespace bqsim

#endif  // BQSIM_SAMPLER_HPP_
