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

#include "bqsim/sampler.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <utility>

#include "bqsim/errors.hpp"
#include "bqsim/mh.hpp"

namespace bqsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be positive and finite");
  }
}

double laplace_term(const Eigen::VectorXd& beta, double lambda, double sigma) {
  return -(lambda / sigma) * beta.lpNorm<1>();
}

double inverse_gamma_prior_term(double gamma, double a, double b) {
  return -(a + 1.0) * std::log(gamma) - b / gamma;
}

// Doubles or halves a proposal scale from one tuning window's acceptance
// rate. After the first change of direction the step factor is square-rooted
// on every reversal, so the scale settles instead of oscillating.
struct ScaleTuner {
  double factor = 2.0;
  int last_direction = 0;
  long accepted = 0;

  void adapt(double& sd, long window) {
    const double rate = static_cast<double>(accepted) / static_cast<double>(window);
    accepted = 0;
    int direction = 0;
    if (rate > 0.30) direction = 1;
    if (rate < 0.10) direction = -1;
    if (direction == 0) return;
    if (last_direction != 0 && direction != last_direction) factor = std::sqrt(factor);
    sd = direction > 0 ? sd * factor : sd / factor;
    last_direction = direction;
  }
};

}  // namespace

void Hyperparams::validate() const {
  require_positive(a_sigma, "a_sigma");
  require_positive(b_sigma, "b_sigma");
  require_positive(a_lambda, "a_lambda");
  require_positive(b_lambda, "b_lambda");
  require_positive(a_gamma, "a_gamma");
  require_positive(b_gamma, "b_gamma");
  if (!(beta_proposal_sd >= 0.0) || !std::isfinite(beta_proposal_sd)) {
    throw ConfigError("beta proposal sd must be non-negative");
  }
  if (!(gamma_proposal_sd >= 0.0) || !std::isfinite(gamma_proposal_sd)) {
    throw ConfigError("gamma proposal sd must be non-negative");
  }
  if (jitter && (!(*jitter >= 0.0) || !std::isfinite(*jitter))) {
    throw ConfigError("jitter must be non-negative");
  }
}

double Hyperparams::effective_jitter(bool collapsed) const {
  if (jitter) return *jitter;
  return collapsed ? 0.0 : kUncollapsedNugget;
}

void SamplerConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be at least 1");
  if (burn_in < 0) throw ConfigError("burn-in must be non-negative");
  if (burn_in >= iterations) throw ConfigError("burn-in must be smaller than iterations");
  if (thin < 1) throw ConfigError("thin must be at least 1");
  if (starts < 1) throw ConfigError("starts must be at least 1");
  if (start_iterations < 1) throw ConfigError("start iterations must be at least 1");
}

bool ChainState::is_valid() const {
  if (!(sigma > 0.0) || !(lambda > 0.0) || !(gamma > 0.0)) return false;
  if (!std::isfinite(sigma) || !std::isfinite(lambda) || !std::isfinite(gamma)) return false;
  if (!beta.allFinite() || !eta.allFinite() || !e.allFinite()) return false;
  return e.size() == 0 || e.minCoeff() > 0.0;
}

std::string ChainState::describe() const {
  std::ostringstream os;
  os.precision(6);
  os << "sigma=" << sigma << " lambda=" << lambda << " gamma=" << gamma << " beta=(";
  for (Eigen::Index j = 0; j < beta.size(); ++j) os << (j ? "," : "") << beta(j);
  os << ")";
  if (e.size() > 0) os << " min(e)=" << e.minCoeff() << " max(e)=" << e.maxCoeff();
  return os.str();
}

InverseGammaParams sigma_conditional(const ChainState& s, const Eigen::VectorXd& y,
                                     MixtureConstants k, const Hyperparams& hp) {
  const double n = static_cast<double>(y.size());
  const double p = static_cast<double>(s.beta.size());
  const Eigen::ArrayXd resid = (y - s.eta).array() - k.k1 * s.e.array();
  const double data_term = (resid.square() / (2.0 * k.k2 * s.e.array()) + s.e.array()).sum();
  return {1.5 * n + p + hp.a_sigma, data_term + s.lambda * s.beta.lpNorm<1>() + hp.b_sigma};
}

GammaParams lambda_conditional(const ChainState& s, const Hyperparams& hp) {
  const double p = static_cast<double>(s.beta.size());
  const double scale = hp.lambda_rate == LambdaRate::kConjugate ? s.sigma : s.sigma * s.sigma;
  return {hp.a_lambda + p, hp.b_lambda + s.beta.lpNorm<1>() / scale};
}

LatentScaleConditional e_conditional(const ChainState& s, const Eigen::VectorXd& y,
                                     MixtureConstants k) {
  LatentScaleConditional out;
  out.m = ((y - s.eta).array().square() / (k.k2 * s.sigma)).sqrt().matrix();
  out.n0 = std::sqrt(k.k1 * k.k1 / (k.k2 * s.sigma) + 2.0 / s.sigma);
  return out;
}

double log_target_beta(const Eigen::VectorXd& beta, const ChainState& s, const Dataset& data,
                       QuantileLevel tau, const Hyperparams& hp, double jitter,
                       bool include_constants) {
  (void)hp;
  const MixtureConstants k = mixture_constants(tau);
  Eigen::MatrixXd C = build_kernel(single_index(data.X(), beta), s.gamma);
  C.diagonal().array() += jitter;
  const auto fc = FactoredCovariance::factor(C, k.k2 * s.sigma * s.e);
  const Eigen::VectorXd r = data.y() - k.k1 * s.e;
  double value = collapsed_gaussian_logpdf(r, fc) + laplace_term(beta, s.lambda, s.sigma);
  if (include_constants) {
    value += static_cast<double>(beta.size()) * std::log(s.lambda / (2.0 * s.sigma));
  }
  return value;
}

double collapsed_log_posterior(const ChainState& s, const Dataset& data, QuantileLevel tau,
                               const Hyperparams& hp, double jitter) {
  double value = log_target_beta(s.beta, s, data, tau, hp, jitter, true);
  // e_i | sigma ~ Exp(mean sigma)
  value -= static_cast<double>(s.e.size()) * std::log(s.sigma) + s.e.sum() / s.sigma;
  value += inverse_gamma_prior_term(s.sigma, hp.a_sigma, hp.b_sigma);
  value += (hp.a_lambda - 1.0) * std::log(s.lambda) - hp.b_lambda * s.lambda;
  value += inverse_gamma_prior_term(s.gamma, hp.a_gamma, hp.b_gamma);
  return value;
}

double log_target_gamma(double gamma, const ChainState& s, const Dataset& data,
                        QuantileLevel tau, const Hyperparams& hp, double jitter) {
  if (!(gamma > 0.0)) return kNegInf;
  const MixtureConstants k = mixture_constants(tau);
  Eigen::MatrixXd C = build_kernel(single_index(data.X(), s.beta), gamma);
  C.diagonal().array() += jitter;
  const auto fc = FactoredCovariance::factor(C, k.k2 * s.sigma * s.e);
  const Eigen::VectorXd r = data.y() - k.k1 * s.e;
  return collapsed_gaussian_logpdf(r, fc) + inverse_gamma_prior_term(gamma, hp.a_gamma, hp.b_gamma);
}

double uncollapsed_log_target_beta(const Eigen::VectorXd& beta, const ChainState& s,
                                   const Dataset& data, const Hyperparams& hp, double jitter) {
  (void)hp;
  const Eigen::MatrixXd C = build_kernel(single_index(data.X(), beta), s.gamma);
  const auto fc = FactoredCovariance::factor(C, Eigen::VectorXd::Zero(C.rows()), jitter);
  return collapsed_gaussian_logpdf(s.eta, fc) + laplace_term(beta, s.lambda, s.sigma);
}

double uncollapsed_log_target_gamma(double gamma, const ChainState& s, const Dataset& data,
                                    const Hyperparams& hp, double jitter) {
  if (!(gamma > 0.0)) return kNegInf;
  const Eigen::MatrixXd C = build_kernel(single_index(data.X(), s.beta), gamma);
  const auto fc = FactoredCovariance::factor(C, Eigen::VectorXd::Zero(C.rows()), jitter);
  return collapsed_gaussian_logpdf(s.eta, fc) +
         inverse_gamma_prior_term(gamma, hp.a_gamma, hp.b_gamma);
}

Sampler::Sampler(const Dataset& data, const SamplerConfig& cfg, const Hyperparams& hp)
    : X_(data.X()),
      y_(data.y()),
      cfg_(cfg),
      hp_(hp),
      k_(mixture_constants(cfg.tau)),
      jitter_(hp.effective_jitter(cfg.collapsed)),
      beta_sd_(hp.beta_proposal_sd),
      gamma_sd_(hp.gamma_proposal_sd) {
  cfg_.validate();
  hp_.validate();
}

void Sampler::initialize(RandomStream& rng) {
  const Eigen::Index n = X_.rows();
  const Eigen::Index p = X_.cols();
  ChainState s;
  s.beta.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) s.beta(j) = 0.5 * rng.normal();
  s.e = Eigen::VectorXd::Ones(n);
  s.eta = Eigen::VectorXd::Zero(n);
  s.sigma = 1.0;
  s.lambda = 1.0;
  s.gamma = 1.0;
  set_state(std::move(s));
  update_eta(rng);
}

void Sampler::set_state(ChainState state) {
  if (state.beta.size() != X_.cols() || state.eta.size() != X_.rows() ||
      state.e.size() != X_.rows()) {
    throw DataError("chain state does not match the data dimensions");
  }
  state_ = std::move(state);
  cache_.reset();
}

void Sampler::set_response(const Eigen::VectorXd& y) {
  if (y.size() != y_.size()) throw DataError("response has the wrong length");
  y_ = y;
  invalidate();
}

void Sampler::set_proposal_sds(double beta_sd, double gamma_sd) {
  beta_sd_ = beta_sd;
  gamma_sd_ = gamma_sd;
}

void Sampler::invalidate() noexcept {
  if (cfg_.collapsed) cache_.reset();
}

Eigen::MatrixXd Sampler::prior_from(const Eigen::MatrixXd& correlation, double gamma) const {
  Eigen::MatrixXd prior = gamma * correlation;
  if (jitter_ != 0.0) prior.diagonal().array() += jitter_;
  return prior;
}

Eigen::VectorXd Sampler::noise_diagonal() const { return k_.k2 * state_.sigma * state_.e; }

Eigen::VectorXd Sampler::shifted_response() const { return y_ - k_.k1 * state_.e; }

Sampler::Factored Sampler::make_target_factor(Eigen::MatrixXd correlation, double gamma) const {
  Eigen::MatrixXd prior = prior_from(correlation, gamma);
  const Eigen::VectorXd diag =
      cfg_.collapsed ? noise_diagonal() : Eigen::VectorXd::Zero(prior.rows());
  FactoredCovariance fc = FactoredCovariance::factor(prior, diag);
  return Factored{std::move(correlation), std::move(prior), std::move(fc)};
}

double Sampler::gaussian_term(const Factored& f) const {
  return cfg_.collapsed ? collapsed_gaussian_logpdf(shifted_response(), f.factor)
                        : collapsed_gaussian_logpdf(state_.eta, f.factor);
}

double Sampler::beta_target(const Factored& f, const Eigen::VectorXd& beta) const {
  return gaussian_term(f) + laplace_term(beta, state_.lambda, state_.sigma) + offset_;
}

double Sampler::gamma_target(const Factored& f, double gamma) const {
  return gaussian_term(f) + inverse_gamma_prior_term(gamma, hp_.a_gamma, hp_.b_gamma) + offset_;
}

const Sampler::Factored& Sampler::current_target_factor() {
  if (!cache_) {
    cache_ = make_target_factor(build_kernel(X_ * state_.beta, 1.0), state_.gamma);
  }
  return *cache_;
}

double Sampler::current_log_target_beta() {
  return beta_target(current_target_factor(), state_.beta);
}

bool Sampler::update_beta(RandomStream& rng) {
  double current = beta_target(current_target_factor(), state_.beta);
  std::optional<Factored> proposed;
  auto target = [&](const Eigen::VectorXd& beta) {
    try {
      proposed = make_target_factor(build_kernel(X_ * beta, 1.0), state_.gamma);
    } catch (const FactorizationError& err) {
      ++failed_proposals_;
      std::clog << "warning: rejecting beta proposal: " << err.what() << '\n';
      proposed.reset();
      return kNegInf;
    }
    return beta_target(*proposed, beta);
  };
  const bool accepted = random_walk_step(state_.beta, current, target, beta_sd_, rng);
  if (accepted) cache_ = std::move(proposed);
  return accepted;
}

bool Sampler::update_gamma(RandomStream& rng) {
  double current = gamma_target(current_target_factor(), state_.gamma);
  std::optional<Factored> proposed;
  auto target = [&](double gamma) {
    try {
      proposed = make_target_factor(cache_->correlation, gamma);
    } catch (const FactorizationError& err) {
      ++failed_proposals_;
      std::clog << "warning: rejecting gamma proposal: " << err.what() << '\n';
      proposed.reset();
      return kNegInf;
    }
    return gamma_target(*proposed, gamma);
  };
  const bool accepted = log_scale_step(state_.gamma, current, target, gamma_sd_, rng);
  if (accepted) cache_ = std::move(proposed);
  return accepted;
}

void Sampler::update_eta(RandomStream& rng) {
  const Factored& f = current_target_factor();
  const Eigen::VectorXd r = shifted_response();
  GaussianConditional cond;
  if (cfg_.collapsed) {
    cond = gp_condition(f.factor, f.prior, r);
  } else {
    const auto fc = FactoredCovariance::factor(f.prior, noise_diagonal());
    cond = gp_condition(fc, f.prior, r);
  }
  state_.eta = sample_gaussian(cond, 1e-10 * state_.gamma, rng);
}

void Sampler::update_sigma(RandomStream& rng) {
  const InverseGammaParams ig = sigma_conditional(state_, y_, k_, hp_);
  state_.sigma = sample_inverse_gamma(ig.shape, ig.scale, rng);
  invalidate();
}

void Sampler::update_lambda(RandomStream& rng) {
  const GammaParams g = lambda_conditional(state_, hp_);
  state_.lambda = sample_gamma(g.shape, g.rate, rng);
}

void Sampler::update_e(RandomStream& rng) {
  const LatentScaleConditional c = e_conditional(state_, y_, k_);
  for (Eigen::Index i = 0; i < state_.e.size(); ++i) {
    state_.e(i) = sample_gig_half({c.m(i), c.n0}, rng);
  }
  invalidate();
}

void Sampler::scan(RandomStream& rng) {
  update_beta(rng);
  update_gamma(rng);
  update_eta(rng);
  update_sigma(rng);
  update_lambda(rng);
  update_e(rng);
}

ChainDraws run_chain(const Dataset& data, const SamplerConfig& cfg, const Hyperparams& hp,
                     RandomStream& rng) {
  cfg.validate();
  hp.validate();
  Sampler sampler(data, cfg, hp);

  auto checked_scan = [&](const std::string& where) {
    std::pair<bool, bool> accepted;
    try {
      accepted.first = sampler.update_beta(rng);
      accepted.second = sampler.update_gamma(rng);
      sampler.update_eta(rng);
      sampler.update_sigma(rng);
      sampler.update_lambda(rng);
      sampler.update_e(rng);
    } catch (const NumericError& err) {
      throw NumericError(where + ": " + err.what() + "; state: " + sampler.state().describe());
    } catch (const ConfigError& err) {
      // Inputs were validated up front, so a rejected distribution parameter
      // here means the state has degenerated.
      throw NumericError(where + ": " + err.what() + "; state: " + sampler.state().describe());
    }
    if (!sampler.state().is_valid()) {
      throw NumericError(where + ": chain state left its support; state: " +
                         sampler.state().describe());
    }
    return accepted;
  };

  sampler.initialize(rng);
  if (cfg.starts > 1) {
    const double jitter = hp.effective_jitter(cfg.collapsed);
    ChainState best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (long k = 1; k <= cfg.starts; ++k) {
      if (k > 1) sampler.initialize(rng);
      for (long t = 1; t <= cfg.start_iterations; ++t) {
        checked_scan("start " + std::to_string(k) + " iteration " + std::to_string(t));
      }
      double score = -std::numeric_limits<double>::infinity();
      try {
        score = collapsed_log_posterior(sampler.state(), data, cfg.tau, hp, jitter);
      } catch (const NumericError&) {
        // An end state whose covariance cannot be factored cannot win.
      }
      if (k == 1 || score > best_score) {
        best_score = score;
        best = sampler.state();
      }
    }
    sampler.set_state(std::move(best));
  }

  ChainDraws out;
  out.tau = cfg.tau;
  const long kept = cfg.retained();
  out.beta.resize(kept, data.p());
  out.iteration.reserve(kept);
  out.sigma.reserve(kept);
  out.lambda.reserve(kept);
  out.gamma.reserve(kept);
  out.eta_mean = Eigen::VectorXd::Zero(data.n());

  ScaleTuner beta_tuner;
  ScaleTuner gamma_tuner;
  double beta_sd = hp.beta_proposal_sd;
  double gamma_sd = hp.gamma_proposal_sd;
  long row = 0;

  for (long t = 1; t <= cfg.iterations; ++t) {
    const auto [beta_accepted, gamma_accepted] = checked_scan("iteration " + std::to_string(t));

    if (t <= cfg.burn_in) {
      beta_tuner.accepted += beta_accepted;
      gamma_tuner.accepted += gamma_accepted;
      if (cfg.autotune && t % SamplerConfig::kTuneWindow == 0) {
        beta_tuner.adapt(beta_sd, SamplerConfig::kTuneWindow);
        gamma_tuner.adapt(gamma_sd, SamplerConfig::kTuneWindow);
        sampler.set_proposal_sds(beta_sd, gamma_sd);
      }
      continue;
    }

    ++out.beta_moves.proposed;
    out.beta_moves.accepted += beta_accepted;
    ++out.gamma_moves.proposed;
    out.gamma_moves.accepted += gamma_accepted;

    if ((t - cfg.burn_in) % cfg.thin != 0) continue;
    const ChainState& s = sampler.state();
    out.iteration.push_back(t);
    out.beta.row(row++) = s.beta.transpose();
    out.sigma.push_back(s.sigma);
    out.lambda.push_back(s.lambda);
    out.gamma.push_back(s.gamma);
    out.eta_mean += s.eta;
    if (cfg.keep_latent) {
      out.eta.push_back(s.eta);
      out.e.push_back(s.e);
    }
  }
  if (row > 0) out.eta_mean /= static_cast<double>(row);
  out.beta_proposal_sd = beta_sd;
  out.gamma_proposal_sd = gamma_sd;
  out.failed_proposals = sampler.failed_proposals();
  out.final_state = sampler.state();
  return out;
}

}  // namespace bqsim
