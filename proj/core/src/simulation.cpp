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

#include "bqsim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "bqsim/dataset.hpp"
#include "bqsim/errors.hpp"
#include "bqsim/posterior.hpp"

namespace bqsim {

Example parse_example(std::string_view text) {
  if (text == "1") return Example::k1;
  if (text == "2") return Example::k2;
  if (text == "3") return Example::k3;
  if (text == "4") return Example::k4;
  if (text == "5a") return Example::k5a;
  if (text == "5b") return Example::k5b;
  throw ConfigError("unknown example '" + std::string(text) + "' (expected 1, 2, 3, 4, 5a or 5b)");
}

std::string to_string(Example example) {
  switch (example) {
    case Example::k1: return "1";
    case Example::k2: return "2";
    case Example::k3: return "3";
    case Example::k4: return "4";
    case Example::k5a: return "5a";
    case Example::k5b: return "5b";
  }
  return "?";
}

double example1_link(double t) {
  return std::sin(std::numbers::pi * (t - kExample1A) / (kExample1C - kExample1A));
}

double example2_link(double t) { return 10.0 * std::sin(0.75 * t); }

double example3_link(double t) { return 5.0 * std::cos(t) + std::exp(-t * t); }

namespace {

SimulatedData allocate(long n, const Eigen::VectorXd& beta) {
  if (n < 1) throw ConfigError("sample size must be positive");
  SimulatedData d;
  d.X.resize(n, beta.size());
  d.y.resize(n);
  d.beta = beta;
  d.truth = normalize_index(beta).direction;
  return d;
}

SimulatedData uniform_design_sine(long n, const Eigen::VectorXd& beta, RandomStream& rng,
                                  const std::function<double(RandomStream&)>& noise) {
  SimulatedData d = allocate(n, beta);
  for (long i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < beta.size(); ++j) d.X(i, j) = rng.uniform();
    const double t = d.X.row(i).dot(beta);
    d.y(i) = example1_link(t) + noise(rng);
  }
  return d;
}

}  // namespace

SimulatedData generate_example1(long n, RandomStream& rng) {
  const Eigen::VectorXd beta = Eigen::VectorXd::Ones(3) / std::sqrt(3.0);
  return uniform_design_sine(n, beta, rng, [](RandomStream& r) { return 0.1 * r.normal(); });
}

SimulatedData generate_example2(long n, RandomStream& rng) {
  const Eigen::VectorXd beta = Eigen::Vector2d(1.0, 2.0) / std::sqrt(5.0);
  SimulatedData d = allocate(n, beta);
  for (long i = 0; i < n; ++i) {
    d.X(i, 0) = 0.25 * rng.normal();
    d.X(i, 1) = 0.25 * rng.normal();
    const double t = d.X.row(i).dot(beta);
    d.y(i) = example2_link(t) + std::sqrt(std::sin(t) + 1.0) * rng.normal();
  }
  return d;
}

SimulatedData generate_example3(long n, RandomStream& rng) {
  const Eigen::VectorXd beta = Eigen::Vector2d(1.0, 2.0) / std::sqrt(5.0);
  SimulatedData d = allocate(n, beta);
  for (long i = 0; i < n; ++i) {
    d.X(i, 0) = rng.normal();
    d.X(i, 1) = rng.normal();
    const double t = d.X.row(i).dot(beta);
    d.y(i) = example3_link(t) + sample_exponential(2.0, rng);
  }
  return d;
}

SimulatedData generate_example4(long n, QuantileLevel tau, RandomStream& rng) {
  const Eigen::VectorXd beta = Eigen::VectorXd::Ones(3) / std::sqrt(3.0);
  return uniform_design_sine(n, beta, rng, [tau](RandomStream& r) {
    return ald_sample(0.0, kExample4Sigma, tau, r);
  });
}

SimulatedData generate_example5(bool variant_a, long n, RandomStream& rng) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(10);
  if (variant_a) {
    beta.head(3).setOnes();
  } else {
    beta.setConstant(1.0 / std::sqrt(10.0));
  }
  return uniform_design_sine(n, beta, rng, [](RandomStream& r) { return 0.1 * r.normal(); });
}

SimulatedData generate_example(Example example, long n, QuantileLevel tau, RandomStream& rng) {
  switch (example) {
    case Example::k1: return generate_example1(n, rng);
    case Example::k2: return generate_example2(n, rng);
    case Example::k3: return generate_example3(n, rng);
    case Example::k4: return generate_example4(n, tau, rng);
    case Example::k5a: return generate_example5(true, n, rng);
    case Example::k5b: return generate_example5(false, n, rng);
  }
  throw ConfigError("unknown example");
}

void SimSpec::validate() const {
  if (n < 3) throw ConfigError("simulation sample size must be at least 3");
  if (replications < 1) throw ConfigError("replications must be at least 1");
}

ReplicateResult run_replicate(const SimSpec& spec, long index, const SamplerConfig& cfg,
                              const Hyperparams& hp) {
  ReplicateResult res;
  res.index = index;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto r = static_cast<std::uint64_t>(index);
    RandomStream data_rng = RandomStream::substream(spec.seed, 2 * r);
    RandomStream chain_rng = RandomStream::substream(spec.seed, 2 * r + 1);
    const SimulatedData sim = generate_example(spec.example, spec.n, spec.tau, data_rng);
    const Dataset data = Dataset::standardized(sim.X, sim.y);
    SamplerConfig c = cfg;
    c.tau = spec.tau;
    c.keep_latent = false;
    const ChainDraws draws = run_chain(data, c, hp, chain_rng);
    res.estimate = posterior_index_estimate(draws, data, IndexScale::kOriginal);
    double sigma_sum = 0.0;
    for (double s : draws.sigma) sigma_sum += s;
    res.sigma_mean = data.response_transform().sd * sigma_sum / static_cast<double>(draws.size());
    res.beta_acceptance = draws.beta_moves.rate();
    res.gamma_acceptance = draws.gamma_moves.rate();
    res.ok = true;
  } catch (const std::exception& err) {
    res.ok = false;
    res.error = err.what();
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

ReplicationReport run_replication_study(const SimSpec& spec, const SamplerConfig& cfg,
                                        const Hyperparams& hp, int jobs,
                                        const ReplicateCallback& on_done) {
  spec.validate();
  cfg.validate();
  hp.validate();
  ReplicationReport report;
  report.spec = spec;
  {
    RandomStream probe(0);
    report.truth = generate_example(spec.example, 1, spec.tau, probe).truth;
  }
  report.replicates.resize(static_cast<std::size_t>(spec.replications));

  std::atomic<long> next{0};
  std::mutex callback_mutex;
  auto worker = [&] {
    for (long i = next++; i < spec.replications; i = next++) {
      ReplicateResult res = run_replicate(spec, i, cfg, hp);
      if (on_done) {
        std::lock_guard<std::mutex> lock(callback_mutex);
        on_done(res);
      }
      report.replicates[static_cast<std::size_t>(i)] = std::move(res);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(spec.replications)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<Eigen::VectorXd> estimates;
  for (const auto& r : report.replicates) {
    if (r.ok) {
      estimates.push_back(r.estimate);
    } else {
      ++report.failures;
    }
  }
  report.mse = estimates.empty()
                   ? Eigen::VectorXd::Constant(report.truth.size(), std::nan(""))
                   : mse_against_truth(estimates, report.truth);
  return report;
}

}  // namespace bqsim
