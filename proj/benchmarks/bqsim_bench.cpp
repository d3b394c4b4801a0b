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

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "bqsim/dataset.hpp"
#include "bqsim/gp_kernel.hpp"
#include "bqsim/random.hpp"
#include "bqsim/sampler.hpp"
#include "bqsim/simulation.hpp"

namespace {

using namespace bqsim;

// Kernel build plus Cholesky of C + E at the sizes the sampler sees.
void BM_FactorKernel(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  RandomStream rng(1);
  Eigen::VectorXd t(n);
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i) = rng.normal();
    d(i) = 0.5 + rng.uniform();
  }
  for (auto _ : state) {
    const Eigen::MatrixXd C = build_kernel(t, 1.3);
    benchmark::DoNotOptimize(FactoredCovariance::factor(C, d).log_determinant());
  }
}
BENCHMARK(BM_FactorKernel)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

// One full Metropolis-within-Gibbs scan on Example 1 data.
void BM_Scan(benchmark::State& state) {
  const long n = state.range(0);
  const bool collapsed = state.range(1) != 0;
  RandomStream data_rng(2);
  const SimulatedData sim = generate_example1(n, data_rng);
  const Dataset data = Dataset::standardized(sim.X, sim.y);
  SamplerConfig cfg;
  cfg.collapsed = collapsed;
  Sampler sampler(data, cfg, Hyperparams{});
  RandomStream rng(3);
  sampler.initialize(rng);
  for (auto _ : state) sampler.scan(rng);
  state.SetLabel(collapsed ? "collapsed" : "uncollapsed");
}
BENCHMARK(BM_Scan)->Args({100, 1})->Args({100, 0})->Args({200, 1})->Unit(benchmark::kMicrosecond);

void BM_GigHalf(benchmark::State& state) {
  RandomStream rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(sample_gig_half({0.8, 1.7}, rng));
}
BENCHMARK(BM_GigHalf);

}  // namespace

BENCHMARK_MAIN();
