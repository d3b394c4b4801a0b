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

#ifndef BQSIM_RANDOM_HPP_
#define BQSIM_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace bqsim {

// Seeded source of variates. Wraps a 64-bit Mersenne twister; every variate
// below is derived from raw engine output by code in this library, so a seed
// yields the same sequence on every platform and standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  // Child stream for replicate/chain `index` of a master seed. Distinct
  // indices give statistically independent streams.
  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index);

  // Uniform on the open interval (0, 1).
  double uniform();
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Mixes a master seed and an index into a well-spread 64-bit seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

// GIG(rho = 1/2, m, n): density proportional to
//   x^{-1/2} exp{-(m^2 / x + n^2 x) / 2},  x > 0.
struct GigParams {
  double m;  // >= 0
  double n;  // > 0
};

double sample_exponential(double mean, RandomStream& rng);
double sample_gamma(double shape, double rate, RandomStream& rng);
// Density proportional to x^{-shape-1} exp(-scale / x).
double sample_inverse_gamma(double shape, double scale, RandomStream& rng);
// Wald / inverse Gaussian with the given mean and shape.
double sample_inverse_gaussian(double mean, double shape, RandomStream& rng);
double sample_gig_half(GigParams params, RandomStream& rng);

}  // namespace bqsim

#endif  // BQSIM_RANDOM_HPP_
