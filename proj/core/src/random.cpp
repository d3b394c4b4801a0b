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

#include "bqsim/random.hpp"

#include <cmath>
#include <limits>

#include "bqsim/errors.hpp"

namespace bqsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

RandomStream RandomStream::substream(std::uint64_t master_seed, std::uint64_t index) {
  return RandomStream(derive_seed(master_seed, index));
}

double RandomStream::uniform() {
  // 53 random mantissa bits, shifted by half a unit so 0 is never returned.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  // Box-Muller; one draw per call keeps the stream free of cached state.
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double sample_exponential(double mean, RandomStream& rng) {
  require_positive(mean, "exponential mean");
  return -mean * std::log(rng.uniform());
}

double sample_gamma(double shape, double rate, RandomStream& rng) {
  require_positive(shape, "gamma shape");
  require_positive(rate, "gamma rate");
  if (shape < 1.0) {
    // Boost to shape + 1 and rescale by U^{1/shape}; computed in log space so
    // very small shapes do not underflow to zero.
    const double g = sample_gamma(shape + 1.0, 1.0, rng);
    const double log_u = std::log(rng.uniform()) / shape;
    const double x = g * std::exp(log_u);
    if (x > 0.0) return x / rate;
    return std::numeric_limits<double>::min() / rate;
  }
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z;
    double v;
    do {
      z = rng.normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v / rate;
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double sample_inverse_gamma(double shape, double scale, RandomStream& rng) {
  require_positive(shape, "inverse gamma shape");
  require_positive(scale, "inverse gamma scale");
  return 1.0 / sample_gamma(shape, scale, rng);
}

double sample_inverse_gaussian(double mean, double shape, RandomStream& rng) {
  require_positive(mean, "inverse Gaussian mean");
  require_positive(shape, "inverse Gaussian shape");
  // Michael, Schucany & Haas (1976). The smaller root is written as
  // mean / (1 + a + sqrt(a (2 + a))) to avoid cancellation when mean is huge.
  const double z = rng.normal();
  const double a = mean * z * z / (2.0 * shape);
  const double x = mean / (1.0 + a + std::sqrt(a * (2.0 + a)));
  if (rng.uniform() * (mean + x) <= mean) return x;
  return mean * (mean / x);
}

double sample_gig_half(GigParams params, RandomStream& rng) {
  if (!(params.m >= 0.0) || !std::isfinite(params.m)) {
    throw ConfigError("GIG parameter m must be non-negative and finite");
  }
  require_positive(params.n, "GIG parameter n");
  if (params.m < 1e-12) {
    // m -> 0 limit: x^{-1/2} exp(-n^2 x / 2) is Gamma(1/2, rate n^2 / 2).
    return sample_gamma(0.5, 0.5 * params.n * params.n, rng);
  }
  // 1/X is inverse Gaussian with mean n/m and shape n^2.
  const double v = sample_inverse_gaussian(params.n / params.m, params.n * params.n, rng);
  return 1.0 / v;
}

}  // namespace bqsim
