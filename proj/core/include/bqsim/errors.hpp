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

#ifndef BQSIM_ERRORS_HPP_
#define BQSIM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bqsim {

// Bad user-supplied configuration or parameters. Maps to exit code 2 in the CLI.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent input data (CSV contents, dimension mismatches).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical breakdown during sampling. Maps to exit code 3 in the CLI.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cholesky breakdown; `pivot` is the zero-based index of the first
// non-positive pivot.
class FactorizationError : public NumericError {
 public:
  FactorizationError(std::size_t pivot, std::size_t size)
      : NumericError("Cholesky factorization failed at pivot " +
                     std::to_string(pivot) + " of " + std::to_string(size)),
        pivot_(pivot) {}

  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

}  // namespace bqsim

#endif  // BQSIM_ERRORS_HPP_
