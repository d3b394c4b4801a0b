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

#ifndef BQSIM_GP_KERNEL_HPP_
#define BQSIM_GP_KERNEL_HPP_

#include <Eigen/Dense>

namespace bqsim {

class RandomStream;

// x_i^T beta for every row of X. Throws DataError on a dimension mismatch.
Eigen::VectorXd single_index(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta);

// Squared-exponential kernel on a one-dimensional index:
//   C_ij = gamma * exp(-(t_i - t_j)^2).
// The range parameter is absorbed into the scale of beta.
Eigen::MatrixXd build_kernel(const Eigen::VectorXd& index, double gamma);

// Cross-kernel between two index vectors (rows: `a`, columns: `b`).
Eigen::MatrixXd build_cross_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                   double gamma);

// Cholesky factor of C + diag(d) + jitter * I with its log-determinant.
// Immutable once built; safe to share read-only between threads.
class FactoredCovariance {
 public:
  // Throws FactorizationError (with the failing pivot) if the matrix is not
  // numerically positive definite, DataError on shape mismatch.
  static FactoredCovariance factor(const Eigen::MatrixXd& C, const Eigen::VectorXd& diag,
                                   double jitter = 0.0);

  Eigen::Index size() const noexcept { return lower_.rows(); }
  const Eigen::MatrixXd& lower() const noexcept { return lower_; }
  double log_determinant() const noexcept { return log_det_; }
  // The diagonal that was added to C, jitter included.
  const Eigen::VectorXd& added_diagonal() const noexcept { return added_diag_; }

  // (C + D)^{-1} v
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& V) const;
  // L^{-1} v, where L L^T = C + D.
  Eigen::VectorXd half_solve(const Eigen::VectorXd& v) const;
  // v^T (C + D)^{-1} v
  double quadratic_form(const Eigen::VectorXd& v) const;

 private:
  FactoredCovariance(Eigen::MatrixXd lower, Eigen::VectorXd added_diag);

  Eigen::MatrixXd lower_;
  Eigen::VectorXd added_diag_;
  double log_det_ = 0.0;
};

// -1/2 log det(C + E) - 1/2 r^T (C + E)^{-1} r. The (2 pi)^{-n/2} constant
// is left out everywhere this is used in a ratio.
double collapsed_gaussian_logpdf(const Eigen::VectorXd& r, const FactoredCovariance& fc);

struct GaussianConditional {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

// Posterior of f ~ N(0, C) given r = f + noise, noise ~ N(0, E), where `fc`
// factors C + E:
//   mean = C (C + E)^{-1} r,  cov = C (C + E)^{-1} E  (symmetrized).
GaussianConditional gp_condition(const FactoredCovariance& fc, const Eigen::MatrixXd& C,
                                 const Eigen::VectorXd& r);

struct GaussianMarginals {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

// Predictive mean and variance of the latent link at new index values.
GaussianMarginals gp_predict(const FactoredCovariance& fc, const Eigen::VectorXd& index_train,
                             const Eigen::VectorXd& index_new, double gamma,
                             const Eigen::VectorXd& r);

// Draw from N(mean, cov). The covariance is factored as given; if that fails
// it is retried once with `ridge` added to its diagonal.
Eigen::VectorXd sample_gaussian(const GaussianConditional& g, double ridge,
                                RandomStream& rng);

}  // namespace bqsim

#endif  // BQSIM_GP_KERNEL_HPP_
