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

#include "bqsim/gp_kernel.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bqsim/errors.hpp"
#include "bqsim/random.hpp"

namespace bqsim {

namespace {

// In-place lower Cholesky; returns the failing pivot or -1. Uses Eigen's
// blocked kernel directly because Eigen::LLT does not report the pivot.
Eigen::Index cholesky_in_place(Eigen::MatrixXd& m) {
  return Eigen::internal::llt_inplace<double, Eigen::Lower>::blocked(m);
}

}  // namespace

Eigen::VectorXd single_index(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta) {
  if (X.cols() != beta.size()) {
    throw DataError("single_index: X has " + std::to_string(X.cols()) +
                    " columns but beta has " + std::to_string(beta.size()) + " entries");
  }
  return X * beta;
}

Eigen::MatrixXd build_kernel(const Eigen::VectorXd& index, double gamma) {
  const Eigen::Index n = index.size();
  Eigen::MatrixXd C(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    C(j, j) = gamma;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double d = index(i) - index(j);
      const double v = gamma * std::exp(-d * d);
      C(i, j) = v;
      C(j, i) = v;
    }
  }
  return C;
}

Eigen::MatrixXd build_cross_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                   double gamma) {
  Eigen::MatrixXd K(a.size(), b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double d = a(i) - b(j);
      K(i, j) = gamma * std::exp(-d * d);
    }
  }
  return K;
}

FactoredCovariance::FactoredCovariance(Eigen::MatrixXd lower, Eigen::VectorXd added_diag)
    : lower_(std::move(lower)), added_diag_(std::move(added_diag)) {
  log_det_ = 2.0 * lower_.diagonal().array().log().sum();
}

FactoredCovariance FactoredCovariance::factor(const Eigen::MatrixXd& C,
                                              const Eigen::VectorXd& diag, double jitter) {
  const Eigen::Index n = C.rows();
  if (C.cols() != n || diag.size() != n) {
    throw DataError("factor_covariance: shape mismatch");
  }
  Eigen::VectorXd added = diag.array() + jitter;
  Eigen::MatrixXd m = C;
  m.diagonal() += added;
  const Eigen::Index failed = cholesky_in_place(m);
  if (failed >= 0) {
    throw FactorizationError(static_cast<std::size_t>(failed), static_cast<std::size_t>(n));
  }
  m.triangularView<Eigen::StrictlyUpper>().setZero();
  return FactoredCovariance(std::move(m), std::move(added));
}

Eigen::VectorXd FactoredCovariance::half_solve(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw DataError("half_solve: dimension mismatch");
  return lower_.triangularView<Eigen::Lower>().solve(v);
}

Eigen::VectorXd FactoredCovariance::solve(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw DataError("solve: dimension mismatch");
  Eigen::VectorXd x = lower_.triangularView<Eigen::Lower>().solve(v);
  lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(x);
  return x;
}

Eigen::MatrixXd FactoredCovariance::solve(const Eigen::MatrixXd& V) const {
  if (V.rows() != size()) throw DataError("solve: dimension mismatch");
  Eigen::MatrixXd X = lower_.triangularView<Eigen::Lower>().solve(V);
  lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(X);
  return X;
}

double FactoredCovariance::quadratic_form(const Eigen::VectorXd& v) const {
  return half_solve(v).squaredNorm();
}

double collapsed_gaussian_logpdf(const Eigen::VectorXd& r, const FactoredCovariance& fc) {
  if (r.size() != fc.size()) throw DataError("collapsed_gaussian_logpdf: dimension mismatch");
  return -0.5 * fc.log_determinant() - 0.5 * fc.quadratic_form(r);
}

GaussianConditional gp_condition(const FactoredCovariance& fc, const Eigen::MatrixXd& C,
                                 const Eigen::VectorXd& r) {
  if (C.rows() != fc.size() || C.cols() != fc.size() || r.size() != fc.size()) {
    throw DataError("gp_condition: dimension mismatch");
  }
  // W = (C + E)^{-1} C, so C (C + E)^{-1} = W^T and the covariance is W^T E.
  const Eigen::MatrixXd W = fc.solve(C);
  GaussianConditional out;
  out.mean = C * fc.solve(r);
  Eigen::MatrixXd cov = W.transpose() * fc.added_diagonal().asDiagonal();
  out.cov = 0.5 * (cov + cov.transpose());
  return out;
}

GaussianMarginals gp_predict(const FactoredCovariance& fc, const Eigen::VectorXd& index_train,
                             const Eigen::VectorXd& index_new, double gamma,
                             const Eigen::VectorXd& r) {
  if (index_train.size() != fc.size() || r.size() != fc.size()) {
    throw DataError("gp_predict: dimension mismatch");
  }
  const Eigen::MatrixXd cross = build_cross_kernel(index_train, index_new, gamma);
  GaussianMarginals out;
  out.mean = cross.transpose() * fc.solve(r);
  const Eigen::MatrixXd half = fc.lower().triangularView<Eigen::Lower>().solve(cross);
  out.variance = (gamma - half.colwise().squaredNorm().transpose().array()).max(0.0).matrix();
  return out;
}

Eigen::VectorXd sample_gaussian(const GaussianConditional& g, double ridge, RandomStream& rng) {
  const Eigen::Index n = g.mean.size();
  if (n == 0 || g.cov.cwiseAbs().maxCoeff() == 0.0) return g.mean;
  Eigen::MatrixXd m = g.cov;
  if (cholesky_in_place(m) >= 0) {
    m = g.cov;
    m.diagonal().array() += ridge;
    const Eigen::Index failed = cholesky_in_place(m);
    if (failed >= 0) {
      throw FactorizationError(static_cast<std::size_t>(failed), static_cast<std::size_t>(n));
    }
  }
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
  return g.mean + m.triangularView<Eigen::Lower>() * z;
}

}  // namespace bqsim
