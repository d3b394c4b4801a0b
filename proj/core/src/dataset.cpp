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

#include "bqsim/dataset.hpp"

#include <cmath>
#include <utility>

#include "bqsim/csv.hpp"
#include "bqsim/errors.hpp"

namespace bqsim {

namespace {

ColumnTransform column_transform(const Eigen::VectorXd& v, const std::string& name) {
  const double n = static_cast<double>(v.size());
  const double mean = v.sum() / n;
  const double ss = (v.array() - mean).square().sum();
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw DataError("column '" + name + "' has zero standard deviation");
  }
  return {mean, sd};
}

std::vector<std::string> default_names(Eigen::Index p) {
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

}  // namespace

void Dataset::check_shapes() const {
  if (X_.rows() != y_.size()) {
    throw DataError("X has " + std::to_string(X_.rows()) + " rows but y has " +
                    std::to_string(y_.size()) + " entries");
  }
  if (X_.rows() < 2) throw DataError("need at least two observations");
  if (X_.cols() < 1) throw DataError("need at least one predictor");
  if (static_cast<Eigen::Index>(names_.size()) != X_.cols()) {
    throw DataError("number of predictor names does not match X");
  }
  if (!X_.allFinite() || !y_.allFinite()) throw DataError("data contain non-finite values");
}

Dataset Dataset::standardized(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              std::vector<std::string> predictor_names,
                              std::string response_name) {
  Dataset d;
  d.names_ = predictor_names.empty() ? default_names(X.cols()) : std::move(predictor_names);
  d.response_name_ = std::move(response_name);
  d.X_ = X;
  d.y_ = y;
  d.check_shapes();
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const ColumnTransform tf = column_transform(X.col(j), d.names_[j]);
    d.X_.col(j) = (X.col(j).array() - tf.mean) / tf.sd;
    d.x_tf_.push_back(tf);
  }
  d.y_tf_ = column_transform(y, d.response_name_);
  d.y_ = (y.array() - d.y_tf_.mean) / d.y_tf_.sd;
  if (d.n() <= d.p()) {
    d.warnings_.push_back("n = " + std::to_string(d.n()) + " does not exceed p = " +
                          std::to_string(d.p()));
  }
  return d;
}

Dataset Dataset::on_model_scale(Eigen::MatrixXd X, Eigen::VectorXd y,
                                std::vector<std::string> predictor_names,
                                std::string response_name) {
  Dataset d;
  d.names_ = predictor_names.empty() ? default_names(X.cols()) : std::move(predictor_names);
  d.response_name_ = std::move(response_name);
  d.X_ = std::move(X);
  d.y_ = std::move(y);
  d.check_shapes();
  d.x_tf_.assign(static_cast<std::size_t>(d.p()), ColumnTransform{});
  return d;
}

Eigen::MatrixXd Dataset::original_X() const {
  Eigen::MatrixXd out(X_.rows(), X_.cols());
  for (Eigen::Index j = 0; j < X_.cols(); ++j) {
    out.col(j) = X_.col(j).array() * x_tf_[j].sd + x_tf_[j].mean;
  }
  return out;
}

Eigen::VectorXd Dataset::original_y() const {
  return (y_.array() * y_tf_.sd + y_tf_.mean).matrix();
}

Eigen::VectorXd Dataset::index_to_original_scale(const Eigen::VectorXd& beta_model) const {
  if (beta_model.size() != p()) throw DataError("index vector has the wrong length");
  Eigen::VectorXd out(p());
  for (Eigen::Index j = 0; j < p(); ++j) out(j) = beta_model(j) / x_tf_[j].sd;
  return out;
}

Dataset ingest_csv(const std::filesystem::path& path, const std::string& response_column) {
  if (!std::filesystem::exists(path)) throw DataError("no such file: " + path.string());
  const CsvTable table = CsvTable::read(path);
  const std::size_t ycol = table.column(response_column);
  const std::size_t n = table.rows();
  const std::size_t p = table.cols() - 1;
  if (p == 0) throw DataError(path.string() + ": no predictor columns");
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  std::vector<std::string> names;
  for (std::size_t c = 0, j = 0; c < table.cols(); ++c) {
    if (c == ycol) continue;
    names.push_back(table.header()[c]);
    for (std::size_t r = 0; r < n; ++r) X(r, j) = table.number(r, c);
    ++j;
  }
  for (std::size_t r = 0; r < n; ++r) y(r) = table.number(r, ycol);
  return Dataset::standardized(X, y, std::move(names), response_column);
}

}  // namespace bqsim
