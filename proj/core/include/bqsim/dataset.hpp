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

#ifndef BQSIM_DATASET_HPP_
#define BQSIM_DATASET_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bqsim {

// value_model = (value_original - mean) / sd
struct ColumnTransform {
  double mean = 0.0;
  double sd = 1.0;
};

// Predictors and response on the model scale, together with the transforms
// that map them back to the original units.
class Dataset {
 public:
  // Standardizes every predictor column and the response to mean 0 and
  // sample standard deviation 1. Throws DataError for a constant column
  // (naming it), fewer than two rows, or mismatched shapes.
  static Dataset standardized(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              std::vector<std::string> predictor_names = {},
                              std::string response_name = "y");

  // Uses the values as given, with identity transforms.
  static Dataset on_model_scale(Eigen::MatrixXd X, Eigen::VectorXd y,
                                std::vector<std::string> predictor_names = {},
                                std::string response_name = "y");

  Eigen::Index n() const noexcept { return X_.rows(); }
  Eigen::Index p() const noexcept { return X_.cols(); }
  const Eigen::MatrixXd& X() const noexcept { return X_; }
  const Eigen::VectorXd& y() const noexcept { return y_; }

  const std::vector<std::string>& predictor_names() const noexcept { return names_; }
  const std::string& response_name() const noexcept { return response_name_; }
  const std::vector<ColumnTransform>& predictor_transforms() const noexcept { return x_tf_; }
  const ColumnTransform& response_transform() const noexcept { return y_tf_; }
  // Non-fatal issues found while building (e.g. n <= p).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  Eigen::MatrixXd original_X() const;
  Eigen::VectorXd original_y() const;

  // A model-scale index vector expressed against the original predictors:
  // x_model^T b = x_orig^T (b ./ sd) - const, so the link sees the same
  // index up to a shift.
  Eigen::VectorXd index_to_original_scale(const Eigen::VectorXd& beta_model) const;

 private:
  Dataset() = default;
  void check_shapes() const;

  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  std::vector<std::string> names_;
  std::string response_name_;
  std::vector<ColumnTransform> x_tf_;
  ColumnTransform y_tf_;
  std::vector<std::string> warnings_;
};

// Reads a numeric CSV with a header row, takes `response_column` as y and all
// other columns as predictors, then standardizes. Errors name the file, row
// and column of the problem.
Dataset ingest_csv(const std::filesystem::path& path, const std::string& response_column);

}  // namespace bqsim

#endif  // BQSIM_DATASET_HPP_
