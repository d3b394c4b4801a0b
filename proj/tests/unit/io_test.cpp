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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "bqsim/config.hpp"
#include "bqsim/csv.hpp"
#include "bqsim/dataset.hpp"
#include "bqsim/errors.hpp"
#include "bqsim/random.hpp"

namespace bqsim {
namespace {

namespace fs = std::filesystem;

const fs::path kData = BQSIM_TEST_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bqsim_io_test";
  fs::create_directories(dir);
  return dir / name;
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const std::exception& err) {
    return err.what();
  }
  return {};
}

TEST(Csv, ParsesHeaderAndCells) {
  const auto t = CsvTable::parse("a,b\n1,2.5\n-3,4e-2\n");
  ASSERT_EQ(t.cols(), 2u);
  ASSERT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_TRUE(t.has_column("a"));
  EXPECT_FALSE(t.has_column("c"));
  EXPECT_DOUBLE_EQ(t.number(1, 1), 0.04);
  EXPECT_EQ(t.numeric_column(0), (std::vector<double>{1.0, -3.0}));
  EXPECT_THROW(t.column("c"), DataError);
}

TEST(Csv, ToleratesCrlfAndRejectsRaggedRows) {
  const auto t = CsvTable::parse("a,b\r\n1,2\r\n");
  EXPECT_DOUBLE_EQ(t.number(0, 1), 2.0);
  EXPECT_THROW(CsvTable::parse("a,b\n1\n"), DataError);
}

TEST(Csv, NonNumericCellNamesRowAndColumn) {
  const std::string msg =
      error_of([] { CsvTable::read(kData / "bad_cell.csv").numeric_column(1); });
  EXPECT_NE(msg.find("x2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("2"), std::string::npos) << msg;
  EXPECT_THROW(CsvTable::parse("a\nnan\n").number(0, 0), DataError);
  EXPECT_THROW(CsvTable::read(kData / "missing.csv"), DataError);
}

TEST(Csv, WriterRoundTripsFullPrecision) {
  const fs::path path = scratch("round_trip.csv");
  const std::vector<double> values = {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0};
  {
    CsvWriter w(path, {"v", "label", "n"});
    for (double v : values) w.add(v).add("x").add(7LL).end_row();
  }
  const auto t = CsvTable::read(path);
  for (std::size_t i = 0; i < values.size(); ++i) EXPECT_EQ(t.number(i, 0), values[i]);
  EXPECT_EQ(t.cell(0, 1), "x");
  std::ifstream raw(path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(raw)), {});
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_shortest(0.1), "0.1");
}

TEST(Csv, WriterChecksColumnCount) {
  CsvWriter w(scratch("short.csv"), {"a", "b"});
  w.add(1.0);
  EXPECT_THROW(w.end_row(), DataError);
}

TEST(Dataset, ThreeRowFixture) {
  const Dataset d = ingest_csv(kData / "three_rows.csv", "y");
  Eigen::MatrixXd X(3, 2);
  X << 1.5, -2.0, 2.5, 0.0, 4.0, 3.0;
  const Eigen::Vector3d y(0.25, 1.75, -0.5);
  EXPECT_LT((d.original_X() - X).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((d.original_y() - y).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(d.predictor_names(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_NEAR(d.predictor_transforms()[0].mean, 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(d.predictor_transforms()[1].sd, std::sqrt(57.0 / 9.0), 1e-14);
  for (int j = 0; j < 2; ++j) {
    EXPECT_NEAR(d.X().col(j).mean(), 0.0, 1e-15);
    EXPECT_NEAR(d.X().col(j).squaredNorm() / 2.0, 1.0, 1e-14);
  }
  EXPECT_NEAR(d.y().squaredNorm() / 2.0, 1.0, 1e-14);
}

TEST(Dataset, ResponseColumnCanBeAnywhere) {
  const Dataset d = ingest_csv(kData / "three_rows.csv", "x1");
  EXPECT_EQ(d.predictor_names(), (std::vector<std::string>{"x2", "y"}));
  EXPECT_NEAR(d.response_transform().mean, 8.0 / 3.0, 1e-15);
  EXPECT_THROW(ingest_csv(kData / "three_rows.csv", "nope"), DataError);
}

TEST(Dataset, ConstantColumnIsNamed) {
  const std::string msg = error_of([] { ingest_csv(kData / "constant_column.csv", "y"); });
  EXPECT_NE(msg.find("x2"), std::string::npos) << msg;
  EXPECT_THROW(ingest_csv(kData / "does_not_exist.csv", "y"), DataError);
}

TEST(Dataset, StandardizationRoundTrip) {
  RandomStream rng(1);
  Eigen::MatrixXd X(40, 4);
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 4; ++j) X(i, j) = 100.0 * j + (j + 1) * rng.normal();
    y(i) = 5.0 + 3.0 * rng.normal();
  }
  const Dataset d = Dataset::standardized(X, y);
  EXPECT_LT((d.original_X() - X).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((d.original_y() - y).cwiseAbs().maxCoeff(), 1e-12);
  // The index on both scales differs only by a constant shift.
  const Eigen::Vector4d b(0.3, -1.0, 0.5, 2.0);
  const Eigen::VectorXd model = d.X() * b;
  const Eigen::VectorXd orig = X * d.index_to_original_scale(b);
  const Eigen::VectorXd diff = model - orig;
  EXPECT_LT((diff.array() - diff(0)).abs().maxCoeff(), 1e-10);
  EXPECT_TRUE(d.warnings().empty());
}

TEST(Dataset, WarnsWhenPredictorsOutnumberRows) {
  Eigen::MatrixXd X(3, 4);
  X << 1, 2, 3, 4, 2, 1, 0, 5, 7, 3, 1, 1;
  const Dataset d = Dataset::standardized(X, Eigen::Vector3d(1.0, 2.0, 4.0));
  EXPECT_FALSE(d.warnings().empty());
  EXPECT_THROW(Dataset::standardized(X, Eigen::Vector2d(1.0, 2.0)), DataError);
}

TEST(Config, ParsesKeyValueLines) {
  std::istringstream in("# comment\n\ntau = 0.25\niters=200\nburnin=50\nuncollapsed=true\n");
  const ConfigMap m = parse_config(in);
  EXPECT_EQ(m.at("tau"), "0.25");
  const RunConfig c = RunConfig::from_map(m);
  EXPECT_DOUBLE_EQ(c.sampler.tau.value(), 0.25);
  EXPECT_EQ(c.sampler.iterations, 200);
  EXPECT_FALSE(c.sampler.collapsed);
  EXPECT_EQ(c.sampler.burn_in, 50);
  EXPECT_EQ(c.sampler.thin, SamplerConfig{}.thin);
}

TEST(Config, RejectsUnknownKeysAndBadValuesWithLineNumbers) {
  std::istringstream unknown("tau=0.5\nwarp=9\n");
  const std::string msg = error_of([&] { parse_config(unknown, "run.cfg"); });
  EXPECT_NE(msg.find("run.cfg:2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("warp"), std::string::npos) << msg;
  std::istringstream malformed("tau 0.5\n");
  EXPECT_THROW(parse_config(malformed), ConfigError);
  EXPECT_THROW(RunConfig::from_map({{"tau", "1.5"}}), ConfigError);
  EXPECT_THROW(RunConfig::from_map({{"iters", "ten"}}), ConfigError);
  EXPECT_THROW(RunConfig::from_map({{"lambda-rate", "sometimes"}}), ConfigError);
  EXPECT_THROW(RunConfig::from_map({{"uncollapsed", "maybe"}}), ConfigError);
  EXPECT_THROW(RunConfig::from_map({{"seed", "-3"}}), ConfigError);
  EXPECT_THROW(read_config_file(scratch("absent.cfg")), ConfigError);
}

TEST(Config, ValidationCatchesInconsistentSettings) {
  EXPECT_THROW(RunConfig::from_map({{"iters", "100"}, {"burnin", "100"}}).validate(), ConfigError);
  EXPECT_THROW(RunConfig::from_map({{"jitter", "-1"}}).validate(), ConfigError);
  EXPECT_NO_THROW(RunConfig::from_map({}).validate());
}

TEST(Config, FullMapRoundTrips) {
  const RunConfig c = RunConfig::from_map({{"tau", "0.1"},
                                           {"seed", "18446744073709551615"},
                                           {"jitter", "1e-06"},
                                           {"lambda-rate", "sigma-squared"},
                                           {"no-autotune", "true"}});
  const ConfigMap full = c.to_map();
  EXPECT_EQ(full.size(), config_keys().size());
  EXPECT_EQ(full.at("tau"), "0.1");
  std::ostringstream out;
  write_config(out, full);
  std::istringstream in(out.str());
  const RunConfig back = RunConfig::from_map(parse_config(in));
  EXPECT_EQ(back.to_map(), full);
  EXPECT_EQ(back.sampler.seed, 18446744073709551615ULL);
  EXPECT_EQ(*back.hyper.jitter, 1e-6);
  EXPECT_EQ(back.hyper.lambda_rate, LambdaRate::kSigmaSquared);
  EXPECT_FALSE(back.sampler.autotune);
  EXPECT_EQ(RunConfig::from_map({}).to_map().at("jitter"), "auto");
}

}  // namespace
}  // namespace bqsim
