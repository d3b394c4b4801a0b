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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

const fs::path kData = BQSIM_TEST_DATA_DIR;

fs::path work_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bqsim_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs the executable with `args`, capturing stderr into `log`; returns the
// exit status.
int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + BQSIM_EXECUTABLE + "\" " + args + " > \"" +
                          log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string fit_args(const fs::path& out) {
  return "fit --data \"" + (kData / "fit_n20.csv").string() + "\" --out \"" + out.string() +
         "\" --iters 200 --burnin 100";
}

TEST(Cli, FitSucceeds) {
  const fs::path dir = work_dir("ok");
  EXPECT_EQ(run(fit_args(dir / "run"), dir / "log"), 0) << slurp(dir / "log");
  EXPECT_TRUE(fs::exists(dir / "run" / "chain.csv"));
}

TEST(Cli, HelpExitsCleanly) {
  const fs::path dir = work_dir("help");
  EXPECT_EQ(run("--help", dir / "log"), 0);
  EXPECT_NE(slurp(dir / "log").find("replicate"), std::string::npos);
}

TEST(Cli, ConfigurationErrorsExitWithTwo) {
  const fs::path dir = work_dir("config");
  EXPECT_EQ(run(fit_args(dir / "a") + " --tau 1.5", dir / "log"), 2);
  EXPECT_NE(slurp(dir / "log").find("configuration error"), std::string::npos);
  EXPECT_EQ(run(fit_args(dir / "b") + " --burnin 500", dir / "log"), 2);
  EXPECT_EQ(run("fit --bogus 1", dir / "log"), 2);
  EXPECT_EQ(run("", dir / "log"), 2);
  std::ofstream(dir / "bad.cfg") << "tau=0.5\nwarp=1\n";
  EXPECT_EQ(run(fit_args(dir / "c") + " --config \"" + (dir / "bad.cfg").string() + "\"",
                dir / "log"),
            2);
  EXPECT_NE(slurp(dir / "log").find("warp"), std::string::npos);
}

TEST(Cli, InputErrorsExitWithTwo) {
  const fs::path dir = work_dir("input");
  EXPECT_EQ(run("fit --data \"" + (dir / "none.csv").string() + "\" --out \"" +
                    (dir / "o").string() + "\"",
                dir / "log"),
            2);
  EXPECT_EQ(run("fit --data \"" + (kData / "constant_column.csv").string() + "\" --out \"" +
                    (dir / "o").string() + "\"",
                dir / "log"),
            2);
  EXPECT_NE(slurp(dir / "log").find("x2"), std::string::npos);
}

TEST(Cli, NumericFailureExitsWithThree) {
  const fs::path dir = work_dir("numeric");
  EXPECT_EQ(run(fit_args(dir / "o") + " --b-sigma 1e308", dir / "log"), 3);
  EXPECT_NE(slurp(dir / "log").find("iteration"), std::string::npos);
}

TEST(Cli, FlagsOverrideTheConfigFile) {
  const fs::path dir = work_dir("override");
  std::ofstream(dir / "run.cfg") << "# test\niters=300\nburnin=150\nseed=9\ntau=0.3\n";
  const std::string base = "fit --data \"" + (kData / "fit_n20.csv").string() + "\" --config \"" +
                           (dir / "run.cfg").string() + "\"";
  ASSERT_EQ(run(base + " --out \"" + (dir / "o").string() + "\" --iters 250 --no-autotune",
                dir / "log"),
            0)
      << slurp(dir / "log");
  const std::string meta = slurp(dir / "o" / "meta.txt");
  EXPECT_NE(meta.find("\niters=250\n"), std::string::npos);
  EXPECT_NE(meta.find("\nburnin=150\n"), std::string::npos);
  EXPECT_NE(meta.find("\nseed=9\n"), std::string::npos);
  EXPECT_NE(meta.find("\ntau=0.3\n"), std::string::npos);
  EXPECT_NE(meta.find("\nno-autotune=true\n"), std::string::npos);
  EXPECT_NE(meta.find("\nuncollapsed=false\n"), std::string::npos);
}

TEST(Cli, RerunFromMetaIsByteIdentical) {
  const fs::path dir = work_dir("rerun");
  ASSERT_EQ(run(fit_args(dir / "a") + " --seed 4", dir / "log"), 0);
  ASSERT_EQ(run("fit --config \"" + (dir / "a" / "meta.txt").string() + "\" --out \"" +
                    (dir / "b").string() + "\"",
                dir / "log"),
            0)
      << slurp(dir / "log");
  EXPECT_EQ(slurp(dir / "a" / "chain.csv"), slurp(dir / "b" / "chain.csv"));
}

TEST(Cli, SimulateReplicateDiagnose) {
  const fs::path dir = work_dir("pipeline");
  ASSERT_EQ(run("simulate --example 5b --n 12 --seed 2 --out \"" + (dir / "sim").string() + "\"",
                dir / "log"),
            0);
  EXPECT_TRUE(fs::exists(dir / "sim" / "truth.csv"));
  ASSERT_EQ(run("replicate --example 2 --n 20 --replications 2 --jobs 2 --iters 120 --burnin 60 "
                "--out \"" + (dir / "rep").string() + "\"",
                dir / "log"),
            0)
      << slurp(dir / "log");
  EXPECT_TRUE(fs::exists(dir / "rep" / "mse.csv"));
  ASSERT_EQ(run(fit_args(dir / "fit"), dir / "log"), 0);
  ASSERT_EQ(run("diagnose --chain \"" + (dir / "fit" / "chain.csv").string() + "\" --out \"" +
                    (dir / "diag").string() + "\"",
                dir / "log"),
            0)
      << slurp(dir / "log");
  EXPECT_TRUE(fs::exists(dir / "diag" / "ess.csv"));
}

}  // namespace
