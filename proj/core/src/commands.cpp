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

#include "bqsim/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <utility>

#include "bqsim/csv.hpp"
#include "bqsim/errors.hpp"
#include "bqsim/posterior.hpp"

namespace bqsim {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> numbered(const std::string& prefix, long p) {
  std::vector<std::string> out;
  for (long j = 1; j <= p; ++j) out.push_back(prefix + std::to_string(j));
  return out;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
}

struct NamedSeries {
  std::string name;
  std::vector<double> values;
};

void write_acf_csv(const fs::path& path, const std::vector<NamedSeries>& series, long max_lag) {
  std::vector<std::string> header{"lag"};
  std::vector<std::vector<double>> acfs;
  for (const auto& s : series) {
    header.push_back(s.name);
    const auto lag = static_cast<std::size_t>(max_lag);
    try {
      acfs.push_back(acf(s.values, lag));
    } catch (const DataError&) {
      // Constant series (e.g. a proposal that never moved): report NaN.
      acfs.emplace_back(lag + 1, std::nan(""));
    }
  }
  CsvWriter w(path, header);
  for (long k = 0; k <= max_lag; ++k) {
    w.add(static_cast<long long>(k));
    for (const auto& a : acfs) w.add(a[static_cast<std::size_t>(k)]);
    w.end_row();
  }
}

void write_meta(const fs::path& path, const std::string& command, const RunConfig& cfg,
                const std::vector<std::pair<std::string, std::string>>& results) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# bqsim " << command << "\n";
  out << "# effective configuration; pass this file back with --config to rerun\n";
  write_config(out, cfg.to_map());
  out << "# results\n";
  for (const auto& [k, v] : results) out << "# " << k << "=" << v << "\n";
}

std::vector<NamedSeries> chain_series(const ChainDraws& draws, const Dataset& data) {
  std::vector<NamedSeries> out;
  const Eigen::MatrixXd dirs = normalized_index_draws(draws, data, IndexScale::kModel);
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
    NamedSeries s{"beta_" + std::to_string(j + 1), {}};
    s.values.assign(dirs.col(j).data(), dirs.col(j).data() + dirs.rows());
    out.push_back(std::move(s));
  }
  out.push_back({"d", range_draws(draws)});
  out.push_back({"sigma", draws.sigma});
  out.push_back({"lambda", draws.lambda});
  out.push_back({"gamma", draws.gamma});
  return out;
}

}  // namespace

std::vector<std::string> chain_csv_header(long p) {
  std::vector<std::string> h{"iteration"};
  for (auto& s : numbered("beta_raw_", p)) h.push_back(std::move(s));
  for (auto& s : numbered("beta_norm_", p)) h.push_back(std::move(s));
  for (const char* s : {"d", "sigma", "lambda", "gamma"}) h.emplace_back(s);
  return h;
}

std::vector<std::string> summary_csv_header() {
  return {"parameter", "mean", "median", "sd", "q2.5", "q97.5"};
}

std::vector<std::string> mse_csv_header(long p) {
  std::vector<std::string> h{"example", "n", "tau", "replications", "failures"};
  for (auto& s : numbered("mse_beta_", p)) h.push_back(std::move(s));
  return h;
}

std::vector<std::string> estimates_csv_header(long p) {
  std::vector<std::string> h{"replicate", "ok"};
  for (auto& s : numbered("beta_", p)) h.push_back(std::move(s));
  for (const char* s : {"sigma_mean", "acceptance_beta", "acceptance_gamma"}) h.emplace_back(s);
  return h;
}

void write_chain_csv(const fs::path& path, const ChainDraws& draws, const Dataset& data) {
  const long p = data.p();
  const Eigen::MatrixXd dirs = normalized_index_draws(draws, data, IndexScale::kModel);
  const std::vector<double> d = range_draws(draws);
  CsvWriter w(path, chain_csv_header(p));
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    w.add(static_cast<long long>(draws.iteration[i]));
    for (long j = 0; j < p; ++j) w.add(draws.beta(r, j));
    for (long j = 0; j < p; ++j) w.add(dirs(r, j));
    w.add(d[i]).add(draws.sigma[i]).add(draws.lambda[i]).add(draws.gamma[i]);
    w.end_row();
  }
}

void command_fit(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.data.empty()) throw ConfigError("fit needs a data file (--data)");
  const Dataset data = ingest_csv(cfg.data, cfg.response);
  for (const auto& w : data.warnings()) log << "warning: " << w << '\n';
  ensure_directory(cfg.out);

  SamplerConfig sc = cfg.sampler;
  sc.keep_latent = true;
  RandomStream rng(sc.seed);
  const auto start = std::chrono::steady_clock::now();
  const ChainDraws draws = run_chain(data, sc, cfg.hyper, rng);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (draws.size() < 2) throw ConfigError("fit needs at least two retained draws");

  write_chain_csv(cfg.out / "chain.csv", draws, data);

  const std::vector<NamedSeries> series = chain_series(draws, data);
  {
    CsvWriter w(cfg.out / "summary.csv", summary_csv_header());
    for (const auto& s : series) {
      const PosteriorSummary ps = summarize(s.values);
      w.add(s.name).add(ps.mean).add(ps.median).add(ps.sd).add(ps.q025).add(ps.q975);
      w.end_row();
    }
  }

  {
    const Eigen::VectorXd dir = posterior_index_estimate(draws, data, IndexScale::kModel);
    const Eigen::VectorXd u = data.X() * dir;
    const Eigen::VectorXd grid =
        Eigen::VectorXd::LinSpaced(cfg.grid_points, u.minCoeff(), u.maxCoeff());
    const LinkFit fit = fitted_link(draws, data, grid, IndexScale::kModel,
                                    cfg.hyper.effective_jitter(sc.collapsed));
    CsvWriter w(cfg.out / "fitted.csv", {"grid", "mean", "lower", "upper"});
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
      w.add(fit.grid(g)).add(fit.mean(g)).add(fit.lower(g)).add(fit.upper(g));
      w.end_row();
    }
  }

  const long max_lag = std::min<long>(cfg.max_lag, static_cast<long>(draws.size()) - 1);
  write_acf_csv(cfg.out / "acf.csv", series, max_lag);

  write_meta(cfg.out / "meta.txt", "fit", cfg,
             {{"n", std::to_string(data.n())},
              {"p", std::to_string(data.p())},
              {"retained_draws", std::to_string(draws.size())},
              {"acceptance_beta", format_double(draws.beta_moves.rate())},
              {"acceptance_gamma", format_double(draws.gamma_moves.rate())},
              {"final_sigma_beta_prop", format_double(draws.beta_proposal_sd)},
              {"final_sigma_gamma_prop", format_double(draws.gamma_proposal_sd)},
              {"failed_proposals", std::to_string(draws.failed_proposals)},
              {"wall_seconds", format_double(seconds)},
              {"seed", std::to_string(sc.seed)}});
  log << "fit: " << draws.size() << " draws, acceptance beta=" << draws.beta_moves.rate()
      << " gamma=" << draws.gamma_moves.rate() << ", " << seconds << " s\n";
}

void command_simulate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  ensure_directory(cfg.out);
  RandomStream rng(cfg.sampler.seed);
  const SimulatedData sim =
      generate_example(parse_example(cfg.example), cfg.n, cfg.sampler.tau, rng);
  const long p = sim.X.cols();
  {
    std::vector<std::string> header = numbered("x", p);
    header.emplace_back("y");
    CsvWriter w(cfg.out / "data.csv", header);
    for (Eigen::Index i = 0; i < sim.X.rows(); ++i) {
      for (long j = 0; j < p; ++j) w.add(sim.X(i, j));
      w.add(sim.y(i));
      w.end_row();
    }
  }
  {
    CsvWriter w(cfg.out / "truth.csv", {"component", "beta", "truth"});
    for (long j = 0; j < p; ++j) {
      w.add(static_cast<long long>(j + 1)).add(sim.beta(j)).add(sim.truth(j));
      w.end_row();
    }
  }
  log << "simulate: example " << cfg.example << ", n=" << cfg.n << " -> " << cfg.out.string()
      << '\n';
}

ReplicationReport command_replicate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  ensure_directory(cfg.out);
  SimSpec spec;
  spec.example = parse_example(cfg.example);
  spec.n = cfg.n;
  spec.tau = cfg.sampler.tau;
  spec.replications = cfg.replications;
  spec.seed = cfg.sampler.seed;

  const auto start = std::chrono::steady_clock::now();
  const ReplicationReport report =
      run_replication_study(spec, cfg.sampler, cfg.hyper, cfg.jobs, [&](const ReplicateResult& r) {
        log << "replicate " << r.index << (r.ok ? " ok" : " FAILED: " + r.error) << " ("
            << r.seconds << " s)\n";
      });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const long p = report.truth.size();

  {
    CsvWriter w(cfg.out / "mse.csv", mse_csv_header(p));
    w.add(to_string(spec.example)).add(static_cast<long long>(spec.n)).add(spec.tau.value());
    w.add(static_cast<long long>(spec.replications)).add(static_cast<long long>(report.failures));
    for (long j = 0; j < p; ++j) w.add(report.mse(j));
    w.end_row();
  }
  {
    CsvWriter w(cfg.out / "estimates.csv", estimates_csv_header(p));
    for (const auto& r : report.replicates) {
      w.add(static_cast<long long>(r.index)).add(static_cast<long long>(r.ok ? 1 : 0));
      for (long j = 0; j < p; ++j) w.add(r.ok ? r.estimate(j) : std::nan(""));
      w.add(r.sigma_mean).add(r.beta_acceptance).add(r.gamma_acceptance);
      w.end_row();
    }
  }
  write_meta(cfg.out / "meta.txt", "replicate", cfg,
             {{"failures", std::to_string(report.failures)},
              {"wall_seconds", format_double(seconds)},
              {"seed", std::to_string(spec.seed)}});
  return report;
}

void command_diagnose(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.chain.empty()) throw ConfigError("diagnose needs a chain file (--chain)");
  const CsvTable table = CsvTable::read(cfg.chain);
  if (table.rows() < 4) throw DataError(cfg.chain.string() + ": need at least four draws");
  ensure_directory(cfg.out);
  std::vector<NamedSeries> series;
  for (std::size_t c = 0; c < table.cols(); ++c) {
    if (table.header()[c] == "iteration") continue;
    series.push_back({table.header()[c], table.numeric_column(c)});
  }
  const long max_lag = std::min<long>(cfg.max_lag, static_cast<long>(table.rows()) - 1);
  write_acf_csv(cfg.out / "acf.csv", series, max_lag);
  CsvWriter w(cfg.out / "ess.csv", {"parameter", "draws", "ess"});
  for (const auto& s : series) {
    double ess = std::nan("");
    try {
      ess = effective_sample_size(s.values);
    } catch (const DataError&) {
    }
    w.add(s.name).add(static_cast<long long>(s.values.size())).add(ess);
    w.end_row();
  }
  log << "diagnose: " << series.size() << " series from " << cfg.chain.string() << '\n';
}

}  // namespace bqsim
