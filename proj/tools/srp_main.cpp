// Command-line front end: geometry queries on basis files, config-driven
// experiment runs, paper-style figure reproduction, and the lemma suite.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "srp/errors.hpp"
#include "srp/io.hpp"
#include "srp/montecarlo.hpp"
#include "srp/rng.hpp"
#include "srp/subspace.hpp"
#include "srp/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMathPrecondition = 3;
constexpr int kExitInfeasible = 4;

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SUBSPACE_RIP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // let OpenMP decide
}

struct RunPaths {
  fs::path summary, histogram, per_epsilon, sweep, manifest;
};

RunPaths run_paths(const fs::path& dir) {
  return {dir / "summary.json", dir / "histogram.csv",
          dir / "per_epsilon.csv", dir / "sweep.csv", dir / "manifest.json"};
}

int report_assertions(const std::vector<srp::ExperimentSummary>& summaries) {
  bool ok = true;
  for (const auto& summary : summaries)
    for (const auto& row : summary.per_epsilon)
      if (row.asserted && !row.pass) {
        ok = false;
        std::cerr << "bound violated: kind=" << srp::to_string(row.kind)
                  << " epsilon=" << row.epsilon
                  << " empirical=" << row.empirical_violation
                  << " bound=" << row.theoretical_bound << "\n";
      }
  return ok ? kExitOk : kExitAssertion;
}

/// Runs one config into `dir` and writes the standard file set.
int run_into(const srp::ExperimentConfig& cfg, const fs::path& dir,
             int threads) {
  fs::create_directories(dir);
  const auto paths = run_paths(dir);

  srp::RunManifest manifest;
  manifest.tool_version = srp::kVersion;
  manifest.config_hash = srp::config_hash(srp::config_to_json(cfg));
  manifest.master_seed = cfg.master_seed;
  manifest.started_at = srp::utc_timestamp();

  std::vector<srp::ExperimentSummary> summaries;
  const bool sweep = cfg.kind == srp::ExperimentKind::affinity_sweep ||
                     cfg.kind == srp::ExperimentKind::ambient_sweep;
  if (cfg.kind == srp::ExperimentKind::affinity_sweep)
    summaries = srp::run_affinity_sweep(cfg, threads);
  else if (cfg.kind == srp::ExperimentKind::ambient_sweep)
    summaries = srp::run_ambient_sweep(cfg, threads);
  else
    summaries.push_back(srp::run_experiment(cfg, threads));

  if (sweep) {
    json arr = json::array();
    for (const auto& s : summaries) arr.push_back(srp::summary_to_json(s));
    srp::write_text_file(paths.summary, arr.dump(2) + "\n");
    srp::write_text_file(paths.histogram, srp::histogram_csv(summaries));
    srp::write_text_file(paths.per_epsilon, srp::per_epsilon_csv(summaries));
    srp::write_text_file(paths.sweep, srp::sweep_csv(summaries));
    manifest.outputs = {"summary.json", "histogram.csv", "per_epsilon.csv",
                        "sweep.csv"};
  } else {
    srp::write_text_file(paths.summary,
                         srp::summary_to_json(summaries.front()).dump(2) +
                             "\n");
    srp::write_text_file(paths.histogram,
                         srp::histogram_csv(summaries.front().histogram));
    srp::write_text_file(paths.per_epsilon,
                         srp::per_epsilon_csv(summaries.front().per_epsilon));
    manifest.outputs = {"summary.json", "histogram.csv", "per_epsilon.csv"};
  }

  manifest.finished_at = srp::utc_timestamp();
  srp::write_text_file(paths.manifest,
                       srp::manifest_to_json(manifest).dump(2) + "\n");
  return report_assertions(summaries);
}

int cmd_geometry(const std::vector<std::string>& files) {
  std::vector<Eigen::MatrixXd> mats;
  for (const auto& f : files)
    for (auto& m : srp::read_csv_matrices(f)) mats.push_back(std::move(m));
  if (mats.size() != 2)
    throw srp::ParseError("need exactly two basis matrices, found " +
                          std::to_string(mats.size()));

  const srp::Subspace a = srp::orthonormalize(mats[0]);
  const srp::Subspace b = srp::orthonormalize(mats[1]);
  const auto spectrum = srp::principal_angles(a, b);
  const double aff = spectrum.affinity();
  const double dist = srp::distance(a, b);

  json out;
  out["cosines"] = spectrum.cosines;
  out["affinity"] = aff;
  out["affinity_sq"] = aff * aff;
  out["distance"] = dist;
  out["distance_sq"] = dist * dist;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::int64_t trials_override, std::int64_t seed_override,
            int threads) {
  json j;
  try {
    j = json::parse(srp::read_text_file(config_path));
  } catch (const json::exception& e) {
    throw srp::ParseError(std::string("config: ") + e.what());
  }
  srp::ExperimentConfig cfg = srp::config_from_json(j);
  if (trials_override > 0) cfg.trials = trials_override;
  if (seed_override >= 0)
    cfg.master_seed = static_cast<std::uint64_t>(seed_override);
  return run_into(cfg, out_dir, threads);
}

srp::ExperimentConfig fig4_config(double aff_sq, std::int64_t trials,
                                  std::uint64_t seed) {
  srp::ExperimentConfig cfg;
  cfg.kind = srp::ExperimentKind::pair_concentration;
  cfg.N = 500;
  cfg.n = 200;
  cfg.d1 = 5;
  cfg.d2 = 10;
  cfg.affinity = std::sqrt(aff_sq);
  cfg.epsilons = {0.2, 0.35, 0.5};
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

int cmd_reproduce(const std::string& figure, const fs::path& out_dir,
                  std::int64_t trials_override, std::uint64_t seed,
                  int threads) {
  int worst = kExitOk;
  if (figure == "fig4") {
    const std::int64_t trials = trials_override > 0 ? trials_override : 10000;
    std::string estimates = "aff_sq_x,estimate,mean\n";
    for (int affsq = 1; affsq <= 4; ++affsq) {
      const auto cfg =
          fig4_config(affsq, trials, srp::derive_seed(seed, affsq));
      const fs::path dir = out_dir / ("affsq_" + std::to_string(affsq));
      worst = std::max(worst, run_into(cfg, dir, threads));
      const auto summary = json::parse(
          srp::read_text_file(dir / "summary.json"));
      estimates += std::to_string(affsq) + "," +
                   srp::format_double(summary.at("estimate").get<double>()) +
                   "," +
                   srp::format_double(summary.at("mean").get<double>()) +
                   "\n";
    }
    fs::create_directories(out_dir);
    srp::write_text_file(out_dir / "estimates.csv", estimates);
    return worst;
  }
  if (figure == "fig5") {
    const std::int64_t trials = trials_override > 0 ? trials_override : 500;
    const std::vector<std::pair<int, int>> dims = {
        {2, 2}, {5, 5}, {5, 10}, {10, 20}};
    int idx = 0;
    for (auto [d1, d2] : dims) {
      srp::ExperimentConfig cfg;
      cfg.kind = srp::ExperimentKind::affinity_sweep;
      cfg.N = 500;
      cfg.n = 200;
      cfg.d1 = d1;
      cfg.d2 = d2;
      // 0 to the maximum sqrt(d1) in nine steps.
      for (int k = 0; k <= 8; ++k)
        cfg.affinity_grid.push_back(std::sqrt(d1) * k / 8.0);
      cfg.epsilons = {0.35, 0.5};
      cfg.trials = trials;
      cfg.master_seed = srp::derive_seed(seed, ++idx);
      const fs::path dir =
          out_dir / ("d" + std::to_string(d1) + "_" + std::to_string(d2));
      worst = std::max(worst, run_into(cfg, dir, threads));
    }
    return worst;
  }
  if (figure == "fig6") {
    const std::int64_t trials = trials_override > 0 ? trials_override : 2000;
    srp::ExperimentConfig cfg;
    cfg.kind = srp::ExperimentKind::ambient_sweep;
    cfg.N_list = {500, 1000, 2000};
    cfg.n_list = {100, 200, 400};
    cfg.d1 = 5;
    cfg.d2 = 10;
    cfg.affinity = std::sqrt(2.0);
    cfg.epsilons = {0.35, 0.5};
    cfg.trials = trials;
    cfg.master_seed = seed;
    return run_into(cfg, out_dir, threads);
  }
  throw srp::ParseError("unknown figure: " + figure);
}

int cmd_lemma_checks(const fs::path& out_dir, int n, std::int64_t trials,
                     std::uint64_t seed, int threads) {
  srp::ExperimentConfig base;
  base.n = n;
  base.trials = trials;
  base.epsilons = {0.15, 0.3, 0.5};
  int worst = kExitOk;

  auto one = [&](srp::ExperimentKind kind, const char* name,
                 std::uint64_t stream, auto&& tweak) {
    srp::ExperimentConfig cfg = base;
    cfg.kind = kind;
    cfg.master_seed = srp::derive_seed(seed, stream);
    tweak(cfg);
    worst = std::max(worst, run_into(cfg, out_dir / name, threads));
  };

  one(srp::ExperimentKind::lemma_f_ratio, "f_ratio", 1, [](auto&) {});
  one(srp::ExperimentKind::lemma_angle, "angle", 2, [](auto&) {});
  one(srp::ExperimentKind::lemma_support_norm, "support_norm", 3,
      [](auto& cfg) { cfg.support_dim = 5; });
  one(srp::ExperimentKind::lemma_corr_ratio, "corr_ratio", 4,
      [](auto& cfg) { cfg.omega = 0.6; });
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subspace geometry under Gaussian random projection"};
  app.set_version_flag("--version", srp::kVersion);
  app.require_subcommand(1);

  int threads_flag = 0;
  app.add_option("--threads", threads_flag,
                 "worker threads (default: SUBSPACE_RIP_THREADS or all)");

  // geometry
  auto* geometry = app.add_subcommand(
      "geometry", "principal angles / affinity / distance of two bases");
  std::vector<std::string> geometry_files;
  geometry
      ->add_option("files", geometry_files,
                   "one CSV holding two blank-line separated bases, or two "
                   "CSVs holding one each")
      ->required()
      ->expected(1, 2);

  // run
  auto* run = app.add_subcommand("run", "run an experiment config");
  std::string config_path, out_dir;
  std::int64_t trials_override = 0, seed_override = -1;
  run->add_option("config", config_path, "JSON experiment config")
      ->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--trials", trials_override, "override config trials");
  run->add_option("--seed", seed_override, "override config master seed");

  // reproduce
  auto* reproduce =
      app.add_subcommand("reproduce", "run a preset experiment grid");
  std::string figure;
  std::string rep_out;
  std::int64_t rep_trials = 0;
  std::uint64_t rep_seed = 42;
  reproduce->add_option("figure", figure, "fig4 | fig5 | fig6")
      ->required()
      ->check(CLI::IsMember({"fig4", "fig5", "fig6"}));
  reproduce->add_option("--out", rep_out, "output directory")->required();
  reproduce->add_option("--trials", rep_trials, "override per-cell trials");
  reproduce->add_option("--seed", rep_seed, "master seed (default 42)");

  // lemma-checks
  auto* lemma = app.add_subcommand(
      "lemma-checks", "tail-bound suite for the scalar concentration lemmas");
  std::string lemma_out;
  int lemma_n = 200;
  std::int64_t lemma_trials = 10000;
  std::uint64_t lemma_seed = 42;
  lemma->add_option("--out", lemma_out, "output directory")->required();
  lemma->add_option("--n", lemma_n, "vector dimension (default 200)");
  lemma->add_option("--trials", lemma_trials, "trials (default 10000)");
  lemma->add_option("--seed", lemma_seed, "master seed (default 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const int threads = resolve_threads(threads_flag);
  try {
    if (geometry->parsed()) return cmd_geometry(geometry_files);
    if (run->parsed())
      return cmd_run(config_path, out_dir, trials_override, seed_override,
                     threads);
    if (reproduce->parsed())
      return cmd_reproduce(figure, rep_out, rep_trials, rep_seed, threads);
    if (lemma->parsed())
      return cmd_lemma_checks(lemma_out, lemma_n, lemma_trials, lemma_seed,
                              threads);
  } catch (const srp::ParseError& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kExitUsage;
  } catch (const srp::SpectrumInfeasible& e) {
    std::cerr << "error: SpectrumInfeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const srp::Infeasible& e) {
    std::cerr << "error: Infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const srp::AmbientMismatch& e) {
    std::cerr << "error: AmbientMismatch: " << e.what() << "\n";
    return kExitMathPrecondition;
  } catch (const srp::RankDeficient& e) {
    std::cerr << "error: RankDeficient: " << e.what() << "\n";
    return kExitMathPrecondition;
  } catch (const srp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathPrecondition;
  }
  return kExitOk;
}
