#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srp/estimators.hpp"
#include "srp/generator.hpp"

namespace srp {

/// Ambient dimension from which probability bounds are asserted rather
/// than merely reported; the theory is asymptotic in n.
inline constexpr int kAssertRegimeN = 100;

enum class ExperimentKind {
  pair_concentration,
  affinity_sweep,
  ambient_sweep,
  rip_pair,
  rip_set,
  lemma_f_ratio,
  lemma_angle,
  lemma_support_norm,
  lemma_corr_ratio,
};

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::pair_concentration;
  int N = 0;
  int n = 0;
  std::vector<int> n_list;  // ambient_sweep
  std::vector<int> N_list;  // ambient_sweep
  int d1 = 0;
  int d2 = 0;
  int L = 0;                     // rip_set
  double affinity = 0.0;         // target affinity (not squared)
  std::vector<double> affinity_grid;  // affinity_sweep
  std::vector<double> spectrum;  // explicit cosines; empty = uniform_scaled
  std::vector<double> epsilons;
  std::int64_t trials = 10000;
  std::uint64_t master_seed = 42;
  int bins = 0;         // histogram bins; 0 = Freedman-Diaconis
  int support_dim = 0;  // lemma_support_norm
  double omega = 0.0;   // lemma_corr_ratio correlation, in [0, 1]
};

struct TrialRecord {
  std::int64_t trial_index = 0;
  double measured = 0.0;
  double estimate = 0.0;
  double deviation = 0.0;  // |measured - estimate|
  std::uint64_t seed_used = 0;
};

struct Histogram {
  std::vector<double> edges;        // counts.size() + 1 entries
  std::vector<std::int64_t> counts;
};

Histogram build_histogram(const std::vector<double>& values, int bins = 0);

/// Peak of a coarse re-binning sits near `center` and counts fall away
/// on both sides of it (up to counting noise).
bool unimodal_around(const std::vector<double>& values, double center);

struct EpsilonRow {
  double epsilon = 0.0;
  BoundKind kind = BoundKind::P1;
  double deviation_threshold = 0.0;
  double empirical_violation = 0.0;  // frequency of the deviation event
  double theoretical_bound = 0.0;    // probability mass the theory allows
  bool vacuous = false;
  bool asserted = false;  // checked (n in regime, bound informative)
  bool pass = true;       // empirical <= bound + 3 binomial std
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // one per trial, in trial order
  Histogram histogram;
  double mean = 0.0;
  double stddev = 0.0;
  double estimate = 0.0;  // closed-form center for the measured series
  std::vector<EpsilonRow> per_epsilon;
  double wall_time_sec = 0.0;
  // Geometry echo (experiments over generated pairs/sets).
  double aff_sq_x = 0.0;
  double dist_sq_x = 0.0;
  std::vector<double> spectrum;        // constructed cosines
  std::vector<double> pair_dist_sq_x;  // all pairs i<j, row-major (rip)
  bool all_assertions_pass = true;
};

/// One pair, fixed across trials; a fresh projector per trial; measured
/// series is the squared projected affinity. Deviation events are
/// tallied for the relaxed, tight, and distance thresholds.
ExperimentSummary run_pair_concentration(const ExperimentConfig& cfg,
                                         int threads = 0);

/// pair_concentration per grid point of the target affinity.
std::vector<ExperimentSummary> run_affinity_sweep(const ExperimentConfig& cfg,
                                                  int threads = 0);

/// pair_concentration per (N, n) grid cell at fixed (d1, d2).
std::vector<ExperimentSummary> run_ambient_sweep(const ExperimentConfig& cfg,
                                                 int threads = 0);

/// Sandwich experiment: frequency of
/// (1-eps) D_X^2 <= D_Y^2 <= (1+eps) D_X^2 over all pairs, against the
/// theoretical lower bound. Pair mode uses (d1, d2); set mode takes L
/// subspaces of dimension d1 = d2, the first two of which reproduce the
/// pair construction so L = 2 matches pair mode record for record.
ExperimentSummary run_rip(const ExperimentConfig& cfg, int threads = 0);

/// Tail-probability checks for the scalar concentration lemmas:
/// norm ratio of independent Gaussian vectors (F statistic), angle
/// between independent Gaussian vectors, squared mass of a normalized
/// Gaussian vector on a fixed support, and the correlated norm ratio.
ExperimentSummary run_lemma_checks(const ExperimentConfig& cfg,
                                   int threads = 0);

/// Dispatch for the single-summary kinds.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, int threads = 0);

}  // namespace srp
