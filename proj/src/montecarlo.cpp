#include "srp/montecarlo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "srp/errors.hpp"
#include "srp/parallel.hpp"
#include "srp/projection.hpp"
#include "srp/rng.hpp"

namespace srp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void check_common(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, "trials must be >= 1");
  for (double e : cfg.epsilons) require(e > 0, "epsilons must be positive");
}

void check_pair_geometry(const ExperimentConfig& cfg) {
  require(cfg.d1 >= 1 && cfg.d1 <= cfg.d2, "need 1 <= d1 <= d2");
  require(cfg.d2 < cfg.n && cfg.n < cfg.N, "need d2 < n < N");
  require(cfg.d1 + cfg.d2 <= cfg.N, "need d1 + d2 <= N");
  require(cfg.affinity >= 0 &&
              cfg.affinity * cfg.affinity <= cfg.d1 + 1e-9,
          "target affinity outside [0, sqrt(d1)]");
}

PairSpec spec_from_config(const ExperimentConfig& cfg) {
  PairSpec spec;
  spec.N = cfg.N;
  spec.d1 = cfg.d1;
  spec.d2 = cfg.d2;
  spec.target_affinity = cfg.affinity;
  spec.seed = derive_seed(cfg.master_seed, kGeometryStream);
  if (!cfg.spectrum.empty()) {
    spec.mode = SpectrumMode::explicit_spectrum;
    spec.spectrum = cfg.spectrum;
  }
  return spec;
}

double mean_of(const std::vector<TrialRecord>& records) {
  double s = 0;
  for (const auto& r : records) s += r.measured;
  return s / static_cast<double>(records.size());
}

double stddev_of(const std::vector<TrialRecord>& records, double mean) {
  if (records.size() < 2) return 0.0;
  double s = 0;
  for (const auto& r : records) {
    const double d = r.measured - mean;
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(records.size() - 1));
}

EpsilonRow make_row(const BoundReport& rep, double violation, int n,
                    std::int64_t trials) {
  EpsilonRow row;
  row.epsilon = rep.epsilon;
  row.kind = rep.kind;
  row.deviation_threshold = rep.deviation_threshold;
  row.empirical_violation = violation;
  row.theoretical_bound = rep.probability_bound;
  row.vacuous = rep.vacuous;
  row.asserted = !rep.vacuous && n >= kAssertRegimeN;
  if (row.asserted) {
    const double p = std::clamp(rep.probability_bound, 0.0, 1.0);
    const double slack =
        3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    row.pass = violation <= rep.probability_bound + slack;
  }
  return row;
}

double violation_freq(const std::vector<TrialRecord>& records,
                      double threshold) {
  std::int64_t count = 0;
  for (const auto& r : records)
    if (r.deviation > threshold) ++count;
  return static_cast<double>(count) / static_cast<double>(records.size());
}

void finalize(ExperimentSummary& summary) {
  summary.mean = mean_of(summary.records);
  summary.stddev = stddev_of(summary.records, summary.mean);
  std::vector<double> measured(summary.records.size());
  for (std::size_t i = 0; i < summary.records.size(); ++i)
    measured[i] = summary.records[i].measured;
  summary.histogram = build_histogram(measured, summary.config.bins);
  summary.all_assertions_pass = true;
  for (const auto& row : summary.per_epsilon)
    summary.all_assertions_pass = summary.all_assertions_pass && row.pass;
}

/// Runs `body(t, seed_t)` for every trial with the derived per-trial
/// seed, wrapping any failure with the trial index.
template <class Body>
void run_trials(const ExperimentConfig& cfg, int threads, Body&& body) {
  trial_map(cfg.trials, threads, [&](std::int64_t t) {
    const std::uint64_t seed_t = derive_seed(cfg.master_seed, t);
    try {
      body(t, seed_t);
    } catch (const Error& e) {
      throw Error("trial " + std::to_string(t) + ": " + e.what());
    }
  });
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::pair_concentration: return "pair_concentration";
    case ExperimentKind::affinity_sweep: return "affinity_sweep";
    case ExperimentKind::ambient_sweep: return "ambient_sweep";
    case ExperimentKind::rip_pair: return "rip_pair";
    case ExperimentKind::rip_set: return "rip_set";
    case ExperimentKind::lemma_f_ratio: return "lemma_f_ratio";
    case ExperimentKind::lemma_angle: return "lemma_angle";
    case ExperimentKind::lemma_support_norm: return "lemma_support_norm";
    case ExperimentKind::lemma_corr_ratio: return "lemma_corr_ratio";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (ExperimentKind k :
       {ExperimentKind::pair_concentration, ExperimentKind::affinity_sweep,
        ExperimentKind::ambient_sweep, ExperimentKind::rip_pair,
        ExperimentKind::rip_set, ExperimentKind::lemma_f_ratio,
        ExperimentKind::lemma_angle, ExperimentKind::lemma_support_norm,
        ExperimentKind::lemma_corr_ratio})
    if (name == to_string(k)) return k;
  throw ParseError("unknown experiment kind: " + name);
}

Histogram build_histogram(const std::vector<double>& values, int bins) {
  Histogram h;
  if (values.empty()) return h;

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();

  if (!(hi > lo)) {  // spike
    h.edges = {lo, hi};
    h.counts = {static_cast<std::int64_t>(values.size())};
    return h;
  }

  int nb = bins;
  if (nb <= 0) {
    // Freedman-Diaconis, clamped to something plottable.
    const double iqr =
        quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double width =
        2.0 * iqr / std::cbrt(static_cast<double>(values.size()));
    nb = width > 0
             ? static_cast<int>(std::clamp(std::ceil((hi - lo) / width), 1.0,
                                           512.0))
             : 64;
  }

  h.edges.resize(nb + 1);
  for (int k = 0; k <= nb; ++k)
    h.edges[k] = lo + (hi - lo) * static_cast<double>(k) / nb;
  h.counts.assign(nb, 0);
  for (double v : values) {
    auto idx = static_cast<int>((v - lo) / (hi - lo) * nb);
    ++h.counts[std::clamp(idx, 0, nb - 1)];
  }
  return h;
}

bool unimodal_around(const std::vector<double>& values, double center) {
  if (values.empty()) return false;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo))  // spike histogram
    return std::abs(lo - center) <= 1e-9 + 1e-6 * std::abs(center);

  constexpr int kBins = 25;
  std::vector<std::int64_t> counts(kBins, 0);
  for (double v : values) {
    auto idx = static_cast<int>((v - lo) / (hi - lo) * kBins);
    ++counts[std::clamp(idx, 0, kBins - 1)];
  }
  // 3-bin smoothing knocks down counting noise.
  std::vector<double> smooth(kBins, 0);
  for (int i = 0; i < kBins; ++i)
    smooth[i] = static_cast<double>(counts[std::max(0, i - 1)] + counts[i] +
                                    counts[std::min(kBins - 1, i + 1)]);

  const int peak = static_cast<int>(
      std::max_element(smooth.begin(), smooth.end()) - smooth.begin());
  const double bin_width = (hi - lo) / kBins;
  const double peak_center = lo + (peak + 0.5) * bin_width;
  if (std::abs(peak_center - center) > 3.0 * bin_width) return false;

  const double slack = 4.0 * std::sqrt(smooth[peak] + 1.0);
  for (int i = peak; i > 0; --i)
    if (smooth[i - 1] > smooth[i] + slack) return false;
  for (int i = peak; i < kBins - 1; ++i)
    if (smooth[i + 1] > smooth[i] + slack) return false;
  return true;
}

ExperimentSummary run_pair_concentration(const ExperimentConfig& cfg,
                                         int threads) {
  const auto t0 = Clock::now();
  check_common(cfg);
  check_pair_geometry(cfg);

  ExperimentSummary summary;
  summary.config = cfg;

  const GeneratedPair pair = make_pair(spec_from_config(cfg));
  summary.spectrum = pair.spectrum.cosines;
  summary.aff_sq_x = pair.spectrum.affinity_sq();
  summary.dist_sq_x =
      distance_sq_from_affinity(summary.aff_sq_x, cfg.d1, cfg.d2);

  PairParams params{cfg.d1, cfg.d2, cfg.n, summary.aff_sq_x,
                    pair.spectrum.cosines};
  const double est = est_affinity_sq(params);
  summary.estimate = est;

  summary.records.resize(cfg.trials);
  run_trials(cfg, threads, [&](std::int64_t t, std::uint64_t seed_t) {
    const GaussianProjector proj = make_projector(cfg.n, cfg.N, seed_t);
    const Subspace y1 = project(proj, pair.x1);
    const Subspace y2 = project(proj, pair.x2);
    const double measured =
        (y1.basis().transpose() * y2.basis()).squaredNorm();
    summary.records[t] = {t, measured, est, std::abs(measured - est), seed_t};
  });

  for (double eps : cfg.epsilons)
    for (BoundKind kind : {BoundKind::pair_relaxed, BoundKind::pair_tight,
                           BoundKind::distance}) {
      const BoundReport rep = deviation_event(params, eps, kind);
      summary.per_epsilon.push_back(
          make_row(rep, violation_freq(summary.records,
                                       rep.deviation_threshold),
                   cfg.n, cfg.trials));
    }

  finalize(summary);
  summary.wall_time_sec = seconds_since(t0);
  return summary;
}

std::vector<ExperimentSummary> run_affinity_sweep(const ExperimentConfig& cfg,
                                                  int threads) {
  check_common(cfg);
  require(!cfg.affinity_grid.empty(), "affinity_sweep needs affinity_grid");
  std::vector<ExperimentSummary> out;
  out.reserve(cfg.affinity_grid.size());
  const std::uint64_t sweep_master = derive_seed(cfg.master_seed, kCellStream);
  for (std::size_t c = 0; c < cfg.affinity_grid.size(); ++c) {
    ExperimentConfig cell = cfg;
    cell.kind = ExperimentKind::pair_concentration;
    cell.affinity = cfg.affinity_grid[c];
    cell.affinity_grid.clear();
    cell.master_seed = derive_seed(sweep_master, c);
    out.push_back(run_pair_concentration(cell, threads));
  }
  return out;
}

std::vector<ExperimentSummary> run_ambient_sweep(const ExperimentConfig& cfg,
                                                 int threads) {
  check_common(cfg);
  require(!cfg.N_list.empty() && !cfg.n_list.empty(),
          "ambient_sweep needs N_list and n_list");
  std::vector<ExperimentSummary> out;
  out.reserve(cfg.N_list.size() * cfg.n_list.size());
  const std::uint64_t sweep_master = derive_seed(cfg.master_seed, kCellStream);
  std::size_t c = 0;
  for (int ambient : cfg.N_list)
    for (int target : cfg.n_list) {
      ExperimentConfig cell = cfg;
      cell.kind = ExperimentKind::pair_concentration;
      cell.N = ambient;
      cell.n = target;
      cell.N_list.clear();
      cell.n_list.clear();
      cell.master_seed = derive_seed(sweep_master, c++);
      out.push_back(run_pair_concentration(cell, threads));
    }
  return out;
}

ExperimentSummary run_rip(const ExperimentConfig& cfg, int threads) {
  const auto t0 = Clock::now();
  check_common(cfg);
  check_pair_geometry(cfg);
  const bool set_mode = cfg.kind == ExperimentKind::rip_set;
  if (set_mode) {
    require(cfg.L >= 2, "rip_set needs L >= 2");
    require(cfg.d1 == cfg.d2, "rip_set uses equal dimensions");
  }

  ExperimentSummary summary;
  summary.config = cfg;

  const GeneratedPair pair = make_pair(spec_from_config(cfg));
  summary.spectrum = pair.spectrum.cosines;
  summary.aff_sq_x = pair.spectrum.affinity_sq();

  std::vector<Subspace> subs{pair.x1, pair.x2};
  if (set_mode) {
    const std::uint64_t geom_seed = derive_seed(cfg.master_seed,
                                                kGeometryStream);
    for (int k = 2; k < cfg.L; ++k)
      subs.push_back(Subspace::from_orthonormal(
          random_orthonormal(cfg.N, cfg.d1, derive_seed(geom_seed, k))));
  }
  const int count = static_cast<int>(subs.size());

  std::vector<double> dist_sq_x;  // pairs (i, j), i < j, row-major
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      const double aff_sq =
          (subs[i].basis().transpose() * subs[j].basis()).squaredNorm();
      const double dsq =
          distance_sq_from_affinity(aff_sq, subs[i].dim(), subs[j].dim());
      require(dsq > 1e-9, "zero distance between subspaces " +
                              std::to_string(i) + " and " + std::to_string(j) +
                              "; the sandwich needs distinct subspaces");
      dist_sq_x.push_back(dsq);
    }
  summary.pair_dist_sq_x = dist_sq_x;
  summary.dist_sq_x = dist_sq_x.front();
  summary.estimate =
      est_distance_sq(dist_sq_x.front(), cfg.d1, cfg.d2, cfg.n);

  summary.records.resize(cfg.trials);
  std::vector<double> worst_rel(cfg.trials);
  run_trials(cfg, threads, [&](std::int64_t t, std::uint64_t seed_t) {
    const GaussianProjector proj = make_projector(cfg.n, cfg.N, seed_t);
    std::vector<Subspace> images;
    images.reserve(count);
    for (const auto& s : subs) images.push_back(project(proj, s));

    double worst = 0;
    std::size_t pair_idx = 0;
    double measured_01 = 0;
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j, ++pair_idx) {
        const double aff_sq =
            (images[i].basis().transpose() * images[j].basis()).squaredNorm();
        const double dsq = distance_sq_from_affinity(aff_sq, images[i].dim(),
                                                     images[j].dim());
        if (pair_idx == 0) measured_01 = dsq;
        worst = std::max(worst,
                         std::abs(dsq - dist_sq_x[pair_idx]) /
                             dist_sq_x[pair_idx]);
      }
    worst_rel[t] = worst;
    summary.records[t] = {t, measured_01, summary.estimate,
                          std::abs(measured_01 - summary.estimate), seed_t};
  });

  for (double eps : cfg.epsilons) {
    const BoundReport rep =
        set_mode ? rip_set_event(cfg.d1, cfg.L, cfg.n, eps)
                 : rip_pair_event(cfg.d1, cfg.d2, cfg.n, eps);
    std::int64_t failures = 0;
    for (double w : worst_rel)
      if (w > eps) ++failures;
    const double freq =
        static_cast<double>(failures) / static_cast<double>(cfg.trials);
    summary.per_epsilon.push_back(make_row(rep, freq, cfg.n, cfg.trials));
  }

  finalize(summary);
  summary.wall_time_sec = seconds_since(t0);
  return summary;
}

ExperimentSummary run_lemma_checks(const ExperimentConfig& cfg, int threads) {
  const auto t0 = Clock::now();
  check_common(cfg);
  require(cfg.n >= 1, "lemma checks need n >= 1");
  const int n = cfg.n;

  ExperimentSummary summary;
  summary.config = cfg;
  summary.records.resize(cfg.trials);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(n));

  switch (cfg.kind) {
    case ExperimentKind::lemma_f_ratio: {
      summary.estimate = 1.0;
      run_trials(cfg, threads, [&](std::int64_t t, std::uint64_t seed_t) {
        GaussianSampler s(seed_t);
        Eigen::VectorXd a1(n), a2(n);
        s.fill(a1, sigma);
        s.fill(a2, sigma);
        const double m = a1.squaredNorm() / a2.squaredNorm();
        summary.records[t] = {t, m, 1.0, std::abs(m - 1.0), seed_t};
      });
      for (double eps : cfg.epsilons) {
        BoundReport rep{eps, eps, bound_p1(eps, n), BoundKind::P1, false};
        rep.vacuous = rep.probability_bound >= 1.0;
        summary.per_epsilon.push_back(
            make_row(rep, violation_freq(summary.records, eps), n,
                     cfg.trials));
      }
      break;
    }
    case ExperimentKind::lemma_angle: {
      summary.estimate = 0.0;
      run_trials(cfg, threads, [&](std::int64_t t, std::uint64_t seed_t) {
        GaussianSampler s(seed_t);
        Eigen::VectorXd a1(n), a2(n);
        s.fill(a1, sigma);
        s.fill(a2, sigma);
        const double m = std::abs(a1.dot(a2)) / (a1.norm() * a2.norm());
        summary.records[t] = {t, m, 0.0, m, seed_t};
      });
      for (double eps : cfg.epsilons) {
        BoundReport rep{eps, eps, bound_p3(eps, n), BoundKind::P3, false};
        rep.vacuous = rep.probability_bound >= 1.0;
        summary.per_epsilon.push_back(
            make_row(rep, violation_freq(summary.records, eps), n,
                     cfg.trials));
      }
      break;
    }
    case ExperimentKind::lemma_support_norm: {
      const int d = cfg.support_dim;
      require(d >= 1 && d <= n, "support_dim must lie in [1, n]");
      const double est = static_cast<double>(d) / n;
      summary.estimate = est;
      run_trials(cfg, threads, [&](std::int64_t t, std::uint64_t seed_t) {
        GaussianSampler s(seed_t);
        Eigen::VectorXd a(n);
        s.fill(a, sigma);
        // Any fixed support works; the distribution is exchangeable.
        const double m = a.head(d).squaredNorm() / a.squaredNorm();
        summary.records[t] = {t, m, est, std::abs(m - est), seed_t};
      });
      for (double eps : cfg.epsilons) {
        BoundReport rep{eps, eps, bound_p2(eps, d, n), BoundKind::P2, false};
        rep.vacuous = rep.probability_bound >= 1.0;
        summary.per_epsilon.push_back(
            make_row(rep, violation_freq(summary.records, eps), n,
                     cfg.trials));
      }
      break;
    }
    case ExperimentKind::lemma_corr_ratio: {
      const double omega = cfg.omega;
      require(omega >= 0 && omega <= 1, "omega must lie in [0, 1]");
      summary.estimate = 1.0;
      const double mix = std::sqrt(1.0 - omega * omega);
      run_trials(cfg, threads, [&](std::int64_t t, std::uint64_t seed_t) {
        GaussianSampler s(seed_t);
        // w first, then q: with omega = 0 the trial collapses to the
        // f-ratio trial draw for draw.
        Eigen::VectorXd w(n), q(n);
        s.fill(w, sigma);
        s.fill(q, sigma);
        const Eigen::VectorXd p = omega * q + mix * w;
        const double m = p.squaredNorm() / q.squaredNorm();
        summary.records[t] = {t, m, 1.0, std::abs(m - 1.0), seed_t};
      });
      for (double eps : cfg.epsilons) {
        const double threshold = (1.0 - omega * omega) * eps;
        BoundReport rep{eps, threshold, bound_p1(eps, n), BoundKind::P1,
                        false};
        rep.vacuous = rep.probability_bound >= 1.0 || threshold <= 0.0;
        summary.per_epsilon.push_back(
            make_row(rep, violation_freq(summary.records, threshold), n,
                     cfg.trials));
      }
      break;
    }
    default:
      throw DomainError("run_lemma_checks: not a lemma experiment kind");
  }

  finalize(summary);
  summary.wall_time_sec = seconds_since(t0);
  return summary;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, int threads) {
  switch (cfg.kind) {
    case ExperimentKind::pair_concentration:
      return run_pair_concentration(cfg, threads);
    case ExperimentKind::rip_pair:
    case ExperimentKind::rip_set:
      return run_rip(cfg, threads);
    case ExperimentKind::lemma_f_ratio:
    case ExperimentKind::lemma_angle:
    case ExperimentKind::lemma_support_norm:
    case ExperimentKind::lemma_corr_ratio:
      return run_lemma_checks(cfg, threads);
    default:
      throw DomainError(
          "run_experiment handles single-summary kinds; use the sweep "
          "runners");
  }
}

}  // namespace srp
