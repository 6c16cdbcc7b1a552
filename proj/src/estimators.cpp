#include "srp/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "srp/errors.hpp"

namespace srp {

namespace {

constexpr double kSlack = 1e-9;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

void check_pair(const PairParams& p) {
  require(p.d1 >= 1 && p.d1 <= p.d2 && p.d2 < p.n, "need 1 <= d1 <= d2 < n");
  require(p.aff_sq >= -kSlack && p.aff_sq <= p.d1 + kSlack,
          "aff_sq outside [0, d1]");
  if (p.cosines) {
    double s = 0;
    for (double c : *p.cosines) {
      require(c >= -kSlack && c <= 1 + kSlack, "cosine outside [0, 1]");
      s += c * c;
    }
    require(std::abs(s - p.aff_sq) <= 1e-10,
            "spectrum inconsistent with aff_sq");
  }
}

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::P1: return "P1";
    case BoundKind::P2: return "P2";
    case BoundKind::P3: return "P3";
    case BoundKind::pair_relaxed: return "pair_relaxed";
    case BoundKind::pair_tight: return "pair_tight";
    case BoundKind::distance: return "distance";
    case BoundKind::rip_pair: return "rip_pair";
    case BoundKind::rip_set: return "rip_set";
  }
  return "?";
}

double est_affinity_sq_line(double lambda_sq, int d, int n) {
  require(d >= 1 && d < n, "need 1 <= d < n");
  require(lambda_sq >= -kSlack && lambda_sq <= 1 + kSlack,
          "lambda_sq outside [0, 1]");
  lambda_sq = std::clamp(lambda_sq, 0.0, 1.0);
  return lambda_sq + static_cast<double>(d) / n * (1.0 - lambda_sq);
}

double est_affinity_sq(const PairParams& p) {
  check_pair(p);
  const double aff_sq = std::clamp(p.aff_sq, 0.0, double(p.d1));
  return aff_sq + static_cast<double>(p.d2) / p.n * (p.d1 - aff_sq);
}

double est_distance_sq(double dist_sq, int d1, int d2, int n) {
  require(d1 >= 1 && d1 <= d2 && d2 < n, "need 1 <= d1 <= d2 < n");
  const double lo = 0.5 * (d2 - d1), hi = 0.5 * (d1 + d2);
  require(dist_sq >= lo - kSlack && dist_sq <= hi + kSlack,
          "dist_sq outside [(d2-d1)/2, (d1+d2)/2]");
  dist_sq = std::clamp(dist_sq, lo, hi);
  return dist_sq - static_cast<double>(d2) / n * (dist_sq - lo);
}

double est_distance_sq_line(double dist_sq, int d, int n) {
  return est_distance_sq(dist_sq, 1, d, n);
}

double bound_p1(double epsilon, int n) {
  require(epsilon > 0 && n >= 1, "need epsilon > 0, n >= 1");
  return 4.0 / (epsilon * epsilon * n);
}

double bound_p2(double epsilon, int d, int n) {
  require(epsilon > 0 && n >= 1 && d >= 1, "need epsilon > 0, d, n >= 1");
  return 2.0 * d / (epsilon * epsilon * double(n) * n);
}

double bound_p3(double epsilon, int n) {
  require(epsilon > 0 && n >= 1, "need epsilon > 0, n >= 1");
  return std::exp(-epsilon * epsilon * n / 2.0);
}

BoundReport deviation_event(const PairParams& p, double epsilon,
                            BoundKind kind) {
  check_pair(p);
  require(epsilon > 0, "need epsilon > 0");

  BoundReport r;
  r.epsilon = epsilon;
  r.kind = kind;
  r.probability_bound = 4.0 * p.d1 / (epsilon * epsilon * p.n);

  switch (kind) {
    case BoundKind::pair_relaxed:
      r.deviation_threshold = p.aff_sq * epsilon;
      break;
    case BoundKind::pair_tight: {
      if (!p.cosines)
        throw MissingCosines("tight bound needs the principal-angle spectrum");
      double s = 0;
      for (double c : *p.cosines) s += c * c * (1.0 - c * c);
      r.deviation_threshold = s * epsilon;
      break;
    }
    case BoundKind::distance:
      // D_X^2 via the affinity identity.
      r.deviation_threshold = (0.5 * (p.d1 + p.d2) - p.aff_sq) * epsilon;
      break;
    default:
      throw DomainError("deviation_event: unsupported bound kind");
  }
  r.vacuous = r.probability_bound >= 1.0 || r.deviation_threshold <= 0.0;
  return r;
}

double rip_pair_bound(int d1, int d2, int n, double epsilon) {
  require(d1 >= 1 && d1 <= d2 && d2 < n, "need 1 <= d1 <= d2 < n");
  require(epsilon > 0, "need epsilon > 0");
  const double gap = epsilon - static_cast<double>(d2) / n;
  if (gap <= 0) return 0.0;
  const double b = 1.0 - 4.0 * d1 / (gap * gap * n);
  return b > 0 ? b : 0.0;
}

double rip_set_bound(int d, int L, int n, double epsilon) {
  require(d >= 1 && d < n && L >= 2, "need 1 <= d < n, L >= 2");
  require(epsilon > 0, "need epsilon > 0");
  const double gap = epsilon - static_cast<double>(d) / n;
  if (gap <= 0) return 0.0;
  const double b = 1.0 - 2.0 * d * double(L) * (L - 1) / (gap * gap * n);
  return b > 0 ? b : 0.0;
}

BoundReport rip_pair_event(int d1, int d2, int n, double epsilon) {
  BoundReport r;
  r.epsilon = epsilon;
  r.kind = BoundKind::rip_pair;
  const double gap = epsilon - static_cast<double>(d2) / n;
  r.vacuous = gap <= 0;
  // Reported as failure mass so "empirical <= bound" reads the same for
  // every kind; success lower bound is 1 minus this.
  r.probability_bound =
      r.vacuous ? 1.0 : 4.0 * d1 / (gap * gap * n);
  if (r.probability_bound >= 1.0) r.vacuous = true;
  r.deviation_threshold = epsilon;
  return r;
}

BoundReport rip_set_event(int d, int L, int n, double epsilon) {
  BoundReport r;
  r.epsilon = epsilon;
  r.kind = BoundKind::rip_set;
  const double gap = epsilon - static_cast<double>(d) / n;
  r.vacuous = gap <= 0;
  r.probability_bound =
      r.vacuous ? 1.0 : 2.0 * d * double(L) * (L - 1) / (gap * gap * n);
  if (r.probability_bound >= 1.0) r.vacuous = true;
  r.deviation_threshold = epsilon;
  return r;
}

}  // namespace srp
