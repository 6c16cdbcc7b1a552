#pragma once

#include <optional>
#include <string>
#include <vector>

namespace srp {

/// Geometry parameters of a projected pair, as the estimators consume them.
struct PairParams {
  int d1 = 0;  // smaller dimension
  int d2 = 0;  // larger dimension, d1 <= d2 < n
  int n = 0;   // ambient dimension after projection
  double aff_sq = 0.0;
  std::optional<std::vector<double>> cosines;  // needed for the tight bound
};

enum class BoundKind {
  P1,            // norm-ratio tail 4/(eps^2 n)
  P2,            // support-norm tail 2d/(eps^2 n^2)
  P3,            // angle tail exp(-eps^2 n / 2)
  pair_relaxed,  // |aff_Y^2 - est| > aff_X^2 eps
  pair_tight,    // |aff_Y^2 - est| > sum lambda_i^2 (1 - lambda_i^2) eps
  distance,      // |D_Y^2 - est| > D_X^2 eps
  rip_pair,
  rip_set,
};

const char* to_string(BoundKind kind);

/// One deviation event: the threshold that multiplies epsilon and the
/// probability mass the theory puts above it. Bounds are reported as-is;
/// a value >= 1 or a non-positive threshold carries no information and
/// is flagged vacuous rather than clipped.
struct BoundReport {
  double epsilon = 0.0;
  double deviation_threshold = 0.0;
  double probability_bound = 0.0;
  BoundKind kind = BoundKind::P1;
  bool vacuous = false;
};

/// Estimate of the squared affinity between a projected line and a
/// projected d-dimensional subspace: lambda^2 + (d/n)(1 - lambda^2).
double est_affinity_sq_line(double lambda_sq, int d, int n);

/// Estimate for two projected subspaces: aff^2 + (d2/n)(d1 - aff^2).
double est_affinity_sq(const PairParams& p);

/// Estimate of the squared distance after projection:
/// D^2 - (d2/n)(D^2 - (d2 - d1)/2).
double est_distance_sq(double dist_sq, int d1, int d2, int n);

/// Line case of est_distance_sq (d1 = 1, d2 = d).
double est_distance_sq_line(double dist_sq, int d, int n);

double bound_p1(double epsilon, int n);
double bound_p2(double epsilon, int d, int n);
double bound_p3(double epsilon, int n);

/// Deviation event for a projected pair. Supported kinds: pair_relaxed,
/// pair_tight (requires p.cosines), distance. The probability bound is
/// 4 d1 / (eps^2 n) for all three.
BoundReport deviation_event(const PairParams& p, double epsilon,
                            BoundKind kind);

/// Lower bound on P((1-eps) D_X^2 <= D_Y^2 <= (1+eps) D_X^2):
/// 1 - 4 d1 / ((eps - d2/n)^2 n). Returns 0 when vacuous (eps <= d2/n
/// or the bound is not positive).
double rip_pair_bound(int d1, int d2, int n, double epsilon);

/// Same event over all pairs from a set of L subspaces of dimension at
/// most d: 1 - 2 d L (L-1) / ((eps - d/n)^2 n).
double rip_set_bound(int d, int L, int n, double epsilon);

BoundReport rip_pair_event(int d1, int d2, int n, double epsilon);
BoundReport rip_set_event(int d, int L, int n, double epsilon);

}  // namespace srp
