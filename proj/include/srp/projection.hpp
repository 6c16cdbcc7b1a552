#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "srp/subspace.hpp"

namespace srp {

inline constexpr double kRankCollapseTol = 1e-10;

/// Random n x N matrix with i.i.d. N(0, 1/n) entries, n < N.
/// Fully determined by (n, N, seed); entries are drawn in row-major
/// order from GaussianSampler(seed).
struct GaussianProjector {
  int n = 0;
  int N = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd matrix;
};

GaussianProjector make_projector(int n, int N, std::uint64_t seed);

/// Regenerates in place for a new seed, reusing the allocation.
void refill_projector(GaussianProjector& p, std::uint64_t seed);

/// Image of a subspace: orthonormalized Phi * U. Dimension is preserved;
/// RankCollapse is thrown if the projected basis is numerically rank
/// deficient, which for d < n indicates misuse.
Subspace project(const GaussianProjector& p, const Subspace& x);

/// Phi * U with every column scaled to unit norm, nothing orthogonalized.
/// Same column space as project(p, x).
Eigen::MatrixXd normalized_columns(const GaussianProjector& p,
                                   const Subspace& x);

/// Error structure of using a column-normalized frame in place of its
/// Gram-Schmidt orthogonalization V: V - A_bar = A_bar * U_bar with
/// U_bar upper triangular. R_bar = A_bar^T A_bar - I.
struct QuasiOrthoReport {
  Eigen::MatrixXd R_bar;
  Eigen::MatrixXd U_bar;
  double r_norm = 0.0;                // ||R_bar||_F
  double max_diag = 0.0;              // max_i |u_ii|
  double max_offdiag_residual = 0.0;  // max_{j<i} |u_ji + r_ji|
};

/// Gram-Schmidt runs over the columns in order 1..d; U_bar is recovered
/// by least squares against A_bar. Requires unit-norm columns.
QuasiOrthoReport quasi_ortho_report(const Eigen::MatrixXd& a_bar);

/// Affinity estimate ||A_bar_1^T V_2||_F using the column-normalized
/// frame for the smaller subspace. Requires x1.dim <= x2.dim.
double affinity_via_quasi_basis(const GaussianProjector& p,
                                const Subspace& x1, const Subspace& x2);

struct QuasiAffinityReport {
  double value = 0.0;     // ||A_bar_1^T V_2||_F
  double exact = 0.0;     // affinity of the projected pair
  double eps_emp = 0.0;   // max off-diagonal of A_bar_1's Gram matrix
  bool within_bound = false;  // |value^2 - exact^2| <= d1 value^2 eps_emp
};

QuasiAffinityReport quasi_affinity_report(const GaussianProjector& p,
                                          const Subspace& x1,
                                          const Subspace& x2);

}  // namespace srp
