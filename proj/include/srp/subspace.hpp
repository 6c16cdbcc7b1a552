#pragma once

#include <Eigen/Core>
#include <vector>

namespace srp {

inline constexpr double kOrthoTol = 1e-10;      // basis^T basis vs identity
inline constexpr double kRankRelTol = 1e-8;     // smallest/largest singular value
inline constexpr double kSpanAffinityTol = 1e-9;

/// A d-dimensional linear subspace of R^N, held as an orthonormal basis.
/// Immutable after construction; all operations on it are pure.
class Subspace {
 public:
  /// Wraps a matrix whose columns are already orthonormal (checked).
  static Subspace from_orthonormal(Eigen::MatrixXd basis);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

 private:
  explicit Subspace(Eigen::MatrixXd b) : basis_(std::move(b)) {}
  friend Subspace orthonormalize(const Eigen::MatrixXd&);

  Eigen::MatrixXd basis_;
};

/// Cosines of the principal angles between two subspaces,
/// sorted non-increasing and clamped into [0, 1].
struct PrincipalAngleSpectrum {
  std::vector<double> cosines;

  double affinity_sq() const;
  double affinity() const;
};

/// Spans the same column space as `columns` with an orthonormal basis.
/// Modified Gram-Schmidt with one re-orthogonalization pass.
/// Throws RankDeficient when the smallest singular value of the input
/// is below kRankRelTol times the largest.
Subspace orthonormalize(const Eigen::MatrixXd& columns);

/// Singular values of basis(A)^T basis(B); length min(dim A, dim B).
PrincipalAngleSpectrum principal_angles(const Subspace& a, const Subspace& b);

/// Frobenius norm of basis(A)^T basis(B); in [0, sqrt(min(d1, d2))].
double affinity(const Subspace& a, const Subspace& b);

/// Projection F-norm distance: (1/sqrt(2)) ||P_A - P_B||_F with
/// P = U U^T. A metric on subspaces of mixed dimension.
double distance(const Subspace& a, const Subspace& b);

/// D^2 = (d1 + d2)/2 - aff^2. Exact algebra; throws DomainError when
/// aff_sq lies outside [0, min(d1, d2)] by more than 1e-9.
double distance_sq_from_affinity(double aff_sq, int d1, int d2);

/// True iff the two subspaces have equal span: equal dims and
/// affinity^2 = dim within tol (bases are non-unique, so no bit test).
bool same_span(const Subspace& a, const Subspace& b,
               double tol = kSpanAffinityTol);

}  // namespace srp
