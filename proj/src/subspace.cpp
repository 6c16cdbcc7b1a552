#include "srp/subspace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "srp/detail/mgs.hpp"
#include "srp/errors.hpp"

namespace srp {

namespace {

void check_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw AmbientMismatch("ambient dimensions differ: " +
                          std::to_string(a.ambient_dim()) + " vs " +
                          std::to_string(b.ambient_dim()));
}

}  // namespace

Subspace Subspace::from_orthonormal(Eigen::MatrixXd basis) {
  if (basis.cols() < 1 || basis.rows() < basis.cols())
    throw DomainError("basis must be N x d with 1 <= d <= N");
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const double err =
      (gram - Eigen::MatrixXd::Identity(basis.cols(), basis.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (err > kOrthoTol)
    throw DomainError("columns are not orthonormal (max deviation " +
                      std::to_string(err) + ")");
  return Subspace(std::move(basis));
}

Subspace orthonormalize(const Eigen::MatrixXd& columns) {
  const auto rows = columns.rows();
  const auto cols = columns.cols();
  if (cols < 1 || rows < cols)
    throw DomainError("input must be N x d with 1 <= d <= N");

  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns);
    const auto& sv = svd.singularValues();
    if (sv(cols - 1) <= kRankRelTol * sv(0))
      throw RankDeficient("smallest singular value " +
                          std::to_string(sv(cols - 1)) + " below " +
                          std::to_string(kRankRelTol) + " x largest");
  }

  Eigen::MatrixXd q = columns;
  if (!detail::mgs_inplace(q))
    throw RankDeficient("zero column during orthonormalization");
  return Subspace(std::move(q));
}

double PrincipalAngleSpectrum::affinity_sq() const {
  double s = 0;
  for (double c : cosines) s += c * c;
  return s;
}

double PrincipalAngleSpectrum::affinity() const {
  return std::sqrt(affinity_sq());
}

PrincipalAngleSpectrum principal_angles(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  const Eigen::MatrixXd m = a.basis().transpose() * b.basis();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  PrincipalAngleSpectrum spec;
  spec.cosines.resize(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    spec.cosines[i] = std::clamp(sv(i), 0.0, 1.0);
  return spec;
}

double affinity(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  return (a.basis().transpose() * b.basis()).norm();
}

double distance(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  const Eigen::MatrixXd pa = a.basis() * a.basis().transpose();
  const Eigen::MatrixXd pb = b.basis() * b.basis().transpose();
  return (pa - pb).norm() / std::sqrt(2.0);
}

double distance_sq_from_affinity(double aff_sq, int d1, int d2) {
  const double cap = static_cast<double>(std::min(d1, d2));
  if (aff_sq < -1e-9 || aff_sq > cap + 1e-9)
    throw DomainError("aff_sq " + std::to_string(aff_sq) +
                      " outside [0, min(d1, d2)]");
  aff_sq = std::clamp(aff_sq, 0.0, cap);
  return 0.5 * (d1 + d2) - aff_sq;
}

bool same_span(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  const double aff_sq =
      (a.basis().transpose() * b.basis()).squaredNorm();
  return std::abs(aff_sq - a.dim()) <= tol;
}

}  // namespace srp
