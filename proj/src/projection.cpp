#include "srp/projection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "srp/detail/mgs.hpp"
#include "srp/errors.hpp"
#include "srp/rng.hpp"

namespace srp {

namespace {

void check_projectable(const GaussianProjector& p, const Subspace& x) {
  if (x.ambient_dim() != p.N)
    throw AmbientMismatch("subspace lives in R^" +
                          std::to_string(x.ambient_dim()) +
                          ", projector maps from R^" + std::to_string(p.N));
  if (x.dim() >= p.n)
    throw DomainError("subspace dimension must be below the target dimension");
}

}  // namespace

GaussianProjector make_projector(int n, int N, std::uint64_t seed) {
  if (n < 1 || n >= N)
    throw DimensionOrder("need 1 <= n < N, got n=" + std::to_string(n) +
                         ", N=" + std::to_string(N));
  GaussianProjector p;
  p.n = n;
  p.N = N;
  p.matrix.resize(n, N);
  refill_projector(p, seed);
  return p;
}

void refill_projector(GaussianProjector& p, std::uint64_t seed) {
  p.seed = seed;
  GaussianSampler sampler(seed);
  sampler.fill(p.matrix, 1.0 / std::sqrt(static_cast<double>(p.n)));
}

Subspace project(const GaussianProjector& p, const Subspace& x) {
  check_projectable(p, x);
  Eigen::MatrixXd image = p.matrix * x.basis();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(image);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kRankCollapseTol * sv(0))
    throw RankCollapse("projected basis lost rank");
  if (!detail::mgs_inplace(image))
    throw RankCollapse("projected basis lost rank");
  return Subspace::from_orthonormal(std::move(image));
}

Eigen::MatrixXd normalized_columns(const GaussianProjector& p,
                                   const Subspace& x) {
  check_projectable(p, x);
  Eigen::MatrixXd image = p.matrix * x.basis();
  for (Eigen::Index j = 0; j < image.cols(); ++j) {
    const double norm = image.col(j).norm();
    if (norm <= kRankCollapseTol)
      throw RankCollapse("projected column is numerically zero");
    image.col(j) /= norm;
  }
  return image;
}

QuasiOrthoReport quasi_ortho_report(const Eigen::MatrixXd& a_bar) {
  const auto d = a_bar.cols();
  if (d < 1 || a_bar.rows() < d)
    throw DomainError("frame must be n x d with 1 <= d <= n");
  for (Eigen::Index j = 0; j < d; ++j)
    if (std::abs(a_bar.col(j).norm() - 1.0) > 1e-9)
      throw DomainError("columns must have unit norm");
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_bar);
    const auto& sv = svd.singularValues();
    if (sv(d - 1) <= kRankRelTol * sv(0))
      throw RankDeficient("quasi-orthonormal frame is rank deficient");
  }

  QuasiOrthoReport rep;
  rep.R_bar = a_bar.transpose() * a_bar -
              Eigen::MatrixXd::Identity(d, d);
  rep.R_bar.diagonal().setZero();
  rep.r_norm = rep.R_bar.norm();

  // Gram-Schmidt in column order 1..d (modified form, same projections).
  Eigen::MatrixXd v = a_bar;
  if (!detail::mgs_inplace(v))
    throw RankDeficient("quasi-orthonormal frame is rank deficient");

  // V - A_bar = A_bar * U_bar, solved by least squares. The solution is
  // upper triangular up to roundoff; the noise below the diagonal is
  // dropped so the triangular structure holds exactly.
  Eigen::MatrixXd u =
      a_bar.colPivHouseholderQr().solve(v - a_bar);
  for (Eigen::Index i = 1; i < d; ++i)
    for (Eigen::Index j = 0; j < i; ++j) u(i, j) = 0.0;
  rep.U_bar = std::move(u);

  rep.max_diag = rep.U_bar.diagonal().cwiseAbs().maxCoeff();
  rep.max_offdiag_residual = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      rep.max_offdiag_residual =
          std::max(rep.max_offdiag_residual,
                   std::abs(rep.U_bar(j, i) + rep.R_bar(j, i)));
  return rep;
}

double affinity_via_quasi_basis(const GaussianProjector& p, const Subspace& x1,
                                const Subspace& x2) {
  if (x1.dim() > x2.dim())
    throw DomainError("x1 must be the smaller subspace");
  const Eigen::MatrixXd a1 = normalized_columns(p, x1);
  const Subspace y2 = project(p, x2);
  return (a1.transpose() * y2.basis()).norm();
}

QuasiAffinityReport quasi_affinity_report(const GaussianProjector& p,
                                          const Subspace& x1,
                                          const Subspace& x2) {
  if (x1.dim() > x2.dim())
    throw DomainError("x1 must be the smaller subspace");
  const Eigen::MatrixXd a1 = normalized_columns(p, x1);
  const Subspace y1 = project(p, x1);
  const Subspace y2 = project(p, x2);

  QuasiAffinityReport rep;
  rep.value = (a1.transpose() * y2.basis()).norm();
  rep.exact = affinity(y1, y2);

  Eigen::MatrixXd gram = a1.transpose() * a1;
  gram.diagonal().setZero();
  rep.eps_emp = gram.cwiseAbs().maxCoeff();

  const double lhs = std::abs(rep.value * rep.value - rep.exact * rep.exact);
  rep.within_bound = lhs <= x1.dim() * rep.value * rep.value * rep.eps_emp;
  return rep;
}

}  // namespace srp
