#pragma once

// Shared helpers for the test suites: independent oracles and random
// geometry constructions. Everything here stays out of the library so
// the oracles cannot share code with the paths they check.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "srp/generator.hpp"
#include "srp/subspace.hpp"

namespace srp::testing {

/// Random subspace of dimension d in R^N.
inline Subspace random_subspace(int N, int d, std::uint64_t seed) {
  return Subspace::from_orthonormal(random_orthonormal(N, d, seed));
}

/// Largest principal-angle cosine by alternating maximization of
/// x1^T x2 over unit vectors of the two subspaces (the recursive
/// definition, not the SVD). Returns the best over several restarts.
inline double oracle_top_cosine(const Eigen::MatrixXd& u1,
                                const Eigen::MatrixXd& u2,
                                std::mt19937_64& engine, int restarts = 20,
                                int iters = 300) {
  std::normal_distribution<double> normal;
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd c2(u2.cols());
    for (Eigen::Index i = 0; i < c2.size(); ++i) c2(i) = normal(engine);
    Eigen::VectorXd x2 = u2 * c2;
    x2.normalize();
    Eigen::VectorXd x1;
    for (int it = 0; it < iters; ++it) {
      x1 = u1 * (u1.transpose() * x2);
      if (x1.norm() < 1e-14) break;
      x1.normalize();
      x2 = u2 * (u2.transpose() * x1);
      if (x2.norm() < 1e-14) break;
      x2.normalize();
    }
    if (x1.size() && x2.size()) best = std::max(best, x1.dot(x2));
  }
  return best;
}

/// Both principal-angle cosines of a 2-vs-2 pair, computed from the
/// recursive definition: alternating maximization for the first, and
/// the (unique up to sign) orthogonal complements within each subspace
/// for the second.
inline std::vector<double> oracle_cosines_2x2(const Eigen::MatrixXd& u1,
                                              const Eigen::MatrixXd& u2,
                                              std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;

  // Recover the maximizing pair, not just the value.
  Eigen::VectorXd x2 = u2.col(0), x1;
  double best = -1;
  Eigen::VectorXd best_x1, best_x2;
  for (int r = 0; r < 20; ++r) {
    Eigen::VectorXd c2(u2.cols());
    for (Eigen::Index i = 0; i < c2.size(); ++i) c2(i) = normal(engine);
    x2 = (u2 * c2).normalized();
    for (int it = 0; it < 300; ++it) {
      x1 = (u1 * (u1.transpose() * x2)).normalized();
      x2 = (u2 * (u2.transpose() * x1)).normalized();
    }
    const double v = x1.dot(x2);
    if (v > best) {
      best = v;
      best_x1 = x1;
      best_x2 = x2;
    }
  }

  // Second angle: the feasible sets under the orthogonality constraint
  // are one-dimensional for d = 2.
  auto complement_in = [](const Eigen::MatrixXd& u,
                          const Eigen::VectorXd& x) {
    Eigen::VectorXd v = u.col(0) - x.dot(u.col(0)) * x;
    if (v.norm() < 1e-8) v = u.col(1) - x.dot(u.col(1)) * x;
    return v.normalized().eval();
  };
  const Eigen::VectorXd y1 = complement_in(u1, best_x1);
  const Eigen::VectorXd y2 = complement_in(u2, best_x2);

  std::vector<double> cosines{best, std::abs(y1.dot(y2))};
  std::sort(cosines.begin(), cosines.end(), std::greater<>());
  return cosines;
}

/// Squared projection F-norm distance straight from the definition.
inline double oracle_distance_sq(const Subspace& a, const Subspace& b) {
  const Eigen::MatrixXd pa = a.basis() * a.basis().transpose();
  const Eigen::MatrixXd pb = b.basis() * b.basis().transpose();
  return 0.5 * (pa - pb).squaredNorm();
}

/// Random symmetric matrix with zero diagonal and unit Frobenius norm.
inline Eigen::MatrixXd random_gram_perturbation(int d, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) r(i, j) = r(j, i) = uni(engine);
  return r / r.norm();
}

/// Unit-column frame whose Gram matrix is exactly I + t R0: the matrix
/// square root of the Gram, embedded with a Haar frame.
inline Eigen::MatrixXd frame_with_gram(int n, const Eigen::MatrixXd& r0,
                                       double t, std::uint64_t seed) {
  const int d = static_cast<int>(r0.rows());
  const Eigen::MatrixXd gram =
      Eigen::MatrixXd::Identity(d, d) + t * r0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::MatrixXd sqrt_gram =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
      eig.eigenvectors().transpose();
  return random_orthonormal(n, d, seed) * sqrt_gram;
}

}  // namespace srp::testing
