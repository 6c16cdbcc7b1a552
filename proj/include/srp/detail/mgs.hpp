#pragma once

#include <Eigen/Core>

namespace srp::detail {

/// Modified Gram-Schmidt over the columns in order, with one
/// re-orthogonalization pass. Returns false on a numerically zero column.
inline bool mgs_inplace(Eigen::MatrixXd& m, double zero_tol = 1e-300) {
  for (Eigen::Index i = 0; i < m.cols(); ++i) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < i; ++j)
        m.col(i) -= m.col(j).dot(m.col(i)) * m.col(j);
    const double norm = m.col(i).norm();
    if (!(norm > zero_tol)) return false;
    m.col(i) /= norm;
  }
  return true;
}

}  // namespace srp::detail
