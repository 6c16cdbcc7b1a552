#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "srp/detail/mgs.hpp"
#include "srp/errors.hpp"
#include "srp/generator.hpp"
#include "srp/projection.hpp"
#include "srp/rng.hpp"
#include "srp/subspace.hpp"
#include "support.hpp"

using namespace srp;
using srp::testing::random_subspace;

TEST_CASE("projector is reproducible from its seed") {
  const auto a = make_projector(2, 5, 7);
  const auto b = make_projector(2, 5, 7);
  CHECK(a.matrix == b.matrix);
  const auto c = make_projector(2, 5, 8);
  CHECK(a.matrix != c.matrix);
}

TEST_CASE("projector entry statistics") {
  const auto p = make_projector(100, 500, 1);
  const double mean = p.matrix.mean();
  const double var =
      (p.matrix.array() - mean).square().sum() / (p.matrix.size() - 1);
  // 4 sigma window for the sample mean of n*N entries of variance 1/n.
  const double sigma = 1.0 / std::sqrt(100.0);
  CHECK(std::abs(mean) <= 4.0 * sigma / std::sqrt(500.0 * 100.0));
  CHECK(var >= 0.009);
  CHECK(var <= 0.011);
}

TEST_CASE("dimension order is enforced") {
  CHECK_THROWS_AS(make_projector(500, 200, 1), DimensionOrder);
  CHECK_THROWS_AS(make_projector(200, 200, 1), DimensionOrder);
}

TEST_CASE("projection preserves dimension") {
  const auto p = make_projector(200, 500, 3);
  const Subspace line = random_subspace(500, 1, 10);
  const Subspace image = project(p, line);
  CHECK(image.ambient_dim() == 200);
  CHECK(image.dim() == 1);
}

TEST_CASE("identical inputs map to identical images") {
  const auto p = make_projector(200, 500, 4);
  const Subspace x = random_subspace(500, 5, 11);
  const Subspace y1 = project(p, x);
  const Subspace y2 = project(p, x);
  const double aff = affinity(y1, y2);
  CHECK(aff == doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));
}

TEST_CASE("orthogonal lines almost always gain affinity") {
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(500, 1);
  Eigen::MatrixXd e2 = Eigen::MatrixXd::Zero(500, 1);
  e1(0, 0) = 1;
  e2(1, 0) = 1;
  const Subspace l1 = Subspace::from_orthonormal(e1);
  const Subspace l2 = Subspace::from_orthonormal(e2);

  int positive = 0;
  GaussianProjector p = make_projector(200, 500, 0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    refill_projector(p, seed);
    if (affinity(project(p, l1), project(p, l2)) > 1e-6) ++positive;
  }
  CHECK(positive == 1000);
}

TEST_CASE("normalized columns: line case equals projection") {
  const auto p = make_projector(120, 300, 5);
  const Subspace line = random_subspace(300, 1, 6);
  const Eigen::MatrixXd cols = normalized_columns(p, line);
  const Subspace image = project(p, line);
  CHECK((cols - image.basis()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("normalized columns have unit norm and the projected span") {
  const auto p = make_projector(100, 400, 8);
  const Subspace x = random_subspace(400, 6, 9);
  const Eigen::MatrixXd cols = normalized_columns(p, x);
  for (int j = 0; j < 6; ++j)
    CHECK(std::abs(cols.col(j).norm() - 1.0) < 1e-12);
  const Subspace via_cols = orthonormalize(cols);
  CHECK(same_span(via_cols, project(p, x)));
}

TEST_CASE("gram off-diagonals shrink with the target dimension") {
  const int N = 1200, d = 5, seeds = 200;
  auto median_offdiag = [&](int n) {
    std::vector<double> values;
    GaussianProjector p = make_projector(n, N, 0);
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      refill_projector(p, seed);
      const Subspace x = random_subspace(N, d, 1000 + seed);
      const Eigen::MatrixXd a = normalized_columns(p, x);
      const Eigen::MatrixXd gram = a.transpose() * a;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          values.push_back(std::abs(gram(i, j)));
    }
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
  };
  CHECK(median_offdiag(1000) < median_offdiag(100));
}

TEST_CASE("quasi-ortho report on an orthonormal frame is trivial") {
  const Eigen::MatrixXd q = random_orthonormal(40, 5, 3);
  const auto rep = quasi_ortho_report(q);
  CHECK(rep.r_norm < 1e-12);
  CHECK(rep.U_bar.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("quasi-ortho report matches the two-column closed form") {
  const double r = 0.1;
  const int n = 30;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, 2);
  a(0, 0) = 1.0;
  a(0, 1) = r;
  a(1, 1) = std::sqrt(1.0 - r * r);
  const auto rep = quasi_ortho_report(a);

  const double u12 = -r / std::sqrt(1.0 - r * r);
  const double u22 = 1.0 / std::sqrt(1.0 - r * r) - 1.0;
  CHECK(rep.U_bar(0, 1) == doctest::Approx(u12).epsilon(1e-9));
  CHECK(rep.U_bar(1, 1) == doctest::Approx(u22).epsilon(1e-9));
  CHECK(rep.U_bar(0, 1) == doctest::Approx(-0.100504).epsilon(1e-4));
  CHECK(rep.U_bar(1, 1) == doctest::Approx(0.005038).epsilon(1e-3));
  CHECK(rep.U_bar(1, 0) == 0.0);
  CHECK(rep.R_bar(0, 1) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("quasi-ortho reconstruction and scaling family") {
  const int d = 6, n = 50;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXd r0 =
        srp::testing::random_gram_perturbation(d, 100 + seed);
    double prev_ratio = -1.0;
    for (double t : {0.2, 0.1, 0.05, 0.025}) {
      const Eigen::MatrixXd a =
          srp::testing::frame_with_gram(n, r0, t, 200 + seed);
      const auto rep = quasi_ortho_report(a);

      // Triangular structure, exact below the diagonal.
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) CHECK(rep.U_bar(i, j) == 0.0);

      // Reconstruction: A (I + U) recovers the orthogonalization.
      Eigen::MatrixXd v = a;
      if (!srp::detail::mgs_inplace(v)) FAIL("degenerate frame");
      const Eigen::MatrixXd recon =
          a * (Eigen::MatrixXd::Identity(d, d) + rep.U_bar);
      CHECK((recon - v).cwiseAbs().maxCoeff() < 1e-8);

      // Diagonal is second order in ||R||.
      if (t <= 0.1)
        CHECK(rep.max_diag / (rep.r_norm * rep.r_norm) <= 0.5);

      // Off-diagonal residual vanishes faster than ||R||.
      const double ratio = rep.max_offdiag_residual / rep.r_norm;
      if (prev_ratio >= 0) CHECK(ratio < prev_ratio);
      prev_ratio = ratio;
    }
  }
}

TEST_CASE("quasi-ortho rejects bad input") {
  Eigen::MatrixXd not_unit(10, 2);
  not_unit.setZero();
  not_unit(0, 0) = 2.0;
  not_unit(1, 1) = 1.0;
  CHECK_THROWS_AS(quasi_ortho_report(not_unit), DomainError);

  Eigen::MatrixXd parallel(10, 2);
  parallel.setZero();
  parallel(0, 0) = 1.0;
  parallel(0, 1) = 1.0;
  CHECK_THROWS_AS(quasi_ortho_report(parallel), RankDeficient);
}

TEST_CASE("quasi affinity equals the exact one for a line") {
  const auto p = make_projector(150, 400, 17);
  const Subspace line = random_subspace(400, 1, 18);
  const Subspace x2 = random_subspace(400, 6, 19);
  const double quasi = affinity_via_quasi_basis(p, line, x2);
  const double exact = affinity(project(p, line), project(p, x2));
  CHECK(quasi == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("quasi affinity tracks the exact one across seeds") {
  PairSpec spec;
  spec.N = 500;
  spec.d1 = 5;
  spec.d2 = 10;
  spec.target_affinity = std::sqrt(2.0);
  spec.seed = 3;
  const auto pair = make_pair(spec);
  GaussianProjector p = make_projector(200, 500, 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    refill_projector(p, seed);
    const double quasi = affinity_via_quasi_basis(p, pair.x1, pair.x2);
    const double exact = affinity(project(p, pair.x1), project(p, pair.x2));
    CHECK(std::abs(quasi * quasi - exact * exact) / (exact * exact) < 0.1);
  }
}

TEST_CASE("quasi affinity report in the contained case") {
  const Subspace x = random_subspace(500, 3, 30);
  GaussianProjector p = make_projector(200, 500, 0);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    refill_projector(p, seed);
    const auto rep = quasi_affinity_report(p, x, x);
    CHECK(rep.exact == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
    // Corollary bound with a factor-2 cushion for the asymptotic constant.
    const double lhs = std::abs(rep.value * rep.value - 3.0);
    CHECK(lhs <= 2.0 * 3 * rep.value * rep.value * rep.eps_emp + 1e-12);
  }
}
