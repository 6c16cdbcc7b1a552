#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "srp/errors.hpp"
#include "srp/estimators.hpp"

using namespace srp;

TEST_CASE("line estimate") {
  CHECK(est_affinity_sq_line(1.0, 7, 100) == doctest::Approx(1.0));
  CHECK(est_affinity_sq_line(0.0, 10, 200) == doctest::Approx(0.05));
  CHECK(est_affinity_sq_line(0.3, 5, 1000000000) ==
        doctest::Approx(0.3 + 3.5e-9).epsilon(1e-12));
  CHECK_THROWS_AS(est_affinity_sq_line(1.5, 5, 100), DomainError);
  CHECK_THROWS_AS(est_affinity_sq_line(0.5, 100, 100), DomainError);
}

TEST_CASE("pair estimate at the first-figure parameters") {
  CHECK(est_affinity_sq({5, 10, 200, 1.0, {}}) == doctest::Approx(1.2));
  CHECK(est_affinity_sq({5, 10, 200, 4.0, {}}) == doctest::Approx(4.05));
  CHECK(est_affinity_sq({5, 10, 200, 5.0, {}}) == doctest::Approx(5.0));
  CHECK(est_affinity_sq({5, 10, 200, 2.0, {}}) == doctest::Approx(2.15));
  CHECK(est_affinity_sq({5, 10, 200, 3.0, {}}) == doctest::Approx(3.1));
}

TEST_CASE("pair estimate properties") {
  std::mt19937_64 engine(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int d1 = 1 + static_cast<int>(engine() % 6);
    const int d2 = d1 + static_cast<int>(engine() % 6);
    const int n = d2 + 50 + static_cast<int>(engine() % 300);
    const double a = uni(engine) * d1;
    const double b = uni(engine) * d1;

    // Monotone in aff_sq.
    const double lo = std::min(a, b), hi = std::max(a, b);
    CHECK(est_affinity_sq({d1, d2, n, lo, {}}) <=
          est_affinity_sq({d1, d2, n, hi, {}}) + 1e-12);

    // Monotone in d2/n (increase d2 at fixed n).
    if (d2 + 1 < n)
      CHECK(est_affinity_sq({d1, d2, n, a, {}}) <=
            est_affinity_sq({d1, d2 + 1, n, a, {}}) + 1e-12);

    // Range.
    const double est = est_affinity_sq({d1, d2, n, a, {}});
    CHECK(est >= a - 1e-12);
    CHECK(est <= d1 + 1e-12);

    // d1 = 1 degenerates to the line estimate.
    const double lam_sq = uni(engine);
    CHECK(est_affinity_sq({1, d2, n, lam_sq, {}}) ==
          doctest::Approx(est_affinity_sq_line(lam_sq, d2, n))
              .epsilon(1e-15));
  }
}

TEST_CASE("distance estimate") {
  CHECK(est_distance_sq(2.5, 5, 10, 77) == doctest::Approx(2.5));
  CHECK(est_distance_sq(2.0, 5, 5, 100) == doctest::Approx(1.9));
  CHECK_THROWS_AS(est_distance_sq(1.0, 5, 10, 200), DomainError);

  // Identity composition with the affinity estimate.
  const double aff_sq = 3.0;
  const double d_sq = 7.5 - aff_sq;
  CHECK(est_distance_sq(d_sq, 5, 10, 200) ==
        doctest::Approx(7.5 - est_affinity_sq({5, 10, 200, aff_sq, {}}))
            .epsilon(1e-12));
}

TEST_CASE("line distance estimate") {
  CHECK(est_distance_sq_line(2.5, 6, 50) == doctest::Approx(2.5));
  CHECK(est_distance_sq_line(3.0, 6, 100) == doctest::Approx(2.97));
  for (double d_sq : {0.0, 0.3, 0.7, 1.0})
    CHECK(est_distance_sq_line(d_sq, 1, 25) ==
          doctest::Approx(d_sq * (1.0 - 1.0 / 25)).epsilon(1e-12));

  // Specialization of the general estimate.
  CHECK(est_distance_sq_line(2.8, 6, 120) ==
        doctest::Approx(est_distance_sq(2.8, 1, 6, 120)).epsilon(1e-15));
}

TEST_CASE("identity consistency on randomized inputs") {
  std::mt19937_64 engine(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int d1 = 1 + static_cast<int>(engine() % 5);
    const int d2 = d1 + static_cast<int>(engine() % 5);
    const int n = d2 + 60 + static_cast<int>(engine() % 200);
    const double aff_sq = uni(engine) * d1;
    const double half_sum = 0.5 * (d1 + d2);
    const double est_d = est_distance_sq(half_sum - aff_sq, d1, d2, n);
    const double est_a = est_affinity_sq({d1, d2, n, aff_sq, {}});
    CHECK(est_d == doctest::Approx(half_sum - est_a).epsilon(1e-12));
  }
}

TEST_CASE("scalar tail bounds") {
  CHECK(bound_p1(0.5, 200) == doctest::Approx(0.08));
  CHECK(bound_p3(0.1, 200) == doctest::Approx(std::exp(-1.0)));
  CHECK(bound_p2(0.1, 5, 200) == doctest::Approx(0.025));
  CHECK_THROWS_AS(bound_p1(0.0, 200), DomainError);
  CHECK_THROWS_AS(bound_p2(0.1, 0, 200), DomainError);
}

TEST_CASE("deviation events") {
  PairParams p{5, 10, 200, 2.0, {{1.0, 1.0, 0.0, 0.0, 0.0}}};

  const auto relaxed = deviation_event(p, 0.5, BoundKind::pair_relaxed);
  CHECK(relaxed.deviation_threshold == doctest::Approx(1.0));
  CHECK(relaxed.probability_bound == doctest::Approx(0.4));
  CHECK_FALSE(relaxed.vacuous);

  // Cosines in {0, 1} zero out the tight threshold.
  const auto tight = deviation_event(p, 0.5, BoundKind::pair_tight);
  CHECK(tight.deviation_threshold == doctest::Approx(0.0));
  CHECK(tight.vacuous);

  PairParams line{1, 8, 150, 0.49, {{0.7}}};
  const auto line_tight = deviation_event(line, 0.25, BoundKind::pair_tight);
  CHECK(line_tight.deviation_threshold ==
        doctest::Approx(0.49 * (1 - 0.49) * 0.25));

  PairParams no_spectrum{5, 10, 200, 2.0, {}};
  CHECK_THROWS_AS(deviation_event(no_spectrum, 0.5, BoundKind::pair_tight),
                  MissingCosines);

  const auto dist = deviation_event(no_spectrum, 0.5, BoundKind::distance);
  CHECK(dist.deviation_threshold == doctest::Approx((7.5 - 2.0) * 0.5));
  CHECK(dist.probability_bound == doctest::Approx(0.4));
}

TEST_CASE("tight threshold never exceeds the relaxed one") {
  std::mt19937_64 engine(23);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int d1 = 1 + static_cast<int>(engine() % 6);
    std::vector<double> cosines(d1);
    double aff_sq = 0;
    for (double& c : cosines) {
      c = uni(engine);
      aff_sq += c * c;
    }
    PairParams p{d1, d1 + 2, 300, aff_sq, cosines};
    const auto tight = deviation_event(p, 0.4, BoundKind::pair_tight);
    const auto relaxed = deviation_event(p, 0.4, BoundKind::pair_relaxed);
    CHECK(tight.deviation_threshold <=
          relaxed.deviation_threshold + 1e-12);
  }
}

TEST_CASE("pair RIP bound") {
  CHECK(rip_pair_bound(5, 10, 200, 0.5) ==
        doctest::Approx(1.0 - 20.0 / (0.2025 * 200)).epsilon(1e-12));
  CHECK(rip_pair_bound(5, 10, 200, 0.05) == 0.0);  // eps == d2/n: vacuous
  CHECK(rip_pair_event(5, 10, 200, 0.05).vacuous);
  CHECK(rip_pair_bound(5, 10, 2000000000, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("set RIP bound") {
  // Union bound over pairs, exactly (inside the non-vacuous regime).
  for (double eps : {0.2, 0.4, 0.7})
    for (int L : {2, 3, 5}) {
      const double pair_fail = 1.0 - rip_pair_bound(5, 5, 40000, eps);
      CHECK(rip_set_bound(5, L, 40000, eps) ==
            doctest::Approx(1.0 - L * (L - 1) / 2.0 * pair_fail)
                .epsilon(1e-12));
    }
  // Failure mass past one clamps to zero and flags vacuous.
  CHECK(rip_set_bound(5, 5, 4000, 0.2) == 0.0);
  CHECK(rip_set_event(5, 5, 4000, 0.2).vacuous);
  CHECK(rip_set_bound(5, 2, 200, 0.5) ==
        doctest::Approx(rip_pair_bound(5, 5, 200, 0.5)).epsilon(1e-15));

  const double b = rip_set_bound(5, 3, 10000, 0.1);
  CHECK(b == doctest::Approx(1.0 - 60.0 / (0.0995 * 0.0995 * 1e4))
                 .epsilon(1e-12));
  CHECK(b == doctest::Approx(0.39395).epsilon(1e-4));

  // Doubling L scales the failure mass by L(L-1).
  const double fail3 = 1.0 - rip_set_bound(4, 3, 50000, 0.3);
  const double fail6 = 1.0 - rip_set_bound(4, 6, 50000, 0.3);
  CHECK(fail6 == doctest::Approx(fail3 * (6.0 * 5.0) / (3.0 * 2.0))
                     .epsilon(1e-12));
}
