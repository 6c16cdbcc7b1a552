#include "srp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "srp/detail/mgs.hpp"
#include "srp/errors.hpp"
#include "srp/rng.hpp"

namespace srp {

namespace {

constexpr int kMaxSpectrumRetries = 1000;

std::vector<double> scaled_spectrum(double target, int d1,
                                    GaussianSampler& sampler) {
  std::vector<double> lambdas(d1);
  for (int attempt = 0; attempt < kMaxSpectrumRetries; ++attempt) {
    double norm_sq = 0;
    for (double& l : lambdas) {
      l = sampler.uniform();
      norm_sq += l * l;
    }
    if (norm_sq == 0) continue;
    const double scale = target / std::sqrt(norm_sq);
    bool ok = true;
    for (double& l : lambdas) {
      l *= scale;
      if (l > 1.0) ok = false;
    }
    if (ok) return lambdas;
  }
  throw SpectrumInfeasible("could not scale a uniform spectrum to affinity " +
                           std::to_string(target) + " in " +
                           std::to_string(kMaxSpectrumRetries) + " draws");
}

}  // namespace

Eigen::MatrixXd random_orthonormal(int N, int k, std::uint64_t seed) {
  if (k < 1 || k > N) throw DomainError("need 1 <= k <= N");
  GaussianSampler sampler(seed);
  Eigen::MatrixXd g(N, k);
  sampler.fill(g);
  if (!detail::mgs_inplace(g, 1e-12))
    throw RankDeficient("degenerate Gaussian draw");  // probability zero
  return g;
}

GeneratedPair make_pair(const PairSpec& spec) {
  if (spec.d1 < 1 || spec.d1 > spec.d2)
    throw DomainError("need 1 <= d1 <= d2");
  if (spec.d1 + spec.d2 > spec.N)
    throw DomainError("need d1 + d2 <= N");
  if (spec.target_affinity < 0 ||
      spec.target_affinity * spec.target_affinity > spec.d1 + 1e-9)
    throw DomainError("target affinity outside [0, sqrt(d1)]");

  GaussianSampler sampler(derive_seed(spec.seed, kGeometryStream));

  std::vector<double> lambdas;
  if (spec.mode == SpectrumMode::explicit_spectrum) {
    if (static_cast<int>(spec.spectrum.size()) != spec.d1)
      throw DomainError("explicit spectrum must have d1 entries");
    double s = 0;
    for (double l : spec.spectrum) {
      if (l < 0 || l > 1) throw DomainError("cosines must lie in [0, 1]");
      s += l * l;
    }
    if (std::abs(s - spec.target_affinity * spec.target_affinity) > 1e-9)
      throw DomainError("explicit spectrum does not match target affinity");
    lambdas = spec.spectrum;
  } else if (std::abs(spec.target_affinity * spec.target_affinity -
                      spec.d1) <= 1e-12) {
    // The maximal affinity admits exactly one spectrum; resampling a
    // uniform draw can only approach it.
    lambdas.assign(spec.d1, 1.0);
  } else {
    lambdas = scaled_spectrum(spec.target_affinity, spec.d1, sampler);
  }

  const Eigen::MatrixXd w =
      random_orthonormal(spec.N, spec.d1 + spec.d2, spec.seed);

  Eigen::MatrixXd u1(spec.N, spec.d1);
  for (int i = 0; i < spec.d1; ++i) {
    const double l = lambdas[i];
    u1.col(i) =
        l * w.col(i) + std::sqrt(1.0 - l * l) * w.col(spec.d2 + i);
  }

  GeneratedPair out{Subspace::from_orthonormal(std::move(u1)),
                    Subspace::from_orthonormal(w.leftCols(spec.d2)),
                    PrincipalAngleSpectrum{}};
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  out.spectrum.cosines = std::move(lambdas);
  return out;
}

std::vector<Subspace> make_set(int N, int d, int L, std::uint64_t seed,
                               SetMode mode,
                               const std::vector<double>& hub_affinities) {
  if (d < 1 || L < 1) throw DomainError("need d >= 1, L >= 1");

  std::vector<Subspace> out;
  out.reserve(L);

  if (mode == SetMode::independent) {
    if (d > N) throw DomainError("need d <= N");
    for (int k = 0; k < L; ++k)
      out.push_back(Subspace::from_orthonormal(
          random_orthonormal(N, d, derive_seed(seed, k))));
    return out;
  }

  if (d * (L + 1) > N)
    throw Infeasible("hub construction needs d (L + 1) <= N");
  if (static_cast<int>(hub_affinities.size()) != L)
    throw DomainError("prescribed mode needs one hub affinity per subspace");
  for (double t : hub_affinities)
    if (t < 0 || t * t > d + 1e-9)
      throw DomainError("hub affinity outside [0, sqrt(d)]");

  // One frame holds the hub (first d columns) and L private blocks.
  const Eigen::MatrixXd w = random_orthonormal(N, d * (L + 1), seed);
  GaussianSampler sampler(derive_seed(seed, kGeometryStream));
  for (int k = 0; k < L; ++k) {
    const auto lambdas = scaled_spectrum(hub_affinities[k], d, sampler);
    Eigen::MatrixXd uk(N, d);
    for (int i = 0; i < d; ++i) {
      const double l = lambdas[i];
      uk.col(i) = l * w.col(i) +
                  std::sqrt(1.0 - l * l) * w.col(d * (k + 1) + i);
    }
    out.push_back(Subspace::from_orthonormal(std::move(uk)));
  }
  return out;
}

}  // namespace srp
