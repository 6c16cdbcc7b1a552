#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "srp/subspace.hpp"

namespace srp {

enum class SpectrumMode {
  uniform_scaled,    // draw uniform cosines, scale to the target affinity
  explicit_spectrum  // caller supplies the cosines
};

/// Recipe for a pair of subspaces with prescribed affinity.
struct PairSpec {
  int N = 0;
  int d1 = 0;
  int d2 = 0;  // d1 <= d2, d1 + d2 <= N
  double target_affinity = 0.0;  // in [0, sqrt(d1)]
  std::uint64_t seed = 0;
  SpectrumMode mode = SpectrumMode::uniform_scaled;
  std::vector<double> spectrum;  // explicit mode only
};

struct GeneratedPair {
  Subspace x1;
  Subspace x2;
  PrincipalAngleSpectrum spectrum;  // constructed cosines, sorted
};

/// N x k frame with orthonormal columns, Haar on frames: an i.i.d.
/// Gaussian matrix orthonormalized by Gram-Schmidt, whose triangular
/// factor has positive diagonal by construction.
Eigen::MatrixXd random_orthonormal(int N, int k, std::uint64_t seed);

/// Builds a pair with affinity exactly spec.target_affinity (to 1e-9):
/// a shared orthonormal frame W of d1 + d2 columns, X2 spanned by the
/// first d2, and X1's i-th basis vector
/// lambda_i w_i + sqrt(1 - lambda_i^2) w_{d2+i}.
/// In uniform_scaled mode the cosines are uniform draws scaled to the
/// target, resampled up to 1000 times until all land in [0, 1];
/// SpectrumInfeasible after that.
GeneratedPair make_pair(const PairSpec& spec);

enum class SetMode {
  independent,  // each subspace drawn Haar, independently
  prescribed    // hub construction with prescribed hub affinities
};

/// L subspaces of dimension d in R^N, deterministic in seed.
///
/// prescribed mode takes one target per subspace: the affinity between
/// that subspace and a shared d-dimensional hub frame. Each subspace
/// mixes the hub with its own private block, so a zero target makes it
/// orthogonal to the hub and to every other subspace. Needs
/// d (L + 1) <= N; Infeasible otherwise.
std::vector<Subspace> make_set(int N, int d, int L, std::uint64_t seed,
                               SetMode mode,
                               const std::vector<double>& hub_affinities = {});

}  // namespace srp
