#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace srp {

/// Output mix of splitmix64 (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Child seed for a numbered stream of a master seed.
///
/// Every parallel unit of work (one Monte Carlo trial, one sweep cell)
/// gets its own generator seeded with derive_seed(master, index), so
/// results do not depend on scheduling or worker count. The rule is
/// fixed: mix64(master ^ (0x9E3779B97F4A7C15 * (index + 1))).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

// Reserved stream indices, kept far away from trial indices.
inline constexpr std::uint64_t kGeometryStream = 0xFFFF000000000001ULL;
inline constexpr std::uint64_t kCellStream = 0xFFFF000000000002ULL;

/// Deterministic N(0,1) source: mt19937_64 + Box-Muller.
///
/// std::normal_distribution is implementation-defined, so reproducible
/// experiments need a pinned transform. This one is:
///   u1 = ((x >> 11) + 1) * 2^-53   in (0, 1]
///   u2 = ((y >> 11)    ) * 2^-53   in [0, 1)
///   r  = sqrt(-2 ln u1)
///   z0 = r cos(2 pi u2),  z1 = r sin(2 pi u2)
/// where x, y are consecutive engine outputs. next() returns z0 then z1;
/// fill() starts from a fresh pair and drops a trailing z1 if the count
/// is odd, so its output is a function of the engine state and the count
/// alone.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double z0;
    generate_pair(z0, spare_);
    has_spare_ = true;
    return z0;
  }

  /// Fills `out` in row-major order with independent N(0, sigma^2) draws.
  template <class Derived>
  void fill(Eigen::MatrixBase<Derived>& out, double sigma = 1.0) {
    has_spare_ = false;
    auto& m = out.derived();
    const Eigen::Index cols = m.cols();
    const Eigen::Index total = m.rows() * cols;
    Eigen::Index k = 0;
    double z0 = 0, z1 = 0;
    while (k < total) {
      generate_pair(z0, z1);
      m(k / cols, k % cols) = sigma * z0;
      ++k;
      if (k < total) {
        m(k / cols, k % cols) = sigma * z1;
        ++k;
      }
    }
  }

  /// Uniform draw in [0, 1).
  double uniform() {
    has_spare_ = false;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  void generate_pair(double& z0, double& z1) {
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    z0 = r * std::cos(a);
    z1 = r * std::sin(a);
  }

  static constexpr double kPi = 3.14159265358979323846264338327950288;

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace srp
