#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace fpm {

/// Portable Gaussian source: std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) feeding a hand-written Box-Muller transform, so the
/// same seed produces the same bits on every conforming platform.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1] from the top 53 bits of one engine draw.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fpm
