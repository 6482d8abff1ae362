#pragma once

#include <cstdint>
#include <random>

#include "cyclo/numeric.hpp"

namespace cyclo {

/// Deterministic sample source for verification sweeps. The mapping from
/// engine words to doubles is spelled out here so a given seed produces
/// the same sequence on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(static_cast<double>(hi - lo + 1) * uniform01());
  }

  /// Uniform in log-magnitude over [rmin, rmax], uniform in angle.
  Complex annulus(double rmin, double rmax) {
    const double r = rmin * std::exp(uniform01() * std::log(rmax / rmin));
    return std::polar(r, uniform01() * kTwoPi);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cyclo
