#pragma once

#include <cmath>
#include <complex>

namespace cyclo {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerances shared by every kernel. All identity checks and cut
/// rejections read from here so an extended-precision build can tighten
/// them in one place.
struct NumericConfig {
  double on_cut_tol = 1e-12;     // absolute distance from a branch cut
  double identity_tol = 1e-10;   // relative residual for identity checks
  double exact_tol = 1e-12;      // residual for algebraically exact relations
  double boundary_margin = 1e-9; // region-boundary rejection distance
};

inline const NumericConfig& default_config() {
  static const NumericConfig cfg{};
  return cfg;
}

/// Integer power by squaring; more predictable than std::pow for the
/// exact N-th powers used throughout.
inline Complex cpow_int(Complex z, long e) {
  if (e < 0) return 1.0 / cpow_int(z, -e);
  Complex acc{1.0, 0.0};
  while (e > 0) {
    if (e & 1) acc *= z;
    z *= z;
    e >>= 1;
  }
  return acc;
}

/// arg(z) normalized to [0, 2pi).
inline double arg_unit(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

/// Principal log(1 - w) without the cancellation of forming 1 - w first;
/// exact relative accuracy matters when w^N sits close to 1 or to 0.
inline Complex log_one_minus(Complex w) {
  return {0.5 * std::log1p(-2.0 * w.real() + std::norm(w)),
          std::atan2(-w.imag(), 1.0 - w.real())};
}

/// Distance from w to the half-line (-inf, 0] on the real axis.
inline double dist_to_negative_axis(Complex w) {
  if (w.real() <= 0.0) return std::abs(w.imag());
  return std::abs(w);
}

/// Neumaier-compensated accumulator for complex terms; the real and
/// imaginary channels are compensated independently.
class CompensatedComplex {
 public:
  void add(Complex term) {
    add_channel(re_, cre_, term.real());
    add_channel(im_, cim_, term.imag());
  }

  Complex value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_channel(double& acc, double& carry, double elem) {
    const double tmp = acc + elem;
    if (std::abs(acc) >= std::abs(elem))
      carry += (acc - tmp) + elem;
    else
      carry += (elem - tmp) + acc;
    acc = tmp;
  }

  double re_ = 0.0, im_ = 0.0;
  double cre_ = 0.0, cim_ = 0.0;
};

inline double rel_residual(Complex got, Complex want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace cyclo
