#pragma once

#include <vector>

#include "cyclo/errors.hpp"
#include "cyclo/numeric.hpp"

namespace cyclo {

/// The integer N and the primitive root omega = exp(2 pi i / N).
/// Ambient parameter of every computation in this library.
class UnityContext {
 public:
  explicit UnityContext(int n, NumericConfig cfg = NumericConfig{})
      : n_(n), cfg_(cfg) {
    if (n < 2) throw DomainError("UnityContext requires N >= 2");
    powers_.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      powers_.push_back(std::polar(1.0, kTwoPi * k / n));
  }

  int n() const { return n_; }
  Complex omega() const { return powers_[1]; }

  /// omega^k for any integer k (reduced mod N).
  Complex omega_pow(long k) const {
    long r = k % n_;
    if (r < 0) r += n_;
    return powers_[static_cast<size_t>(r)];
  }

  long mod_n(long k) const {
    long r = k % n_;
    if (r < 0) r += n_;
    return r;
  }

  /// z^N.
  Complex pow_n(Complex z) const { return cpow_int(z, n_); }

  const NumericConfig& config() const { return cfg_; }

 private:
  int n_;
  NumericConfig cfg_;
  std::vector<Complex> powers_;
};

}  // namespace cyclo
