#pragma once

#include "cyclo/context.hpp"

namespace cyclo {

/// A complex number paired with a resolved branch of
/// Delta(z) = (1 - z^N)^{1/N} and its sector index
/// floor(N arg(z) / 2 pi), arg taken in [0, 2 pi).
struct BranchedValue {
  Complex value{};
  Complex delta{};
  int sector = 0;

  /// Principal-branch construction; rejects on-cut inputs.
  static BranchedValue principal(Complex v, const UnityContext& ctx);
};

/// (x; omega)_l = prod_{j=1}^{l} (1 - x omega^{j-1}); total, l >= 0.
Complex pochhammer(Complex x, long l, const UnityContext& ctx);

/// Principal branch of (1 - z^N)^{1/N}; cut where z^N lies on [1, inf).
Complex delta(Complex z, const UnityContext& ctx);

/// p(z) = prod_{j=1}^{N-1} (1 - omega^j z)^{j/N} with per-factor
/// principal logs. Cuts on the rays arg z = 2 pi m / N, |z| >= 1,
/// m = 1..N-1; regular on the positive real axis.
Complex p_func(Complex z, const UnityContext& ctx);

/// p0(z) = p(z) / Delta(z)^{(N-1)/2}, half-integer power resolved by the
/// principal log of Delta(z).
Complex p0(Complex z, const UnityContext& ctx);

/// ((z; omega))_n = (z; omega)_{n mod N} / Delta(z)^{n mod N};
/// periodic in n with period N.
Complex cyclic_pochhammer(Complex z, long n, const UnityContext& ctx);

/// floor(N arg(z) / 2 pi) with arg in [0, 2 pi); result in {0..N-1}.
int sector_index(Complex z, const UnityContext& ctx);

}  // namespace cyclo
