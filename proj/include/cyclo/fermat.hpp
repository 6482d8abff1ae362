#pragma once

#include <vector>

#include "cyclo/branched.hpp"
#include "cyclo/hyp.hpp"

namespace cyclo {

/// Homogeneous point on x^N + y^N = z^N with the sector labels (l, m)
/// that absorb the branch bookkeeping of the homogeneous notation:
///   -pi/N + 2 pi l/N < arg(y/z) < pi/N + 2 pi l/N,  0 < arg(x/z) < 2 pi/N.
struct FermatPoint {
  Complex x{}, y{}, z{1.0, 0.0};
  int l = 0, m = 0;
};

/// Validate the Fermat relation and the sector constraints.
void validate_fermat(const FermatPoint& p, const UnityContext& ctx);

/// alpha = w^{m+1} x/z with Delta(alpha) = w^{-l} y/z.
BranchedValue fermat_to_affine(const FermatPoint& p, const UnityContext& ctx);

/// Canonical inverse: z = 1, l = 0, y the principal Delta, m from the
/// sector of the affine value.
FermatPoint affine_to_fermat(const BranchedValue& b, const UnityContext& ctx);

/// w(x,y,z|l) = prod_{s=1}^{l} y/(z - x w^s) = (y/z)^l / (w x/z; w)_l.
/// Both forms are evaluated and must agree.
struct WkmsValue {
  Complex product{};
  Complex pochhammer_form{};
  double residual = 0.0;
};
WkmsValue w_kms(const FermatPoint& p, long l, const UnityContext& ctx);

/// w(p|m+shift) = 1/p0(w^shift alpha), alpha the affine image of p.
Complex w_sms(const FermatPoint& p, long shift, const UnityContext& ctx);

/// prod_{shift=0}^{N-1} w_sms(p, shift); modulus 1, and exactly 1 for
/// |alpha| < 1.
Complex w_sms_period_product(const FermatPoint& p, const UnityContext& ctx);

/// The translated hypergeometric data of a ratio of w_sms factors:
/// numerator points feed the betas, denominator points the alphas,
///   C = N^{-1/2} prod p0(alpha_j) / prod p0(beta_j),
///   z = w^n prod Delta(beta_j) / prod Delta(alpha_j).
struct PsiTranslation {
  HypSpec spec;
  Complex prefactor{};
};

PsiTranslation translate_psi(const std::vector<FermatPoint>& numerator,
                             const std::vector<FermatPoint>& denominator,
                             long n, const UnityContext& ctx);

/// Direct evaluation of the same object from w_sms building blocks:
/// N^{-1/2} sum_l w^{n l} prod_j w_sms(num_j, l) / w_sms(den_j, l).
Complex psi_direct(const std::vector<FermatPoint>& numerator,
                   const std::vector<FermatPoint>& denominator, long n,
                   const UnityContext& ctx);

}  // namespace cyclo
