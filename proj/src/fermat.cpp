#include "cyclo/fermat.hpp"

#include <cmath>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

// Signed distance of arg(v) from the window center 2 pi c / N, in units
// of the window half-width 2 pi / N.
double window_offset(Complex v, long c, const UnityContext& ctx) {
  return std::remainder(std::arg(v) - kTwoPi * c / ctx.n(), kTwoPi) * ctx.n() /
         kTwoPi;
}

}  // namespace

void validate_fermat(const FermatPoint& p, const UnityContext& ctx) {
  if (p.z == Complex{})
    throw DomainError("validate_fermat: z must be nonzero");
  const Complex xn = ctx.pow_n(p.x), yn = ctx.pow_n(p.y), zn = ctx.pow_n(p.z);
  const double scale =
      std::max({std::abs(xn), std::abs(yn), std::abs(zn), 1e-300});
  if (std::abs(xn + yn - zn) / scale > ctx.config().identity_tol)
    throw OffCurveError("validate_fermat: x^N + y^N != z^N");

  const double margin = ctx.config().boundary_margin;
  // arg(y/z) must sit strictly inside (-pi/N, pi/N) shifted by 2 pi l / N.
  const double uy = window_offset(p.y / p.z, p.l, ctx);
  if (std::abs(uy) > 0.5 - margin) {
    if (std::abs(uy) < 0.5 + margin)
      throw SectorBoundaryError("validate_fermat: y/z on a sector boundary");
    throw SectorViolationError("validate_fermat: arg(y/z) outside window l");
  }
  // arg(x/z) must sit strictly inside (0, 2 pi / N).
  const double ux = window_offset(p.x / p.z, 0, ctx);
  if (ux < margin || ux > 1.0 - margin) {
    if (std::abs(ux) < margin || std::abs(ux - 1.0) < margin ||
        std::abs(ux + 1.0) < margin)
      throw SectorBoundaryError("validate_fermat: x/z on a sector boundary");
    throw SectorViolationError("validate_fermat: arg(x/z) outside (0, 2pi/N)");
  }
}

BranchedValue fermat_to_affine(const FermatPoint& p, const UnityContext& ctx) {
  validate_fermat(p, ctx);
  BranchedValue b;
  b.value = ctx.omega_pow(p.m + 1) * p.x / p.z;
  b.delta = ctx.omega_pow(-p.l) * p.y / p.z;
  b.sector = sector_index(b.value, ctx);
  return b;
}

FermatPoint affine_to_fermat(const BranchedValue& b, const UnityContext& ctx) {
  if (b.value == Complex{} || b.delta == Complex{})
    throw DomainError("affine_to_fermat: value and delta must be nonzero");
  FermatPoint p;
  p.z = Complex{1.0, 0.0};
  p.y = b.delta;
  const double u = std::arg(b.delta) * ctx.n() / kTwoPi;
  const long l = std::lround(u);
  if (std::abs(u - l) > 0.5 - ctx.config().boundary_margin)
    throw SectorBoundaryError("affine_to_fermat: delta on a sector boundary");
  p.l = static_cast<int>(ctx.mod_n(l));
  const int s = sector_index(b.value, ctx);
  p.m = static_cast<int>(ctx.mod_n(s - 1));
  p.x = ctx.omega_pow(-(p.m + 1)) * b.value;
  validate_fermat(p, ctx);
  return p;
}

WkmsValue w_kms(const FermatPoint& p, long l, const UnityContext& ctx) {
  if (l < 0) throw DomainError("w_kms: l must be >= 0");
  validate_fermat(p, ctx);
  WkmsValue v;
  Complex prod{1.0, 0.0};
  for (long s = 1; s <= l; ++s) {
    const Complex den = p.z - p.x * ctx.omega_pow(s);
    if (std::abs(den) < 1e-14)
      throw PoleInDenominatorError("w_kms: z - x omega^s vanishes", 0,
                                   static_cast<int>(s));
    prod *= p.y / den;
  }
  v.product = prod;
  const Complex poch = pochhammer(ctx.omega() * p.x / p.z, l, ctx);
  if (std::abs(poch) < 1e-14)
    throw PoleInDenominatorError("w_kms: (omega x/z; omega)_l vanishes", 0,
                                 static_cast<int>(l));
  v.pochhammer_form = cpow_int(p.y / p.z, l) / poch;
  v.residual = rel_residual(v.product, v.pochhammer_form);
  return v;
}

Complex w_sms(const FermatPoint& p, long shift, const UnityContext& ctx) {
  const BranchedValue b = fermat_to_affine(p, ctx);
  return 1.0 / p0(ctx.omega_pow(shift) * b.value, ctx);
}

Complex w_sms_period_product(const FermatPoint& p, const UnityContext& ctx) {
  Complex prod{1.0, 0.0};
  for (int s = 0; s < ctx.n(); ++s) prod *= w_sms(p, s, ctx);
  return prod;
}

PsiTranslation translate_psi(const std::vector<FermatPoint>& numerator,
                             const std::vector<FermatPoint>& denominator,
                             long n, const UnityContext& ctx) {
  if (numerator.size() != denominator.size() || numerator.empty())
    throw DomainError(
        "translate_psi: need equal, nonempty numerator and denominator lists");
  PsiTranslation out{HypSpec{ctx, {}, {}, {}}, {}};
  Complex pref{1.0, 0.0};
  Complex z = ctx.omega_pow(n);
  for (const FermatPoint& q : denominator) {
    const Complex a = fermat_to_affine(q, ctx).value;
    out.spec.alphas.push_back(a);
    pref *= p0(a, ctx);
    z /= delta(a, ctx);
  }
  for (const FermatPoint& q : numerator) {
    const Complex b = fermat_to_affine(q, ctx).value;
    out.spec.betas.push_back(b);
    pref /= p0(b, ctx);
    z *= delta(b, ctx);
  }
  out.spec.z = z;
  out.prefactor = pref / std::sqrt(static_cast<double>(ctx.n()));
  return out;
}

Complex psi_direct(const std::vector<FermatPoint>& numerator,
                   const std::vector<FermatPoint>& denominator, long n,
                   const UnityContext& ctx) {
  if (numerator.size() != denominator.size() || numerator.empty())
    throw DomainError(
        "psi_direct: need equal, nonempty numerator and denominator lists");
  CompensatedComplex acc;
  for (int l = 0; l < ctx.n(); ++l) {
    Complex term = ctx.omega_pow(static_cast<long>(l) * n);
    for (const FermatPoint& q : numerator) term *= w_sms(q, l, ctx);
    for (const FermatPoint& q : denominator) term /= w_sms(q, l, ctx);
    acc.add(term);
  }
  return acc.value() / std::sqrt(static_cast<double>(ctx.n()));
}

}  // namespace cyclo
