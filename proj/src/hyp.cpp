#include "cyclo/hyp.hpp"

#include <cmath>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

void check_shape(const HypSpec& spec) {
  if (spec.alphas.size() != spec.betas.size())
    throw DomainError("HypSpec: alpha and beta lists must have equal length");
  if (spec.alphas.empty())
    throw DomainError("HypSpec: parameter lists must be non-empty");
}

}  // namespace

// The sum cancels deeply for some parameter sets (|Phi| can be orders of
// magnitude below the term size), so the terms and the accumulation are
// carried in extended precision.
Complex phi_eval(const HypSpec& spec) {
  check_shape(spec);
  using LComplex = std::complex<long double>;
  const UnityContext& ctx = spec.ctx;
  const int n = ctx.n();
  const long double two_pi = 6.283185307179586476925286766559L;
  LComplex sum{};
  LComplex term{1.0L, 0.0L};
  const LComplex z{spec.z.real(), spec.z.imag()};
  for (int l = 0; l < n; ++l) {
    sum += term;
    if (l + 1 == n) break;
    const long double ang = two_pi * l / n;
    const LComplex wl{std::cos(ang), std::sin(ang)};
    term *= z;
    for (size_t j = 0; j < spec.alphas.size(); ++j) {
      const LComplex beta{spec.betas[j].real(), spec.betas[j].imag()};
      const LComplex den = 1.0L - beta * wl;
      if (std::abs(den) < 1e-14L)
        throw PoleInDenominatorError(
            "phi_eval: (beta_j; omega)_l has a vanishing factor",
            static_cast<int>(j), l + 1);
      const LComplex alpha{spec.alphas[j].real(), spec.alphas[j].imag()};
      term *= (1.0L - alpha * wl) / den;
    }
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

PredicateResult is_cyclic(const HypSpec& spec) {
  check_shape(spec);
  const UnityContext& ctx = spec.ctx;
  const double tol = ctx.config().identity_tol;
  Complex ratio = ctx.pow_n(spec.z);
  for (size_t j = 0; j < spec.alphas.size(); ++j) {
    const Complex ua = 1.0 - ctx.pow_n(spec.alphas[j]);
    if (std::abs(ua) <= tol)
      throw DegenerateAlphaError("is_cyclic: alpha_j^N = 1 within tolerance");
    ratio *= ua / (1.0 - ctx.pow_n(spec.betas[j]));
  }
  PredicateResult r;
  r.residual = std::abs(ratio - 1.0);
  r.ok = r.residual < tol;
  return r;
}

PredicateResult is_saalschutz(const HypSpec& spec) {
  check_shape(spec);
  const UnityContext& ctx = spec.ctx;
  Complex pa{1.0, 0.0}, pb{1.0, 0.0};
  for (size_t j = 0; j < spec.alphas.size(); ++j) {
    pa *= spec.alphas[j];
    pb *= spec.betas[j];
  }
  const double balance = std::abs(ctx.omega_pow(2) * pa - pb);
  const double at_omega = std::abs(spec.z - ctx.omega());
  PredicateResult r;
  r.residual = std::max(balance, at_omega);
  r.ok = r.residual < ctx.config().identity_tol;
  return r;
}

}  // namespace cyclo
