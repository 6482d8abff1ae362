#include "cyclo/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>
#include <string>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

void require_nonzero(const Phi1Params& p, const char* what) {
  if (p.alpha == Complex{} || p.beta == Complex{} || p.gamma == Complex{})
    throw ZeroParameterError(std::string(what) +
                             ": alpha, beta, gamma must be nonzero");
}

using LC = std::complex<long double>;

LC widen(Complex z) { return {z.real(), z.imag()}; }

LC omega_ld(int n, long e) {
  const long double two_pi = 6.283185307179586476925286766559L;
  long r = e % n;
  if (r < 0) r += n;
  const long double ang = two_pi * static_cast<long double>(r) / n;
  return {std::cos(ang), std::sin(ang)};
}

LC phi1_ld(LC a, LC b, LC g, int n) {
  LC sum{}, term{1.0L, 0.0L};
  for (int l = 0; l < n; ++l) {
    sum += term;
    if (l + 1 == n) break;
    const LC wl = omega_ld(n, l);
    const LC den = 1.0L - b * wl;
    if (std::abs(den) < 1e-14L)
      throw PoleInDenominatorError("phi1_eval: vanishing denominator factor",
                                   0, l + 1);
    term *= g * (1.0L - a * wl) / den;
  }
  return sum;
}

// gamma rounded onto the cyclic constraint surface in extended
// precision; double-rounded gamma breaks the constraint by ~1e-16,
// which the functional identities amplify near zeros of the sum.
LC project_gamma(const Phi1Params& p, const UnityContext& ctx) {
  const int n = ctx.n();
  try {
    const Complex ratio =
        p.gamma * delta(p.alpha, ctx) / delta(p.beta, ctx);
    const long k = std::lround(n * arg_unit(ratio) / kTwoPi);
    if (std::abs(ratio - ctx.omega_pow(k)) < 1e-6) {
      LC an{1.0L, 0.0L}, bn{1.0L, 0.0L};
      const LC a = widen(p.alpha), b = widen(p.beta);
      for (int i = 0; i < n; ++i) {
        an *= a;
        bn *= b;
      }
      return omega_ld(n, k) *
             std::exp((std::log(1.0L - bn) - std::log(1.0L - an)) /
                      static_cast<long double>(n));
    }
  } catch (const OnCutError&) {
  }
  return widen(p.gamma);
}

}  // namespace

Phi1Params Phi1Params::principal(Complex alpha, Complex beta,
                                 const UnityContext& ctx, int k) {
  return {alpha, beta, ctx.omega_pow(k) * delta(beta, ctx) / delta(alpha, ctx)};
}

double cyclicity_residual(const Phi1Params& p, const UnityContext& ctx) {
  const Complex ua = 1.0 - ctx.pow_n(p.alpha);
  const Complex ub = 1.0 - ctx.pow_n(p.beta);
  return std::abs(ctx.pow_n(p.gamma) * ua / ub - 1.0);
}

Complex phi1_eval(const Phi1Params& p, const UnityContext& ctx) {
  return phi_eval(HypSpec{ctx, {p.alpha}, {p.beta}, p.gamma});
}

Phi1Params mu_transform(const Phi1Params& p, const UnityContext& ctx) {
  require_nonzero(p, "mu_transform");
  const Complex w = ctx.omega();
  return {p.gamma, w * p.alpha * p.gamma / p.beta, w / p.beta};
}

Z4Report verify_z4(const Phi1Params& p, const UnityContext& ctx) {
  Z4Report rep;
  rep.orbit[0] = p;
  const Complex w = ctx.omega();
  for (int i = 1; i < 4; ++i) {
    const Phi1Params& q = rep.orbit[i - 1];
    require_nonzero(q, "verify_z4");
    rep.orbit[i] = {q.gamma, w * q.alpha * q.gamma / q.beta, w / q.beta};
  }
  // evaluate the whole orbit in extended precision from the projected
  // gamma, so the residuals measure the identities and not the rounding
  // of the input triple
  const int ni = ctx.n();
  const LC wl = omega_ld(ni, 1);
  LC a = widen(p.alpha), b = widen(p.beta), g = project_gamma(p, ctx);
  std::array<LC, 4> vals;
  for (int i = 0; i < 4; ++i) {
    vals[i] = phi1_ld(a, b, g, ni);
    const LC a2 = g, b2 = wl * a * g / b, g2 = wl / b;
    a = a2;
    b = b2;
    g = g2;
  }
  for (int i = 0; i < 4; ++i)
    rep.values[i] = {static_cast<double>(vals[i].real()),
                     static_cast<double>(vals[i].imag())};
  const long double n = static_cast<long double>(ni);
  const auto nr = [](long double x) { return static_cast<double>(x); };
  rep.residuals[0] = nr(std::abs(vals[0] * vals[1] - n) / n);
  rep.residuals[1] = nr(std::abs(vals[0] - vals[2]) /
                        std::max(std::abs(vals[0]), 1e-300L));
  rep.residuals[2] = nr(std::abs(vals[1] - vals[3]) /
                        std::max(std::abs(vals[1]), 1e-300L));
  rep.residuals[3] = nr(std::abs(vals[2] * vals[3] - n) / n);
  rep.pass = *std::max_element(rep.residuals.begin(), rep.residuals.end()) <
             ctx.config().identity_tol;
  return rep;
}

WeightTable product_form_table(const Phi1Params& p, const UnityContext& ctx) {
  WeightTable t;
  t.kind = WeightTable::Kind::W;
  t.values.resize(static_cast<size_t>(ctx.n()));
  Complex v{1.0, 0.0};
  t.values[0] = v;
  for (int n = 1; n < ctx.n(); ++n) {
    const Complex den = 1.0 - p.beta * ctx.omega_pow(n - 1);
    if (std::abs(den) < 1e-14)
      throw PoleInDenominatorError("product_form_table: (beta;omega)_n vanishes",
                                   0, n);
    v *= p.gamma * (1.0 - p.alpha * ctx.omega_pow(n - 1)) / den;
    t.values[static_cast<size_t>(n)] = v;
  }
  return t;
}

WeightTable fourier_dual(const WeightTable& w, const UnityContext& ctx) {
  const int n = ctx.n();
  if (w.values.size() != static_cast<size_t>(n))
    throw DomainError("fourier_dual: table length must equal N");
  WeightTable out;
  out.kind = WeightTable::Kind::Dual;
  out.w0 = w.w0;
  out.values.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    CompensatedComplex acc;
    for (int j = 0; j < n; ++j)
      acc.add(ctx.omega_pow(static_cast<long>(j) * k) *
              w.values[static_cast<size_t>(j)]);
    out.values[static_cast<size_t>(k)] = acc.value();
  }
  return out;
}

IdentityReport recurrence_check(const Phi1Params& p, long n,
                                const UnityContext& ctx) {
  const long r = ctx.mod_n(n);
  const Phi1Params hat = {p.gamma, ctx.omega() * p.alpha * p.gamma / p.beta,
                          ctx.omega() / p.beta};
  IdentityReport rep;
  const Phi1Params shifted = {p.alpha, p.beta, p.gamma * ctx.omega_pow(r)};
  rep.lhs = phi1_eval(shifted, ctx) / phi1_eval(p, ctx);
  const Complex den = pochhammer(hat.beta, r, ctx);
  if (std::abs(den) < 1e-14)
    throw PoleInDenominatorError("recurrence_check: (beta_hat;omega)_n vanishes",
                                 0, static_cast<int>(r));
  rep.rhs = cpow_int(hat.gamma, r) * pochhammer(hat.alpha, r, ctx) / den;
  rep.residual = rel_residual(rep.lhs, rep.rhs);
  rep.pass = rep.residual < ctx.config().identity_tol;
  return rep;
}

Phi2Params Phi2Params::from_components(const Phi1Params& c1,
                                       const Phi1Params& c2) {
  return {c1, c2, c1.gamma * c2.gamma};
}

HypSpec phi2_spec(const Phi2Params& p, const UnityContext& ctx) {
  return HypSpec{ctx,
                 {p.first.alpha, p.second.alpha},
                 {p.first.beta, p.second.beta},
                 p.z};
}

Complex phi2_eval(const Phi2Params& p, const UnityContext& ctx) {
  return phi_eval(phi2_spec(p, ctx));
}

IdentityReport convolution_3phi2(const Phi2Params& p, const UnityContext& ctx) {
  IdentityReport rep;
  rep.lhs = phi2_eval(p, ctx);
  CompensatedComplex acc;
  for (int k = 0; k < ctx.n(); ++k) {
    const Phi1Params a = {p.first.alpha, p.first.beta,
                          ctx.omega_pow(-k) * p.first.gamma};
    const Phi1Params b = {p.second.alpha, p.second.beta,
                          ctx.omega_pow(k) * p.second.gamma};
    acc.add(phi1_eval(a, ctx) * phi1_eval(b, ctx));
  }
  rep.rhs = acc.value() / static_cast<double>(ctx.n());
  rep.residual = rel_residual(rep.lhs, rep.rhs);
  rep.pass = rep.residual < ctx.config().identity_tol;
  return rep;
}

TransformResult transform_3phi2(const Phi2Params& p, const UnityContext& ctx) {
  require_nonzero(p.first, "transform_3phi2");
  require_nonzero(p.second, "transform_3phi2");
  const Complex w = ctx.omega();
  // mu on the second slot, mu^{-1} on the first, slots swapped; applying
  // the map twice is then the identity.
  const Phi1Params c1p = {p.second.gamma,
                          w * p.second.alpha * p.second.gamma / p.second.beta,
                          w / p.second.beta};
  const Phi1Params c2p = {p.first.beta / (p.first.alpha * p.first.gamma),
                          w / p.first.gamma, p.first.alpha};
  TransformResult res;
  res.params = Phi2Params::from_components(c1p, c2p);
  res.scale = phi1_eval(p.first, ctx) * phi1_eval(p.second, ctx) /
              static_cast<double>(ctx.n());
  res.report.lhs = phi2_eval(p, ctx);
  res.report.rhs = res.scale * phi2_eval(res.params, ctx);
  res.report.residual = rel_residual(res.report.lhs, res.report.rhs);
  res.report.pass = res.report.residual < ctx.config().identity_tol;
  return res;
}

TransformResult m_transform(const Phi2Params& p, const UnityContext& ctx) {
  require_nonzero(p.first, "m_transform");
  require_nonzero(p.second, "m_transform");
  const Complex w = ctx.omega();
  const Phi1Params tilde1 = {p.first.beta / (p.first.alpha * p.first.gamma),
                             w / p.first.gamma, p.first.alpha};
  const Phi1Params tilde2 = {p.second.gamma,
                             w * p.second.alpha * p.second.gamma / p.second.beta,
                             w / p.second.beta};
  TransformResult res;
  res.params = Phi2Params::from_components(tilde2, tilde1);
  res.scale = static_cast<double>(ctx.n()) /
              (phi1_eval(tilde1, ctx) * phi1_eval(tilde2, ctx));
  res.report.lhs = phi2_eval(p, ctx);
  res.report.rhs = res.scale * phi2_eval(res.params, ctx);
  res.report.residual = rel_residual(res.report.lhs, res.report.rhs);
  res.report.pass = res.report.residual < ctx.config().identity_tol;
  return res;
}

Phi2Params iota_swap(const Phi2Params& p, const UnityContext& ctx) {
  const Complex gamma3 = delta(p.first.beta, ctx) / delta(p.second.alpha, ctx);
  const Complex gamma4 = p.z / gamma3;
  Phi2Params out;
  out.first = {p.second.alpha, p.first.beta, gamma3};
  out.second = {p.first.alpha, p.second.beta, gamma4};
  out.z = p.z;
  return out;
}

namespace {

std::string orbit_key(const Phi2Params& p) {
  const auto comp_key = [](const Phi1Params& c) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "%.8f,%.8f,%.8f,%.8f,%.8f,%.8f",
                  c.alpha.real(), c.alpha.imag(), c.beta.real(),
                  c.beta.imag(), c.gamma.real(), c.gamma.imag());
    return std::string(buf);
  };
  std::string a = comp_key(p.first), b = comp_key(p.second);
  if (b < a) std::swap(a, b);
  return a + "|" + b;
}

}  // namespace

std::vector<Phi2Params> explore_orbit(const Phi2Params& p,
                                      const UnityContext& ctx,
                                      size_t max_size) {
  std::vector<Phi2Params> found;
  std::set<std::string> seen;
  std::deque<Phi2Params> queue{p};
  seen.insert(orbit_key(p));
  while (!queue.empty() && found.size() < max_size) {
    const Phi2Params cur = queue.front();
    queue.pop_front();
    found.push_back(cur);
    Phi2Params next[2] = {iota_swap(cur, ctx), {}};
    bool have_m = true;
    try {
      next[1] = m_transform(cur, ctx).params;
    } catch (const Error&) {
      have_m = false;  // pole or zero parameter along this branch
    }
    for (int i = 0; i < (have_m ? 2 : 1); ++i) {
      const std::string key = orbit_key(next[i]);
      if (seen.insert(key).second) queue.push_back(next[i]);
    }
  }
  return found;
}

}  // namespace cyclo
