#include "cyclo/chiral_potts.hpp"

#include <cmath>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

double residual(Complex got, Complex want) {
  return std::abs(got - want) / std::max({std::abs(want), std::abs(got), 1.0});
}

}  // namespace

Moduli::Moduli(Complex k, Complex kprime, const UnityContext& ctx)
    : k(k), kprime(kprime) {
  if (k == Complex{} || kprime == Complex{})
    throw DomainError("Moduli: k and k' must be nonzero");
  if (std::abs(k * k + kprime * kprime - 1.0) > 1e-10)
    throw DomainError("Moduli: k^2 + k'^2 = 1 violated");
  (void)ctx;
}

Moduli Moduli::from_kprime(double kprime, const UnityContext& ctx) {
  if (!(kprime > 0.0 && kprime < 1.0))
    throw DomainError("Moduli: k' must lie in (0, 1)");
  return Moduli(std::sqrt(1.0 - kprime * kprime), kprime, ctx);
}

double curve_residual(const RapidityPoint& p, const UnityContext& ctx) {
  const Complex k = p.moduli.k, kp = p.moduli.kprime;
  double r = residual(ctx.pow_n(p.y) * k, 1.0 - kp * p.lambda);
  r = std::max(r, residual(ctx.pow_n(p.x) * k, 1.0 - kp / p.lambda));
  r = std::max(r, residual(ctx.pow_n(p.mu), p.lambda));
  r = std::max(r, residual(kp * (p.lambda + 1.0 / p.lambda),
                           1.0 + kp * kp - k * k * ctx.pow_n(p.t)));
  r = std::max(r, residual(p.x * p.y, p.t));
  return r;
}

RapidityPoint solve_rapidity(const Moduli& moduli, Complex t,
                             LambdaBranch branch, const UnityContext& ctx,
                             int mu_index, int x_index) {
  if (moduli.k == Complex{} || moduli.kprime == Complex{})
    throw DomainError("solve_rapidity: k, k' must be nonzero");

  // The whole solve runs in extended precision: the star / triangle sum
  // downstream is sensitive enough that double-rounded curve points
  // dominate its spin spread otherwise.
  using LC = std::complex<long double>;
  const auto widen = [](Complex z) { return LC{z.real(), z.imag()}; };
  const auto narrow = [](LC z) {
    return Complex{static_cast<double>(z.real()),
                   static_cast<double>(z.imag())};
  };
  const int n = ctx.n();
  const auto root_n = [&](LC w) {
    if (w == LC{}) return LC{};
    return std::exp(std::log(w) / static_cast<long double>(n));
  };
  const long double two_pi = 6.283185307179586476925286766559L;
  const auto omega_l = [&](long e) {
    const long double ang = two_pi * static_cast<long double>(ctx.mod_n(e)) / n;
    return LC{std::cos(ang), std::sin(ang)};
  };
  const LC k = widen(moduli.k), kp = widen(moduli.kprime);
  LC tn{1.0L, 0.0L};
  const LC tl = widen(t);
  for (int i = 0; i < n; ++i) tn *= tl;

  // lambda^2 - r lambda + 1 = 0; the roots are reciprocal, so compute the
  // large one stably and divide.
  const LC r = (1.0L + kp * kp - k * k * tn) / kp;
  const LC sq = std::sqrt(r * r - 4.0L);
  const LC big = (std::abs(r + sq) >= std::abs(r - sq)) ? 0.5L * (r + sq)
                                                        : 0.5L * (r - sq);
  if (std::abs(std::abs(big) - 1.0L) < 1e-9L)
    throw BranchPointError("solve_rapidity: |lambda| = 1 branch point");
  const LC lambda = (branch == LambdaBranch::Outside) ? big : 1.0L / big;

  RapidityPoint p;
  p.moduli = moduli;
  p.branch = branch;
  p.lambda = narrow(lambda);
  p.t = t;

  const LC y0 = root_n((1.0L - kp * lambda) / k);
  const LC x0 = root_n((1.0L - kp / lambda) / k);
  p.x_index = static_cast<int>(ctx.mod_n(x_index));
  if (std::abs(x0 * y0) < 1e-300L || std::abs(tl) < 1e-300L) {
    if (std::abs(tl) > 1e-12L * (1.0L + std::abs(x0 * y0)))
      throw InconsistentRootsError("solve_rapidity: x y = 0 but t != 0");
    p.y_index = 0;
  } else {
    // x0 y0 = t * omega^c exactly on the curve; split c between x and y.
    const long c =
        std::lround(static_cast<double>(std::arg(x0 * y0 / tl)) * n / kTwoPi);
    p.y_index = static_cast<int>(ctx.mod_n(-c - p.x_index));
  }
  const LC x = x0 * omega_l(p.x_index);
  const LC y = y0 * omega_l(p.y_index);
  p.x = narrow(x);
  p.y = narrow(y);
  if (std::abs(tl) >= 1e-300L &&
      std::abs(x * y - tl) > 1e-8L * std::max(1.0L, std::abs(tl)))
    throw InconsistentRootsError(
        "solve_rapidity: no omega-power combination gives x y = t");
  p.mu_index = static_cast<int>(ctx.mod_n(mu_index));
  p.mu = narrow(root_n(lambda) * omega_l(p.mu_index));
  return p;
}

Complex weight_W(const RapidityPoint& p, const RapidityPoint& q, long n,
                 const UnityContext& ctx) {
  if (n < 0) throw DomainError("weight_W: n must be >= 0");
  Complex acc = cpow_int(p.mu / q.mu, n);
  for (long j = 1; j <= n; ++j) {
    const Complex den = p.y - q.x * ctx.omega_pow(j);
    if (std::abs(den) < 1e-14)
      throw PoleInDenominatorError("weight_W: vanishing denominator", 0,
                                   static_cast<int>(j));
    acc *= (q.y - p.x * ctx.omega_pow(j)) / den;
  }
  return acc;
}

Complex weight_Wbar(const RapidityPoint& p, const RapidityPoint& q, long n,
                    const UnityContext& ctx) {
  if (n < 0) throw DomainError("weight_Wbar: n must be >= 0");
  Complex acc = cpow_int(p.mu * q.mu, n);
  for (long j = 1; j <= n; ++j) {
    const Complex den = q.y - p.y * ctx.omega_pow(j);
    if (std::abs(den) < 1e-14)
      throw PoleInDenominatorError("weight_Wbar: vanishing denominator", 0,
                                   static_cast<int>(j));
    acc *= (ctx.omega() * p.x - q.x * ctx.omega_pow(j)) / den;
  }
  return acc;
}

WeightTable weight_table(const RapidityPoint& p, const RapidityPoint& q,
                         WeightKind kind, const UnityContext& ctx) {
  WeightTable t;
  t.kind = (kind == WeightKind::W) ? WeightTable::Kind::W
                                   : WeightTable::Kind::Wbar;
  t.values.reserve(static_cast<size_t>(ctx.n()));
  for (int n = 0; n < ctx.n(); ++n)
    t.values.push_back(kind == WeightKind::W ? weight_W(p, q, n, ctx)
                                             : weight_Wbar(p, q, n, ctx));
  return t;
}

Phi1Params weights_to_hyp(const RapidityPoint& p, const RapidityPoint& q,
                          WeightKind kind, const UnityContext& ctx) {
  const Complex w = ctx.omega();
  Phi1Params params;
  if (kind == WeightKind::W) {
    params = {w * p.x / q.y, w * q.x / p.y, p.mu * q.y / (q.mu * p.y)};
  } else {
    params = {q.x / p.x, w * p.y / q.y, p.mu * q.mu * w * p.x / q.y};
  }
  // The mapping is derived by matching the weight ratio
  // W(n)/W(n-1) = gamma (1 - alpha w^{n-1})/(1 - beta w^{n-1}) term by
  // term; validate it at every n before handing it out.
  Complex prod{1.0, 0.0};
  for (int n = 0; n <= ctx.n(); ++n) {
    const Complex direct = (kind == WeightKind::W)
                               ? weight_W(p, q, n, ctx)
                               : weight_Wbar(p, q, n, ctx);
    if (rel_residual(prod, direct) > ctx.config().identity_tol)
      throw DerivationMismatchError(
          "weights_to_hyp: product form fails to reproduce the weights");
    if (n < ctx.n())
      prod *= params.gamma * (1.0 - params.alpha * ctx.omega_pow(n)) /
              (1.0 - params.beta * ctx.omega_pow(n));
  }
  if (cyclicity_residual(params, ctx) > ctx.config().identity_tol)
    throw DerivationMismatchError(
        "weights_to_hyp: fitted gamma violates cyclicity");
  return params;
}

namespace {

using LComplex = std::complex<long double>;

LComplex widen(Complex z) { return {z.real(), z.imag()}; }

LComplex omega_ld(int n, long e) {
  const long double two_pi = 6.283185307179586476925286766559L;
  long r = e % n;
  if (r < 0) r += n;
  const long double ang = two_pi * static_cast<long double>(r) / n;
  return {std::cos(ang), std::sin(ang)};
}

// Curve point carried entirely in extended precision; the star sum
// cancels enough that double-rounded x, y, mu dominate its spin spread.
struct LdPoint {
  LComplex x, y, mu;
};

// Recompute (x, y, mu) from the defining data of a solved point; the
// stored doubles are only its shadow.
LdPoint resolve_ld(const RapidityPoint& p, const UnityContext& ctx) {
  const int n = ctx.n();
  const auto root_n = [&](LComplex w) {
    if (w == LComplex{}) return LComplex{};
    return std::exp(std::log(w) / static_cast<long double>(n));
  };
  const LComplex k = widen(p.moduli.k), kp = widen(p.moduli.kprime);
  LComplex tn{1.0L, 0.0L};
  const LComplex tl = widen(p.t);
  for (int i = 0; i < n; ++i) tn *= tl;
  const LComplex r = (1.0L + kp * kp - k * k * tn) / kp;
  const LComplex sq = std::sqrt(r * r - 4.0L);
  const LComplex big = (std::abs(r + sq) >= std::abs(r - sq))
                           ? 0.5L * (r + sq)
                           : 0.5L * (r - sq);
  const LComplex lambda =
      (p.branch == LambdaBranch::Outside) ? big : 1.0L / big;
  LdPoint out;
  out.y = root_n((1.0L - kp * lambda) / k) * omega_ld(n, p.y_index);
  out.x = root_n((1.0L - kp / lambda) / k) * omega_ld(n, p.x_index);
  out.mu = root_n(lambda) * omega_ld(n, p.mu_index);
  return out;
}

LComplex weight_W_l(const LdPoint& p, const LdPoint& q, long n,
                    const UnityContext& ctx) {
  const int nn = ctx.n();
  LComplex acc{1.0L, 0.0L};
  const LComplex ratio = p.mu / q.mu;
  for (long i = 0; i < n; ++i) acc *= ratio;
  for (long j = 1; j <= n; ++j) {
    const LComplex den = p.y - q.x * omega_ld(nn, j);
    if (std::abs(den) < 1e-14L)
      throw PoleInDenominatorError("weight_W: vanishing denominator", 0,
                                   static_cast<int>(j));
    acc *= (q.y - p.x * omega_ld(nn, j)) / den;
  }
  return acc;
}

LComplex weight_Wbar_l(const LdPoint& p, const LdPoint& q, long n,
                       const UnityContext& ctx) {
  const int nn = ctx.n();
  LComplex acc{1.0L, 0.0L};
  const LComplex ratio = p.mu * q.mu;
  for (long i = 0; i < n; ++i) acc *= ratio;
  for (long j = 1; j <= n; ++j) {
    const LComplex den = q.y - p.y * omega_ld(nn, j);
    if (std::abs(den) < 1e-14L)
      throw PoleInDenominatorError("weight_Wbar: vanishing denominator", 0,
                                   static_cast<int>(j));
    acc *= (omega_ld(nn, 1) * p.x - q.x * omega_ld(nn, j)) / den;
  }
  return acc;
}

LComplex ratio_ld(const LdPoint& p, const LdPoint& q, const LdPoint& r,
                  int a, int b, int c, const UnityContext& ctx) {
  const auto red = [&](long v) { return ctx.mod_n(v); };
  LComplex lhs{};
  for (int d = 0; d < ctx.n(); ++d)
    lhs += weight_Wbar_l(q, r, red(b - d), ctx) *
           weight_W_l(p, r, red(a - d), ctx) *
           weight_Wbar_l(p, q, red(d - c), ctx);
  const LComplex rhs = weight_W_l(p, q, red(a - b), ctx) *
                       weight_Wbar_l(p, r, red(b - c), ctx) *
                       weight_W_l(q, r, red(a - c), ctx);
  if (std::abs(rhs) < 1e-280L)
    throw ZeroDenominatorError("star_triangle_ratio: triangle side vanishes");
  return lhs / rhs;
}

}  // namespace

Complex star_triangle_ratio(const RapidityPoint& p, const RapidityPoint& q,
                            const RapidityPoint& r, int a, int b, int c,
                            const UnityContext& ctx) {
  const LComplex out = ratio_ld(resolve_ld(p, ctx), resolve_ld(q, ctx),
                                resolve_ld(r, ctx), a, b, c, ctx);
  return {static_cast<double>(out.real()), static_cast<double>(out.imag())};
}

StarTriangleReport star_triangle_check(const RapidityPoint& p,
                                       const RapidityPoint& q,
                                       const RapidityPoint& r,
                                       const UnityContext& ctx) {
  StarTriangleReport rep;
  const int n = ctx.n();
  const LdPoint lp = resolve_ld(p, ctx), lq = resolve_ld(q, ctx),
                lr = resolve_ld(r, ctx);
  LComplex sum{};
  LComplex ref{};
  long double max_dev = 0.0L;
  bool have_ref = false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const LComplex ratio = ratio_ld(lp, lq, lr, a, b, c, ctx);
        if (!have_ref) {
          ref = ratio;
          have_ref = true;
        }
        max_dev = std::max(max_dev, std::abs(ratio - ref));
        sum += ratio;
      }
  const LComplex mean = sum / static_cast<long double>(n * n * n);
  rep.mean_ratio = {static_cast<double>(mean.real()),
                    static_cast<double>(mean.imag())};
  rep.spin_spread = static_cast<double>(
      max_dev / std::max(std::abs(mean), 1e-300L));
  rep.pass = rep.spin_spread < ctx.config().identity_tol;
  return rep;
}

double order_parameter(int n, int N, double kprime) {
  if (N < 2) throw DomainError("order_parameter: N >= 2 required");
  if (n < 1 || n > N) throw DomainError("order_parameter: need 1 <= n <= N");
  if (!(kprime > 0.0 && kprime < 1.0))
    throw DomainError("order_parameter: k' must lie in (0, 1)");
  const double beta_n = static_cast<double>(n) * (N - n) /
                        (2.0 * static_cast<double>(N) * N);
  return std::pow(1.0 - kprime * kprime, beta_n);
}

}  // namespace cyclo
