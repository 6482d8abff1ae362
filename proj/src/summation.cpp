#include "cyclo/summation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

// Principal (1 - B)^{1/N} as a function of the N-th power B itself.
Complex delta_from_power(Complex B, int n) {
  return std::exp(std::log(1.0 - B) / static_cast<double>(n));
}

int round_to_omega_exponent(Complex ratio, int n, double* residual) {
  const long e = std::lround(std::arg(ratio) * n / kTwoPi);
  const Complex expect = std::polar(1.0, kTwoPi * e / n);
  *residual = std::abs(ratio / expect - 1.0);
  return static_cast<int>(((e % n) + n) % n);
}

// The input reduced to principal Delta branches; a stored branch
// Delta_stored = omega^c Delta_principal is folded into the effective k.
struct Normalized {
  Complex alpha, beta;
  Complex delta_alpha, delta_beta;  // principal
  int k_eff = 0;
  int m = 0, n = 0;
  Complex gamma;  // omega^{k_eff} delta_beta / delta_alpha
};

int branch_offset(Complex stored, Complex principal, int n) {
  const long c = std::lround(std::arg(stored / principal) * n / kTwoPi);
  return static_cast<int>(((c % n) + n) % n);
}

Normalized normalize(const SummationInput& in, const UnityContext& ctx) {
  Normalized nm;
  nm.alpha = in.alpha.value;
  nm.beta = in.beta.value;
  if (nm.alpha == Complex{} || nm.beta == Complex{})
    throw ZeroArgumentError("summation: alpha and beta must be nonzero");
  nm.delta_alpha = delta(nm.alpha, ctx);
  nm.delta_beta = delta(nm.beta, ctx);
  const int ca = branch_offset(in.alpha.delta, nm.delta_alpha, ctx.n());
  const int cb = branch_offset(in.beta.delta, nm.delta_beta, ctx.n());
  nm.k_eff = static_cast<int>(ctx.mod_n(in.k + cb - ca));
  nm.m = sector_index(nm.alpha, ctx);
  nm.n = sector_index(nm.beta, ctx);
  nm.gamma = ctx.omega_pow(nm.k_eff) * nm.delta_beta / nm.delta_alpha;
  return nm;
}

// e^t - 1 without cancellation for small t.
Complex expm1c(Complex t) {
  const double x = t.real(), y = t.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s,
          std::exp(x) * std::sin(y)};
}

// Product formula with F = 1; beta passed explicitly so the continuation
// walk can evaluate it at intermediate path points.
//
// gamma = omega^{k} Delta(beta)/Delta(alpha) sits exponentially close to
// omega^k whenever alpha^N and beta^N are both small, and the factor
// (1 - omega^{N-k} gamma) of p(gamma) then cancels catastrophically if
// formed naively. Work from the exact representation gamma = omega^k e^t
// with t = (Log(1 - B) - Log(1 - A))/N instead.
// The beta-dependent part only; the constant factors p(alpha), p(1), the
// omega prefactor and the leading N are supplied by rhs_unphased. The
// continuation walk consumes ratios of this core, where the constants
// would cancel anyway.
Complex rhs_core(Complex alpha, Complex beta, int k_eff,
                 const UnityContext& ctx) {
  const int n = ctx.n();
  const Complex A = ctx.pow_n(alpha);
  const Complex B = ctx.pow_n(beta);
  if (dist_to_negative_axis(1.0 - A) <= ctx.config().on_cut_tol ||
      dist_to_negative_axis(1.0 - B) <= ctx.config().on_cut_tol)
    throw OnCutError("rhs_core: alpha^N or beta^N on the cut [1, inf)");
  const Complex t =
      (log_one_minus(B) - log_one_minus(A)) / static_cast<double>(n);
  const Complex exp_t = std::exp(t);

  Complex p_gamma{1.0, 0.0};
  for (int j = 1; j < n; ++j) {
    const long r = ctx.mod_n(j + k_eff);
    const Complex u =
        (r == 0) ? -expm1c(t) : 1.0 - ctx.omega_pow(r) * exp_t;
    if (dist_to_negative_axis(u) <= ctx.config().on_cut_tol)
      throw OnCutError("rhs_core: gamma on a cut of p");
    p_gamma *= std::exp(static_cast<double>(j) / n * std::log(u));
  }

  // Principal log of gamma, assembled without forming gamma itself.
  const double arg_gamma =
      std::remainder(kTwoPi * k_eff / n + t.imag(), kTwoPi);
  const Complex log_gamma{t.real(), arg_gamma};
  const Complex gamma_half = std::exp(0.5 * (n - 1) * log_gamma);

  const Complex dq = beta / alpha;
  const Complex eps = dq * ctx.omega_pow(-k_eff) / exp_t;
  return p_func(beta, ctx) * p_gamma * p_func(eps, ctx) /
         (gamma_half * p_func(dq, ctx));
}

Complex rhs_unphased(Complex alpha, Complex beta, int k_eff, int m,
                     const UnityContext& ctx) {
  const long pref = -static_cast<long>(k_eff) * (k_eff + 1) / 2 -
                    static_cast<long>(m) * k_eff;
  return ctx.omega_pow(pref) * static_cast<double>(ctx.n()) *
         rhs_core(alpha, beta, k_eff, ctx) /
         (p_func(alpha, ctx) * p_func(Complex{1.0, 0.0}, ctx));
}

// ---------------------------------------------------------------------
// Cut geometry. Every branch jump of the product formula happens when a
// Mobius image of B = beta^N crosses the positive real axis:
//   B          in [1, inf)  (cuts of p(beta) and Delta(beta))
//   B/A        in [1, inf)  (cuts of p(delta))
//   (1-B)/(1-A) in (0, inf) (cuts of p(gamma) and gamma^{(N-1)/2})
//   B(1-A)/(A(1-B)) in [1, inf)  (cuts of p(epsilon))
// ---------------------------------------------------------------------

enum class CutFamily { Beta, Delta, Gamma, Epsilon };

struct MobiusCut {
  CutFamily family;
  Complex a, b, c, d;  // B -> (aB + b) / (cB + d)
  double window_lo;    // crossing counts when the image exceeds this
};

std::vector<MobiusCut> make_cuts(Complex A) {
  return {
      {CutFamily::Beta, {1, 0}, {0, 0}, {0, 0}, {1, 0}, 1.0},
      {CutFamily::Delta, {1, 0}, {0, 0}, {0, 0}, A, 1.0},
      {CutFamily::Gamma, {-1, 0}, {1, 0}, {0, 0}, 1.0 - A, 0.0},
      {CutFamily::Epsilon, 1.0 - A, {0, 0}, -A, A, 1.0},
  };
}

Complex mobius_apply(const MobiusCut& m, Complex B) {
  return (m.a * B + m.b) / (m.c * B + m.d);
}

double cut_distance(const MobiusCut& m, Complex B) {
  const Complex v = mobius_apply(m, B);
  if (v.real() >= m.window_lo) return std::abs(v.imag());
  return std::abs(v - Complex{m.window_lo, 0.0});
}


// Piecewise-linear path in the beta-plane, parametrized by u in
// [0, points.size() - 1].
struct Path {
  std::vector<Complex> points;

  Complex at(double u) const {
    const double last = static_cast<double>(points.size() - 1);
    u = std::clamp(u, 0.0, last);
    size_t i = std::min(static_cast<size_t>(u), points.size() - 2);
    const double f = u - static_cast<double>(i);
    return points[i] + f * (points[i + 1] - points[i]);
  }
};

// Sign of Im(num conj(den)) of the Mobius image; vanishes on the locus
// containing the cut, so a sign change flags a possible crossing.
double cut_sign(const MobiusCut& m, Complex B) {
  const Complex num = m.a * B + m.b;
  const Complex den = m.c * B + m.d;
  return num.imag() * den.real() - num.real() * den.imag();
}

// Jump of the series value when gamma hops to omega^{jump} gamma as
// Delta(beta) changes branch: the recurrence
// Phi(gamma w^j)/Phi(gamma) = ghat^j (ahat;w)_j / (bhat;w)_j
// with ahat = gamma, bhat = w alpha gamma / beta, ghat = w / beta.
Complex phi_jump_ratio(Complex alpha, Complex beta, Complex gamma_before,
                       int jump, const UnityContext& ctx) {
  const Complex w = ctx.omega();
  const Complex ahat = gamma_before;
  const Complex bhat = w * alpha * gamma_before / beta;
  const Complex ghat = w / beta;
  if (jump == 1) {
    const Complex den = 1.0 - bhat;
    if (std::abs(den) < 1e-13)
      throw OnBoundaryError("continuation: recurrence denominator vanishes");
    return ghat * (1.0 - ahat) / den;
  }
  // jump == -1
  const Complex den = 1.0 - ahat / w;
  if (std::abs(den) < 1e-13)
    throw OnBoundaryError("continuation: recurrence denominator vanishes");
  return (1.0 - bhat / w) / (ghat * den);
}

// F at the reference point (small |beta| in the sector of alpha): the
// formula holds there with F = 1 when k = 0; a nonzero k is reduced to
// that case with the gamma-shift recurrence measured against the product
// form's own k dependence.
long anchor_exponent(const Normalized& nm, Complex beta0,
                     const UnityContext& ctx) {
  if (nm.k_eff == 0) return 0;
  const Complex gamma0 = delta(beta0, ctx) / delta(nm.alpha, ctx);
  const Complex bhat = ctx.omega() * nm.alpha * gamma0 / beta0;
  const Complex num = pochhammer(gamma0, nm.k_eff, ctx);
  const Complex den = pochhammer(bhat, nm.k_eff, ctx);
  if (std::abs(num) < 1e-10 || std::abs(den) < 1e-10)
    throw OnBoundaryError("classify_region: degenerate reference point");
  const Complex ratio_rec =
      cpow_int(ctx.omega() / beta0, nm.k_eff) * num / den;
  const Complex ratio_rhs =
      rhs_unphased(nm.alpha, beta0, nm.k_eff, nm.m, ctx) /
      rhs_unphased(nm.alpha, beta0, 0, nm.m, ctx);
  double residual = 0.0;
  const int e =
      round_to_omega_exponent(ratio_rec / ratio_rhs, ctx.n(), &residual);
  if (residual > 1e-3)
    throw OnBoundaryError("classify_region: reference reduction off grid");
  return e;
}

// F exponent accumulated along a path from the reference point to the
// target beta, for one choice of the reference modulus.
int walk_phase(const Normalized& nm, double rho_scale,
               const UnityContext& ctx) {
  const int n = ctx.n();
  const Complex A = ctx.pow_n(nm.alpha);
  const auto cuts = make_cuts(A);

  // Reference point plus a polar midpoint so the path stays away from
  // beta = 0 (B would wind rapidly there).
  const double rho = rho_scale * std::min(1.0, std::abs(nm.alpha));
  const Complex beta0 = std::polar(rho, std::arg(nm.alpha));
  double dtheta = std::arg(nm.beta / beta0);
  const Complex mid = std::polar(std::sqrt(std::abs(beta0) * std::abs(nm.beta)),
                                 std::arg(beta0) + 0.5 * dtheta);
  Path path{{beta0, mid, nm.beta}};

  // Jumps are found by recursive bisection of the path: an interval needs
  // subdividing when the product form rotates by more than a fraction of
  // an omega step across it, or when any cut's sign function flips inside
  // it. Once an interval is shorter than 1e-12 the smooth variation is
  // negligible and the branch jump can be read straight off the ratio of
  // the endpoint values. This stays robust when the image curve grazes a
  // cut: a tangent touch either resolves into a crossing pair or shows no
  // net rotation at the bottom of the recursion.
  // The bisection deliberately evaluates within a hair of the cuts, so
  // the probe context must not apply the public on-cut guard distance.
  NumericConfig probe_cfg = ctx.config();
  probe_cfg.on_cut_tol = 0.0;
  const UnityContext probe_ctx(n, probe_cfg);
  const auto rhs_at = [&](double u) {
    for (double shift : {0.0, 3e-12, -3e-12}) {
      try {
        return rhs_core(nm.alpha, path.at(u + shift), nm.k_eff, probe_ctx);
      } catch (const OnCutError&) {
      }
    }
    throw OnBoundaryError("classify_region: path pinned to a cut");
  };
  const auto signs_at = [&](double u, double* out) {
    const Complex B = ctx.pow_n(path.at(u));
    for (size_t c = 0; c < cuts.size(); ++c) out[c] = cut_sign(cuts[c], B);
  };
  const double angle_thr = 0.5 * kTwoPi / (2.0 * n);

  struct Node {
    double u1, u2;
    Complex r1, r2;
    double s1[4], s2[4];
  };
  std::vector<Node> stack;
  long exponent = anchor_exponent(nm, beta0, ctx);

  const int coarse_steps = 48;
  const int segments = static_cast<int>(path.points.size()) - 1;
  double u_prev = 0.0;
  Complex r_prev = rhs_at(0.0);
  double s_prev[4];
  signs_at(0.0, s_prev);
  for (int i = 1; i <= segments * coarse_steps; ++i) {
    Node nd;
    nd.u1 = u_prev;
    nd.r1 = r_prev;
    std::copy(s_prev, s_prev + 4, nd.s1);
    nd.u2 = static_cast<double>(i) / coarse_steps;
    nd.r2 = rhs_at(nd.u2);
    signs_at(nd.u2, nd.s2);
    u_prev = nd.u2;
    r_prev = nd.r2;
    std::copy(nd.s2, nd.s2 + 4, s_prev);
    stack.push_back(nd);

    while (!stack.empty()) {
      const Node cur = stack.back();
      stack.pop_back();
      bool flip = false;
      for (int c = 0; c < 4; ++c)
        if (cur.s1[c] * cur.s2[c] < 0.0) flip = true;
      const double rot = std::abs(std::arg(cur.r2 / cur.r1));
      if (!flip && rot < angle_thr) continue;
      if (cur.u2 - cur.u1 > 1e-12) {
        Node lo, hi;
        lo.u1 = cur.u1;
        lo.r1 = cur.r1;
        std::copy(cur.s1, cur.s1 + 4, lo.s1);
        hi.u2 = cur.u2;
        hi.r2 = cur.r2;
        std::copy(cur.s2, cur.s2 + 4, hi.s2);
        const double um = 0.5 * (cur.u1 + cur.u2);
        lo.u2 = hi.u1 = um;
        lo.r2 = hi.r1 = rhs_at(um);
        signs_at(um, lo.s2);
        std::copy(lo.s2, lo.s2 + 4, hi.s1);
        stack.push_back(hi);
        stack.push_back(lo);
        continue;
      }
      // Localized jump. The series itself jumps only where Delta(beta)
      // changes branch (B crossing [1, inf)); that part is removed with
      // the gamma-shift recurrence before rounding.
      Complex phi_ratio{1.0, 0.0};
      const Complex B1 = ctx.pow_n(path.at(cur.u1));
      const Complex B2 = ctx.pow_n(path.at(cur.u2));
      const Complex d_lo = delta_from_power(B1, n);
      const Complex d_hi = delta_from_power(B2, n);
      const long djump = std::lround(std::arg(d_hi / d_lo) * n / kTwoPi);
      if (djump == 1 || djump == -1) {
        const Complex gamma_before =
            ctx.omega_pow(nm.k_eff) * d_lo / delta(nm.alpha, ctx);
        phi_ratio = phi_jump_ratio(nm.alpha, path.at(cur.u1), gamma_before,
                                   static_cast<int>(djump), ctx);
      } else if (djump != 0) {
        throw OnBoundaryError(
            "classify_region: unresolvable Delta branch change");
      }
      double residual = 0.0;
      const int e = round_to_omega_exponent(phi_ratio * cur.r1 / cur.r2, n,
                                            &residual);
      if (residual > 1e-3)
        throw OnBoundaryError(
            "classify_region: localized jump is not an omega power");
#ifdef CYCLO_WALK_DEBUG
      if (e != 0)
        std::fprintf(stderr, "  jump u=%.9f e=%d res=%.1e\n", cur.u1, e,
                     residual);
#endif
      exponent += e;
    }
  }
  return static_cast<int>(ctx.mod_n(exponent));
}

int continuation_phase(const Normalized& nm, const UnityContext& ctx) {
  const Complex A = ctx.pow_n(nm.alpha);
  const Complex B_target = ctx.pow_n(nm.beta);
  const double margin = ctx.config().boundary_margin;

  if (std::abs(A.imag()) <= margin * (1.0 + std::abs(A)))
    throw OnBoundaryError("classify_region: Im(alpha^N) = 0 within tolerance");
  for (const auto& cut : make_cuts(A)) {
    if (cut_distance(cut, B_target) <= margin)
      throw OnBoundaryError("classify_region: beta^N within tolerance of a cut");
  }

  // Retry with a different reference modulus when the path happens to run
  // through a degenerate spot; the answer cannot depend on the choice.
  const double rho_scales[3] = {0.5, 0.37, 0.63};
  for (int attempt = 0; attempt < 3; ++attempt) {
    try {
      return walk_phase(nm, rho_scales[attempt], ctx);
    } catch (const OnBoundaryError&) {
      if (attempt == 2) throw;
    } catch (const OnCutError&) {
      if (attempt == 2) throw;
    }
  }
  return 0;  // unreachable
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IIPrime: return "II'";
    case Region::IIIPrime: return "III'";
  }
  return "?";
}

DerivedQuantities derived_quantities(const SummationInput& in,
                                     const UnityContext& ctx) {
  if (in.alpha.value == Complex{} || in.beta.value == Complex{})
    throw ZeroArgumentError("derived_quantities: alpha, beta must be nonzero");
  DerivedQuantities dq;
  dq.m = sector_index(in.alpha.value, ctx);
  dq.n = sector_index(in.beta.value, ctx);
  dq.gamma = ctx.omega_pow(in.k) * in.beta.delta / in.alpha.delta;
  dq.delta_q = in.beta.value / in.alpha.value;
  dq.epsilon = dq.delta_q / dq.gamma;
  return dq;
}

Complex phase_factor(const RegionTag& tag, int m, int n, int k,
                     const UnityContext& ctx) {
  switch (tag.region) {
    case Region::I: return {1.0, 0.0};
    case Region::II: return ctx.omega_pow(k);
    case Region::III: return ctx.omega_pow(m - n + k);
    case Region::IIPrime: return ctx.omega_pow(-k);
    case Region::IIIPrime: return ctx.omega_pow(n - m - k);
  }
  return {1.0, 0.0};
}

int region_phase_exponent(const RegionTag& tag, int m, int n, int k,
                          const UnityContext& ctx) {
  switch (tag.region) {
    case Region::I: return 0;
    case Region::II: return static_cast<int>(ctx.mod_n(k));
    case Region::III: return static_cast<int>(ctx.mod_n(m - n + k));
    case Region::IIPrime: return static_cast<int>(ctx.mod_n(-k));
    case Region::IIIPrime: return static_cast<int>(ctx.mod_n(n - m - k));
  }
  return 0;
}

int classified_phase_exponent(const SummationInput& in,
                              const UnityContext& ctx) {
  return continuation_phase(normalize(in, ctx), ctx);
}

RegionTag classify_region(const SummationInput& in, const UnityContext& ctx) {
  const Normalized nm = normalize(in, ctx);
  const int e = continuation_phase(nm, ctx);
  const bool upper = ctx.pow_n(nm.alpha).imag() > 0.0;
  RegionTag tag;
  tag.im_alpha_positive = upper;
  const Region candidates[3] = {
      Region::I,
      upper ? Region::II : Region::IIPrime,
      upper ? Region::III : Region::IIIPrime,
  };
  for (Region r : candidates) {
    tag.region = r;
    if (region_phase_exponent(tag, nm.m, nm.n, nm.k_eff, ctx) == e) return tag;
  }
  throw NoConsistentPhaseError(
      "classify_region: continuation phase matches no entry of the phase "
      "table");
}

Complex closed_form_unphased(const SummationInput& in,
                             const UnityContext& ctx) {
  const Normalized nm = normalize(in, ctx);
  return rhs_unphased(nm.alpha, nm.beta, nm.k_eff, nm.m, ctx);
}

Complex closed_form(const SummationInput& in, const UnityContext& ctx) {
  const Normalized nm = normalize(in, ctx);
  const int e = continuation_phase(nm, ctx);
  return ctx.omega_pow(e) * rhs_unphased(nm.alpha, nm.beta, nm.k_eff, nm.m, ctx);
}

HypSpec to_hyp_spec(const SummationInput& in, const UnityContext& ctx) {
  const Normalized nm = normalize(in, ctx);
  return HypSpec{ctx, {nm.alpha}, {nm.beta}, nm.gamma};
}

int oracle_phase(const SummationInput& in, const UnityContext& ctx) {
  const Complex direct = phi_eval(to_hyp_spec(in, ctx));
  const Complex base = closed_form_unphased(in, ctx);
  int best = 0;
  double best_res = std::numeric_limits<double>::infinity();
  for (int s = 0; s < ctx.n(); ++s) {
    const double res = std::abs(direct - ctx.omega_pow(s) * base);
    if (res < best_res) {
      best_res = res;
      best = s;
    }
  }
  const double scale = std::max({std::abs(direct), std::abs(base), 1e-300});
  if (best_res / scale > ctx.config().identity_tol)
    throw NoConsistentPhaseError(
        "oracle_phase: no omega power reconciles the series with the product "
        "form");
  return best;
}

int infer_k(Complex gamma, const BranchedValue& alpha,
            const BranchedValue& beta, const UnityContext& ctx) {
  if (gamma == Complex{})
    throw ZeroParameterError("infer_k: gamma must be nonzero");
  const Complex ratio = gamma * alpha.delta / beta.delta;
  const long k = std::lround(std::arg(ratio) * ctx.n() / kTwoPi);
  const Complex rebuilt = ctx.omega_pow(k) * beta.delta / alpha.delta;
  if (std::abs(gamma - rebuilt) > 1e-8 * std::abs(gamma))
    throw DomainError("infer_k: gamma is not omega^k Delta(beta)/Delta(alpha) "
                      "for any integer k");
  return static_cast<int>(ctx.mod_n(k));
}

}  // namespace cyclo
