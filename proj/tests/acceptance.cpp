// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here on purpose; do not read them from config.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "cyclo/chiral_potts.hpp"
#include "cyclo/fermat.hpp"
#include "cyclo/sampling.hpp"
#include "cyclo/summation.hpp"
#include "cyclo/transforms.hpp"

using namespace cyclo;

namespace {

int failures = 0;

void report(int idx, bool pass, const char* what, const char* detail) {
  std::printf("[%s] C%d %s: %s\n", pass ? "PASS" : "FAIL", idx, what, detail);
  if (!pass) ++failures;
}

double now_s() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

template <typename Body>
void resample(Sampler& smp, long samples, long& skipped, Body body) {
  (void)smp;
  for (long s = 0; s < samples; ++s) {
    for (;;) {
      try {
        body();
        break;
      } catch (const Error&) {
        ++skipped;
      }
    }
  }
}

Phi1Params draw1(Sampler& smp, const UnityContext& ctx) {
  return Phi1Params::principal(smp.annulus(0.2, 2.5), smp.annulus(0.2, 2.5),
                               ctx, smp.uniform_int(0, ctx.n() - 1));
}

RapidityPoint draw_pt(Sampler& smp, const Moduli& mod,
                      const UnityContext& ctx) {
  return solve_rapidity(
      mod, smp.annulus(0.3, 1.4),
      smp.uniform01() < 0.5 ? LambdaBranch::Inside : LambdaBranch::Outside,
      ctx, smp.uniform_int(0, ctx.n() - 1), smp.uniform_int(0, ctx.n() - 1));
}

FermatPoint draw_fermat(Sampler& smp, const UnityContext& ctx) {
  return affine_to_fermat(
      BranchedValue::principal(smp.annulus(0.15, 0.85), ctx), ctx);
}

// Criteria 1 and 2 share one sweep: the product formula against the
// direct sum, the phase exponent against the allowed table rows, and
// the classifier against the series oracle.
void criteria_1_2() {
  const double t_start = now_s();
  long fail_sum = 0, fail_table = 0, fail_cls = 0, skipped = 0;
  long tabulated = 0, outside = 0, checked = 0;
  double worst = 0.0;
  for (int n = 2; n <= 7; ++n) {
    UnityContext ctx(n);
    Sampler smp(4242 + n);
    // draw until 10000 points land in the five tabulated one-crossing
    // regions; points beyond them (several cuts crossed) still must
    // satisfy the product formula and are counted separately
    long in_table = 0;
    while (in_table < 10000) {
      Complex a, b;
      int k;
      for (;;) {
        a = smp.annulus(0.25, 3.0);
        b = smp.annulus(0.25, 3.0);
        k = smp.uniform_int(0, n - 1);
        try {
          const SummationInput in{BranchedValue::principal(a, ctx),
                                  BranchedValue::principal(b, ctx), k};
          const int cls = classified_phase_exponent(in, ctx);
          const Complex unphased = closed_form_unphased(in, ctx);
          const Complex phi = phi_eval(to_hyp_spec(in, ctx));
          const Complex lhs = ctx.omega_pow(cls) * unphased;
          const double r = std::abs(lhs - phi) / std::abs(phi);
          if (r > worst) worst = r;
          if (r >= 1e-10) ++fail_sum;
          ++checked;

          // series oracle: the omega power best matching the direct sum
          int orc = 0;
          double best = 1e300;
          for (int s = 0; s < n; ++s) {
            const double d = std::abs(phi - ctx.omega_pow(s) * unphased);
            if (d < best) {
              best = d;
              orc = s;
            }
          }
          const int m = in.alpha.sector, nn = in.beta.sector;
          const bool im_pos = ctx.pow_n(a).imag() > 0.0;
          const long a1 = im_pos ? ctx.mod_n(k) : ctx.mod_n(-k);
          const long a2 =
              im_pos ? ctx.mod_n(m - nn + k) : ctx.mod_n(nn - m - k);
          if (cls == 0 || cls == a1 || cls == a2) {
            ++in_table;
            ++tabulated;
            if (orc != 0 && orc != a1 && orc != a2) ++fail_table;
          } else {
            ++outside;
          }
          if (cls != orc) ++fail_cls;
          break;
        } catch (const Error&) {
          ++skipped;
        }
      }
    }
  }
  const double dt = now_s() - t_start;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "N=2..7, %ld samples (>=10000/N), max residual %.3e, "
                "%ld failures, %ld resampled, %.1fs",
                checked, worst, fail_sum, skipped, dt);
  report(1, fail_sum == 0 && dt < 60.0, "product formula vs direct sum", buf);
  std::snprintf(buf, sizeof(buf),
                "table violations %ld of %ld tabulated-region points, "
                "classifier mismatches %ld of %ld "
                "(%ld multi-crossing points beyond the table)",
                fail_table, tabulated, fail_cls, checked, outside);
  report(2, fail_table == 0 && fail_cls == 0,
         "phase table membership + classifier agreement", buf);
}

void criterion_3() {
  long fail = 0;
  double worst1 = 0.0, worst2 = 0.0;
  for (int n = 2; n <= 12; ++n) {
    UnityContext ctx(n);
    const Complex got = p_func(Complex{1.0, 0.0}, ctx);
    const Complex want =
        std::sqrt(static_cast<double>(n)) *
        std::polar(1.0, kTwoPi * (n - 1.0) * (n - 2.0) / (24.0 * n));
    const double r = std::abs(got - want) / std::abs(want);
    if (r > worst1) worst1 = r;
    if (r >= 1e-12) ++fail;
  }
  for (int n = 2; n <= 8; ++n) {
    UnityContext ctx(n);
    Sampler smp(333 + n);
    const Complex want =
        std::polar(1.0, kTwoPi * (n * n - 1.0) / (12.0 * n));
    long skip = 0;
    resample(smp, 1000, skip, [&] {
      const double r = 0.1 * std::exp(smp.uniform01() * std::log(9.0));
      const double th = (0.02 + 0.96 * smp.uniform01()) * kTwoPi / n;
      const Complex z = std::polar(r, th);
      const double d = std::abs(p0(z, ctx) * p0(ctx.omega() / z, ctx) - want);
      if (d > worst2) worst2 = d;
      if (d >= 1e-10) ++fail;
    });
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "p(1) max rel %.3e (N=2..12), reflection max %.3e "
                "(1000/N, N=2..8), %ld failures",
                worst1, worst2, fail);
  report(3, fail == 0, "p-function special value + reflection", buf);
}

void criterion_4() {
  long fail = 0, skipped = 0;
  double worst = 0.0, worst_mu = 0.0;
  for (int n = 2; n <= 7; ++n) {
    UnityContext ctx(n);
    Sampler smp(444 + n);
    resample(smp, 1000, skipped, [&] {
      const Phi1Params p = draw1(smp, ctx);
      const Z4Report rep = verify_z4(p, ctx);
      for (double r : rep.residuals) {
        if (r > worst) worst = r;
        if (r >= 1e-10) ++fail;
      }
      Phi1Params q = p;
      for (int i = 0; i < 4; ++i) q = mu_transform(q, ctx);
      const double d = std::abs(q.alpha - p.alpha) + std::abs(q.beta - p.beta) +
                       std::abs(q.gamma - p.gamma);
      if (d > worst_mu) worst_mu = d;
      if (d >= 1e-12) ++fail;
    });
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "1000/N, N=2..7, max residual %.3e, mu^4 max %.3e, %ld failures",
                worst, worst_mu, fail);
  report(4, fail == 0, "order-4 transform of the cyclic 2Phi1", buf);
}

void criterion_5() {
  long fail = 0, skipped = 0;
  double worst = 0.0, worst_inv = 0.0;
  for (int n = 2; n <= 5; ++n) {
    UnityContext ctx(n);
    Sampler smp(555 + n);
    resample(smp, 1000, skipped, [&] {
      const Phi2Params p =
          Phi2Params::from_components(draw1(smp, ctx), draw1(smp, ctx));
      for (double r : {convolution_3phi2(p, ctx).residual,
                       transform_3phi2(p, ctx).report.residual,
                       m_transform(p, ctx).report.residual}) {
        if (r > worst) worst = r;
        if (r >= 1e-10) ++fail;
      }
      const TransformResult t = transform_3phi2(p, ctx);
      const TransformResult mt = m_transform(t.params, ctx);
      const double d =
          std::abs(mt.params.first.alpha - p.first.alpha) +
          std::abs(mt.params.first.beta - p.first.beta) +
          std::abs(mt.params.first.gamma - p.first.gamma) +
          std::abs(mt.params.second.alpha - p.second.alpha) +
          std::abs(mt.params.second.beta - p.second.beta) +
          std::abs(mt.params.second.gamma - p.second.gamma);
      if (d > worst_inv) worst_inv = d;
      if (d >= 1e-10) ++fail;
    });
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "1000/N, N=2..5, max residual %.3e, inverse max %.3e, "
                "%ld failures",
                worst, worst_inv, fail);
  report(5, fail == 0, "3Phi2 convolution and transform pair", buf);
}

void criterion_6() {
  long fail = 0, skipped = 0;
  double worst_curve = 0.0, worst_per = 0.0;
  for (int n = 2; n <= 6; ++n) {
    UnityContext ctx(n);
    Sampler smp(666 + n);
    resample(smp, 1000, skipped, [&] {
      const Moduli mod = Moduli::from_kprime(smp.uniform(0.15, 0.9), ctx);
      const RapidityPoint p = draw_pt(smp, mod, ctx);
      const RapidityPoint q = draw_pt(smp, mod, ctx);
      for (double r : {curve_residual(p, ctx), curve_residual(q, ctx)}) {
        if (r > worst_curve) worst_curve = r;
        if (r >= 1e-10) ++fail;
      }
      for (double d : {std::abs(weight_W(p, q, n, ctx) - 1.0),
                       std::abs(weight_Wbar(p, q, n, ctx) - 1.0)}) {
        if (d > worst_per) worst_per = d;
        if (d >= 1e-10) ++fail;
      }
    });
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "1000 pairs/N, N=2..6, curve max %.3e, periodicity max %.3e, "
                "%ld failures",
                worst_curve, worst_per, fail);
  report(6, fail == 0, "rapidity curve + weight periodicity", buf);
}

void criterion_7() {
  long fail = 0, skipped = 0;
  double worst_w = 0.0, worst_dual = 0.0;
  for (int n = 2; n <= 6; ++n) {
    UnityContext ctx(n);
    Sampler smp(777 + n);
    resample(smp, 200, skipped, [&] {
      const Moduli mod = Moduli::from_kprime(smp.uniform(0.2, 0.85), ctx);
      const RapidityPoint p = draw_pt(smp, mod, ctx);
      const RapidityPoint q = draw_pt(smp, mod, ctx);
      for (WeightKind kind : {WeightKind::W, WeightKind::Wbar}) {
        const Phi1Params h = weights_to_hyp(p, q, kind, ctx);
        const WeightTable t = weight_table(p, q, kind, ctx);
        Complex acc{1.0, 0.0};
        for (int i = 0; i < n; ++i) {
          const double d =
              std::abs(acc - t.values[i]) / (1.0 + std::abs(t.values[i]));
          if (d > worst_w) worst_w = d;
          if (d >= 1e-10) ++fail;
          acc *= h.gamma * (1.0 - h.alpha * ctx.omega_pow(i)) /
                 (1.0 - h.beta * ctx.omega_pow(i));
        }
        // the Fourier dual of the table carries the transformed parameters
        const WeightTable dual = fourier_dual(t, ctx);
        const WeightTable mt = product_form_table(mu_transform(h, ctx), ctx);
        for (int i = 0; i < n; ++i) {
          const double d = std::abs(dual.values[i] / dual.values[0] -
                                    mt.values[i]) /
                           (1.0 + std::abs(mt.values[i]));
          if (d > worst_dual) worst_dual = d;
          if (d >= 1e-10) ++fail;
        }
      }
    });
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "200 pairs/N, N=2..6, weight max %.3e, dual max %.3e, "
                "%ld failures",
                worst_w, worst_dual, fail);
  report(7, fail == 0, "weights to 2Phi1 parameters + Fourier dual", buf);
}

void criterion_8() {
  long fail = 0, skipped = 0;
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    UnityContext ctx(n);
    Sampler smp(888 + n);
    resample(smp, 100, skipped, [&] {
      const Moduli mod = Moduli::from_kprime(smp.uniform(0.15, 0.9), ctx);
      const RapidityPoint p = draw_pt(smp, mod, ctx);
      const RapidityPoint q = draw_pt(smp, mod, ctx);
      const RapidityPoint r = draw_pt(smp, mod, ctx);
      const double d = star_triangle_check(p, q, r, ctx).spin_spread;
      if (d > worst) worst = d;
      if (d >= 1e-10) ++fail;
    });
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "100 triples/N, N=2..5, max spin spread %.3e, %ld failures",
                worst, fail);
  report(8, fail == 0, "star-triangle spin independence", buf);
}

void criterion_9() {
  long fail = 0;
  double worst = 0.0;
  // Ising: exponent 1/8 at N = 2
  {
    const double d =
        std::abs(order_parameter(1, 2, 0.6) - std::pow(0.64, 0.125));
    if (d > worst) worst = d;
    if (d != 0.0 && d >= 1e-15) ++fail;
  }
  for (int N = 2; N <= 7; ++N)
    for (int n = 1; n <= N; ++n)
      for (double kp : {0.05, 0.3, 0.6, 0.95}) {
        const double want =
            std::pow(1.0 - kp * kp, n * (N - n) / (2.0 * N * N));
        const double d1 = std::abs(order_parameter(n, N, kp) - want);
        const double d2 =
            n < N ? std::abs(order_parameter(n, N, kp) -
                             order_parameter(N - n, N, kp))
                  : 0.0;
        worst = std::max({worst, d1, d2});
        if (d1 != 0.0 || d2 != 0.0) ++fail;
      }
  char buf[256];
  std::snprintf(buf, sizeof(buf), "max deviation %.3e, %ld failures", worst,
                fail);
  report(9, fail == 0, "order parameter exponents", buf);
}

void criterion_10() {
  long fail = 0, skipped = 0;
  double worst_w = 0.0, worst_psi = 0.0;
  for (int n = 2; n <= 5; ++n) {
    UnityContext ctx(n);
    Sampler smp(1010 + n);
    resample(smp, 200, skipped, [&] {
      const FermatPoint p = draw_fermat(smp, ctx);
      for (long l = 0; l <= 2 * n; ++l) {
        const double r = w_kms(p, l, ctx).residual;
        if (r > worst_w) worst_w = r;
        if (r >= 1e-12) ++fail;
      }
    });
    resample(smp, 1000, skipped, [&] {
      const int r = 1 + smp.uniform_int(0, 2);
      std::vector<FermatPoint> num, den;
      for (int i = 0; i < r; ++i) {
        num.push_back(draw_fermat(smp, ctx));
        den.push_back(draw_fermat(smp, ctx));
      }
      const long shift = smp.uniform_int(0, n - 1);
      const PsiTranslation tr = translate_psi(num, den, shift, ctx);
      const Complex lhs = psi_direct(num, den, shift, ctx);
      const Complex rhs = tr.prefactor * phi_eval(tr.spec);
      const double d = rel_residual(lhs, rhs);
      if (d > worst_psi) worst_psi = d;
      if (d >= 1e-10) ++fail;
    });
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "two-form max %.3e, translation max %.3e (1000/N, N=2..5), "
                "%ld failures",
                worst_w, worst_psi, fail);
  report(10, fail == 0, "Fermat-curve weight bridge", buf);
}

}  // namespace

int main() {
  criteria_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%s (%d criterion failures)\n",
              failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              failures);
  return failures == 0 ? 0 : 1;
}
