#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyclo/chiral_potts.hpp"
#include "cyclo/sampling.hpp"

using namespace cyclo;

namespace {

RapidityPoint draw_pt(Sampler& smp, const Moduli& mod,
                      const UnityContext& ctx) {
  return solve_rapidity(
      mod, smp.annulus(0.3, 1.4),
      smp.uniform01() < 0.5 ? LambdaBranch::Inside : LambdaBranch::Outside,
      ctx, smp.uniform_int(0, ctx.n() - 1), smp.uniform_int(0, ctx.n() - 1));
}

}  // namespace

TEST_CASE("moduli constructors") {
  UnityContext ctx(3);
  const Moduli m = Moduli::from_kprime(0.6, ctx);
  CHECK(std::abs(m.k * m.k + m.kprime * m.kprime - 1.0) < 1e-14);
  CHECK(m.kprime == Complex{0.6, 0.0});
  CHECK_THROWS_AS(Moduli(Complex{0.5, 0.0}, Complex{0.5, 0.0}, ctx),
                  DomainError);
}

TEST_CASE("solved points satisfy all four curve equations") {
  for (int n = 2; n <= 6; ++n) {
    UnityContext ctx(n);
    Sampler smp(13 + n);
    int done = 0;
    while (done < 60) {
      try {
        const Moduli mod = Moduli::from_kprime(smp.uniform(0.15, 0.9), ctx);
        const RapidityPoint p = draw_pt(smp, mod, ctx);
        CHECK(curve_residual(p, ctx) < 1e-10);
        CHECK(std::abs(p.x * p.y - p.t) < 1e-12 * (1.0 + std::abs(p.t)));
        const bool inside = std::abs(p.lambda) < 1.0;
        CHECK(inside == (p.branch == LambdaBranch::Inside));
        ++done;
      } catch (const Error&) {
      }
    }
  }
}

TEST_CASE("weights are periodic with period N") {
  for (int n = 2; n <= 6; ++n) {
    UnityContext ctx(n);
    Sampler smp(23 + n);
    int done = 0;
    while (done < 40) {
      try {
        const Moduli mod = Moduli::from_kprime(smp.uniform(0.15, 0.9), ctx);
        const RapidityPoint p = draw_pt(smp, mod, ctx);
        const RapidityPoint q = draw_pt(smp, mod, ctx);
        CHECK(std::abs(weight_W(p, q, n, ctx) - 1.0) < 1e-10);
        CHECK(std::abs(weight_Wbar(p, q, n, ctx) - 1.0) < 1e-10);
        ++done;
      } catch (const Error&) {
      }
    }
  }
}

TEST_CASE("weight table is normalized and consistent with the raw product") {
  UnityContext ctx(4);
  Sampler smp(5);
  const Moduli mod = Moduli::from_kprime(0.55, ctx);
  const RapidityPoint p = draw_pt(smp, mod, ctx);
  const RapidityPoint q = draw_pt(smp, mod, ctx);
  for (WeightKind kind : {WeightKind::W, WeightKind::Wbar}) {
    const WeightTable t = weight_table(p, q, kind, ctx);
    REQUIRE(t.values.size() == 4);
    CHECK(t.values[0] == Complex{1.0, 0.0});
    for (int i = 0; i < 4; ++i) {
      const Complex raw = kind == WeightKind::W ? weight_W(p, q, i, ctx)
                                                : weight_Wbar(p, q, i, ctx);
      CHECK(std::abs(t.values[i] - raw) < 1e-12 * (1.0 + std::abs(raw)));
    }
  }
}

TEST_CASE("product-form parameters reproduce the weights") {
  for (int n = 2; n <= 5; ++n) {
    UnityContext ctx(n);
    Sampler smp(33 + n);
    int done = 0;
    while (done < 25) {
      try {
        const Moduli mod = Moduli::from_kprime(smp.uniform(0.2, 0.85), ctx);
        const RapidityPoint p = draw_pt(smp, mod, ctx);
        const RapidityPoint q = draw_pt(smp, mod, ctx);
        for (WeightKind kind : {WeightKind::W, WeightKind::Wbar}) {
          const Phi1Params h = weights_to_hyp(p, q, kind, ctx);
          const WeightTable t = weight_table(p, q, kind, ctx);
          for (int i = 0; i < n; ++i) {
            Complex acc{1.0, 0.0};
            for (int j = 0; j < i; ++j)
              acc *= h.gamma * (1.0 - h.alpha * ctx.omega_pow(j)) /
                     (1.0 - h.beta * ctx.omega_pow(j));
            CHECK(std::abs(acc - t.values[i]) <
                  1e-10 * (1.0 + std::abs(t.values[i])));
          }
        }
        ++done;
      } catch (const Error&) {
      }
    }
  }
}

TEST_CASE("star-triangle ratio is spin independent") {
  for (int n = 2; n <= 4; ++n) {
    UnityContext ctx(n);
    Sampler smp(43 + n);
    int done = 0;
    while (done < 15) {
      try {
        const Moduli mod = Moduli::from_kprime(smp.uniform(0.2, 0.85), ctx);
        const RapidityPoint p = draw_pt(smp, mod, ctx);
        const RapidityPoint q = draw_pt(smp, mod, ctx);
        const RapidityPoint r = draw_pt(smp, mod, ctx);
        const StarTriangleReport rep = star_triangle_check(p, q, r, ctx);
        CHECK(rep.pass);
        CHECK(rep.spin_spread < 1e-10);
        // one assignment agrees with the mean
        const Complex one = star_triangle_ratio(p, q, r, 0, 1, 0, ctx);
        CHECK(std::abs(one - rep.mean_ratio) <
              1e-9 * (1.0 + std::abs(rep.mean_ratio)));
        ++done;
      } catch (const Error&) {
      }
    }
  }
}

TEST_CASE("order parameter formula") {
  // Ising magnetization exponent 1/8 at N = 2
  CHECK(order_parameter(1, 2, 0.6) ==
        doctest::Approx(std::pow(1.0 - 0.36, 0.125)).epsilon(1e-15));
  for (int N = 2; N <= 7; ++N)
    for (int n = 1; n <= N; ++n)
      for (double kp : {0.1, 0.45, 0.9}) {
        const double want =
            std::pow(1.0 - kp * kp,
                     n * (N - n) / (2.0 * N * N));
        CHECK(order_parameter(n, N, kp) == doctest::Approx(want).epsilon(1e-15));
        if (n < N)
          CHECK(order_parameter(n, N, kp) ==
                doctest::Approx(order_parameter(N - n, N, kp)).epsilon(1e-15));
      }
  CHECK(order_parameter(3, 3, 0.5) == 1.0);
}
