#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyclo/sampling.hpp"
#include "cyclo/summation.hpp"

using namespace cyclo;

namespace {

SummationInput draw(Sampler& smp, const UnityContext& ctx) {
  return {BranchedValue::principal(smp.annulus(0.25, 3.0), ctx),
          BranchedValue::principal(smp.annulus(0.25, 3.0), ctx),
          smp.uniform_int(0, ctx.n() - 1)};
}

}  // namespace

TEST_CASE("closed form matches the direct sum") {
  for (int n = 2; n <= 6; ++n) {
    UnityContext ctx(n);
    Sampler smp(101 + n);
    int done = 0;
    while (done < 60) {
      try {
        const SummationInput in = draw(smp, ctx);
        const Complex lhs = closed_form(in, ctx);
        const Complex rhs = phi_eval(to_hyp_spec(in, ctx));
        CHECK(rel_residual(lhs, rhs) < 1e-10);
        ++done;
      } catch (const Error&) {
      }
    }
  }
}

TEST_CASE("derived quantities satisfy their defining relations") {
  UnityContext ctx(5);
  Sampler smp(7);
  int done = 0;
  while (done < 50) {
    try {
      const SummationInput in = draw(smp, ctx);
      const DerivedQuantities dq = derived_quantities(in, ctx);
      CHECK(dq.m == in.alpha.sector);
      CHECK(dq.n == in.beta.sector);
      const Complex g = ctx.omega_pow(in.k) * in.beta.delta / in.alpha.delta;
      CHECK(std::abs(dq.gamma - g) < 1e-12 * (1.0 + std::abs(g)));
      CHECK(std::abs(dq.delta_q - in.beta.value / in.alpha.value) < 1e-12);
      CHECK(std::abs(dq.epsilon - dq.delta_q / dq.gamma) < 1e-12);
      ++done;
    } catch (const Error&) {
    }
  }
}

TEST_CASE("phase factor table") {
  UnityContext ctx(5);
  const int m = 3, n = 1, k = 2;
  CHECK(std::abs(phase_factor({Region::I, true}, m, n, k, ctx) - 1.0) == 0.0);
  CHECK(std::abs(phase_factor({Region::II, true}, m, n, k, ctx) -
                 ctx.omega_pow(k)) == 0.0);
  CHECK(std::abs(phase_factor({Region::III, true}, m, n, k, ctx) -
                 ctx.omega_pow(m - n + k)) == 0.0);
  CHECK(std::abs(phase_factor({Region::IIPrime, false}, m, n, k, ctx) -
                 ctx.omega_pow(-k)) == 0.0);
  CHECK(std::abs(phase_factor({Region::IIIPrime, false}, m, n, k, ctx) -
                 ctx.omega_pow(n - m - k)) == 0.0);
  CHECK(region_phase_exponent({Region::IIPrime, false}, m, n, k, ctx) ==
        ctx.mod_n(-k));
}

TEST_CASE("region names") {
  CHECK(std::string(region_name(Region::I)) == "I");
  CHECK(std::string(region_name(Region::II)) == "II");
  CHECK(std::string(region_name(Region::III)) == "III");
  CHECK(std::string(region_name(Region::IIPrime)) == "II'");
  CHECK(std::string(region_name(Region::IIIPrime)) == "III'");
}

TEST_CASE("classifier agrees with the series oracle") {
  for (int n = 2; n <= 6; ++n) {
    UnityContext ctx(n);
    Sampler smp(211 + n);
    int done = 0;
    while (done < 40) {
      try {
        const SummationInput in = draw(smp, ctx);
        const int cls = classified_phase_exponent(in, ctx);
        const int orc = oracle_phase(in, ctx);
        CHECK(cls == orc);
        ++done;
      } catch (const Error&) {
      }
    }
  }
}

TEST_CASE("classifier sign convention follows Im alpha^N") {
  UnityContext ctx(3);
  Sampler smp(5);
  int done = 0;
  while (done < 60) {
    try {
      const SummationInput in = draw(smp, ctx);
      const RegionTag tag = classify_region(in, ctx);
      const bool pos = ctx.pow_n(in.alpha.value).imag() > 0.0;
      CHECK(tag.im_alpha_positive == pos);
      if (tag.region == Region::II || tag.region == Region::III)
        CHECK(tag.im_alpha_positive);
      if (tag.region == Region::IIPrime || tag.region == Region::IIIPrime)
        CHECK_FALSE(tag.im_alpha_positive);
      ++done;
    } catch (const Error&) {
    }
  }
}

TEST_CASE("real alpha sits on a region boundary") {
  UnityContext ctx(4);
  const SummationInput in{
      BranchedValue::principal(Complex{0.7, 0.0}, ctx),
      BranchedValue::principal(Complex{0.5, 0.4}, ctx), 1};
  CHECK_THROWS_AS(classify_region(in, ctx), OnBoundaryError);
}

TEST_CASE("k recovery from gamma") {
  UnityContext ctx(5);
  Sampler smp(13);
  int done = 0;
  while (done < 50) {
    try {
      const SummationInput in = draw(smp, ctx);
      const DerivedQuantities dq = derived_quantities(in, ctx);
      CHECK(infer_k(dq.gamma, in.alpha, in.beta, ctx) == in.k);
      ++done;
    } catch (const Error&) {
    }
  }
}

TEST_CASE("hyp spec mirrors the input") {
  UnityContext ctx(3);
  const SummationInput in{
      BranchedValue::principal(Complex{0.4, 0.3}, ctx),
      BranchedValue::principal(Complex{-0.2, 0.6}, ctx), 2};
  const HypSpec spec = to_hyp_spec(in, ctx);
  REQUIRE(spec.alphas.size() == 1);
  CHECK(spec.alphas[0] == in.alpha.value);
  CHECK(spec.betas[0] == in.beta.value);
  const DerivedQuantities dq = derived_quantities(in, ctx);
  CHECK(std::abs(spec.z - dq.gamma) == 0.0);
  CHECK(is_cyclic(spec).ok);
}
