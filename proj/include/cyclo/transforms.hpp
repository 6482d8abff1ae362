#pragma once

#include <array>
#include <vector>

#include "cyclo/branched.hpp"
#include "cyclo/hyp.hpp"

namespace cyclo {

/// Cyclic 2Phi1 parameter triple: gamma^N = (1 - beta^N)/(1 - alpha^N).
struct Phi1Params {
  Complex alpha{}, beta{}, gamma{};

  /// gamma built from the principal Delta ratio times omega^k.
  static Phi1Params principal(Complex alpha, Complex beta,
                              const UnityContext& ctx, int k = 0);
};

/// Residual of the cyclicity constraint on the triple.
double cyclicity_residual(const Phi1Params& p, const UnityContext& ctx);

/// Phi(alpha, beta; gamma) via the finite sum.
Complex phi1_eval(const Phi1Params& p, const UnityContext& ctx);

/// Fourier transform as a parameter map:
/// (alpha, beta, gamma) -> (gamma, w alpha gamma / beta, w / beta).
/// Has exact order 4 (Z4).
Phi1Params mu_transform(const Phi1Params& p, const UnityContext& ctx);

struct Z4Report {
  std::array<Phi1Params, 4> orbit;
  std::array<Complex, 4> values;
  // |F0 F1 - N|/N, |F0 - F2|, |F1 - F3|, |F2 F3 - N|/N (relative)
  std::array<double, 4> residuals;
  bool pass = false;
};

Z4Report verify_z4(const Phi1Params& p, const UnityContext& ctx);

/// N Boltzmann weights with mod-N periodicity contract. values[0] = 1
/// for tables produced here; an unnormalized table carries its W(0) in
/// `w0` so identity checks never see scale drift.
struct WeightTable {
  enum class Kind { W, Wbar, Dual };
  std::vector<Complex> values;
  Kind kind = Kind::W;
  Complex w0{1.0, 0.0};
};

/// W(n)/W(0) = gamma^n (alpha; w)_n / (beta; w)_n for n = 0..N-1.
WeightTable product_form_table(const Phi1Params& p, const UnityContext& ctx);

/// What(k) = sum_n w^{nk} W(n). Applying it twice gives N W(-n mod N).
WeightTable fourier_dual(const WeightTable& w, const UnityContext& ctx);

struct IdentityReport {
  Complex lhs{}, rhs{};
  double residual = 0.0;
  bool pass = false;
};

/// Phi(gamma w^n)/Phi(gamma) = ghat^n (ahat; w)_n / (bhat; w)_n with the
/// dual parameters of the Fourier transform.
IdentityReport recurrence_check(const Phi1Params& p, long n,
                                const UnityContext& ctx);

/// A 3Phi2 built from two cyclic triples; z = gamma1 gamma2 exactly.
struct Phi2Params {
  Phi1Params first, second;
  Complex z{};

  static Phi2Params from_components(const Phi1Params& c1,
                                    const Phi1Params& c2);
};

HypSpec phi2_spec(const Phi2Params& p, const UnityContext& ctx);
Complex phi2_eval(const Phi2Params& p, const UnityContext& ctx);

/// 3Phi2(gamma1 gamma2) = N^{-1} sum_k 2Phi1(w^{-k} gamma1) 2Phi1(w^k gamma2).
IdentityReport convolution_3phi2(const Phi2Params& p, const UnityContext& ctx);

struct TransformResult {
  Phi2Params params;
  Complex scale{};
  IdentityReport report;
};

/// The 3Phi2 proportionality generated by mu on one slot and mu^{-1} on
/// the other; scale computed from the two 2Phi1 series directly. Applied
/// twice it returns the original parameters.
TransformResult transform_3phi2(const Phi2Params& p, const UnityContext& ctx);

/// Same parameter map written with the tilde assignments and the scale
/// N / (2Phi1 * 2Phi1); the functional inverse of transform_3phi2.
TransformResult m_transform(const Phi2Params& p, const UnityContext& ctx);

/// alpha1 <-> alpha2 with gamma3 = Delta(beta1)/Delta(alpha2) and
/// gamma4 = z / gamma3, preserving z exactly.
Phi2Params iota_swap(const Phi2Params& p, const UnityContext& ctx);

/// Free composition of the iota and M generators up to tolerance
/// deduplication; reports the distinct parameter sets found.
std::vector<Phi2Params> explore_orbit(const Phi2Params& p,
                                      const UnityContext& ctx,
                                      size_t max_size = 256);

}  // namespace cyclo
