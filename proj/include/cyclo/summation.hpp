#pragma once

#include "cyclo/branched.hpp"
#include "cyclo/hyp.hpp"

namespace cyclo {

/// Input of the closed-form 2Phi1 product evaluation. k in {0..N-1}
/// selects gamma = omega^k Delta(beta)/Delta(alpha) among its N cyclic
/// variants.
struct SummationInput {
  BranchedValue alpha;
  BranchedValue beta;
  int k = 0;
};

enum class Region { I, II, III, IIPrime, IIIPrime };

struct RegionTag {
  Region region = Region::I;
  bool im_alpha_positive = true;
};

const char* region_name(Region r);

struct DerivedQuantities {
  int m = 0;  // floor(N arg(alpha) / 2 pi)
  int n = 0;  // floor(N arg(beta) / 2 pi)
  Complex gamma{};
  Complex delta_q{};  // beta / alpha
  Complex epsilon{};  // beta / (alpha gamma)
};

DerivedQuantities derived_quantities(const SummationInput& in,
                                     const UnityContext& ctx);

/// Piecewise phase factor of the product formula:
/// I -> 1, II -> w^k, III -> w^{m-n+k}, II' -> w^{-k}, III' -> w^{n-m-k}.
Complex phase_factor(const RegionTag& tag, int m, int n, int k,
                     const UnityContext& ctx);

/// Exponent form of phase_factor, reduced to {0..N-1}.
int region_phase_exponent(const RegionTag& tag, int m, int n, int k,
                          const UnityContext& ctx);

/// Cut-region classification in the beta^N-plane for fixed alpha.
/// Implemented by analytic continuation along a path from a reference
/// point in region I, accumulating the branch jumps of the product
/// formula at each cut crossing; no series evaluation is involved.
RegionTag classify_region(const SummationInput& in, const UnityContext& ctx);

/// The phase exponent the classifier assigns (F = omega^exponent).
int classified_phase_exponent(const SummationInput& in,
                              const UnityContext& ctx);

/// Product formula with the phase factor F forced to 1.
Complex closed_form_unphased(const SummationInput& in, const UnityContext& ctx);

/// Full product-form value of the corresponding 2Phi1, including F.
Complex closed_form(const SummationInput& in, const UnityContext& ctx);

/// The 2Phi1 spec (p = 1, z = gamma) matching this input.
HypSpec to_hyp_spec(const SummationInput& in, const UnityContext& ctx);

/// Test instrument: the exponent s in {0..N-1} minimizing
/// |phi_eval - omega^s closed_form_unphased|; errors if even the best
/// phase leaves a residual above tolerance.
int oracle_phase(const SummationInput& in, const UnityContext& ctx);

/// Recover k from a given gamma by rounding N arg(gamma Delta(alpha) /
/// Delta(beta)) / 2 pi; fails if the reconstruction residual exceeds 1e-8.
int infer_k(Complex gamma, const BranchedValue& alpha,
            const BranchedValue& beta, const UnityContext& ctx);

}  // namespace cyclo
