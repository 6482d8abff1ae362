#pragma once

#include <vector>

#include "cyclo/context.hpp"

namespace cyclo {

/// Parameter lists of a truncated (p+1)Phi_p at the root of unity.
/// The leading series parameter omega is implicit: only the p free
/// alphas are stored.
struct HypSpec {
  UnityContext ctx;
  std::vector<Complex> alphas;
  std::vector<Complex> betas;
  Complex z{};
};

struct PredicateResult {
  bool ok = false;
  double residual = 0.0;
};

/// The finite sum sum_{l=0}^{N-1} prod_j (alpha_j; w)_l / (beta_j; w)_l z^l.
/// Pochhammer ratios are updated incrementally (one multiply/divide per
/// factor per term) and accumulated with compensated summation.
Complex phi_eval(const HypSpec& spec);

/// Cyclicity predicate: z^N prod (1 - alpha_j^N) / prod (1 - beta_j^N) = 1.
PredicateResult is_cyclic(const HypSpec& spec);

/// Saalschutz predicate: omega^2 prod alpha_j = prod beta_j and z = omega.
PredicateResult is_saalschutz(const HypSpec& spec);

}  // namespace cyclo
