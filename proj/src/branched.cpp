#include "cyclo/branched.hpp"

#include <cmath>

namespace cyclo {

namespace {

// 1 - w with a cut-distance check against (-inf, 0]; used by every
// principal log in this module.
Complex checked_one_minus(Complex w, double tol, const char* what) {
  const Complex u = 1.0 - w;
  if (dist_to_negative_axis(u) <= tol)
    throw OnCutError(std::string(what) + ": argument within tolerance of a branch cut");
  return u;
}

}  // namespace

Complex pochhammer(Complex x, long l, const UnityContext& ctx) {
  Complex acc{1.0, 0.0};
  for (long j = 0; j < l; ++j) acc *= 1.0 - x * ctx.omega_pow(j);
  return acc;
}

Complex delta(Complex z, const UnityContext& ctx) {
  const Complex w = ctx.pow_n(z);
  checked_one_minus(w, ctx.config().on_cut_tol, "delta");
  return std::exp(log_one_minus(w) / static_cast<double>(ctx.n()));
}

Complex p_func(Complex z, const UnityContext& ctx) {
  const int n = ctx.n();
  Complex log_sum{0.0, 0.0};
  for (int j = 1; j < n; ++j) {
    const Complex u = checked_one_minus(ctx.omega_pow(j) * z,
                                        ctx.config().on_cut_tol, "p_func");
    log_sum += (static_cast<double>(j) / n) * std::log(u);
  }
  return std::exp(log_sum);
}

Complex p0(Complex z, const UnityContext& ctx) {
  const Complex d = delta(z, ctx);
  const double half = 0.5 * (ctx.n() - 1);
  return p_func(z, ctx) * std::exp(-half * std::log(d));
}

Complex cyclic_pochhammer(Complex z, long n, const UnityContext& ctx) {
  const long r = ctx.mod_n(n);
  return pochhammer(z, r, ctx) / cpow_int(delta(z, ctx), r);
}

int sector_index(Complex z, const UnityContext& ctx) {
  if (z == Complex{0.0, 0.0})
    throw ZeroArgumentError("sector_index: z = 0 has no argument");
  const int n = ctx.n();
  int s = static_cast<int>(std::floor(n * arg_unit(z) / kTwoPi));
  if (s < 0) s = 0;
  if (s >= n) s = n - 1;
  return s;
}

BranchedValue BranchedValue::principal(Complex v, const UnityContext& ctx) {
  BranchedValue b;
  b.value = v;
  b.delta = cyclo::delta(v, ctx);
  b.sector = sector_index(v, ctx);
  return b;
}

}  // namespace cyclo
