#pragma once

#include <vector>

#include "cyclo/transforms.hpp"

namespace cyclo {

/// Curve moduli with k^2 + k'^2 = 1.
struct Moduli {
  Complex k{}, kprime{};

  Moduli() = default;
  Moduli(Complex k, Complex kprime, const UnityContext& ctx);

  /// Real k' in (0, 1); k = sqrt(1 - k'^2).
  static Moduli from_kprime(double kprime, const UnityContext& ctx);
};

enum class LambdaBranch { Inside, Outside };  // |lambda| < 1 or > 1

/// A point (x, y, mu, lambda, t) on the rapidity curve
///   y^N = (1 - k' lambda)/k,  x^N = (1 - k'/lambda)/k,  mu^N = lambda,
///   lambda + 1/lambda = (1 + k'^2 - k^2 t^N)/k',  t = x y.
struct RapidityPoint {
  Complex x{}, y{}, mu{}, lambda{}, t{};
  Moduli moduli;
  LambdaBranch branch = LambdaBranch::Inside;
  int x_index = 0, y_index = 0, mu_index = 0;  // omega-power choices
};

/// Max relative residual of the four curve equations.
double curve_residual(const RapidityPoint& p, const UnityContext& ctx);

/// Solve the curve for given t. The quadratic fixes lambda (by branch);
/// x, y are principal N-th roots adjusted by omega powers so that
/// x y = t; mu's omega power is a free input.
RapidityPoint solve_rapidity(const Moduli& moduli, Complex t,
                             LambdaBranch branch, const UnityContext& ctx,
                             int mu_index = 0, int x_index = 0);

/// W_pq(n)/W_pq(0) = (mu_p/mu_q)^n prod_{j=1}^n (y_q - x_p w^j)/(y_p - x_q w^j).
/// Literal product, n >= 0; periodicity at n = N is a property of curve
/// points, not an implementation shortcut.
Complex weight_W(const RapidityPoint& p, const RapidityPoint& q, long n,
                 const UnityContext& ctx);

/// Wbar_pq(n)/Wbar_pq(0) = (mu_p mu_q)^n prod_{j=1}^n (w x_p - x_q w^j)/(y_q - y_p w^j).
Complex weight_Wbar(const RapidityPoint& p, const RapidityPoint& q, long n,
                    const UnityContext& ctx);

enum class WeightKind { W, Wbar };

/// Normalized table W(0..N-1), W(0) = 1.
WeightTable weight_table(const RapidityPoint& p, const RapidityPoint& q,
                         WeightKind kind, const UnityContext& ctx);

/// The product-form parameters (alpha, beta, gamma) reproducing the
/// weights: validated against the defining product at every n before
/// being returned.
Phi1Params weights_to_hyp(const RapidityPoint& p, const RapidityPoint& q,
                          WeightKind kind, const UnityContext& ctx);

/// Star / triangle ratio L(a,b,c)/R(a,b,c) for one spin assignment.
Complex star_triangle_ratio(const RapidityPoint& p, const RapidityPoint& q,
                            const RapidityPoint& r, int a, int b, int c,
                            const UnityContext& ctx);

struct StarTriangleReport {
  Complex mean_ratio{};
  double spin_spread = 0.0;  // (max - min)/|mean| over all N^3 assignments
  bool pass = false;
};

/// Sweeps all N^3 spin assignments; the ratio must be spin independent.
/// The constant itself is measured, never asserted.
StarTriangleReport star_triangle_check(const RapidityPoint& p,
                                       const RapidityPoint& q,
                                       const RapidityPoint& r,
                                       const UnityContext& ctx);

/// <sigma_0^n> = (1 - k'^2)^{n(N-n)/(2 N^2)} for 1 <= n <= N, k' in (0,1).
double order_parameter(int n, int N, double kprime);

}  // namespace cyclo
