/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_SPECIAL_HPP
#define TFP_SPECIAL_HPP

namespace tfp::special {

// Gamma(x) for x > 0 (or non-integer negative x).  Relative error of the
// underlying libm implementation is well below 1e-13 on the range used here.
double gamma_fn(double x);
double lgamma_fn(double x);  // log |Gamma(x)|, x > 0

// Scaled complementary error function exp(x^2) erfc(x) for x >= 0, accurate
// for large x where erfc underflows.
double erfcx_fn(double x);

// Density g_beta(x), x > 0, of the one-sided stable law with Laplace
// transform exp(-lambda^beta), 0 < beta < 1.
//
//   Zolotarev:  g(x) = b/(1-b) x^{-1/(1-b)} Int_0^1 A(u) exp(-A(u) s) du,
//               s = x^{-b/(1-b)},
//               A(u) = [sin(b pi u)^b sin((1-b) pi u)^{1-b} / sin(pi u)]^{1/(1-b)}
//   Series:     g(x) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(b k + 1)/k!
//                      sin(pi b k) x^{-b k - 1}        (used for x >= 2)
//   ClosedHalf: g(x) = x^{-3/2} exp(-1/(4x)) / (2 sqrt(pi))   (beta = 1/2)
enum class StableMethod { Auto, Series, Zolotarev, ClosedHalf };
double stable_density(double beta, double x, StableMethod method = StableMethod::Auto,
                      double tol = 1e-11);

// Two-parameter Mittag-Leffler function E_{beta,gamma}(z) for real z,
// 0 < beta < 1, 0 < gamma <= 1 + beta.
//
// Auto selection: the power series is used when it is numerically safe
// (peak term small enough that cancellation for z < 0 stays below ~1e-11
// absolute) and |z| <= 5; otherwise, for z < 0, the integral representation
//   E(z) = Int_0^inf K(r) dr,
//   K(r) = (1/(pi b)) r^{(1-g)/b} e^{-r^{1/b}}
//          [r sin(pi(1-g)) - z sin(pi(1-g+b))] / (r^2 - 2 r z cos(pi b) + z^2).
// For beta = 1/2 the closed forms via erfcx are used:
//   E_{1/2,1}(z)   = exp(z^2) erfc(-z)
//   E_{1/2,1/2}(z) = 1/sqrt(pi) + z exp(z^2) erfc(-z)
enum class MlMethod { Auto, Series, IntegralRep, ClosedHalf };
double mittag_leffler(double beta, double gamma, double z,
                      MlMethod method = MlMethod::Auto, double tol = 1e-12);

// Density in r of the inverse one-sided stable subordinator at time t:
//   h_t(r) = (t/beta) r^{-1-1/beta} g_beta(t r^{-1/beta}),   t, r > 0.
double inverse_stable_density(double beta, double t, double r);

}  // namespace tfp::special

#endif
