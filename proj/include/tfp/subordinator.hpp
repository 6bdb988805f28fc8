/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_SUBORDINATOR_HPP
#define TFP_SUBORDINATOR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "tfp/bernstein.hpp"
#include "tfp/errors.hpp"

namespace tfp {

enum class DensityMethod { Auto, StableScaling, ContourInversion };

// Regime threshold and exponential constant for the two-branch density
// envelope: below r phi(1/t) = L the envelope is r phi(1/t)/t, above it
// (1/t) exp(-c_exp t lambda*) with lambda* the generalized inverse of phi'
// at t/r.
struct EnvelopeRegimeL {
  double L = 1.0;
  double c_exp = 1.0;
};

struct InversionResult {
  double value = 0.0;
  double error = 0.0;  // doubling difference, floored at the roundoff level
  int nodes = 0;       // node count of the accepted pass
  bool converged = false;
};

namespace detail {

// One pass of the fixed cot-contour inversion with n nodes:
//   f(t) ~ (rho/n) [ e^{rho t + L(rho)}/2
//                    + sum_k Re( e^{t s_k + L(s_k)} (1 + i sigma_k) ) ],
//   s(theta) = rho theta (cot theta + i),  theta_k = k pi / n,
//   sigma(theta) = theta + (theta cot theta - 1) cot theta,
//   rho = 2n/(5t).
// The transform enters through its logarithm L = log F: on the deep left of
// the contour e^{s t} underflows while F can overflow, and only their fused
// exponent is representable.  max_mag reports the largest term magnitude,
// which sets the cancellation roundoff of the alternating sum.
template <class F>
double invert_pass(F&& log_transform, double t, int n, double& max_mag) {
  const double pi = 3.14159265358979323846;
  const double rho = 0.4 * n / t;
  const std::complex<double> l0 =
      log_transform(std::complex<double>(rho, 0.0));
  double acc = 0.5 * std::exp(rho * t + l0.real()) * std::cos(l0.imag());
  max_mag = std::abs(acc);
  for (int k = 1; k < n; ++k) {
    const double th = k * pi / n;
    const double cot = std::cos(th) / std::sin(th);
    const std::complex<double> s(rho * th * cot, rho * th);
    const double sigma = th + (th * cot - 1.0) * cot;
    const std::complex<double> term =
        std::exp(s * t + log_transform(s)) * std::complex<double>(1.0, sigma);
    acc += term.real();
    max_mag = std::max(max_mag, std::abs(term.real()));
  }
  max_mag *= rho / n;  // report in the units of the returned value
  return acc * rho / n;
}

}  // namespace detail

// Numerical Laplace inversion on the fixed cot-shaped contour, node count
// doubled from n_start until two passes agree.  The transform is supplied
// as its logarithm, must be analytic to the right of the contour, and is
// evaluated at complex points with negative real part.  The error is the
// doubling difference floored at the cancellation roundoff estimate;
// agreement down to that floor is reported as converged with the floor as
// the error.
template <class F>
InversionResult laplace_invert(F&& log_transform, double t,
                               double rel_tol = 1e-9, int n_start = 20,
                               int n_max = 640) {
  if (!(t > 0.0)) throw domain_error("laplace_invert: requires t > 0");
  InversionResult out;
  double max_mag = 0.0;
  double prev = detail::invert_pass(log_transform, t, n_start, max_mag);
  double prev_floor = max_mag * 1e-15 * std::sqrt((double)n_start) * 0.4;
  double last_diff = std::numeric_limits<double>::infinity();
  for (int n = 2 * n_start; n <= n_max; n *= 2) {
    const double cur = detail::invert_pass(log_transform, t, n, max_mag);
    const double floor = max_mag * 1e-15 * std::sqrt((double)n) * 0.4;
    const double diff = std::abs(cur - prev);
    // Roundoff grows with n while the discretization error shrinks, so when
    // both passes are finite the one with the smaller floor is the better
    // value once the two agree.  The floor estimate is a one-sigma figure;
    // observed noise runs several times higher, hence the widening factor.
    const double tol =
        std::max(rel_tol * std::abs(cur), 8.0 * (prev_floor + floor));
    if (std::isfinite(cur) && std::isfinite(prev) && diff <= tol) {
      out.value = prev;
      out.error = std::max(diff, prev_floor);
      out.nodes = n / 2;
      out.converged = true;
      return out;
    }
    if (std::isfinite(cur) && std::isfinite(prev)) last_diff = diff;
    prev = cur;
    prev_floor = floor;
  }
  // Not converged to the requested bar: report the final pass together with
  // the final pairwise disagreement as the uncertainty, so the caller can
  // still judge whether the value is order-of-magnitude locked.
  out.value = prev;
  out.error = std::isfinite(prev)
                  ? std::max(last_diff, prev_floor)
                  : std::numeric_limits<double>::infinity();
  out.nodes = n_max;
  out.converged = false;
  return out;
}

// Transition-density evaluator for the subordinator S with Laplace exponent
// phi: density(r, t) is the density of S_r in t, recovered either from the
// stable scaling form r^{-1/beta} g_beta(t r^{-1/beta}) or by inverting
// lambda -> exp(-r phi(lambda)).  Also provides the potential density G
// (inverse transform of 1/phi), the inverse-subordinator density by the
// convolution of the Levy tail w with the transition density, survival
// probabilities, the density mode, and the two-regime comparison envelope.
//
// Immutable after construction; all evaluations are pure.
class DensityEval {
public:
  explicit DensityEval(BernsteinSpec spec,
                       DensityMethod method = DensityMethod::Auto,
                       int contour_nodes = 20, double tol = 1e-9);

  const BernsteinSpec& spec() const noexcept { return spec_; }
  DensityMethod method() const noexcept { return method_; }

  // Density of S_r at time value t.
  double density(double r, double t) const;

  // Potential density G(t); for a stable exponent t^{beta-1}/Gamma(beta).
  double potential_density(double t) const;

  // Int_0^t w(s) G(t - s) ds; equals 1 for every t in exact arithmetic.
  double w_conv_G(double t) const;

  // Density at r of the inverse E_t = inf{s : S_s > t}, computed as
  // Int_0^t w(t - s) density(r, s) ds.
  double inverse_density(double t, double r) const;

  // P(S_r >= t) = 1 - Int_0^t density(r, s) ds.
  double survival(double r, double t) const;

  // argmax_t density(r, t), golden-section search on
  // [1e-3, 1e3] / phi_inverse(1/r).
  double mode_estimate(double r) const;

  // Two-branch comparison envelope for density(r, .) at t.
  double envelope_density(const EnvelopeRegimeL& regime, double r,
                          double t) const;

private:
  double density_scaling(double r, double t) const;
  double density_contour(double r, double t) const;
  // Legendre-type exponent I = sup_l (r phi(l) - l u), attained at the
  // saddle point lam (written to lam_out when given); the density at u is
  // exp(-I) times an algebraic factor no larger than max(lam, 1/u).
  double tail_exponent(double r, double u, double* lam_out = nullptr) const;

  BernsteinSpec spec_;
  DensityMethod method_;
  int nodes_;
  double tol_;
};

}  // namespace tfp

#endif
