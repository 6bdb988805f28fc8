/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tfp/subordinator.hpp"

#include <cmath>
#include <limits>

#include "tfp/quadrature.hpp"
#include "tfp/special.hpp"

namespace tfp {

DensityEval::DensityEval(BernsteinSpec spec, DensityMethod method,
                         int contour_nodes, double tol)
    : spec_(std::move(spec)), method_(method), nodes_(contour_nodes),
      tol_(tol) {
  if (contour_nodes < 16) {
    throw config_error("DensityEval: contour node count must be at least 16");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw config_error("DensityEval: tolerance must be positive and finite");
  }
  if (method == DensityMethod::StableScaling &&
      spec_.kind() != BernsteinKind::Stable) {
    throw config_error(
        "DensityEval: the scaling method applies only to a pure power "
        "exponent");
  }
  if (method == DensityMethod::ContourInversion && !spec_.analytic()) {
    throw unsupported_error(
        "DensityEval: contour inversion needs an exponent with a complex "
        "extension; tabulated specs have none");
  }
}

double DensityEval::density(double r, double t) const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw domain_error("density: requires finite r > 0");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("density: requires finite t > 0");
  }
  switch (method_) {
    case DensityMethod::StableScaling:
      return density_scaling(r, t);
    case DensityMethod::ContourInversion:
      return density_contour(r, t);
    case DensityMethod::Auto:
    default:
      break;
  }
  if (spec_.kind() == BernsteinKind::Stable) return density_scaling(r, t);
  return density_contour(r, t);
}

double DensityEval::density_scaling(double r, double t) const {
  const double b = spec_.beta();
  const double pref = std::pow(r, -1.0 / b);
  const double x = t * pref;
  // The density vanishes faster than any power at both ends of the scaling
  // variable, so an underflowed argument maps to an exact zero.
  if (pref == 0.0 || x == 0.0 || !std::isfinite(x)) return 0.0;
  return pref * special::stable_density(b, x);
}

double DensityEval::tail_exponent(double r, double u, double* lam_out) const {
  if (lam_out) *lam_out = std::numeric_limits<double>::infinity();
  const double y = u / r;
  if (!(y > 0.0) || !std::isfinite(y)) {
    return std::numeric_limits<double>::infinity();
  }
  double ls;
  try {
    ls = spec_.phi_prime_inverse(y);
  } catch (const solver_error&) {
    // The saddle sits beyond the top of the double range; the exponent is
    // far past any representable density.
    return std::numeric_limits<double>::infinity();
  }
  if (!(ls >= 0.0) || !std::isfinite(ls)) {
    return std::numeric_limits<double>::infinity();
  }
  if (lam_out) *lam_out = ls;
  if (ls == 0.0) return 0.0;
  const double val = r * spec_.phi(ls) - ls * u;
  // Overflow in either term only happens when the exponent itself is huge.
  if (!std::isfinite(val)) return std::numeric_limits<double>::infinity();
  return std::max(val, 0.0);
}

double DensityEval::density_contour(double r, double t) const {
  if (!spec_.analytic()) {
    throw unsupported_error(
        "density: contour inversion needs an exponent with a complex "
        "extension; tabulated specs have none");
  }
  // Size cap on the true value, used to tell a zero that the contour sum
  // cannot resolve from a genuine inversion failure.  In the few-jumps
  // regime r phi(1/t) <= 1/2 the density is comparable to r phi(1/t)/t
  // with universal constants.  Otherwise the lower-tail saddle gives
  // exp(-I) times an algebraic factor bounded by max(lam, 1/t); deep in
  // that tail the contour terms carry exponents of order +I while the
  // result shrinks like exp(-I), so the sum drowns in cancellation noise
  // (or overflows before the first pass completes), and the exponent check
  // must run before any pass.
  const double x = r * spec_.phi(1.0 / t);
  double cap;
  int n_lo = nodes_;
  int n_top = 640;
  if (x <= 0.5) {
    cap = 20.0 * x / t;
    if (cap <= 1e-250) return 0.0;
  } else {
    double lam = 0.0;
    const double i1 = tail_exponent(r, t, &lam);
    if (!std::isfinite(i1) || i1 > 650.0) return 0.0;
    cap = std::exp(-i1) * std::max(lam, 1.0 / t);
    // The contour only resolves an exp(-I) tail value once its width
    // parameter 0.4 n / t reaches the saddle point, so in the tail zone
    // the pass ladder starts at about 2.5 lam t nodes; passes below that
    // see only truncation garbage and would be wasted (with the exponent
    // capped at 650 the start stays bounded).
    const double need = 2.5 * lam * t;
    if (need > (double)n_top) {
      while (n_lo < need && n_lo < 5120) n_lo *= 2;
      n_top = 4 * n_lo;
    }
  }

  auto log_transform = [this, r](const std::complex<double>& s) {
    return -r * spec_.phi(s);
  };
  // Pairwise pass agreement plateaus a little under 1e-7 relative in
  // doubles; a tighter bar only pushes convergence onto noisier
  // high-node pairs while the accepted low pass is already far better.
  const InversionResult inv =
      laplace_invert(log_transform, t, std::max(tol_, 1e-7), n_lo, n_top);
  // When the cap sits below the cancellation noise the true value is
  // indistinguishable from zero; report it as such.
  if (cap <= 3.0 * inv.error) return 0.0;
  if (!inv.converged) {
    // Deep in the tail the relative bar can stay out of reach while the
    // final pair of passes has locked onto the value itself; a tail value
    // known to thirty percent is still meaningful there.
    if (std::isfinite(inv.value) && inv.value > 0.0 &&
        inv.error <= 0.3 * inv.value) {
      return inv.value;
    }
    throw accuracy_error("density: contour inversion did not converge",
                         inv.error, tol_);
  }
  if (inv.value < 0.0) {
    if (-inv.value <= 3.0 * inv.error) return 0.0;
    throw solver_error(
        "density: inversion returned a negative value beyond its noise "
        "level");
  }
  return inv.value;
}

double DensityEval::potential_density(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("potential_density: requires finite t > 0");
  }
  if (spec_.kind() == BernsteinKind::Stable &&
      method_ != DensityMethod::ContourInversion) {
    const double b = spec_.beta();
    return std::pow(t, b - 1.0) / special::gamma_fn(b);
  }
  if (!spec_.analytic()) {
    throw unsupported_error(
        "potential_density: contour inversion needs an exponent with a "
        "complex extension; tabulated specs have none");
  }
  auto log_transform = [this](const std::complex<double>& s) {
    return -std::log(spec_.phi(s));
  };
  const InversionResult inv =
      laplace_invert(log_transform, t, std::max(tol_, 1e-7), nodes_);
  if (!inv.converged) {
    throw accuracy_error(
        "potential_density: contour inversion did not converge", inv.error,
        tol_);
  }
  // The potential density is positive of order t^{beta-1}; a value swamped
  // by its own noise estimate indicates the inversion failed silently.
  if (!(inv.value > 0.0) || inv.error > 1e-3 * inv.value) {
    throw accuracy_error(
        "potential_density: inversion noise exceeds the value", inv.error,
        tol_);
  }
  return inv.value;
}

double DensityEval::w_conv_G(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("w_conv_G: requires finite t > 0");
  }
  // Split at t/2 so each factor's endpoint singularity (w at 0+, G at 0+)
  // sits at the left end of its own integral, where the nodes carry exact
  // offsets.
  const double half = 0.5 * t;
  const auto left = quad::tanh_sinh(
      [this, t](double s) { return spec_.levy_tail(s) * potential_density(t - s); },
      0.0, half, tol_);
  const auto right = quad::tanh_sinh(
      [this, t](double u) { return potential_density(u) * spec_.levy_tail(t - u); },
      0.0, half, tol_);
  return left.value + right.value;
}

double DensityEval::inverse_density(double t, double r) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("inverse_density: requires finite t > 0");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw domain_error("inverse_density: requires finite r > 0");
  }
  // Same split as w_conv_G: the integrable w singularity lands on a left
  // endpoint, and density(r, s -> 0+) vanishes smoothly.
  const double half = 0.5 * t;
  const auto left = quad::tanh_sinh(
      [this, t, r](double s) { return spec_.levy_tail(t - s) * density(r, s); },
      0.0, half, tol_);
  const auto right = quad::tanh_sinh(
      [this, t, r](double u) { return spec_.levy_tail(u) * density(r, t - u); },
      0.0, half, tol_);
  return left.value + right.value;
}

double DensityEval::survival(double r, double t) const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw domain_error("survival: requires finite r > 0");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("survival: requires finite t > 0");
  }
  const auto cdf = quad::tanh_sinh(
      [this, r](double s) { return density(r, s); }, 0.0, t, tol_, 1e-14);
  const double v = 1.0 - cdf.value;
  return std::min(std::max(v, 0.0), 1.0);
}

double DensityEval::mode_estimate(double r) const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw domain_error("mode_estimate: requires finite r > 0");
  }
  // The mode of density(r, .) sits near 1/phi_inverse(1/r); six decades
  // around that scale bracket it for every supported exponent.
  const double scale = 1.0 / spec_.phi_inverse(1.0 / r);
  return quad::golden_max_log(
      [this, r](double t) { return density(r, t); }, 1e-3 * scale,
      1e3 * scale);
}

double DensityEval::envelope_density(const EnvelopeRegimeL& regime, double r,
                                     double t) const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw domain_error("envelope_density: requires finite r > 0");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("envelope_density: requires finite t > 0");
  }
  if (!(regime.L > 0.0) || !(regime.c_exp > 0.0)) {
    throw domain_error("envelope_density: regime constants must be positive");
  }
  const double x = r * spec_.phi(1.0 / t);
  if (x <= regime.L) return x / t;
  double ls;
  try {
    ls = spec_.phi_prime_inverse(t / r);
  } catch (const solver_error&) {
    return 0.0;  // saddle beyond the double range: the envelope underflows
  }
  return std::exp(-regime.c_exp * t * ls) / t;
}

}  // namespace tfp
