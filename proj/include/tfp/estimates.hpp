/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_ESTIMATES_HPP
#define TFP_ESTIMATES_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tfp/bernstein.hpp"
#include "tfp/kernels.hpp"
#include "tfp/subordinator.hpp"

namespace tfp {

// Closed envelope forms for the killed-clock kernel with a stable clock on
// power data (dimension d, space scaling alpha, clock index beta).  The
// near form applies for r <= t^{beta/alpha}, the far forms beyond it.

// Near-diagonal envelope: t^{beta-1-beta d/alpha} when d < 2 alpha,
// t^{-1-beta} log(2 t^beta / r^alpha) when d = 2 alpha,
// t^{-1-beta} / r^{d-2 alpha} when d > 2 alpha.
double H_le1(double d, double alpha, double beta, double t, double r);

// Far envelope for jump-type kernels: t^{2 beta - 1} / r^{d + alpha}.
double H_ge1_jump(double d, double alpha, double beta, double t, double r);

// Far envelope for diffusion-type kernels (alpha >= 2):
//   t^{beta-1-beta d/alpha} exp(-(r^alpha / t^beta)^{1/(alpha-beta)}).
double H_ge1_diff(double d, double alpha, double beta, double t, double r);

// Profile index n(t, r) solving 1/phi(n/t) = Phi(r/n) (equality
// normalization).  Requires the scale exponent above 1, which makes the
// log-difference strictly increasing in log n.  The closed form for a
// stable exponent and power scale is (r^alpha / t^beta)^{1/(alpha-beta)};
// the bisection route only evaluates phi and Phi and serves as the
// independent cross-check.
double n_solver(const BernsteinSpec& phi, const ScaleFunction& Phi, double t,
                double r, MRoute route = MRoute::Auto);

// Jump-type envelope for general data:
//   regime Phi(z) phi(1/t) <= 1:
//     (phi(1/t)/t) Int_{Phi(z)}^{2/phi(1/t)} r / V(Phi^{-1}(r)) dr,
//     integrated after the substitution r = e^u (smooth integrand);
//   regime >= 1: 1 / (t phi(1/t)^2 V(z) Phi(z)).
double envelope_jump(const BernsteinSpec& phi, const ScaleFunction& Phi,
                     const VolumeFunction& V, double t, double z);

// Diffusion-type envelope band.  The near regime coincides with the jump
// envelope; the far regime returns
//   [A exp(-c n), A exp(-n/c)],  A = n / (t phi(n/t) V(Phi^{-1}(1/phi(1/t))))
// with n = n_solver(phi, Phi, t, z) and c = max(c_exp, 1/c_exp); the
// dilated constants of the band are configurable because far-regime
// comparisons hold only up to exponent dilation.
std::pair<double, double> envelope_diff(const BernsteinSpec& phi,
                                        const ScaleFunction& Phi,
                                        const VolumeFunction& V, double t,
                                        double z, double c_exp);

// Diagnostic split of the killed-clock integral at r0 = 2/phi(1/t), with
// the two-branch comparison envelope substituted for the clock density:
//   I1 = Int_0^{r0} p0(r, z) env(r, t) dr,  I2 = the rest.
// Reports which regime of r carries the mass.
std::pair<double, double> q_split_I1_I2(const HeatKernelSpec& kspec,
                                        const DensityEval& eval, double t,
                                        double z);

enum class EnvelopeFamily {
  StableJump,
  StableDiffusion,
  GeneralJump,
  GeneralDiffusion
};

// A two-sided envelope for the killed-clock kernel: closed stable forms or
// quadrature-backed general forms, with a configurable exponent-dilation
// pair for the exponential far regime.
class EnvelopeSpec {
public:
  static EnvelopeSpec stable_jump(double d, double alpha, double beta);
  // The exponential far form requires alpha >= 2.
  static EnvelopeSpec stable_diffusion(double d, double alpha, double beta,
                                       double c_exp = 2.0);
  static EnvelopeSpec general_jump(BernsteinSpec phi, ScaleFunction Phi,
                                   VolumeFunction V);
  static EnvelopeSpec general_diffusion(BernsteinSpec phi, ScaleFunction Phi,
                                        VolumeFunction V, double c_exp = 2.0);

  EnvelopeFamily family() const noexcept { return family_; }
  const BernsteinSpec& phi() const noexcept { return phi_; }
  const ScaleFunction& scale() const noexcept { return Phi_; }
  const VolumeFunction& volume() const noexcept { return V_; }
  // Exponent dilations of the far band: lower decays with c_lower >= 1,
  // upper with c_upper = 1/c_lower <= 1.
  double c_lower() const noexcept { return c2_; }
  double c_upper() const noexcept { return c4_; }

  // 0 when Phi(z) phi(1/t) <= 1 (near), 1 otherwise (far).
  int regime(double t, double z) const;

  // Envelope value at (t, z) as a (lower, upper) pair; the two coincide
  // outside the exponential far regime.
  std::pair<double, double> band(double t, double z) const;

  nlohmann::json to_json() const;

private:
  EnvelopeSpec(EnvelopeFamily family, BernsteinSpec phi, ScaleFunction Phi,
               VolumeFunction V, double c_exp);

  EnvelopeFamily family_;
  BernsteinSpec phi_;
  ScaleFunction Phi_;
  VolumeFunction V_;
  double c2_ = 1.0;
  double c4_ = 1.0;
};

struct RatioPoint {
  double t = 0.0;
  double z = 0.0;
  double q = 0.0;
  double env_lo = 0.0;
  double env_hi = 0.0;
  double ratio = 0.0;  // q over the geometric middle of the band
  int regime = 0;
};

struct RegimeSummary {
  int regime = 0;
  size_t count = 0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double ratio_geomean = 0.0;
};

// Least-squares exponent along a grid line, with the envelope's predicted
// exponent for comparison.
struct SlopeFit {
  std::string name;
  double fitted = 0.0;
  double target = 0.0;
  double r2 = 0.0;
  size_t count = 0;
};

struct RatioReport {
  std::vector<RatioPoint> points;
  std::vector<RegimeSummary> regimes;
  std::vector<SlopeFit> slopes;
  nlohmann::json meta;

  // Rows "t,z,regime,q,env_lo,env_hi,ratio" with 17 significant digits.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  // Fixed-width table of regime bands and slope fits.
  std::string summary_text() const;
};

// Sweep a kernel evaluator against an envelope over the product grid.
// Both grids must be positive and increasing and the t grid must span at
// least three decades.  Regime bands report min/max/geometric-mean ratios;
// power regimes additionally get exponent fits along the extreme grid
// lines, and exponential far regimes a fit of -log q against the profile
// index n (pointwise ratios are meaningless under exponent dilation).
RatioReport ratio_sweep(const std::function<double(double, double)>& compute,
                        const EnvelopeSpec& envelope,
                        const std::vector<double>& t_grid,
                        const std::vector<double>& z_grid);

}  // namespace tfp

#endif
