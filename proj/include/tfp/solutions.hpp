/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_SOLUTIONS_HPP
#define TFP_SOLUTIONS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfp/bernstein.hpp"
#include "tfp/kernels.hpp"
#include "tfp/subordinator.hpp"

namespace tfp {

// How a field's values were produced.
enum class Provenance { Subordination, FourierOracle, Duhamel };

// Values with error estimates on a product grid (t outer, x inner, row
// major).  The second coordinate is a distance z for kernel sweeps and a
// signed position x for solver output.
struct SolutionField {
  std::vector<double> t_grid;
  std::vector<double> x_grid;
  std::vector<double> values;  // size t_grid.size() * x_grid.size()
  std::vector<double> errors;  // same shape
  Provenance provenance = Provenance::Subordination;
  nlohmann::json meta;         // producer metadata: spec hashes, tolerances

  double at(size_t i, size_t j) const {
    return values[i * x_grid.size() + j];
  }

  // Rows "t,x,value,error" with 17 significant digits.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

// Weight w of a generalized time derivative
//   d/dt Int_0^t w(t-s) (f(s) - f(0)) ds,
// either the classical Caputo power weight w(s) = s^{-beta}/Gamma(1-beta)
// or the Levy tail of a Bernstein exponent.  Exposes the antiderivatives
// needed to integrate w exactly against a piecewise-linear interpolant.
class WeightFunction {
public:
  static WeightFunction caputo(double beta);  // 0 < beta < 1
  static WeightFunction from_bernstein(BernsteinSpec spec);

  double w(double s) const;   // weight value, s > 0
  double W1(double s) const;  // Int_0^s w(u) du
  double W2(double s) const;  // Int_0^s u w(u) du

  bool is_caputo() const noexcept { return !spec_.has_value(); }
  double beta() const;  // Caputo weights only

private:
  WeightFunction() = default;
  std::optional<BernsteinSpec> spec_;
  double beta_ = 0.5;
};

struct KernelValue {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

// Fundamental solution with the killed clock,
//   q(t, z) = Int_0^inf p0(r, z) dP(S_. in dr at value t),
// by adaptive quadrature split at the kernel crossover r = Phi(z) and the
// clock scale r = 1/phi(1/t), with the tail truncated once the integrand
// falls below 1e-14 of its running maximum.  Concrete kernel kinds only.
// The on-diagonal value z = 0 requires d < 2 alpha.
KernelValue q_kernel(const HeatKernelSpec& kspec, const DensityEval& eval,
                     double t, double z);

// Fundamental solution with the running clock,
//   p(t, z) = Int_0^inf p0(r, z) h_t(r) dr,
// where h_t is the inverse-clock density (closed form for a stable
// exponent).  The on-diagonal value z = 0 requires d < alpha.
KernelValue p_kernel(const HeatKernelSpec& kspec, const DensityEval& eval,
                     double t, double z);

// Relative defect of the cumulative identity
//   Int_0^t q(s, z) ds = Int_0^t G(t-s) p(s, z) ds
// with G the clock's potential density; zero in exact arithmetic.
double cumulative_identity_residual(const HeatKernelSpec& kspec,
                                    const DensityEval& eval, double t,
                                    double z);

// Generalized derivative of sampled data at T: the samples define a
// piecewise-linear interpolant on times (which must cover a neighborhood
// [0, T (1 + 1/64)] and hold at least 8 nodes), w is integrated exactly
// against each linear piece, and the outer d/dT is a central difference
// with step T/64, Richardson-extrapolated once.
double caputo_w_derivative(const WeightFunction& w,
                           const std::vector<double>& times,
                           const std::vector<double>& values, double T);

// Relative difference at (t, z) between q and the conjugate-weight
// derivative of s -> p(s, z), with weight w*(s) = s^{-(1-beta)}/Gamma(beta).
// Stable exponents only.
double conjugate_identity_residual(const HeatKernelSpec& kspec,
                                   const DensityEval& eval, double beta,
                                   double t, double z);

// Relative defect of the integrated conjugate identity
//   Int_0^t w*(t-s) p(s, z) ds = Int_0^t q(s, z) ds.
double conjugate_integrated_residual(const HeatKernelSpec& kspec,
                                     const DensityEval& eval, double beta,
                                     double t, double z);

// Mild solution of the forced problem by the two-term representation
//   u(t, x) = Int p(t, x, y) g(y) dy
//           + Int_0^t Int q(t-s, x, y) f(s, y) dy ds,
// evaluated on the product grid by nested quadrature.  Gaussian kernel
// only: the semigroup action is computed under a scaled Gauss weight,
// the clock integral under its own scale, and the time integral under a
// power substitution that absorbs the s -> 0 singularity of the q mass.
// Sources are extended by zero to t <= 0.  Either g or f may be null.
SolutionField duhamel_solve(const HeatKernelSpec& kspec,
                            const DensityEval& eval,
                            const std::function<double(double)>& g,
                            const std::function<double(double, double)>& f,
                            const std::vector<double>& t_grid,
                            const std::vector<double>& x_grid,
                            double rel_tol = 1e-5);

// Strong-form defect of a solved field:
//   max over interior grid points of
//     |d^w_t u - Lap_x u - f| / (1 + |f|)
// with the time derivative from caputo_w_derivative on the field's own
// grid and the Laplacian by central second differences (uniform x grid
// required).  Evaluation times keep enough margin for the derivative
// stencil; a grid too coarse for it is a domain error.
double pde_residual(const SolutionField& u,
                    const std::function<double(double, double)>& f,
                    const WeightFunction& w);

}  // namespace tfp

#endif
