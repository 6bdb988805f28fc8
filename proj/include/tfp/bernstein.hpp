/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_BERNSTEIN_HPP
#define TFP_BERNSTEIN_HPP

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace tfp {

enum class BernsteinKind { Stable, Mixture, Tabulated };

struct MixtureTerm {
  double weight;
  double beta;
};

// Laplace exponent phi of a driftless subordinator without killing:
//   phi(lambda) = Int_0^inf (1 - e^{-lambda x}) nu(dx),  phi(0+) = 0.
//
// Three kinds:
//   Stable    phi(lambda) = lambda^beta, 0 < beta < 1
//   Mixture   phi(lambda) = sum_i w_i lambda^{beta_i}, w_i > 0
//   Tabulated monotone cubic interpolation of (lambda_i, phi_i) samples on
//             log-log axes, power-law extrapolation beyond the table
//
// Stable and mixture kinds evaluate on the cut plane C \ (-inf, 0]; the
// tabulated kind is real-only and does not expose a Levy density/tail.
class BernsteinSpec {
public:
  static BernsteinSpec stable(double beta, bool normalize = false);
  static BernsteinSpec mixture(std::vector<MixtureTerm> terms,
                               bool normalize = false);
  static BernsteinSpec tabulated(std::vector<double> lambdas,
                                 std::vector<double> phis);

  BernsteinKind kind() const noexcept { return kind_; }
  // Stable only: the exponent.
  double beta() const;
  const std::vector<MixtureTerm>& terms() const { return terms_; }

  double phi(double lambda) const;
  // Complex evaluation for contour inversion; Stable/Mixture only.
  std::complex<double> phi(std::complex<double> s) const;
  bool analytic() const noexcept { return kind_ != BernsteinKind::Tabulated; }

  double phi_prime(double lambda) const;
  // Inverse of the increasing function phi; bisection to 1e-12 relative.
  double phi_inverse(double y) const;
  // Generalized inverse of the non-increasing derivative:
  //   inf { s > 0 : phi'(s) <= y }.
  double phi_prime_inverse(double y) const;

  // Levy density nu(x) and tail w(x) = nu((x, inf)); Stable/Mixture only.
  double levy_density(double x) const;
  double levy_tail(double x) const;
  // Antiderivatives Int_0^x w(u) du and Int_0^x u w(u) du (closed forms).
  double levy_tail_int1(double x) const;
  double levy_tail_int2(double x) const;

  // Conjugate exponent phi*(lambda) = lambda / phi(lambda).  Stable maps to
  // Stable(1 - beta); other kinds are sampled onto a tabulated spec.
  BernsteinSpec conjugate(int table_points = 257) const;

  nlohmann::json to_json() const;
  static BernsteinSpec from_json(const nlohmann::json& j);
  static BernsteinSpec from_json_text(const std::string& text);

private:
  BernsteinSpec() = default;

  BernsteinKind kind_ = BernsteinKind::Stable;
  bool normalized_ = false;
  std::vector<MixtureTerm> terms_;  // Stable holds one term with weight 1
  // Tabulated: log-log samples plus monotone (Fritsch-Carlson) slopes.
  std::vector<double> tab_lx_, tab_ly_, tab_d_;

  double tab_value_log(double lx) const;
  double tab_slope_log(double lx) const;
};

// Empirical two-sided scaling sandwich for R(lambda,kappa) =
// phi(kappa lambda)/phi(lambda):
//   c1 kappa^{beta1} <= R <= c2 kappa^{beta2}  at every probed pair.
struct ScalingWitness {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

ScalingWitness verify_weak_scaling(const BernsteinSpec& spec,
                                   const std::vector<double>& lambdas,
                                   const std::vector<double>& kappas);

// max over the grid of phi(lambda) / (lambda phi'(lambda)); for these specs
// the ratio is also >= 1 up to rounding.
double derivative_comparison_constant(const BernsteinSpec& spec,
                                      const std::vector<double>& lambdas);

// Log-spaced grid helper, n >= 2 points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace tfp

#endif
