/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_KERNELS_HPP
#define TFP_KERNELS_HPP

#include <string>

#include <json.hpp>

namespace tfp {

// Scale function Phi(r) = r^alpha, Phi(0) = 0, strictly increasing.  The
// weak-scaling witness pair (alpha1, alpha2) collapses to (alpha, alpha)
// for the power family.
struct ScaleFunction {
  static ScaleFunction power(double alpha);

  double value(double r) const;
  double inverse(double t) const;

  double alpha = 2.0;
  double alpha1 = 2.0;
  double alpha2 = 2.0;
};

// Volume function V(r) = r^d (Lebesgue ball volume up to constants); the
// weak-scaling witnesses collapse to (d, d) for the power family.
struct VolumeFunction {
  static VolumeFunction power(double d);

  double value(double r) const;

  double d = 1.0;
  double d1 = 1.0;
  double d2 = 1.0;
};

// m(t, r) solves t/m = Phi(r/m), the exponent profile of diffusion-type
// off-diagonal decay.  Requires alpha > 1.  The closed form for the power
// family is (r^alpha / t)^{1/(alpha-1)}; the bisection route only uses
// Phi evaluations and serves as the independent cross-check.
enum class MRoute { Auto, Closed, Bisection };
double m_solver(const ScaleFunction& Phi, double t, double r,
                MRoute route = MRoute::Auto);

enum class KernelKind {
  GaussianR1,
  CauchyR1,
  StableR1,
  JumpEnvelope,
  DiffusionEnvelope
};

// Base heat kernel on the real line (concrete kinds) or a two-sided
// estimate envelope shape (envelope kinds).  Concrete kernels are exact
// transition densities at distance z:
//
//   GaussianR1  (4 pi t)^{-1/2} exp(-z^2 / (4 t))             alpha = 2
//   CauchyR1    t / (pi (t^2 + z^2))                          alpha = 1
//   StableR1    (1/pi) Int_0^inf cos(z xi) exp(-t xi^alpha) d xi
//
// Envelope kinds evaluate the standard comparison shapes built from the
// scale function Phi and volume V (the envelope represents a band known up
// to constants; the value returned is the shape with constants one):
//
//   JumpEnvelope       min(1 / V(Phi^{-1}(t)), t / (V(z) Phi(z)))
//   DiffusionEnvelope  (1 / V(Phi^{-1}(t))) exp(-m(t, z))
class HeatKernelSpec {
public:
  static HeatKernelSpec gaussian_r1();
  static HeatKernelSpec cauchy_r1();
  static HeatKernelSpec stable_r1(double alpha);  // 0 < alpha < 2
  static HeatKernelSpec jump_envelope(ScaleFunction Phi, VolumeFunction V);
  static HeatKernelSpec diffusion_envelope(ScaleFunction Phi,
                                           VolumeFunction V);

  KernelKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return Phi_.alpha; }
  int dimension() const noexcept { return d_; }
  const ScaleFunction& scale() const noexcept { return Phi_; }
  const VolumeFunction& volume() const noexcept { return V_; }
  bool concrete() const noexcept {
    return kind_ == KernelKind::GaussianR1 || kind_ == KernelKind::CauchyR1 ||
           kind_ == KernelKind::StableR1;
  }

  // Kernel value at time t > 0 and distance z >= 0.
  double p0_radial(double t, double z) const;

  nlohmann::json to_json() const;
  static HeatKernelSpec from_json(const nlohmann::json& j);
  static HeatKernelSpec from_json_text(const std::string& text);

private:
  HeatKernelSpec() = default;

  double stable_fourier(double t, double z) const;

  KernelKind kind_ = KernelKind::GaussianR1;
  ScaleFunction Phi_;
  VolumeFunction V_;
  int d_ = 1;
};

}  // namespace tfp

#endif
