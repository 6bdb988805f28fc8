/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tfp/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "tfp/errors.hpp"
#include "tfp/quadrature.hpp"
#include "tfp/special.hpp"

namespace tfp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Large-argument series for the symmetric stable density at scale one:
//   f(x) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(k a + 1)/k! sin(k pi a/2)
//          x^{-k a - 1}.
// Convergent for a < 1 (any x > 0), asymptotic for a >= 1 where it is
// truncated at the smallest term.  Returns false unless the truncation
// reached 1e-12 relative accuracy with at most three digits lost to
// cancellation; the caller then falls back to direct quadrature.
bool stable_tail_series(double a, double x, double* out) {
  double sum = 0.0;
  double peak = 0.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  double rel_err = std::numeric_limits<double>::infinity();
  double sign = 1.0;
  for (int k = 1; k <= 400; ++k) {
    const double mag =
        std::exp(std::lgamma(k * a + 1.0) - std::lgamma(k + 1.0) -
                 (k * a + 1.0) * std::log(x));
    if (k == 1 && mag < 1e-300) {
      *out = 0.0;  // density underflows this far out
      return true;
    }
    if (a >= 1.0 && mag > prev_mag) {
      // Past the optimal truncation point; the first omitted term bounds
      // the remainder.
      rel_err = mag / std::max(std::abs(sum), 1e-300);
      break;
    }
    sum += sign * std::sin(0.5 * kPi * k * a) * mag;
    peak = std::max(peak, mag);
    prev_mag = mag;
    sign = -sign;
    if (std::abs(sum) > 0.0 && mag <= 1e-14 * std::abs(sum)) {
      rel_err = mag / std::abs(sum);
      break;
    }
  }
  if (!(sum > 0.0) || rel_err > 1e-12 || peak > 1e3 * sum) return false;
  *out = sum / kPi;
  return true;
}

}  // namespace

ScaleFunction ScaleFunction::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw domain_error("ScaleFunction: power exponent must be positive");
  }
  ScaleFunction s;
  s.alpha = alpha;
  s.alpha1 = alpha;
  s.alpha2 = alpha;
  return s;
}

double ScaleFunction::value(double r) const {
  if (!(r >= 0.0)) throw domain_error("ScaleFunction: requires r >= 0");
  return std::pow(r, alpha);
}

double ScaleFunction::inverse(double t) const {
  if (!(t >= 0.0)) throw domain_error("ScaleFunction: requires t >= 0");
  return std::pow(t, 1.0 / alpha);
}

VolumeFunction VolumeFunction::power(double d_) {
  if (!(d_ > 0.0) || !std::isfinite(d_)) {
    throw domain_error("VolumeFunction: power exponent must be positive");
  }
  VolumeFunction v;
  v.d = d_;
  v.d1 = d_;
  v.d2 = d_;
  return v;
}

double VolumeFunction::value(double r) const {
  if (!(r >= 0.0)) throw domain_error("VolumeFunction: requires r >= 0");
  return std::pow(r, d);
}

double m_solver(const ScaleFunction& Phi, double t, double r, MRoute route) {
  if (!(t > 0.0) || !(r > 0.0) || !std::isfinite(t) || !std::isfinite(r)) {
    throw domain_error("m_solver: requires finite t, r > 0");
  }
  if (!(Phi.alpha1 > 1.0)) {
    throw domain_error("m_solver: requires a scale function with alpha > 1");
  }
  if (route != MRoute::Bisection) {
    return std::pow(std::pow(r, Phi.alpha) / t, 1.0 / (Phi.alpha - 1.0));
  }
  // g(m) = log Phi(r/m) - log(t/m) is strictly decreasing in m when the
  // lower scaling index exceeds one; bracket a sign change in log m and
  // bisect.  Works from Phi evaluations alone.
  auto g = [&](double lm) {
    const double m = std::exp(lm);
    return std::log(Phi.value(r / m)) - (std::log(t) - lm);
  };
  double lo = 0.0, hi = 0.0;
  if (g(0.0) > 0.0) {
    hi = 1.0;
    for (int i = 0; g(hi) > 0.0; ++i) {
      lo = hi;
      hi *= 2.0;
      if (i > 60) throw solver_error("m_solver: no bracket above");
    }
  } else {
    lo = -1.0;
    for (int i = 0; g(lo) <= 0.0; ++i) {
      hi = lo;
      lo *= 2.0;
      if (i > 60) throw solver_error("m_solver: no bracket below");
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

HeatKernelSpec HeatKernelSpec::gaussian_r1() {
  HeatKernelSpec k;
  k.kind_ = KernelKind::GaussianR1;
  k.Phi_ = ScaleFunction::power(2.0);
  k.V_ = VolumeFunction::power(1.0);
  k.d_ = 1;
  return k;
}

HeatKernelSpec HeatKernelSpec::cauchy_r1() {
  HeatKernelSpec k;
  k.kind_ = KernelKind::CauchyR1;
  k.Phi_ = ScaleFunction::power(1.0);
  k.V_ = VolumeFunction::power(1.0);
  k.d_ = 1;
  return k;
}

HeatKernelSpec HeatKernelSpec::stable_r1(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0)) {
    throw domain_error("HeatKernelSpec: stable order must lie in (0, 2)");
  }
  HeatKernelSpec k;
  k.kind_ = KernelKind::StableR1;
  k.Phi_ = ScaleFunction::power(alpha);
  k.V_ = VolumeFunction::power(1.0);
  k.d_ = 1;
  return k;
}

HeatKernelSpec HeatKernelSpec::jump_envelope(ScaleFunction Phi,
                                             VolumeFunction V) {
  HeatKernelSpec k;
  k.kind_ = KernelKind::JumpEnvelope;
  k.Phi_ = Phi;
  k.V_ = V;
  k.d_ = (int)std::lround(V.d);
  return k;
}

HeatKernelSpec HeatKernelSpec::diffusion_envelope(ScaleFunction Phi,
                                                  VolumeFunction V) {
  if (!(Phi.alpha1 > 1.0)) {
    throw domain_error(
        "HeatKernelSpec: diffusion envelope needs a scale function with "
        "alpha > 1");
  }
  HeatKernelSpec k;
  k.kind_ = KernelKind::DiffusionEnvelope;
  k.Phi_ = Phi;
  k.V_ = V;
  k.d_ = (int)std::lround(V.d);
  return k;
}

// Fourier-cosine integral (1/pi) Int_0^inf cos(z xi) exp(-t xi^alpha) d xi.
// In the oscillatory regime the integral is summed over panels between the
// zeros of the cosine (alternating, enclosing), with the first two panels
// handled by the double-exponential rule because the envelope can be much
// sharper than the panel width.
double HeatKernelSpec::stable_fourier(double t, double z) const {
  const double a = Phi_.alpha;
  if (z == 0.0) {
    // Int_0^inf exp(-t xi^a) d xi = Gamma(1 + 1/a) t^{-1/a}.
    return special::gamma_fn(1.0 + 1.0 / a) / (kPi * std::pow(t, 1.0 / a));
  }
  // u = z xi; envelope scale in u is ustar = z t^{-1/a}, which is also the
  // density argument at scale one.
  const double ustar = z * std::pow(t, -1.0 / a);
  if (ustar >= 2.0) {
    double f1 = 0.0;
    if (stable_tail_series(a, ustar, &f1)) {
      return f1 * std::pow(t, -1.0 / a);
    }
  }
  auto f = [&](double u) {
    return std::cos(u) * std::exp(-std::pow(u / ustar, a));
  };
  // Phase at envelope death: beyond exponent 45 nothing contributes.  When
  // the whole support sees less than ~2 radians the integrand is not
  // oscillatory and one double-exponential pass suffices.
  const double u_dead = ustar * std::pow(45.0, 1.0 / a);
  if (u_dead <= 2.0) {
    const auto q = quad::tanh_sinh(f, 0.0, u_dead + 2.0, 1e-13);
    return q.value / (kPi * z);
  }
  double sum = quad::tanh_sinh(f, 0.0, 0.5 * kPi, 1e-13).value +
               quad::tanh_sinh(f, 0.5 * kPi, 1.5 * kPi, 1e-13).value;
  const double scale = std::abs(sum) + 1.0;
  int small = 0;
  for (long k = 2; k < 200000; ++k) {
    const double a0 = (k - 0.5) * kPi;
    const double ak = quad::gl16(f, a0, a0 + kPi);
    sum += ak;
    if (std::abs(ak) < 1e-17 * scale) {
      if (++small >= 2) return sum / (kPi * z);
    } else {
      small = 0;
    }
  }
  throw accuracy_error("p0_radial: Fourier panel sum did not terminate", 1.0,
                       1e-17);
}

double HeatKernelSpec::p0_radial(double t, double z) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("p0_radial: requires finite t > 0");
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw domain_error("p0_radial: requires finite z >= 0");
  }
  switch (kind_) {
    case KernelKind::GaussianR1: {
      return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
    }
    case KernelKind::CauchyR1: {
      return t / (kPi * (t * t + z * z));
    }
    case KernelKind::StableR1: {
      return stable_fourier(t, z);
    }
    case KernelKind::JumpEnvelope: {
      const double on_diag = 1.0 / V_.value(Phi_.inverse(t));
      if (z == 0.0) return on_diag;
      const double off = t / (V_.value(z) * Phi_.value(z));
      return std::min(on_diag, off);
    }
    case KernelKind::DiffusionEnvelope: {
      const double on_diag = 1.0 / V_.value(Phi_.inverse(t));
      if (z == 0.0) return on_diag;
      return on_diag * std::exp(-m_solver(Phi_, t, z));
    }
  }
  throw config_error("p0_radial: unknown kernel kind");
}

nlohmann::json HeatKernelSpec::to_json() const {
  const char* name = nullptr;
  switch (kind_) {
    case KernelKind::GaussianR1: name = "gaussian"; break;
    case KernelKind::CauchyR1: name = "cauchy"; break;
    case KernelKind::StableR1: name = "stable"; break;
    case KernelKind::JumpEnvelope: name = "jump-envelope"; break;
    case KernelKind::DiffusionEnvelope: name = "diffusion-envelope"; break;
  }
  return nlohmann::json{
      {"kind", name}, {"alpha", Phi_.alpha}, {"d", V_.d}};
}

HeatKernelSpec HeatKernelSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw config_error("kernel spec: expected an object with a kind string");
  }
  const std::string kind = j["kind"].get<std::string>();
  auto num = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) {
      throw config_error(std::string("kernel spec: field '") + key +
                         "' must be a number");
    }
    return j[key].get<double>();
  };
  if (kind == "gaussian") return gaussian_r1();
  if (kind == "cauchy") return cauchy_r1();
  if (kind == "stable") return stable_r1(num("alpha", 1.5));
  const double alpha = num("alpha", 2.0);
  const double d = num("d", 1.0);
  if (kind == "jump-envelope") {
    return jump_envelope(ScaleFunction::power(alpha),
                         VolumeFunction::power(d));
  }
  if (kind == "diffusion-envelope") {
    return diffusion_envelope(ScaleFunction::power(alpha),
                              VolumeFunction::power(d));
  }
  throw config_error("kernel spec: unknown kind '" + kind + "'");
}

HeatKernelSpec HeatKernelSpec::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw config_error("kernel spec: malformed JSON");
  }
  return from_json(j);
}

}  // namespace tfp
