/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tfp/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "tfp/errors.hpp"
#include "tfp/quadrature.hpp"

namespace tfp {

namespace {

// Regime boundaries are compared with a relative slack so that a point
// classified near/far by the product test Phi(z) phi(1/t) <= 1 never falls
// outside the matching H-form precondition by a rounding ulp.
constexpr double kEdgeSlack = 1e-9;

void check_power_params(double d, double alpha, double beta,
                        const char* who) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw domain_error(std::string(who) + ": requires finite d > 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw domain_error(std::string(who) + ": requires finite alpha > 0");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw domain_error(std::string(who) + ": requires beta in (0, 1)");
  }
}

void check_t(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error(std::string(who) + ": requires finite t > 0");
  }
}

const char* family_name(EnvelopeFamily f) {
  switch (f) {
    case EnvelopeFamily::StableJump: return "stable-jump";
    case EnvelopeFamily::StableDiffusion: return "stable-diffusion";
    case EnvelopeFamily::GeneralJump: return "general-jump";
    case EnvelopeFamily::GeneralDiffusion: return "general-diffusion";
  }
  return "unknown";
}

}  // namespace

double H_le1(double d, double alpha, double beta, double t, double r) {
  check_power_params(d, alpha, beta, "H_le1");
  check_t(t, "H_le1");
  const double edge = std::pow(t, beta / alpha);
  if (!(r >= 0.0) || !(r <= edge * (1.0 + kEdgeSlack))) {
    throw domain_error("H_le1: r must lie in [0, t^{beta/alpha}]");
  }
  if (d < 2.0 * alpha) {
    return std::pow(t, beta - 1.0 - beta * d / alpha);
  }
  if (!(r > 0.0)) {
    throw domain_error("H_le1: the form diverges at r = 0 for d >= 2 alpha");
  }
  if (d == 2.0 * alpha) {
    return std::pow(t, -1.0 - beta) *
           std::log(2.0 * std::pow(t, beta) / std::pow(r, alpha));
  }
  return std::pow(t, -1.0 - beta) / std::pow(r, d - 2.0 * alpha);
}

double H_ge1_jump(double d, double alpha, double beta, double t, double r) {
  check_power_params(d, alpha, beta, "H_ge1_jump");
  check_t(t, "H_ge1_jump");
  const double edge = std::pow(t, beta / alpha);
  if (!(r >= edge * (1.0 - kEdgeSlack))) {
    throw domain_error("H_ge1_jump: requires r >= t^{beta/alpha}");
  }
  return std::pow(t, 2.0 * beta - 1.0) / std::pow(r, d + alpha);
}

double H_ge1_diff(double d, double alpha, double beta, double t, double r) {
  check_power_params(d, alpha, beta, "H_ge1_diff");
  if (!(alpha >= 2.0)) {
    throw domain_error("H_ge1_diff: requires alpha >= 2");
  }
  check_t(t, "H_ge1_diff");
  const double edge = std::pow(t, beta / alpha);
  if (!(r >= edge * (1.0 - kEdgeSlack))) {
    throw domain_error("H_ge1_diff: requires r >= t^{beta/alpha}");
  }
  const double n =
      std::pow(std::pow(r, alpha) / std::pow(t, beta), 1.0 / (alpha - beta));
  return std::pow(t, beta - 1.0 - beta * d / alpha) * std::exp(-n);
}

double n_solver(const BernsteinSpec& phi, const ScaleFunction& Phi, double t,
                double r, MRoute route) {
  if (!(t > 0.0) || !std::isfinite(t) || !(r > 0.0) || !std::isfinite(r)) {
    throw domain_error("n_solver: requires finite t, r > 0");
  }
  if (!(Phi.alpha1 > 1.0)) {
    throw domain_error("n_solver: scale exponent must exceed 1");
  }
  if (route != MRoute::Bisection && phi.kind() == BernsteinKind::Stable) {
    const double beta = phi.beta();
    return std::pow(std::pow(r, Phi.alpha) / std::pow(t, beta),
                    1.0 / (Phi.alpha - beta));
  }
  if (route == MRoute::Closed) {
    throw unsupported_error("n_solver: closed form needs a stable exponent");
  }
  // The log-difference of the two sides is strictly increasing in log n
  // because the elasticity of a Bernstein function is below 1 < alpha.
  auto g = [&](double ln) {
    const double n = std::exp(ln);
    return -std::log(phi.phi(n / t)) - std::log(Phi.value(r / n));
  };
  double lo = 0.0;
  double hi = 0.0;
  if (g(0.0) < 0.0) {
    hi = 2.0;
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 800.0) throw solver_error("n_solver: failed to bracket");
    }
  } else {
    lo = -2.0;
    while (g(lo) > 0.0) {
      hi = lo;
      lo *= 2.0;
      if (lo < -800.0) throw solver_error("n_solver: failed to bracket");
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

double envelope_jump(const BernsteinSpec& phi, const ScaleFunction& Phi,
                     const VolumeFunction& V, double t, double z) {
  if (!(t > 0.0) || !std::isfinite(t) || !(z > 0.0) || !std::isfinite(z)) {
    throw domain_error("envelope_jump: requires finite t, z > 0");
  }
  const double ph = phi.phi(1.0 / t);
  const double s = Phi.value(z) * ph;
  if (s <= 1.0) {
    // Substituting r = e^u turns the integrand into the smooth exponential
    // e^{2u} / V(Phi^{-1}(e^u)); when it decays toward small r the lower
    // limit is clipped where the contribution is negligible.
    double ulo = std::log(std::max(Phi.value(z), 1e-300));
    const double uhi = std::log(2.0 / ph);
    const double growth = 2.0 - V.d / Phi.alpha;
    if (growth > 0.0) ulo = std::max(ulo, uhi - 80.0 / growth);
    const double integral = quad::gl_panels(
        [&](double u) {
          const double rr = std::exp(u);
          return rr * rr / V.value(Phi.inverse(rr));
        },
        ulo, uhi, 0.5);
    return ph / t * integral;
  }
  return 1.0 / (t * ph * ph * V.value(z) * Phi.value(z));
}

std::pair<double, double> envelope_diff(const BernsteinSpec& phi,
                                        const ScaleFunction& Phi,
                                        const VolumeFunction& V, double t,
                                        double z, double c_exp) {
  if (!(t > 0.0) || !std::isfinite(t) || !(z > 0.0) || !std::isfinite(z)) {
    throw domain_error("envelope_diff: requires finite t, z > 0");
  }
  if (!(c_exp > 0.0) || !std::isfinite(c_exp)) {
    throw domain_error("envelope_diff: requires finite c_exp > 0");
  }
  if (!(Phi.alpha1 > 1.0)) {
    throw domain_error("envelope_diff: scale exponent must exceed 1");
  }
  const double ph = phi.phi(1.0 / t);
  if (Phi.value(z) * ph <= 1.0) {
    const double v = envelope_jump(phi, Phi, V, t, z);
    return {v, v};
  }
  const double n = n_solver(phi, Phi, t, z);
  const double A =
      n / (t * phi.phi(n / t) * V.value(Phi.inverse(1.0 / ph)));
  const double c = std::max(c_exp, 1.0 / c_exp);
  return {A * std::exp(-c * n), A * std::exp(-n / c)};
}

std::pair<double, double> q_split_I1_I2(const HeatKernelSpec& kspec,
                                        const DensityEval& eval, double t,
                                        double z) {
  if (!kspec.concrete()) {
    throw domain_error("q_split_I1_I2: needs a concrete kernel kind");
  }
  if (!(t > 0.0) || !std::isfinite(t) || !(z > 0.0) || !std::isfinite(z)) {
    throw domain_error("q_split_I1_I2: requires finite t, z > 0");
  }
  const EnvelopeRegimeL reg;
  auto f = [&](double r) {
    if (!(r > 0.0) || !std::isfinite(r)) return 0.0;
    const double a = kspec.p0_radial(r, z);
    if (!(a > 0.0)) return 0.0;
    const double b = eval.envelope_density(reg, r, t);
    if (!(b > 0.0)) return 0.0;
    return a * b;
  };
  const double r0 = 2.0 / eval.spec().phi(1.0 / t);
  const double cross = kspec.scale().value(z);
  double i1 = 0.0;
  if (std::isfinite(cross) && cross < 0.999 * r0) {
    i1 = quad::tanh_sinh(f, 0.0, cross, 1e-7).value +
         quad::tanh_sinh(f, cross, r0, 1e-7).value;
  } else {
    i1 = quad::tanh_sinh(f, 0.0, r0, 1e-7).value;
  }
  double running = 0.0;
  auto ftail = [&](double r) {
    const double v = f(r);
    if (v > running) {
      running = v;
    } else if (v < 1e-14 * running) {
      return 0.0;
    }
    return v;
  };
  const double scale =
      std::isfinite(cross) ? std::max(r0, cross) : r0;
  const double i2 =
      quad::tanh_sinh_upper_scaled(ftail, r0, scale, 1e-7).value;
  return {i1, i2};
}

EnvelopeSpec::EnvelopeSpec(EnvelopeFamily family, BernsteinSpec phi,
                           ScaleFunction Phi, VolumeFunction V, double c_exp)
    : family_(family), phi_(std::move(phi)), Phi_(Phi), V_(V) {
  if (!(c_exp > 0.0) || !std::isfinite(c_exp)) {
    throw domain_error("EnvelopeSpec: requires finite c_exp > 0");
  }
  c2_ = std::max(c_exp, 1.0 / c_exp);
  c4_ = 1.0 / c2_;
}

EnvelopeSpec EnvelopeSpec::stable_jump(double d, double alpha, double beta) {
  check_power_params(d, alpha, beta, "EnvelopeSpec");
  return EnvelopeSpec(EnvelopeFamily::StableJump, BernsteinSpec::stable(beta),
                      ScaleFunction::power(alpha), VolumeFunction::power(d),
                      1.0);
}

EnvelopeSpec EnvelopeSpec::stable_diffusion(double d, double alpha,
                                            double beta, double c_exp) {
  check_power_params(d, alpha, beta, "EnvelopeSpec");
  if (!(alpha >= 2.0)) {
    throw domain_error(
        "EnvelopeSpec: the diffusion far form requires alpha >= 2");
  }
  return EnvelopeSpec(EnvelopeFamily::StableDiffusion,
                      BernsteinSpec::stable(beta), ScaleFunction::power(alpha),
                      VolumeFunction::power(d), c_exp);
}

EnvelopeSpec EnvelopeSpec::general_jump(BernsteinSpec phi, ScaleFunction Phi,
                                        VolumeFunction V) {
  return EnvelopeSpec(EnvelopeFamily::GeneralJump, std::move(phi), Phi, V,
                      1.0);
}

EnvelopeSpec EnvelopeSpec::general_diffusion(BernsteinSpec phi,
                                             ScaleFunction Phi,
                                             VolumeFunction V, double c_exp) {
  if (!(Phi.alpha1 > 1.0)) {
    throw domain_error("EnvelopeSpec: diffusion scale exponent must exceed 1");
  }
  return EnvelopeSpec(EnvelopeFamily::GeneralDiffusion, std::move(phi), Phi,
                      V, c_exp);
}

int EnvelopeSpec::regime(double t, double z) const {
  check_t(t, "EnvelopeSpec");
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw domain_error("EnvelopeSpec: requires finite z >= 0");
  }
  return (Phi_.value(z) * phi_.phi(1.0 / t) <= 1.0) ? 0 : 1;
}

std::pair<double, double> EnvelopeSpec::band(double t, double z) const {
  const int rg = regime(t, z);
  const double d = V_.d;
  const double alpha = Phi_.alpha;
  switch (family_) {
    case EnvelopeFamily::StableJump: {
      const double beta = phi_.beta();
      const double v = (rg == 0) ? H_le1(d, alpha, beta, t, z)
                                 : H_ge1_jump(d, alpha, beta, t, z);
      return {v, v};
    }
    case EnvelopeFamily::StableDiffusion: {
      const double beta = phi_.beta();
      if (rg == 0) {
        const double v = H_le1(d, alpha, beta, t, z);
        return {v, v};
      }
      const double n = std::pow(
          std::pow(z, alpha) / std::pow(t, beta), 1.0 / (alpha - beta));
      const double pref = std::pow(t, beta - 1.0 - beta * d / alpha);
      return {pref * std::exp(-c2_ * n), pref * std::exp(-c4_ * n)};
    }
    case EnvelopeFamily::GeneralJump: {
      const double v = envelope_jump(phi_, Phi_, V_, t, z);
      return {v, v};
    }
    case EnvelopeFamily::GeneralDiffusion:
      return envelope_diff(phi_, Phi_, V_, t, z, c2_);
  }
  throw domain_error("EnvelopeSpec: unknown family");
}

nlohmann::json EnvelopeSpec::to_json() const {
  return nlohmann::json{{"family", family_name(family_)},
                        {"phi", phi_.to_json()},
                        {"alpha", Phi_.alpha},
                        {"d", V_.d},
                        {"c_lower", c2_},
                        {"c_upper", c4_}};
}

std::string RatioReport::to_csv() const {
  std::ostringstream os;
  os << "t,z,regime,q,env_lo,env_hi,ratio\n";
  os << std::setprecision(17);
  for (const auto& p : points) {
    os << p.t << ',' << p.z << ',' << p.regime << ',' << p.q << ','
       << p.env_lo << ',' << p.env_hi << ',' << p.ratio << '\n';
  }
  return os.str();
}

nlohmann::json RatioReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    pts.push_back({{"t", p.t},
                   {"z", p.z},
                   {"regime", p.regime},
                   {"q", p.q},
                   {"env_lo", p.env_lo},
                   {"env_hi", p.env_hi},
                   {"ratio", p.ratio}});
  }
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : regimes) {
    regs.push_back({{"regime", r.regime},
                    {"count", r.count},
                    {"ratio_min", r.ratio_min},
                    {"ratio_max", r.ratio_max},
                    {"ratio_geomean", r.ratio_geomean}});
  }
  nlohmann::json sl = nlohmann::json::array();
  for (const auto& s : slopes) {
    sl.push_back({{"name", s.name},
                  {"fitted", s.fitted},
                  {"target", s.target},
                  {"r2", s.r2},
                  {"count", s.count}});
  }
  return nlohmann::json{{"points", pts},
                        {"regimes", regs},
                        {"slopes", sl},
                        {"meta", meta}};
}

std::string RatioReport::summary_text() const {
  std::ostringstream os;
  os << std::left << std::setw(8) << "regime" << std::right << std::setw(8)
     << "count" << std::setw(14) << "ratio_min" << std::setw(14)
     << "ratio_max" << std::setw(14) << "geomean" << '\n';
  os << std::setprecision(4);
  for (const auto& r : regimes) {
    os << std::left << std::setw(8) << (r.regime == 0 ? "near" : "far")
       << std::right << std::setw(8) << r.count << std::setw(14)
       << r.ratio_min << std::setw(14) << r.ratio_max << std::setw(14)
       << r.ratio_geomean << '\n';
  }
  if (!slopes.empty()) {
    os << std::left << std::setw(10) << "slope" << std::right << std::setw(12)
       << "fitted" << std::setw(12) << "target" << std::setw(10) << "r2"
       << std::setw(8) << "count" << '\n';
    for (const auto& s : slopes) {
      os << std::left << std::setw(10) << s.name << std::right
         << std::setw(12) << s.fitted << std::setw(12) << s.target
         << std::setw(10) << s.r2 << std::setw(8) << s.count << '\n';
    }
  }
  return os.str();
}

namespace {

void add_slope(RatioReport& rep, const std::string& name,
               const std::vector<double>& x, const std::vector<double>& y,
               double target) {
  if (x.size() < 3) return;
  const auto fit = quad::fit_line(x, y);
  rep.slopes.push_back(SlopeFit{name, fit.slope, target, fit.r2, x.size()});
}

// Exponent fits sample only points at least this factor beyond the regime
// boundary, where crossover contamination of the power law has died out.
constexpr double kFitMargin = 8.0;

}  // namespace

RatioReport ratio_sweep(const std::function<double(double, double)>& compute,
                        const EnvelopeSpec& envelope,
                        const std::vector<double>& t_grid,
                        const std::vector<double>& z_grid) {
  if (!compute) throw domain_error("ratio_sweep: missing evaluator");
  if (t_grid.empty() || z_grid.empty()) {
    throw domain_error("ratio_sweep: empty grid");
  }
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw domain_error("ratio_sweep: t grid must be positive increasing");
    }
  }
  for (size_t j = 0; j < z_grid.size(); ++j) {
    if (!(z_grid[j] >= 0.0) || (j > 0 && !(z_grid[j] > z_grid[j - 1]))) {
      throw domain_error("ratio_sweep: z grid must be increasing from >= 0");
    }
  }
  if (!(t_grid.back() >= 999.0 * t_grid.front())) {
    throw domain_error("ratio_sweep: t grid must span three decades");
  }

  RatioReport rep;
  for (double t : t_grid) {
    for (double z : z_grid) {
      RatioPoint p;
      p.t = t;
      p.z = z;
      p.regime = envelope.regime(t, z);
      const auto b = envelope.band(t, z);
      p.env_lo = b.first;
      p.env_hi = b.second;
      p.q = compute(t, z);
      p.ratio = p.q / std::sqrt(b.first * b.second);
      rep.points.push_back(p);
    }
  }

  for (int rg = 0; rg <= 1; ++rg) {
    RegimeSummary s;
    s.regime = rg;
    double logsum = 0.0;
    for (const auto& p : rep.points) {
      if (p.regime != rg || !(p.ratio > 0.0)) continue;
      if (s.count == 0) {
        s.ratio_min = s.ratio_max = p.ratio;
      } else {
        s.ratio_min = std::min(s.ratio_min, p.ratio);
        s.ratio_max = std::max(s.ratio_max, p.ratio);
      }
      logsum += std::log(p.ratio);
      ++s.count;
    }
    if (s.count > 0) {
      s.ratio_geomean = std::exp(logsum / double(s.count));
      rep.regimes.push_back(s);
    }
  }

  const bool stable_phi =
      envelope.phi().kind() == BernsteinKind::Stable;
  const bool jump = envelope.family() == EnvelopeFamily::StableJump ||
                    envelope.family() == EnvelopeFamily::GeneralJump;
  const double d = envelope.volume().d;
  const double alpha = envelope.scale().alpha;
  auto boundary_product = [&](const RatioPoint& p) {
    return envelope.scale().value(p.z) * envelope.phi().phi(1.0 / p.t);
  };

  if (stable_phi) {
    const double beta = envelope.phi().beta();
    {
      // Time exponent of the near regime along the smallest distance.
      std::vector<double> x, y;
      for (const auto& p : rep.points) {
        if (p.regime == 0 && p.z == z_grid.front() && p.q > 0.0 &&
            boundary_product(p) <= 1.0 / kFitMargin) {
          x.push_back(std::log(p.t));
          y.push_back(std::log(p.q));
        }
      }
      add_slope(rep, "t-near", x, y, beta - 1.0 - beta * d / alpha);
    }
    if (jump) {
      // Distance exponent of the far regime along the smallest time.
      std::vector<double> x, y;
      for (const auto& p : rep.points) {
        if (p.regime == 1 && p.t == t_grid.front() && p.q > 0.0 &&
            p.z > 0.0 && boundary_product(p) >= kFitMargin) {
          x.push_back(std::log(p.z));
          y.push_back(std::log(p.q));
        }
      }
      add_slope(rep, "z-far", x, y, -(d + alpha));
    }
    if (jump) {
      // Time exponent of the far regime along the largest distance.
      std::vector<double> x, y;
      for (const auto& p : rep.points) {
        if (p.regime == 1 && p.z == z_grid.back() && p.q > 0.0 &&
            boundary_product(p) >= kFitMargin) {
          x.push_back(std::log(p.t));
          y.push_back(std::log(p.q));
        }
      }
      add_slope(rep, "t-far", x, y, 2.0 * beta - 1.0);
    }
  }
  if (!jump) {
    // Exponential far regime: fit -log(q / A) against the profile index n,
    // with A the full algebraic prefactor; the nominal undilated target is
    // the unit constant and the admissible window is dilation-dependent.
    std::vector<double> x, y;
    for (const auto& p : rep.points) {
      if (p.regime != 1 || !(p.q > 0.0) ||
          boundary_product(p) < kFitMargin) {
        continue;
      }
      const double n =
          n_solver(envelope.phi(), envelope.scale(), p.t, p.z);
      const double ph = envelope.phi().phi(1.0 / p.t);
      const double A =
          n / (p.t * envelope.phi().phi(n / p.t) *
               envelope.volume().value(envelope.scale().inverse(1.0 / ph)));
      x.push_back(n);
      y.push_back(-std::log(p.q / A));
    }
    add_slope(rep, "exp-far", x, y, 1.0);
  }

  rep.meta = nlohmann::json{{"envelope", envelope.to_json()},
                            {"t_grid", t_grid},
                            {"z_grid", z_grid}};
  return rep;
}

}  // namespace tfp
