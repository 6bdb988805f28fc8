/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tfp/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <utility>

#include "tfp/errors.hpp"
#include "tfp/quadrature.hpp"
#include "tfp/special.hpp"

namespace tfp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

std::string json_hash(const nlohmann::json& j) {
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(j.dump());
  return os.str();
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Subordination: return "subordination";
    case Provenance::FourierOracle: return "fourier-oracle";
    case Provenance::Duhamel: return "duhamel";
  }
  return "unknown";
}

// Inverse-clock density h_t(r); the stable exponent has a closed form, any
// other kind goes through the convolution route of the evaluator.
double inverse_clock_density(const DensityEval& eval, double t, double r) {
  if (eval.spec().kind() == BernsteinKind::Stable) {
    return special::inverse_stable_density(eval.spec().beta(), t, r);
  }
  return eval.inverse_density(t, r);
}

// Characteristic clock scale at horizon t: mass of S_. reaching t sits at
// process indices r of this order.
double clock_scale(const DensityEval& eval, double t) {
  return 1.0 / eval.spec().phi(1.0 / t);
}

// Lower power index of the clock, used to absorb the s -> 0 singularity of
// time integrals against the potential density.
double clock_power(const DensityEval& eval) {
  switch (eval.spec().kind()) {
    case BernsteinKind::Stable:
      return eval.spec().beta();
    case BernsteinKind::Mixture: {
      double b = 1.0;
      for (const auto& term : eval.spec().terms()) b = std::min(b, term.beta);
      return b;
    }
    default:
      return 0.5;
  }
}

// Int_0^inf p0(r, z) factor(r) dr, split at the kernel crossover r = Phi(z)
// and at the clock scale, with the far tail truncated once the integrand
// drops below 1e-14 of its running maximum.
template <class Factor>
KernelValue subordinate_kernel(const HeatKernelSpec& kspec, Factor&& factor,
                               double z, double scale) {
  if (!std::isfinite(scale) || !(scale > 0.0)) scale = 1.0;
  std::vector<double> cuts;
  if (z > 0.0) {
    const double cross = kspec.scale().value(z);
    if (std::isfinite(cross)) cuts.push_back(cross);
  }
  cuts.push_back(scale);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b < 1.001 * a; }),
             cuts.end());

  auto value_at = [&](double r) {
    if (!(r > 0.0) || !std::isfinite(r)) return 0.0;
    const double a = kspec.p0_radial(r, z);
    if (!(a > 0.0)) return 0.0;
    const double b = factor(r);
    if (!(b > 0.0)) return 0.0;
    return a * b;
  };

  KernelValue out;
  double lo = 0.0;
  for (double hi : cuts) {
    const auto piece = quad::tanh_sinh(value_at, lo, hi, 1e-7);
    out.value += piece.value;
    out.error += piece.error;
    lo = hi;
  }
  // Beyond the last cut the integrand is past its peak, so once it has
  // dropped far below its running maximum the rest of the tail is noise.
  double running = 0.0;
  auto tail_at = [&](double r) {
    const double v = value_at(r);
    if (v > running) {
      running = v;
    } else if (v < 1e-14 * running) {
      return 0.0;
    }
    return v;
  };
  const auto tail = quad::tanh_sinh_upper_scaled(tail_at, lo,
                                                 std::max(lo, scale), 1e-7);
  out.value += tail.value;
  out.error += tail.error;
  out.error += 1e-9 * std::abs(out.value);
  return out;
}

void require_concrete(const HeatKernelSpec& kspec, const char* who) {
  if (!kspec.concrete()) {
    throw domain_error(std::string(who) + ": needs a concrete kernel kind");
  }
}

void require_tz(double t, double z, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error(std::string(who) + ": requires finite t > 0");
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw domain_error(std::string(who) + ": requires finite z >= 0");
  }
}

// Semigroup action of the Gaussian kernel under the substitution
// y = x + 2 sqrt(r) v:
//   (P_r h)(x) = pi^{-1/2} Int e^{-v^2} h(x + 2 sqrt(r) v) dv.
// Panel width shrinks with sqrt(r) so that a bounded oscillatory h keeps
// at most a few radians of phase per panel.
template <class H>
double gauss_semigroup(H&& h, double r, double x) {
  const double s2 = 2.0 * std::sqrt(r);
  const double width = std::min(2.0, 10.0 / (1.0 + s2));
  const double val = quad::gl_panels(
      [&](double v) { return std::exp(-v * v) * h(x + s2 * v); }, -6.5, 6.5,
      width);
  return val / kSqrtPi;
}

}  // namespace

std::string SolutionField::to_csv() const {
  std::ostringstream os;
  os << "t,x,value,error\n";
  os << std::setprecision(17);
  for (size_t i = 0; i < t_grid.size(); ++i) {
    for (size_t j = 0; j < x_grid.size(); ++j) {
      os << t_grid[i] << ',' << x_grid[j] << ','
         << values[i * x_grid.size() + j] << ','
         << errors[i * x_grid.size() + j] << '\n';
    }
  }
  return os.str();
}

nlohmann::json SolutionField::to_json() const {
  return nlohmann::json{{"provenance", provenance_name(provenance)},
                        {"t_grid", t_grid},
                        {"x_grid", x_grid},
                        {"values", values},
                        {"errors", errors},
                        {"meta", meta}};
}

WeightFunction WeightFunction::caputo(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw domain_error("WeightFunction: power weight needs beta in (0, 1)");
  }
  WeightFunction w;
  w.beta_ = beta;
  return w;
}

WeightFunction WeightFunction::from_bernstein(BernsteinSpec spec) {
  WeightFunction w;
  w.spec_ = std::move(spec);
  return w;
}

double WeightFunction::beta() const {
  if (!is_caputo()) {
    throw domain_error("WeightFunction: beta() is defined for power weights");
  }
  return beta_;
}

double WeightFunction::w(double s) const {
  if (!(s > 0.0)) throw domain_error("WeightFunction: requires s > 0");
  if (spec_) return spec_->levy_tail(s);
  return std::pow(s, -beta_) / special::gamma_fn(1.0 - beta_);
}

double WeightFunction::W1(double s) const {
  if (!(s >= 0.0)) throw domain_error("WeightFunction: requires s >= 0");
  if (spec_) return spec_->levy_tail_int1(s);
  return std::pow(s, 1.0 - beta_) /
         ((1.0 - beta_) * special::gamma_fn(1.0 - beta_));
}

double WeightFunction::W2(double s) const {
  if (!(s >= 0.0)) throw domain_error("WeightFunction: requires s >= 0");
  if (spec_) return spec_->levy_tail_int2(s);
  return std::pow(s, 2.0 - beta_) /
         ((2.0 - beta_) * special::gamma_fn(1.0 - beta_));
}

KernelValue q_kernel(const HeatKernelSpec& kspec, const DensityEval& eval,
                     double t, double z) {
  require_concrete(kspec, "q_kernel");
  require_tz(t, z, "q_kernel");
  if (z == 0.0 && kspec.dimension() >= 2.0 * kspec.alpha()) {
    throw domain_error(
        "q_kernel: the on-diagonal value diverges unless d < 2 alpha");
  }
  return subordinate_kernel(
      kspec, [&](double r) { return eval.density(r, t); }, z,
      clock_scale(eval, t));
}

KernelValue p_kernel(const HeatKernelSpec& kspec, const DensityEval& eval,
                     double t, double z) {
  require_concrete(kspec, "p_kernel");
  require_tz(t, z, "p_kernel");
  if (z == 0.0 && kspec.dimension() >= kspec.alpha()) {
    throw domain_error(
        "p_kernel: the on-diagonal value diverges unless d < alpha");
  }
  return subordinate_kernel(
      kspec, [&](double r) { return inverse_clock_density(eval, t, r); }, z,
      clock_scale(eval, t));
}

double cumulative_identity_residual(const HeatKernelSpec& kspec,
                                    const DensityEval& eval, double t,
                                    double z) {
  require_concrete(kspec, "cumulative_identity_residual");
  if (!(t > 0.0) || !(z > 0.0)) {
    throw domain_error("cumulative_identity_residual: requires t, z > 0");
  }
  const auto lhs = quad::tanh_sinh(
      [&](double s) {
        if (!(s > 0.0)) return 0.0;
        return q_kernel(kspec, eval, s, z).value;
      },
      0.0, t, 1e-6);
  const auto rhs = quad::tanh_sinh(
      [&](double u) {
        if (!(u > 0.0) || !(t - u > 0.0)) return 0.0;
        return eval.potential_density(u) *
               p_kernel(kspec, eval, t - u, z).value;
      },
      0.0, t, 1e-6);
  if (!(lhs.value > 0.0)) {
    throw accuracy_error("cumulative_identity_residual: vanishing mass",
                         lhs.error, 1e-6);
  }
  return std::abs(lhs.value - rhs.value) / lhs.value;
}

double caputo_w_derivative(const WeightFunction& w,
                           const std::vector<double>& times,
                           const std::vector<double>& values, double T) {
  if (times.size() != values.size()) {
    throw domain_error("caputo_w_derivative: times and values must align");
  }
  if (times.size() < 8) {
    throw domain_error("caputo_w_derivative: needs at least 8 samples");
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw domain_error("caputo_w_derivative: requires finite T > 0");
  }
  if (times.front() != 0.0) {
    throw domain_error("caputo_w_derivative: samples must start at t = 0");
  }
  for (size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw domain_error("caputo_w_derivative: times must strictly increase");
    }
  }
  const double h = T / 64.0;
  if (times.back() + 1e-12 * T < T + h) {
    throw domain_error(
        "caputo_w_derivative: samples must cover T (1 + 1/64) for the "
        "derivative stencil");
  }

  // Exact integral of w against the piecewise-linear interpolant up to Tp.
  const double f0 = values.front();
  auto I = [&](double Tp) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < times.size() && times[i] < Tp; ++i) {
      const double sl = times[i];
      const double sr = std::min(times[i + 1], Tp);
      const double ai = values[i] - f0;
      const double bi =
          (values[i + 1] - values[i]) / (times[i + 1] - times[i]);
      const double u2 = Tp - sl;
      const double u1 = Tp - sr;
      acc += (ai + bi * (Tp - sl)) * (w.W1(u2) - w.W1(u1)) -
             bi * (w.W2(u2) - w.W2(u1));
    }
    return acc;
  };
  auto diff = [&](double hh) { return (I(T + hh) - I(T - hh)) / (2.0 * hh); };
  const double d1 = diff(h);
  const double d2 = diff(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

namespace {

void require_stable_clock(const DensityEval& eval, double beta,
                          const char* who) {
  if (eval.spec().kind() != BernsteinKind::Stable ||
      std::abs(eval.spec().beta() - beta) > 1e-12) {
    throw domain_error(std::string(who) +
                       ": needs the stable clock matching beta");
  }
}

}  // namespace

double conjugate_identity_residual(const HeatKernelSpec& kspec,
                                   const DensityEval& eval, double beta,
                                   double t, double z) {
  require_concrete(kspec, "conjugate_identity_residual");
  require_stable_clock(eval, beta, "conjugate_identity_residual");
  if (!(t > 0.0) || !(z > 0.0)) {
    throw domain_error("conjugate_identity_residual: requires t, z > 0");
  }
  const WeightFunction conj = WeightFunction::caputo(1.0 - beta);
  const int n = 96;
  const double span = 1.05 * t;
  std::vector<double> times(n + 1), vals(n + 1);
  times[0] = 0.0;
  vals[0] = 0.0;  // p(0+, z) = 0 away from the diagonal
  for (int k = 1; k <= n; ++k) {
    const double s = span * std::pow(double(k) / n, 2.0);
    times[k] = s;
    vals[k] = p_kernel(kspec, eval, s, z).value;
  }
  const double deriv = caputo_w_derivative(conj, times, vals, t);
  const double q = q_kernel(kspec, eval, t, z).value;
  return std::abs(q - deriv) / std::abs(q);
}

double conjugate_integrated_residual(const HeatKernelSpec& kspec,
                                     const DensityEval& eval, double beta,
                                     double t, double z) {
  require_concrete(kspec, "conjugate_integrated_residual");
  require_stable_clock(eval, beta, "conjugate_integrated_residual");
  if (!(t > 0.0) || !(z > 0.0)) {
    throw domain_error("conjugate_integrated_residual: requires t, z > 0");
  }
  const WeightFunction conj = WeightFunction::caputo(1.0 - beta);
  const auto lhs = quad::tanh_sinh(
      [&](double s) {
        const double u = t - s;
        if (!(u > 0.0) || !(s > 0.0)) return 0.0;
        return conj.w(u) * p_kernel(kspec, eval, s, z).value;
      },
      0.0, t, 1e-6);
  const auto rhs = quad::tanh_sinh(
      [&](double s) {
        if (!(s > 0.0)) return 0.0;
        return q_kernel(kspec, eval, s, z).value;
      },
      0.0, t, 1e-6);
  if (!(rhs.value > 0.0)) {
    throw accuracy_error("conjugate_integrated_residual: vanishing mass",
                         rhs.error, 1e-6);
  }
  return std::abs(lhs.value - rhs.value) / rhs.value;
}

SolutionField duhamel_solve(const HeatKernelSpec& kspec,
                            const DensityEval& eval,
                            const std::function<double(double)>& g,
                            const std::function<double(double, double)>& f,
                            const std::vector<double>& t_grid,
                            const std::vector<double>& x_grid,
                            double rel_tol) {
  if (kspec.kind() != KernelKind::GaussianR1) {
    throw unsupported_error(
        "duhamel_solve: only the Gaussian kernel ships a computable "
        "semigroup action");
  }
  if (t_grid.empty() || x_grid.empty()) {
    throw domain_error("duhamel_solve: empty grid");
  }
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw domain_error("duhamel_solve: t grid must increase from 0");
    }
  }
  if (!(rel_tol > 0.0)) throw domain_error("duhamel_solve: bad tolerance");

  const double bsub = clock_power(eval);
  SolutionField out;
  out.t_grid = t_grid;
  out.x_grid = x_grid;
  out.provenance = Provenance::Duhamel;
  out.values.assign(t_grid.size() * x_grid.size(), 0.0);
  out.errors.assign(out.values.size(), 0.0);
  out.meta = nlohmann::json{
      {"kernel", kspec.to_json()},
      {"clock", eval.spec().to_json()},
      {"kernel_hash", json_hash(kspec.to_json())},
      {"clock_hash", json_hash(eval.spec().to_json())},
      {"rel_tol", rel_tol},
  };

  // The clock densities are x-independent; memoize them across each x row.
  std::map<std::pair<double, double>, double> dens_memo;
  std::map<double, double> inv_memo;
  auto dens = [&](double r, double s) {
    const auto key = std::make_pair(r, s);
    const auto it = dens_memo.find(key);
    if (it != dens_memo.end()) return it->second;
    const double d = eval.density(r, s);
    dens_memo.emplace(key, d);
    return d;
  };

  for (size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    dens_memo.clear();
    inv_memo.clear();
    for (size_t j = 0; j < x_grid.size(); ++j) {
      const double x = x_grid[j];
      double val = 0.0;
      double err = 0.0;
      if (t == 0.0) {
        val = g ? g(x) : 0.0;
      } else {
        if (g) {
          const auto hpart = quad::tanh_sinh_upper_scaled(
              [&](double r) {
                const auto it = inv_memo.find(r);
                const double h = it != inv_memo.end()
                                     ? it->second
                                     : inv_memo
                                           .emplace(r, inverse_clock_density(
                                                           eval, t, r))
                                           .first->second;
                if (!(h > 0.0)) return 0.0;
                return h * gauss_semigroup(g, r, x);
              },
              0.0, clock_scale(eval, t), rel_tol, 0.0, 9);
          val += hpart.value;
          err += hpart.error;
        }
        if (f) {
          // Int_0^t Int_0^inf dens(r, s) (P_r f(t-s, .))(x) dr ds with the
          // s -> 0 potential singularity absorbed by s = t tau^{1/b}.
          auto slice = [&](double s) {
            double seen = 0.0;
            auto fr = [&](double r) {
              const double d = dens(r, s);
              if (!(d > 0.0)) return 0.0;
              if (d > seen) {
                seen = d;
              } else if (d < 1e-12 * seen) {
                return 0.0;
              }
              return d * gauss_semigroup(
                             [&](double y) { return f(t - s, y); }, r, x);
            };
            return quad::tanh_sinh_upper_scaled(fr, 0.0,
                                                clock_scale(eval, s), rel_tol,
                                                0.0, 8)
                .value;
          };
          const double fpart = quad::gl_panels(
              [&](double tau) {
                if (!(tau > 0.0)) return 0.0;
                const double s = t * std::pow(tau, 1.0 / bsub);
                if (!(s > 0.0)) return 0.0;
                const double jac =
                    (t / bsub) * std::pow(tau, 1.0 / bsub - 1.0);
                return slice(s) * jac;
              },
              0.0, 1.0, 0.25);
          val += fpart;
          err += rel_tol * std::abs(fpart);
        }
        err += rel_tol * std::abs(val) + 1e-12;
      }
      out.values[i * x_grid.size() + j] = val;
      out.errors[i * x_grid.size() + j] = err;
    }
  }
  return out;
}

double pde_residual(const SolutionField& u,
                    const std::function<double(double, double)>& f,
                    const WeightFunction& w) {
  const size_t nt = u.t_grid.size();
  const size_t nx = u.x_grid.size();
  if (nt < 8 || nx < 3) {
    throw domain_error("pde_residual: grid too coarse");
  }
  if (u.values.size() != nt * nx) {
    throw domain_error("pde_residual: field shape mismatch");
  }
  const double hx = u.x_grid[1] - u.x_grid[0];
  for (size_t j = 1; j + 1 < nx; ++j) {
    if (std::abs(u.x_grid[j + 1] - u.x_grid[j] - hx) > 1e-9 * std::abs(hx)) {
      throw domain_error("pde_residual: x grid must be uniform");
    }
  }
  const double tmax = u.t_grid.back();
  double worst = 0.0;
  size_t used = 0;
  std::vector<double> col(nt);
  for (size_t j = 1; j + 1 < nx; ++j) {
    for (size_t i = 0; i < nt; ++i) col[i] = u.at(i, j);
    for (size_t i = 0; i < nt; ++i) {
      const double T = u.t_grid[i];
      // Interior times only: away from 0, with stencil room below tmax.
      if (!(T >= 0.05 * tmax)) continue;
      if (T * (1.0 + 1.0 / 64.0) > tmax) continue;
      const double deriv = caputo_w_derivative(w, u.t_grid, col, T);
      const double lap =
          (u.at(i, j - 1) - 2.0 * u.at(i, j) + u.at(i, j + 1)) / (hx * hx);
      const double fv = f ? f(T, u.x_grid[j]) : 0.0;
      const double res = std::abs(deriv - lap - fv) / (1.0 + std::abs(fv));
      worst = std::max(worst, res);
      ++used;
    }
  }
  if (used == 0) {
    throw domain_error("pde_residual: no interior time admits the stencil");
  }
  return worst;
}

}  // namespace tfp
