/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_QUADRATURE_HPP
#define TFP_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "tfp/errors.hpp"

namespace tfp::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long evals = 0;
  bool converged = false;
};

namespace detail {

// Tanh-sinh core.  The integrand is sampled as f2(off, side): the node sits
// at distance off from the left endpoint (side < 0) or the right endpoint
// (side > 0).  Passing the offset instead of the abscissa lets change-of-
// variable wrappers evaluate near an endpoint without the abscissa rounding
// onto it, which matters once off drops below machine epsilon.
template <class F2>
Result tanh_sinh_core(F2&& f2, double a, double b, double rel_tol,
                      double abs_tol, int max_level) {
  Result res;
  if (!(b > a)) {
    res.converged = true;
    return res;
  }
  const double half = 0.5 * (b - a);

  // One transformed sample pair at parameter u > 0 plus the center point
  // handled separately.  y = (pi/2) sinh(u); offset from endpoint is
  // (b-a)/(exp(2y)+1); weight is (pi/2) cosh(u) sech^2(y) * half.
  // The sweep continues until the offset underflows, so integrable endpoint
  // singularities keep their full double-exponential resolution.
  auto sample = [&](double u, double& contrib) -> bool {
    const double y = 1.5707963267948966 * std::sinh(u);
    if (y > 350.0) return false;  // offset underflows; stop the sweep
    const double e2y = std::exp(2.0 * y);
    const double off = (b - a) / (e2y + 1.0);
    if (off == 0.0) return false;
    const double sech = 2.0 / (std::exp(y) + std::exp(-y));
    const double w = 1.5707963267948966 * std::cosh(u) * sech * sech * half;
    double fl = f2(off, -1);
    double fr = f2(off, +1);
    if (!std::isfinite(fl)) fl = 0.0;
    if (!std::isfinite(fr)) fr = 0.0;
    contrib = w * (fl + fr);
    res.evals += 2;
    return true;
  };

  double h = 1.0;
  double sum = 0.0;
  {
    double fc = f2(half, -1);
    if (!std::isfinite(fc)) fc = 0.0;
    ++res.evals;
    sum = 1.5707963267948966 * half * fc;  // u=0 node, weight (pi/2)*half
    double c;
    for (int k = 1; sample(k * h, c); ++k) sum += c;
  }
  double prev = sum * h;

  double prev_err = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0.0;
    double c;
    for (int k = 1; sample(k * h, c); k += 2) add += c;
    sum += add;
    const double cur = sum * h;
    const double err = std::abs(cur - prev);
    res.value = cur;
    res.error = err;
    if (level >= 3 &&
        err <= std::max(rel_tol * std::abs(cur), abs_tol) + 1e-300) {
      res.converged = true;
      return res;
    }
    // Noise plateau: the rule converges geometrically on anything it can
    // resolve, so once a few digits are in hand, level differences that
    // stop shrinking mean further refinement only resamples integrand
    // noise at doubling cost.  Return the plateau value with the plateau
    // as the honest error estimate.  The relative gate keeps low-level
    // transients (sums still far from the integral) from tripping it.
    if (level >= 4 && err > 0.25 * prev_err &&
        err <= 1e-3 * std::abs(cur)) {
      if (++stall >= 2) return res;
    } else {
      stall = 0;
    }
    prev_err = err;
    prev = cur;
  }
  res.value = prev;
  return res;
}

}  // namespace detail

// Tanh-sinh quadrature on a finite interval.  Integrable endpoint
// singularities are fine: abscissas are generated as offsets from the
// endpoints, so a left endpoint at 0 is resolved down to the underflow
// threshold.  Non-finite integrand values are treated as zero.
template <class F>
Result tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 0.0, int max_level = 12) {
  auto f2 = [&](double off, int side) {
    return (side < 0) ? f(a + off) : f(b - off);
  };
  return detail::tanh_sinh_core(f2, a, b, rel_tol, abs_tol, max_level);
}

// Integral over [a, inf) with a characteristic scale: maps x = a + s*u/(1-u)
// on u in (0,1).  Near u = 1 the map is evaluated as s*(1-off)/off with off
// the exact distance to 1, so heavy power tails keep their mass instead of
// being truncated at x ~ s/eps.
template <class F>
Result tanh_sinh_upper_scaled(F&& f, double a, double scale,
                              double rel_tol = 1e-10, double abs_tol = 0.0,
                              int max_level = 12) {
  auto f2 = [&](double off, int side) {
    const double u = (side < 0) ? off : 1.0 - off;
    const double om = (side < 0) ? 1.0 - off : off;
    const double x = a + scale * (u / om);
    if (!std::isfinite(x)) return 0.0;
    double v = f(x);
    if (!std::isfinite(v) || v == 0.0) return 0.0;
    return (v / om) * (scale / om);
  };
  return detail::tanh_sinh_core(f2, 0.0, 1.0, rel_tol, abs_tol, max_level);
}

// Integral over [a, inf), unit scale.
template <class F>
Result tanh_sinh_upper(F&& f, double a, double rel_tol = 1e-10,
                       double abs_tol = 0.0, int max_level = 12) {
  return tanh_sinh_upper_scaled(f, a, 1.0, rel_tol, abs_tol, max_level);
}

namespace detail {
// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the
// rule is symmetric).
inline constexpr double kGl16X[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr double kGl16W[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace detail

// Fixed 16-point Gauss-Legendre rule on [a, b].
template <class F>
double gl16(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) {
    s += detail::kGl16W[i] *
         (f(c + h * detail::kGl16X[i]) + f(c - h * detail::kGl16X[i]));
  }
  return s * h;
}

// Composite Gauss-Legendre over [a, b] with panels no wider than max_width.
// Intended for smooth, mildly oscillatory integrands (Fourier tails);
// pick max_width a fraction of the oscillation period.
template <class F>
double gl_panels(F&& f, double a, double b, double max_width) {
  if (!(b > a)) return 0.0;
  const int n = std::max(1, (int)std::ceil((b - a) / max_width));
  const double w = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += gl16(f, a + i * w, a + (i + 1) * w);
  return s;
}

// Bisection for an increasing function: smallest x in [lo0, inf) with
// f(x) >= target, bracket grown by doubling.  rel_tol on x.
template <class F>
double bisect_increasing(F&& f, double target, double lo0, double rel_tol = 1e-12,
                         int max_iter = 200) {
  double lo = lo0, hi = lo0;
  double flo = f(lo);
  if (flo >= target) {
    // grow downward
    for (int i = 0; i < 2000 && f(lo) >= target; ++i) {
      lo *= 0.5;
      if (lo == 0.0)
        throw solver_error("bisect_increasing: root below the double range");
    }
    hi = 2.0 * lo;
  } else {
    for (int i = 0; i < 2000 && f(hi) < target; ++i) hi *= 2.0;
    lo = 0.5 * hi;
    if (hi > lo0) lo = std::max(lo0, hi * 0.5);
  }
  if (!(f(hi) >= target) || f(lo) >= target)
    throw solver_error("bisect_increasing: failed to bracket root");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) >= target))
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= rel_tol * hi) break;
  }
  return 0.5 * (lo + hi);
}

// Golden-section maximizer of a unimodal function on [a, b], searched in
// log-space.  Returns the abscissa of the maximum.
template <class F>
double golden_max_log(F&& f, double a, double b, int iters = 200,
                      double rel_tol = 1e-12) {
  const double gr = 0.6180339887498949;
  double lo = std::log(a), hi = std::log(b);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
  for (int i = 0; i < iters && (hi - lo) > rel_tol; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(std::exp(x2));
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(std::exp(x1));
    }
  }
  return std::exp(0.5 * (lo + hi));
}

// Ordinary least squares fit y = a + b x.  Returns {intercept, slope, r2}.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw domain_error("fit_line: need n >= 2");
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r2 = (syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return out;
}

}  // namespace tfp::quad

#endif
