/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tfp/bernstein.hpp"
#include "tfp/errors.hpp"
#include "tfp/kernels.hpp"
#include "tfp/quadrature.hpp"
#include "tfp/subordinator.hpp"

using namespace tfp;

namespace {

constexpr double kPi = 3.14159265358979323846;

double cauchy_closed(double t, double z) {
  return t / (kPi * (t * t + z * z));
}

double gauss_closed(double t, double z) {
  return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

// Direct double-exponential quadrature of the defining Fourier integral
//   (1/pi) Int_0^inf cos(z xi) exp(-t xi^a) d xi,
// truncated where the envelope is below 1e-19.  Usable while the truncated
// range holds only a few dozen radians of phase.
double fourier_oracle(double a, double t, double z) {
  const double xi_max = std::pow(45.0 / t, 1.0 / a);
  const auto q = quad::tanh_sinh(
      [&](double xi) {
        return std::cos(z * xi) * std::exp(-t * std::pow(xi, a));
      },
      0.0, xi_max, 1e-12, 0.0, 13);
  return q.value / kPi;
}

// Large-argument series of the scale-one symmetric stable density, written
// out independently of the library:
//   f(x) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(k a + 1)/k! sin(k pi a/2)
//          x^{-k a - 1}.
// Convergent for a < 1; for a > 1 the caller must stay in the regime where
// terms decrease well past the requested accuracy.
double series_oracle(double a, double x) {
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 300; ++k) {
    const double mag =
        std::exp(std::lgamma(k * a + 1.0) - std::lgamma(k + 1.0) -
                 (k * a + 1.0) * std::log(x));
    sum += sign * std::sin(0.5 * kPi * k * a) * mag;
    sign = -sign;
    if (mag < 1e-16 * std::abs(sum)) break;
  }
  return sum / kPi;
}

// Subordination identity: a symmetric stable kernel of order a is Gaussian
// heat subordinated by a one-sided stable clock of exponent a/2,
//   p(t, z) = Int_0^inf (4 pi s)^{-1/2} exp(-z^2/(4 s)) dP(S_t <= s).
// This routes the check through the subordinator module, fully independent
// of the Fourier evaluation.
double subordination_oracle(double a, double z) {
  DensityEval clock(BernsteinSpec::stable(0.5 * a), DensityMethod::Auto, 20,
                    1e-9);
  auto f = [&](double s) { return gauss_closed(s, z) * clock.density(1.0, s); };
  const double scale = std::max(0.2, z * z / 9.0);
  return quad::tanh_sinh_upper_scaled(f, 0.0, scale, 1e-8).value;
}

double kernel_mass(const HeatKernelSpec& k, double t) {
  const double s = std::pow(t, 1.0 / k.alpha());
  const auto q = quad::tanh_sinh_upper_scaled(
      [&](double z) { return k.p0_radial(t, z); }, 0.0, s, 1e-10);
  return 2.0 * q.value;
}

// Convolution of two radial kernels on the line evaluated at x, folded to
// the half line around the midpoint c = x/2.
double chapman(const HeatKernelSpec& k, double s, double t, double x) {
  const double c = 0.5 * x;
  const double scale = std::pow(std::max(s, t), 1.0 / k.alpha()) + c;
  auto f = [&](double v) {
    return k.p0_radial(s, std::abs(c + v)) * k.p0_radial(t, std::abs(c - v)) +
           k.p0_radial(s, std::abs(c - v)) * k.p0_radial(t, std::abs(c + v));
  };
  return quad::tanh_sinh_upper_scaled(f, 0.0, scale, 1e-9).value;
}

}  // namespace

TEST_CASE("gaussian and cauchy kernels match their closed forms") {
  const HeatKernelSpec g = HeatKernelSpec::gaussian_r1();
  const HeatKernelSpec c = HeatKernelSpec::cauchy_r1();

  // On-diagonal and unit-distance pins.
  CHECK(g.p0_radial(1.0, 0.0) ==
        doctest::Approx(0.28209479177387814).epsilon(1e-14));
  CHECK(c.p0_radial(1.0, 1.0) ==
        doctest::Approx(0.15915494309189535).epsilon(1e-14));

  CHECK(g.alpha() == 2.0);
  CHECK(c.alpha() == 1.0);
  CHECK(g.dimension() == 1);
  CHECK(g.concrete());

  for (double t : {0.25, 1.0, 7.0}) {
    for (double z : {0.0, 0.3, 1.0, 4.0}) {
      CHECK(g.p0_radial(t, z) ==
            doctest::Approx(gauss_closed(t, z)).epsilon(1e-14));
      CHECK(c.p0_radial(t, z) ==
            doctest::Approx(cauchy_closed(t, z)).epsilon(1e-14));
    }
  }
}

TEST_CASE("stable kernel of order one reproduces the cauchy kernel") {
  // Dual route across eight decades of distance: the quadrature branch
  // carries small scaled distances, the series branch large ones, and the
  // closed Cauchy form checks both.
  const HeatKernelSpec s1 = HeatKernelSpec::stable_r1(1.0);
  for (double t : {0.3, 1.0, 4.0}) {
    CHECK(s1.p0_radial(t, 0.0) ==
          doctest::Approx(cauchy_closed(t, 0.0)).epsilon(1e-12));
    for (double z = 1e-3; z < 2e3; z *= 3.1623) {
      CHECK(s1.p0_radial(t, z) ==
            doctest::Approx(cauchy_closed(t, z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("stable kernel matches the direct fourier oracle") {
  const HeatKernelSpec k = HeatKernelSpec::stable_r1(1.5);
  // On-diagonal closed form Gamma(1 + 1/a) / (pi t^{1/a}).
  CHECK(k.p0_radial(1.0, 0.0) ==
        doctest::Approx(std::tgamma(5.0 / 3.0) / kPi).epsilon(1e-12));
  for (double z : {0.0, 0.3, 1.0, 2.0}) {
    CHECK(k.p0_radial(1.0, z) ==
          doctest::Approx(fourier_oracle(1.5, 1.0, z)).epsilon(1e-6));
  }
  // Off unit time as well.
  CHECK(k.p0_radial(0.5, 1.0) ==
        doctest::Approx(fourier_oracle(1.5, 0.5, 1.0)).epsilon(1e-6));
}

TEST_CASE("stable kernel tail matches the independent series") {
  for (double a : {0.7, 1.5}) {
    const HeatKernelSpec k = HeatKernelSpec::stable_r1(a);
    // x large enough that the test series is accurate for both orders.
    for (double x : {12.0, 40.0, 300.0}) {
      CHECK(k.p0_radial(1.0, x) ==
            doctest::Approx(series_oracle(a, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("stable kernel agrees with gaussian subordination") {
  // Independent route through the subordinator module; the distances
  // straddle the internal quadrature/series split.
  for (double a : {0.7, 1.5}) {
    const HeatKernelSpec k = HeatKernelSpec::stable_r1(a);
    for (double z : {0.5, 1.5, 4.0}) {
      CHECK(k.p0_radial(1.0, z) ==
            doctest::Approx(subordination_oracle(a, z)).epsilon(3e-6));
    }
  }
}

TEST_CASE("concrete kernels are self-similar in the stable scaling") {
  for (double a : {0.7, 1.0, 1.5, 2.0}) {
    const HeatKernelSpec k = (a == 2.0) ? HeatKernelSpec::gaussian_r1()
                             : (a == 1.0) ? HeatKernelSpec::cauchy_r1()
                                          : HeatKernelSpec::stable_r1(a);
    for (double t : {0.3, 2.7}) {
      const double s = std::pow(t, -1.0 / a);
      for (double z : {0.4, 1.3, 5.0}) {
        CHECK(k.p0_radial(t, z) ==
              doctest::Approx(s * k.p0_radial(1.0, z * s)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("concrete kernels conserve mass") {
  CHECK(kernel_mass(HeatKernelSpec::gaussian_r1(), 0.7) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(kernel_mass(HeatKernelSpec::cauchy_r1(), 2.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(kernel_mass(HeatKernelSpec::stable_r1(1.5), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(kernel_mass(HeatKernelSpec::stable_r1(0.7), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("concrete kernels satisfy chapman-kolmogorov") {
  const HeatKernelSpec g = HeatKernelSpec::gaussian_r1();
  CHECK(chapman(g, 0.5, 1.5, 1.0) ==
        doctest::Approx(g.p0_radial(2.0, 1.0)).epsilon(1e-9));

  const HeatKernelSpec c = HeatKernelSpec::cauchy_r1();
  CHECK(chapman(c, 0.5, 1.5, 1.0) ==
        doctest::Approx(c.p0_radial(2.0, 1.0)).epsilon(1e-8));
  CHECK(chapman(c, 1.0, 1.0, 3.0) ==
        doctest::Approx(c.p0_radial(2.0, 3.0)).epsilon(1e-8));

  const HeatKernelSpec s = HeatKernelSpec::stable_r1(1.5);
  CHECK(chapman(s, 0.5, 1.5, 1.0) ==
        doctest::Approx(s.p0_radial(2.0, 1.0)).epsilon(1e-5));
}

TEST_CASE("scale and volume functions") {
  const ScaleFunction p2 = ScaleFunction::power(2.0);
  CHECK(p2.value(3.0) == doctest::Approx(9.0));
  CHECK(p2.inverse(9.0) == doctest::Approx(3.0));
  CHECK(p2.value(0.0) == 0.0);
  CHECK(p2.alpha1 == 2.0);
  CHECK(p2.alpha2 == 2.0);

  const VolumeFunction v3 = VolumeFunction::power(3.0);
  CHECK(v3.value(2.0) == doctest::Approx(8.0));
  CHECK(v3.d1 == 3.0);

  CHECK_THROWS_AS(ScaleFunction::power(0.0), domain_error);
  CHECK_THROWS_AS(ScaleFunction::power(-3.0), domain_error);
  CHECK_THROWS_AS(VolumeFunction::power(0.0), domain_error);
  CHECK_THROWS_AS(p2.value(-1.0), domain_error);
  CHECK_THROWS_AS(p2.inverse(-0.1), domain_error);
  CHECK_THROWS_AS(v3.value(-2.0), domain_error);
}

TEST_CASE("m solver pins, routes, and monotonicity") {
  const ScaleFunction p2 = ScaleFunction::power(2.0);
  const ScaleFunction p3 = ScaleFunction::power(3.0);

  CHECK(m_solver(p2, 1.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(m_solver(p3, 1.0, 2.0) ==
        doctest::Approx(2.8284271247461903).epsilon(1e-14));

  // At t = Phi(r) the solution is one, for any admissible order.
  for (double a : {1.7, 2.0, 3.2}) {
    const ScaleFunction pa = ScaleFunction::power(a);
    for (double r : {0.5, 2.0, 7.0}) {
      CHECK(m_solver(pa, pa.value(r), r) ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(m_solver(pa, pa.value(r), r, MRoute::Bisection) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  // Closed form against the bisection route.
  for (double a : {1.2, 2.0, 3.7}) {
    const ScaleFunction pa = ScaleFunction::power(a);
    for (double t : {0.3, 1.0, 5.0}) {
      for (double r : {0.4, 1.0, 6.0}) {
        const double mc = m_solver(pa, t, r, MRoute::Closed);
        const double mb = m_solver(pa, t, r, MRoute::Bisection);
        CHECK(mb == doctest::Approx(mc).epsilon(1e-10));
      }
    }
  }

  // Non-increasing in t, non-decreasing in r.
  const ScaleFunction pa = ScaleFunction::power(1.6);
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 0.01; t < 200.0; t *= 2.0) {
    const double m = m_solver(pa, t, 2.0);
    CHECK(m <= prev);
    prev = m;
  }
  prev = 0.0;
  for (double r = 0.1; r < 150.0; r *= 2.0) {
    const double m = m_solver(pa, 0.8, r);
    CHECK(m >= prev);
    prev = m;
  }

  CHECK_THROWS_AS(m_solver(ScaleFunction::power(1.0), 1.0, 1.0), domain_error);
  CHECK_THROWS_AS(m_solver(ScaleFunction::power(0.8), 1.0, 1.0), domain_error);
  CHECK_THROWS_AS(m_solver(p2, 0.0, 1.0), domain_error);
  CHECK_THROWS_AS(m_solver(p2, 1.0, 0.0), domain_error);
}

TEST_CASE("jump envelope formula and cauchy sandwich") {
  const HeatKernelSpec env = HeatKernelSpec::jump_envelope(
      ScaleFunction::power(1.0), VolumeFunction::power(1.0));
  const HeatKernelSpec c = HeatKernelSpec::cauchy_r1();

  CHECK_FALSE(env.concrete());
  CHECK(env.p0_radial(0.7, 0.0) == doctest::Approx(1.0 / 0.7));

  for (double t : {0.1, 1.0, 10.0}) {
    for (double z = 1e-3; z < 2e3; z *= 10.0) {
      const double e = env.p0_radial(t, z);
      CHECK(e == doctest::Approx(std::min(1.0 / t, t / (z * z))));
      // Exact sandwich ratio pi (1 + min(z^2/t^2, t^2/z^2)) in [pi, 2 pi].
      const double ratio = e / c.p0_radial(t, z);
      const double q = std::min((z * z) / (t * t), (t * t) / (z * z));
      CHECK(ratio == doctest::Approx(kPi * (1.0 + q)).epsilon(1e-12));
      CHECK(ratio >= kPi * (1.0 - 1e-12));
      CHECK(ratio <= 2.0 * kPi * (1.0 + 1e-12));
    }
  }

  // General exponents: min(1/V(Phi^{-1}(t)), t/(V(z) Phi(z))).
  const HeatKernelSpec env2 = HeatKernelSpec::jump_envelope(
      ScaleFunction::power(0.8), VolumeFunction::power(2.0));
  for (double t : {0.4, 3.0}) {
    for (double z : {0.2, 1.0, 9.0}) {
      const double diag = 1.0 / std::pow(std::pow(t, 1.0 / 0.8), 2.0);
      const double off = t / (z * z * std::pow(z, 0.8));
      CHECK(env2.p0_radial(t, z) == doctest::Approx(std::min(diag, off)));
    }
  }
}

TEST_CASE("diffusion envelope formula and gaussian sandwich") {
  const HeatKernelSpec env = HeatKernelSpec::diffusion_envelope(
      ScaleFunction::power(2.0), VolumeFunction::power(1.0));
  const HeatKernelSpec g = HeatKernelSpec::gaussian_r1();

  CHECK(env.p0_radial(4.0, 0.0) == doctest::Approx(0.5));

  // With Phi = r^2 the exponent is m = z^2/t, so the ratio against the
  // Gaussian kernel is exp(3 z^2 / (4 t)) / sqrt(4 pi): bounded on any grid
  // with z^2/t capped, here by 4.
  for (double t : {0.2, 1.0, 5.0}) {
    for (double frac : {0.0, 0.3, 1.0, 2.0, 4.0}) {
      const double z = std::sqrt(frac * t);
      const double e = env.p0_radial(t, z);
      CHECK(e == doctest::Approx(std::exp(-frac) / std::sqrt(t)).epsilon(
                     1e-12));
      const double ratio = g.p0_radial(t, z) / e;
      CHECK(ratio == doctest::Approx(std::exp(0.75 * frac) /
                                     std::sqrt(4.0 * kPi))
                         .epsilon(1e-12));
      CHECK(ratio >= 0.25);
      CHECK(ratio <= 6.0);
    }
  }

  CHECK_THROWS_AS(HeatKernelSpec::diffusion_envelope(ScaleFunction::power(1.0),
                                                     VolumeFunction::power(1.0)),
                  domain_error);
}

TEST_CASE("kernel specs round-trip through json") {
  const std::vector<HeatKernelSpec> specs = {
      HeatKernelSpec::gaussian_r1(),
      HeatKernelSpec::cauchy_r1(),
      HeatKernelSpec::stable_r1(1.3),
      HeatKernelSpec::jump_envelope(ScaleFunction::power(0.8),
                                    VolumeFunction::power(2.0)),
      HeatKernelSpec::diffusion_envelope(ScaleFunction::power(1.5),
                                         VolumeFunction::power(3.0)),
  };
  for (const auto& k : specs) {
    const auto j = k.to_json();
    const HeatKernelSpec back = HeatKernelSpec::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.kind() == k.kind());
    CHECK(back.alpha() == doctest::Approx(k.alpha()));
    if (k.concrete()) {
      CHECK(back.p0_radial(0.7, 0.9) ==
            doctest::Approx(k.p0_radial(0.7, 0.9)).epsilon(1e-14));
    }
  }

  const HeatKernelSpec s =
      HeatKernelSpec::from_json_text("{\"kind\": \"stable\", \"alpha\": 1.5}");
  CHECK(s.kind() == KernelKind::StableR1);
  CHECK(s.alpha() == 1.5);

  CHECK_THROWS_AS(HeatKernelSpec::from_json_text("not json"), config_error);
  CHECK_THROWS_AS(HeatKernelSpec::from_json_text("[1, 2]"), config_error);
  CHECK_THROWS_AS(HeatKernelSpec::from_json_text("{\"kind\": \"weird\"}"),
                  config_error);
  CHECK_THROWS_AS(
      HeatKernelSpec::from_json_text("{\"kind\": \"stable\", \"alpha\": 2.0}"),
      domain_error);
  CHECK_THROWS_AS(
      HeatKernelSpec::from_json_text("{\"kind\": \"stable\", \"alpha\": \"x\"}"),
      config_error);
}

TEST_CASE("kernel domain errors") {
  const HeatKernelSpec g = HeatKernelSpec::gaussian_r1();
  CHECK_THROWS_AS(g.p0_radial(0.0, 1.0), domain_error);
  CHECK_THROWS_AS(g.p0_radial(-1.0, 1.0), domain_error);
  CHECK_THROWS_AS(g.p0_radial(std::nan(""), 1.0), domain_error);
  CHECK_THROWS_AS(g.p0_radial(1.0, -0.5), domain_error);
  CHECK_THROWS_AS(g.p0_radial(1.0, std::nan("")), domain_error);

  const HeatKernelSpec env = HeatKernelSpec::jump_envelope(
      ScaleFunction::power(1.0), VolumeFunction::power(1.0));
  CHECK_THROWS_AS(env.p0_radial(0.0, 1.0), domain_error);
  CHECK_THROWS_AS(env.p0_radial(1.0, -1.0), domain_error);

  CHECK_THROWS_AS(HeatKernelSpec::stable_r1(0.0), domain_error);
  CHECK_THROWS_AS(HeatKernelSpec::stable_r1(2.0), domain_error);
  CHECK_THROWS_AS(HeatKernelSpec::stable_r1(-1.0), domain_error);
}
