/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tfp/quadrature.hpp"

using namespace tfp;

TEST_CASE("tanh_sinh handles smooth integrands") {
  auto r = quad::tanh_sinh([](double x) { return std::exp(-x); }, 0.0, 10.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-12));
}

TEST_CASE("tanh_sinh handles endpoint singularities") {
  // Int_0^1 x^{-1/2} dx = 2
  auto r = quad::tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
  // Int_0^1 x^{-0.7}(1-x)^{-0.3} dx = Beta(0.3, 0.7) = pi/sin(0.3 pi)
  auto b = quad::tanh_sinh(
      [](double x) { return std::pow(x, -0.7) * std::pow(1.0 - x, -0.3); }, 0.0,
      1.0);
  CHECK(b.value ==
        doctest::Approx(M_PI / std::sin(0.3 * M_PI)).epsilon(1e-10));
}

TEST_CASE("tanh_sinh_upper integrates decaying tails") {
  // Int_1^inf x^{-2} dx = 1
  auto r = quad::tanh_sinh_upper([](double x) { return 1.0 / (x * x); }, 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  // Int_0^inf e^{-x} dx = 1
  auto e = quad::tanh_sinh_upper([](double x) { return std::exp(-x); }, 0.0);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
  // scaled variant with bulk near 50
  auto s = quad::tanh_sinh_upper_scaled(
      [](double x) { return std::exp(-(x - 50.0) * (x - 50.0)); }, 0.0, 50.0);
  CHECK(s.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-8));
}

TEST_CASE("gl_panels matches oscillatory reference") {
  // Int_0^20 cos(3x) e^{-x} dx = (1 - e^{-20}(cos 60 - 3 sin 60)) / 10
  auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x); };
  const double ref =
      (1.0 - std::exp(-20.0) * (std::cos(60.0) - 3.0 * std::sin(60.0))) / 10.0;
  CHECK(quad::gl_panels(f, 0.0, 20.0, 0.4) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("bisect_increasing finds roots to relative tolerance") {
  auto f = [](double x) { return x * x * x; };
  const double r = quad::bisect_increasing(f, 27.0, 1.0);
  CHECK(r == doctest::Approx(3.0).epsilon(1e-11));
  const double small = quad::bisect_increasing(f, 1e-9, 1.0);
  CHECK(small == doctest::Approx(1e-3).epsilon(1e-11));
}

TEST_CASE("golden_max_log locates a unimodal maximum") {
  auto f = [](double t) { return std::pow(t, -1.5) * std::exp(-0.25 / t); };
  const double m = quad::golden_max_log(f, 1e-3, 1e3);
  CHECK(m == doctest::Approx(1.0 / 6.0).epsilon(1e-7));
}

TEST_CASE("fit_line recovers exact lines") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(2.5 - 0.75 * v);
  auto fit = quad::fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}
