/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfp.h"

// The C surface must agree with the C++ library bit for bit; these
// includes provide the reference values.
#include "tfp/bernstein.hpp"
#include "tfp/kernels.hpp"
#include "tfp/montecarlo.hpp"
#include "tfp/solutions.hpp"
#include "tfp/subordinator.hpp"
#include "tfp/version.hpp"

namespace {

struct BernsteinHandle {
  tfp_bernstein* h = nullptr;
  explicit BernsteinHandle(const char* json) {
    REQUIRE(tfp_bernstein_create(json, &h) == TFP_OK);
  }
  ~BernsteinHandle() { tfp_bernstein_destroy(h); }
};

struct DensityHandle {
  tfp_density* h = nullptr;
  explicit DensityHandle(const tfp_bernstein* b) {
    REQUIRE(tfp_density_create(b, &h) == TFP_OK);
  }
  ~DensityHandle() { tfp_density_destroy(h); }
};

struct KernelHandle {
  tfp_kernel* h = nullptr;
  explicit KernelHandle(const char* json) {
    REQUIRE(tfp_kernel_create(json, &h) == TFP_OK);
  }
  ~KernelHandle() { tfp_kernel_destroy(h); }
};

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(std::string(tfp_version()) == std::string(tfp::kVersion));
  CHECK(tfp_last_error() != nullptr);
  tfp_string_free(nullptr);  // must be a no-op
  tfp_bernstein_destroy(nullptr);
  tfp_density_destroy(nullptr);
  tfp_kernel_destroy(nullptr);
}

TEST_CASE("bernstein handle evaluates the exponent") {
  BernsteinHandle b("{\"kind\":\"stable\",\"beta\":0.5}");
  double v = 0.0;
  REQUIRE(tfp_bernstein_phi(b.h, 4.0, &v) == TFP_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-14));
  REQUIRE(tfp_bernstein_phi_inverse(b.h, 2.0, &v) == TFP_OK);
  CHECK(v == doctest::Approx(4.0).epsilon(1e-12));
  REQUIRE(tfp_bernstein_levy_tail(b.h, 1.0, &v) == TFP_OK);
  CHECK(v == doctest::Approx(tfp::BernsteinSpec::stable(0.5).levy_tail(1.0)));
}

TEST_CASE("bad specs map to the config and domain codes") {
  tfp_bernstein* b = nullptr;
  CHECK(tfp_bernstein_create("not json", &b) == TFP_ERR_CONFIG);
  CHECK(b == nullptr);
  CHECK(std::strlen(tfp_last_error()) > 0);
  CHECK(tfp_bernstein_create("{\"kind\":\"stable\",\"beta\":1.5}", &b) ==
        TFP_ERR_DOMAIN);
  CHECK(b == nullptr);
  CHECK(tfp_bernstein_create(nullptr, &b) == TFP_ERR_CONFIG);
  tfp_kernel* k = nullptr;
  CHECK(tfp_kernel_create("{\"kind\":\"heptagonal\"}", &k) ==
        TFP_ERR_CONFIG);
}

TEST_CASE("density handle matches the library closed form") {
  BernsteinHandle b("{\"kind\":\"stable\",\"beta\":0.5}");
  DensityHandle d(b.h);
  double v = 0.0;
  REQUIRE(tfp_density_eval(d.h, 1.0, 1.0, &v) == TFP_OK);
  CHECK(v == doctest::Approx(0.21969564473386122).epsilon(1e-12));
  REQUIRE(tfp_density_survival(d.h, 1.0, 1.0, &v) == TFP_OK);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  REQUIRE(tfp_density_mode(d.h, 1.0, &v) == TFP_OK);
  CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
  REQUIRE(tfp_density_potential(d.h, 1.0, &v) == TFP_OK);
  const tfp::DensityEval ref(tfp::BernsteinSpec::stable(0.5));
  CHECK(v == ref.potential_density(1.0));
  REQUIRE(tfp_density_inverse(d.h, 1.0, 0.5, &v) == TFP_OK);
  CHECK(v == ref.inverse_density(1.0, 0.5));
  CHECK(tfp_density_eval(d.h, -1.0, 1.0, &v) == TFP_ERR_DOMAIN);
}

TEST_CASE("kernel handle and fundamental solutions match the library") {
  BernsteinHandle b("{\"kind\":\"stable\",\"beta\":0.5}");
  DensityHandle d(b.h);
  KernelHandle k("{\"kind\":\"gaussian\"}");
  double v = 0.0;
  REQUIRE(tfp_kernel_p0(k.h, 1.0, 0.0, &v) == TFP_OK);
  CHECK(v == doctest::Approx(0.28209479177387814).epsilon(1e-14));

  const tfp::DensityEval ref(tfp::BernsteinSpec::stable(0.5));
  const auto kq = tfp::q_kernel(tfp::HeatKernelSpec::gaussian_r1(), ref,
                                1.0, 0.5);
  double err = 0.0;
  REQUIRE(tfp_qkernel(k.h, d.h, 1.0, 0.5, &v, &err) == TFP_OK);
  CHECK(v == kq.value);
  CHECK(err == kq.error);
  const auto kp = tfp::p_kernel(tfp::HeatKernelSpec::gaussian_r1(), ref,
                                1.0, 0.5);
  REQUIRE(tfp_pkernel(k.h, d.h, 1.0, 0.5, &v, nullptr) == TFP_OK);
  CHECK(v == kp.value);
}

TEST_CASE("duhamel export matches the library on a small grid") {
  BernsteinHandle b("{\"kind\":\"stable\",\"beta\":0.5}");
  DensityHandle d(b.h);
  KernelHandle k("{\"kind\":\"gaussian\"}");
  const std::vector<double> ts = {0.0, 0.25, 1.0};
  const std::vector<double> xs = {-1.0, 0.0, 1.0};
  std::vector<double> vals(ts.size() * xs.size(), -7.0);
  std::vector<double> errs(vals.size(), -7.0);
  REQUIRE(tfp_solve_duhamel(k.h, d.h, "zero", "cos", ts.data(), ts.size(),
                            xs.data(), xs.size(), 1e-4, vals.data(),
                            errs.data()) == TFP_OK);
  const auto field = tfp::duhamel_solve(
      tfp::HeatKernelSpec::gaussian_r1(),
      tfp::DensityEval(tfp::BernsteinSpec::stable(0.5)), {},
      [](double, double y) { return std::cos(y); }, ts, xs, 1e-4);
  for (size_t i = 0; i < vals.size(); ++i) {
    CHECK(vals[i] == field.values[i]);
    CHECK(errs[i] == field.errors[i]);
  }
  // Unknown source names and non-Gaussian kernels are rejected.
  CHECK(tfp_solve_duhamel(k.h, d.h, "vortex", "cos", ts.data(), ts.size(),
                          xs.data(), xs.size(), 1e-4, vals.data(),
                          nullptr) == TFP_ERR_CONFIG);
  KernelHandle c("{\"kind\":\"cauchy\"}");
  CHECK(tfp_solve_duhamel(c.h, d.h, "zero", "cos", ts.data(), ts.size(),
                          xs.data(), xs.size(), 1e-4, vals.data(),
                          nullptr) == TFP_ERR_UNSUPPORTED);
}

TEST_CASE("sampling exports are deterministic and match the library") {
  std::vector<double> a(6, 0.0), b(6, 0.0);
  REQUIRE(tfp_sample_stable(0.5, 1.0, 42, a.size(), a.data()) == TFP_OK);
  REQUIRE(tfp_sample_stable(0.5, 1.0, 42, b.size(), b.data()) == TFP_OK);
  CHECK(a == b);
  tfp::SamplerConfig cfg;
  cfg.beta = 0.5;
  cfg.n_samples = a.size();
  cfg.seed = 42;
  CHECK(a == tfp::sample_stable(cfg, 1.0));

  std::vector<double> inv(3, 0.0);
  REQUIRE(tfp_sample_inverse(0.5, 1.0, 1e-2, 42, inv.size(), inv.data()) ==
          TFP_OK);
  cfg.step = 1e-2;
  cfg.n_samples = inv.size();
  CHECK(inv == tfp::sample_inverse_batch(cfg, 1.0));
  CHECK(tfp_sample_inverse(0.5, 1.0, 0.5, 42, inv.size(), inv.data()) ==
        TFP_ERR_DOMAIN);
}

TEST_CASE("validation export runs a suite and reports") {
  int pass = -1;
  char* report = nullptr;
  char* table = nullptr;
  REQUIRE(tfp_validate("unimodality", 1, 17, &pass, &report, &table) ==
          TFP_OK);
  REQUIRE(report != nullptr);
  REQUIRE(table != nullptr);
  CHECK(pass == 1);
  const auto j = nlohmann::json::parse(report);
  CHECK(j.at("suite").get<std::string>() == "unimodality");
  CHECK(j.at("version").get<std::string>() == std::string(tfp::kVersion));
  CHECK(j.at("criteria").size() == 1);
  CHECK(std::string(table).find("mode-scaling") != std::string::npos);
  tfp_string_free(report);
  tfp_string_free(table);

  CHECK(tfp_validate("no-such-suite", 1, 17, &pass, &report, nullptr) ==
        TFP_ERR_CONFIG);
  CHECK(report == nullptr);
}

TEST_CASE("single-criterion export reports one record") {
  int pass = -1;
  char* report = nullptr;
  REQUIRE(tfp_validate_criterion(9, 1, 17, &pass, &report) == TFP_OK);
  REQUIRE(report != nullptr);
  CHECK(pass == 1);
  const auto j = nlohmann::json::parse(report);
  CHECK(j.at("id").get<int>() == 9);
  CHECK(j.at("name").get<std::string>() == "mode-scaling");
  tfp_string_free(report);
  CHECK(tfp_validate_criterion(0, 1, 17, &pass, &report) == TFP_ERR_DOMAIN);
  CHECK(report == nullptr);
}
