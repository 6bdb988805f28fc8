/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tfp.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tfp/bernstein.hpp"
#include "tfp/errors.hpp"
#include "tfp/kernels.hpp"
#include "tfp/montecarlo.hpp"
#include "tfp/solutions.hpp"
#include "tfp/subordinator.hpp"
#include "tfp/validate.hpp"
#include "tfp/version.hpp"

struct tfp_bernstein {
  tfp::BernsteinSpec spec;
};

struct tfp_density {
  tfp::DensityEval eval;
};

struct tfp_kernel {
  tfp::HeatKernelSpec spec;
};

namespace {

thread_local std::string t_last_error;

// Maps the library's exception taxonomy onto the C status codes; outputs
// are written by the body only, so a throw leaves them untouched.
template <typename F>
tfp_status guard(F&& body) noexcept {
  try {
    body();
    return TFP_OK;
  } catch (const tfp::config_error& e) {
    t_last_error = e.what();
    return TFP_ERR_CONFIG;
  } catch (const tfp::unsupported_error& e) {
    t_last_error = e.what();
    return TFP_ERR_UNSUPPORTED;
  } catch (const tfp::accuracy_error& e) {
    t_last_error = e.what();
    return TFP_ERR_NUMERIC;
  } catch (const tfp::solver_error& e) {
    t_last_error = e.what();
    return TFP_ERR_NUMERIC;
  } catch (const tfp::domain_error& e) {
    t_last_error = e.what();
    return TFP_ERR_DOMAIN;
  } catch (const nlohmann::json::exception& e) {
    t_last_error = e.what();
    return TFP_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return TFP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return TFP_ERR_INTERNAL;
  }
}

tfp_status arg_error(const char* msg) {
  t_last_error = msg;
  return TFP_ERR_CONFIG;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::function<double(double)> named_initial(const std::string& name) {
  if (name == "zero") return {};
  if (name == "cos") {
    return [](double x) { return std::cos(x); };
  }
  if (name == "gauss") {
    return [](double x) { return std::exp(-x * x); };
  }
  throw tfp::config_error("tfp_solve_duhamel: unknown initial data '" + name +
                          "' (want zero, cos, or gauss)");
}

std::function<double(double, double)> named_forcing(const std::string& name) {
  if (name == "zero") return {};
  if (name == "cos") {
    return [](double, double y) { return std::cos(y); };
  }
  throw tfp::config_error("tfp_solve_duhamel: unknown forcing '" + name +
                          "' (want zero or cos)");
}

}  // namespace

extern "C" {

const char* tfp_version(void) { return tfp::kVersion; }

const char* tfp_last_error(void) { return t_last_error.c_str(); }

void tfp_string_free(char* s) { std::free(s); }

/* ---- Bernstein exponent -------------------------------------------- */

tfp_status tfp_bernstein_create(const char* spec_json, tfp_bernstein** out) {
  if (spec_json == nullptr || out == nullptr) {
    return arg_error("tfp_bernstein_create: null argument");
  }
  *out = nullptr;
  return guard([&] {
    auto spec = tfp::BernsteinSpec::from_json_text(spec_json);
    *out = new tfp_bernstein{std::move(spec)};
  });
}

void tfp_bernstein_destroy(tfp_bernstein* b) { delete b; }

tfp_status tfp_bernstein_phi(const tfp_bernstein* b, double lambda,
                             double* out) {
  if (b == nullptr || out == nullptr) {
    return arg_error("tfp_bernstein_phi: null argument");
  }
  return guard([&] { *out = b->spec.phi(lambda); });
}

tfp_status tfp_bernstein_phi_inverse(const tfp_bernstein* b, double y,
                                     double* out) {
  if (b == nullptr || out == nullptr) {
    return arg_error("tfp_bernstein_phi_inverse: null argument");
  }
  return guard([&] { *out = b->spec.phi_inverse(y); });
}

tfp_status tfp_bernstein_levy_tail(const tfp_bernstein* b, double x,
                                   double* out) {
  if (b == nullptr || out == nullptr) {
    return arg_error("tfp_bernstein_levy_tail: null argument");
  }
  return guard([&] { *out = b->spec.levy_tail(x); });
}

/* ---- Clock density evaluator ---------------------------------------- */

tfp_status tfp_density_create(const tfp_bernstein* b, tfp_density** out) {
  if (b == nullptr || out == nullptr) {
    return arg_error("tfp_density_create: null argument");
  }
  *out = nullptr;
  return guard([&] { *out = new tfp_density{tfp::DensityEval(b->spec)}; });
}

void tfp_density_destroy(tfp_density* d) { delete d; }

tfp_status tfp_density_eval(const tfp_density* d, double r, double t,
                            double* out) {
  if (d == nullptr || out == nullptr) {
    return arg_error("tfp_density_eval: null argument");
  }
  return guard([&] { *out = d->eval.density(r, t); });
}

tfp_status tfp_density_inverse(const tfp_density* d, double t, double r,
                               double* out) {
  if (d == nullptr || out == nullptr) {
    return arg_error("tfp_density_inverse: null argument");
  }
  return guard([&] { *out = d->eval.inverse_density(t, r); });
}

tfp_status tfp_density_potential(const tfp_density* d, double t, double* out) {
  if (d == nullptr || out == nullptr) {
    return arg_error("tfp_density_potential: null argument");
  }
  return guard([&] { *out = d->eval.potential_density(t); });
}

tfp_status tfp_density_survival(const tfp_density* d, double r, double t,
                                double* out) {
  if (d == nullptr || out == nullptr) {
    return arg_error("tfp_density_survival: null argument");
  }
  return guard([&] { *out = d->eval.survival(r, t); });
}

tfp_status tfp_density_mode(const tfp_density* d, double r, double* out) {
  if (d == nullptr || out == nullptr) {
    return arg_error("tfp_density_mode: null argument");
  }
  return guard([&] { *out = d->eval.mode_estimate(r); });
}

/* ---- Heat kernels and fundamental solutions ------------------------- */

tfp_status tfp_kernel_create(const char* spec_json, tfp_kernel** out) {
  if (spec_json == nullptr || out == nullptr) {
    return arg_error("tfp_kernel_create: null argument");
  }
  *out = nullptr;
  return guard([&] {
    auto spec = tfp::HeatKernelSpec::from_json_text(spec_json);
    *out = new tfp_kernel{std::move(spec)};
  });
}

void tfp_kernel_destroy(tfp_kernel* k) { delete k; }

tfp_status tfp_kernel_p0(const tfp_kernel* k, double t, double z,
                         double* out) {
  if (k == nullptr || out == nullptr) {
    return arg_error("tfp_kernel_p0: null argument");
  }
  return guard([&] { *out = k->spec.p0_radial(t, z); });
}

tfp_status tfp_qkernel(const tfp_kernel* k, const tfp_density* d, double t,
                       double z, double* value, double* error) {
  if (k == nullptr || d == nullptr || value == nullptr) {
    return arg_error("tfp_qkernel: null argument");
  }
  return guard([&] {
    const auto kv = tfp::q_kernel(k->spec, d->eval, t, z);
    *value = kv.value;
    if (error != nullptr) *error = kv.error;
  });
}

tfp_status tfp_pkernel(const tfp_kernel* k, const tfp_density* d, double t,
                       double z, double* value, double* error) {
  if (k == nullptr || d == nullptr || value == nullptr) {
    return arg_error("tfp_pkernel: null argument");
  }
  return guard([&] {
    const auto kv = tfp::p_kernel(k->spec, d->eval, t, z);
    *value = kv.value;
    if (error != nullptr) *error = kv.error;
  });
}

tfp_status tfp_solve_duhamel(const tfp_kernel* k, const tfp_density* d,
                             const char* g_name, const char* f_name,
                             const double* t_grid, size_t nt,
                             const double* x_grid, size_t nx, double rel_tol,
                             double* values, double* errors) {
  if (k == nullptr || d == nullptr || g_name == nullptr ||
      f_name == nullptr || t_grid == nullptr || x_grid == nullptr ||
      values == nullptr) {
    return arg_error("tfp_solve_duhamel: null argument");
  }
  return guard([&] {
    const std::vector<double> ts(t_grid, t_grid + nt);
    const std::vector<double> xs(x_grid, x_grid + nx);
    const auto field =
        tfp::duhamel_solve(k->spec, d->eval, named_initial(g_name),
                           named_forcing(f_name), ts, xs, rel_tol);
    std::copy(field.values.begin(), field.values.end(), values);
    if (errors != nullptr) {
      std::copy(field.errors.begin(), field.errors.end(), errors);
    }
  });
}

/* ---- Sampling -------------------------------------------------------- */

tfp_status tfp_sample_stable(double beta, double r, uint64_t seed, size_t n,
                             double* out) {
  if (out == nullptr) {
    return arg_error("tfp_sample_stable: null argument");
  }
  return guard([&] {
    tfp::SamplerConfig cfg;
    cfg.beta = beta;
    cfg.n_samples = n;
    cfg.seed = seed;
    const auto v = tfp::sample_stable(cfg, r);
    std::copy(v.begin(), v.end(), out);
  });
}

tfp_status tfp_sample_inverse(double beta, double t, double step,
                              uint64_t seed, size_t n, double* out) {
  if (out == nullptr) {
    return arg_error("tfp_sample_inverse: null argument");
  }
  return guard([&] {
    tfp::SamplerConfig cfg;
    cfg.beta = beta;
    cfg.n_samples = n;
    cfg.seed = seed;
    cfg.step = step;
    const auto v = tfp::sample_inverse_batch(cfg, t);
    std::copy(v.begin(), v.end(), out);
  });
}

/* ---- Validation ------------------------------------------------------ */

tfp_status tfp_validate(const char* suite, int quick, uint64_t seed,
                        int* pass_out, char** json_report,
                        char** table_text) {
  if (suite == nullptr || pass_out == nullptr || json_report == nullptr) {
    return arg_error("tfp_validate: null argument");
  }
  *json_report = nullptr;
  if (table_text != nullptr) *table_text = nullptr;
  return guard([&] {
    const auto res = tfp::run_suite(suite, quick != 0, seed);
    char* report = dup_string(res.to_json().dump(2));
    char* table = nullptr;
    if (table_text != nullptr) {
      try {
        table = dup_string(res.table_text());
      } catch (...) {
        std::free(report);
        throw;
      }
    }
    *pass_out = res.pass ? 1 : 0;
    *json_report = report;
    if (table_text != nullptr) *table_text = table;
  });
}

tfp_status tfp_validate_criterion(int id, int quick, uint64_t seed,
                                  int* pass_out, char** json_report) {
  if (pass_out == nullptr || json_report == nullptr) {
    return arg_error("tfp_validate_criterion: null argument");
  }
  *json_report = nullptr;
  return guard([&] {
    const auto res = tfp::run_criterion(id, quick != 0, seed);
    *json_report = dup_string(res.to_json().dump(2));
    *pass_out = res.pass ? 1 : 0;
  });
}

}  // extern "C"
