/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tfp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "tfp/errors.hpp"

namespace tfp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Index block reserved per first-passage draw, and the step budget that
// fits inside it (each step burns two indices, the refinement four more).
constexpr std::uint64_t kInverseBlock = std::uint64_t(1) << 26;
constexpr std::uint64_t kStepBudget = std::uint64_t(1) << 25;

std::uint64_t splitmix(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_statistical(const SamplerConfig& config) {
  config.validate();
  if (config.n_samples < 1000) {
    throw domain_error(
        "montecarlo: statistical comparison needs n_samples >= 1000");
  }
}

void check_grid(const std::vector<double>& grid, const char* who) {
  if (grid.empty()) throw domain_error(std::string(who) + ": empty grid");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]) ||
        (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw domain_error(std::string(who) +
                         ": grid must be positive increasing");
    }
  }
}

// KS distance between a sorted sample and a model CDF on a grid.
template <class Cdf>
double ks_on_grid(const std::vector<double>& sorted, Cdf&& model,
                  const std::vector<double>& grid) {
  double ks = 0.0;
  const double n = double(sorted.size());
  for (double g : grid) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), g);
    const double fe = double(it - sorted.begin()) / n;
    const double fm = model(g);
    ks = std::max(ks, std::abs(fe - fm));
  }
  return ks;
}

}  // namespace

void SamplerConfig::validate() const {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw domain_error("SamplerConfig: requires beta in (0, 1)");
  }
  if (n_samples < 1) {
    throw domain_error("SamplerConfig: requires n_samples >= 1");
  }
  if (!(step > 0.0) || !(step <= 0.1) || !std::isfinite(step)) {
    throw domain_error("SamplerConfig: requires step in (0, 1/10]");
  }
}

double CounterRng::uniform() noexcept {
  const std::uint64_t z = splitmix(seed_, index_++);
  return (double(z >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::exponential() noexcept { return -std::log(uniform()); }

double sample_stable_increment(double beta, double scale, CounterRng& rng) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw domain_error("sample_stable_increment: requires beta in (0, 1)");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw domain_error("sample_stable_increment: requires finite scale > 0");
  }
  // One-sided stable transform: with V uniform on (0, pi) and W standard
  // exponential, sin(bV) sin(V)^{-1/b} (sin((1-b)V)/W)^{(1-b)/b} has
  // Laplace transform exp(-lambda^b).
  const double v = kPi * rng.uniform();
  const double w = rng.exponential();
  const double x = std::sin(beta * v) * std::pow(std::sin(v), -1.0 / beta) *
                   std::pow(std::sin((1.0 - beta) * v) / w,
                            (1.0 - beta) / beta);
  return std::pow(scale, 1.0 / beta) * x;
}

std::vector<double> sample_stable(const SamplerConfig& config, double r) {
  config.validate();
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw domain_error("sample_stable: requires finite r > 0");
  }
  std::vector<double> out(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    CounterRng rng(config.seed, 2 * std::uint64_t(i));
    out[i] = sample_stable_increment(config.beta, r, rng);
  }
  return out;
}

double empirical_cdf_distance(const SamplerConfig& config,
                              const DensityEval& eval, double r,
                              const std::vector<double>& t_grid) {
  check_statistical(config);
  check_grid(t_grid, "empirical_cdf_distance");
  auto xs = sample_stable(config, r);
  std::sort(xs.begin(), xs.end());
  return ks_on_grid(
      xs, [&](double t) { return 1.0 - eval.survival(r, t); }, t_grid);
}

double sample_inverse(const SamplerConfig& config, double t,
                      CounterRng& rng) {
  config.validate();
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw domain_error("sample_inverse: requires finite t > 0");
  }
  const double h = t * config.step;
  double s = 0.0;
  double level = 0.0;
  for (std::uint64_t k = 0; k < kStepBudget; ++k) {
    const double inc = sample_stable_increment(config.beta, h, rng);
    if (level + inc > t) {
      // One bisection refinement of the last increment, finished by a
      // linear bracketing correction inside the located half step.
      const double d1 =
          sample_stable_increment(config.beta, 0.5 * h, rng);
      if (level + d1 > t) {
        return s + 0.5 * h * std::min(1.0, (t - level) / d1);
      }
      const double lvl2 = level + d1;
      const double d2 =
          sample_stable_increment(config.beta, 0.5 * h, rng);
      if (lvl2 + d2 > t) {
        return s + 0.5 * h + 0.5 * h * std::min(1.0, (t - lvl2) / d2);
      }
      return s + h;
    }
    level += inc;
    s += h;
  }
  throw solver_error("sample_inverse: step budget exceeded");
}

double sample_inverse(const SamplerConfig& config, double t) {
  CounterRng rng(config.seed, 0);
  return sample_inverse(config, t, rng);
}

std::vector<double> sample_inverse_batch(const SamplerConfig& config,
                                         double t) {
  config.validate();
  std::vector<double> out(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    CounterRng rng(config.seed, std::uint64_t(i) * kInverseBlock);
    out[i] = sample_inverse(config, t, rng);
  }
  return out;
}

double empirical_inverse_distance(const SamplerConfig& config,
                                  const DensityEval& eval, double t,
                                  const std::vector<double>& r_grid) {
  check_statistical(config);
  check_grid(r_grid, "empirical_inverse_distance");
  auto xs = sample_inverse_batch(config, t);
  std::sort(xs.begin(), xs.end());
  return ks_on_grid(
      xs, [&](double r) { return eval.survival(r, t); }, r_grid);
}

std::string samples_to_csv(const std::vector<double>& samples) {
  std::ostringstream os;
  os << "index,value\n" << std::setprecision(17);
  for (size_t i = 0; i < samples.size(); ++i) {
    os << i << ',' << samples[i] << '\n';
  }
  return os.str();
}

}  // namespace tfp
