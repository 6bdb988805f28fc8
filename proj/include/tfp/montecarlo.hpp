/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_MONTECARLO_HPP
#define TFP_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tfp/subordinator.hpp"

namespace tfp {

// Stochastic cross-check of the analytic densities: one-sided stable
// increments drive direct draws of S_r and first-passage draws of the
// inverse E_t, compared against the quadrature densities by empirical
// distribution distance.

// Batch parameters for the samplers.  step is the first-passage grid as a
// fraction of the horizon t.
struct SamplerConfig {
  double beta = 0.5;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
  double step = 1e-3;

  // Throws domain_error unless beta is in (0, 1), n_samples >= 1 and step
  // is a finite positive fraction no larger than 1/10.
  void validate() const;
};

// Counter-based generator: every variate is a pure function of
// (seed, index), so draws can be partitioned across workers by index
// without changing the sequence.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t index = 0) noexcept
      : seed_(seed), index_(index) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t index() const noexcept { return index_; }
  void seek(std::uint64_t index) noexcept { index_ = index; }

  // Uniform draw in the open interval (0, 1); advances the index by one.
  double uniform() noexcept;

  // Standard exponential draw; advances the index by one.
  double exponential() noexcept;

private:
  std::uint64_t seed_;
  std::uint64_t index_;
};

// One draw with Laplace transform exp(-scale lambda^beta), by the one-sided
// stable transform of a uniform angle and an exponential variate.  Consumes
// exactly two indices.
double sample_stable_increment(double beta, double scale, CounterRng& rng);

// n_samples independent draws of S_r; draw i occupies indices {2i, 2i+1}.
std::vector<double> sample_stable(const SamplerConfig& config, double r);

// Kolmogorov-Smirnov distance on t_grid between the empirical CDF of S_r
// and the model CDF 1 - survival(r, t).  Requires n_samples >= 1000.
double empirical_cdf_distance(const SamplerConfig& config,
                              const DensityEval& eval, double r,
                              const std::vector<double>& t_grid);

// First-passage draw of E_t = inf{s : S_s > t}: stable increments over a
// step h = t * step accumulate until the running sum exceeds t; the last
// step is refined once by bisection and finished by linear bracketing.
// Throws solver_error if the step budget is exceeded.
double sample_inverse(const SamplerConfig& config, double t, CounterRng& rng);
double sample_inverse(const SamplerConfig& config, double t);

// n_samples first-passage draws; draw i occupies the index block starting
// at i * 2^26, so partitioning by draw preserves the sequence.
std::vector<double> sample_inverse_batch(const SamplerConfig& config,
                                         double t);

// Kolmogorov-Smirnov distance on r_grid between the empirical CDF of E_t
// and the model CDF survival(r, t).  Requires n_samples >= 1000.
double empirical_inverse_distance(const SamplerConfig& config,
                                  const DensityEval& eval, double t,
                                  const std::vector<double>& r_grid);

// Plain "index,value" CSV dump of a sample vector.
std::string samples_to_csv(const std::vector<double>& samples);

}  // namespace tfp

#endif  // TFP_MONTECARLO_HPP
