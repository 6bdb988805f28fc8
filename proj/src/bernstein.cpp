/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tfp/bernstein.hpp"

#include <algorithm>
#include <cmath>

#include "tfp/errors.hpp"
#include "tfp/quadrature.hpp"
#include "tfp/special.hpp"

namespace tfp {

namespace {

void check_beta(double b) {
  if (!(b > 0.0 && b < 1.0))
    throw domain_error("BernsteinSpec: exponent must lie in (0, 1)");
}

// Fritsch-Carlson monotone cubic slopes for strictly increasing data.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> h(n - 1), del(n - 1), d(n);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    del[i] = (y[i + 1] - y[i]) / h[i];
  }
  d[0] = del[0];
  d[n - 1] = del[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  // clamp ends to preserve monotonicity
  if (del[0] != 0.0) {
    d[0] = 0.5 * (3.0 * del[0] - d[1]);
    if (d[0] * del[0] < 0.0) d[0] = 0.0;
    else if (std::abs(d[0]) > 3.0 * std::abs(del[0])) d[0] = 3.0 * del[0];
  }
  if (del[n - 2] != 0.0) {
    d[n - 1] = 0.5 * (3.0 * del[n - 2] - d[n - 2]);
    if (d[n - 1] * del[n - 2] < 0.0) d[n - 1] = 0.0;
    else if (std::abs(d[n - 1]) > 3.0 * std::abs(del[n - 2]))
      d[n - 1] = 3.0 * del[n - 2];
  }
  return d;
}

}  // namespace

BernsteinSpec BernsteinSpec::stable(double beta, bool /*normalize*/) {
  // lambda^beta already satisfies phi(1) = 1; normalization is a no-op.
  check_beta(beta);
  BernsteinSpec s;
  s.kind_ = BernsteinKind::Stable;
  s.terms_ = {{1.0, beta}};
  return s;
}

BernsteinSpec BernsteinSpec::mixture(std::vector<MixtureTerm> terms,
                                     bool normalize) {
  if (terms.empty()) throw domain_error("BernsteinSpec: empty mixture");
  double w_sum = 0.0;
  for (const auto& t : terms) {
    check_beta(t.beta);
    if (!(t.weight > 0.0))
      throw domain_error("BernsteinSpec: mixture weights must be positive");
    w_sum += t.weight;
  }
  if (normalize)
    for (auto& t : terms) t.weight /= w_sum;  // phi(1) = sum of weights
  std::sort(terms.begin(), terms.end(),
            [](const MixtureTerm& a, const MixtureTerm& b) {
              return a.beta < b.beta;
            });
  BernsteinSpec s;
  s.kind_ = BernsteinKind::Mixture;
  s.normalized_ = normalize;
  s.terms_ = std::move(terms);
  return s;
}

BernsteinSpec BernsteinSpec::tabulated(std::vector<double> lambdas,
                                       std::vector<double> phis) {
  const size_t n = lambdas.size();
  if (n < 4 || phis.size() != n)
    throw domain_error("BernsteinSpec: tabulated needs >= 4 matched samples");
  BernsteinSpec s;
  s.kind_ = BernsteinKind::Tabulated;
  s.tab_lx_.resize(n);
  s.tab_ly_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(lambdas[i] > 0.0) || !(phis[i] > 0.0))
      throw domain_error("BernsteinSpec: tabulated samples must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1] && phis[i] >= phis[i - 1]))
      throw domain_error("BernsteinSpec: tabulated samples must increase");
    s.tab_lx_[i] = std::log(lambdas[i]);
    s.tab_ly_[i] = std::log(phis[i]);
  }
  s.tab_d_ = pchip_slopes(s.tab_lx_, s.tab_ly_);
  return s;
}

double BernsteinSpec::beta() const {
  if (kind_ != BernsteinKind::Stable)
    throw domain_error("BernsteinSpec: beta() is defined for stable kind");
  return terms_[0].beta;
}

double BernsteinSpec::tab_value_log(double lx) const {
  const auto& X = tab_lx_;
  const auto& Y = tab_ly_;
  const auto& D = tab_d_;
  if (lx <= X.front()) return Y.front() + D.front() * (lx - X.front());
  if (lx >= X.back()) return Y.back() + D.back() * (lx - X.back());
  const size_t i =
      std::upper_bound(X.begin(), X.end(), lx) - X.begin() - 1;
  const double h = X[i + 1] - X[i];
  const double t = (lx - X[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return Y[i] * (2 * t3 - 3 * t2 + 1) + h * D[i] * (t3 - 2 * t2 + t) +
         Y[i + 1] * (-2 * t3 + 3 * t2) + h * D[i + 1] * (t3 - t2);
}

double BernsteinSpec::tab_slope_log(double lx) const {
  const auto& X = tab_lx_;
  const auto& Y = tab_ly_;
  const auto& D = tab_d_;
  if (lx <= X.front()) return D.front();
  if (lx >= X.back()) return D.back();
  const size_t i =
      std::upper_bound(X.begin(), X.end(), lx) - X.begin() - 1;
  const double h = X[i + 1] - X[i];
  const double t = (lx - X[i]) / h;
  const double t2 = t * t;
  return (Y[i] * (6 * t2 - 6 * t) + h * D[i] * (3 * t2 - 4 * t + 1) +
          Y[i + 1] * (-6 * t2 + 6 * t) + h * D[i + 1] * (3 * t2 - 2 * t)) /
         h;
}

double BernsteinSpec::phi(double lambda) const {
  if (!(lambda > 0.0)) {
    if (lambda == 0.0) return 0.0;
    throw domain_error("phi: requires lambda >= 0");
  }
  if (kind_ == BernsteinKind::Tabulated)
    return std::exp(tab_value_log(std::log(lambda)));
  double s = 0.0;
  for (const auto& t : terms_) s += t.weight * std::pow(lambda, t.beta);
  return s;
}

std::complex<double> BernsteinSpec::phi(std::complex<double> z) const {
  if (kind_ == BernsteinKind::Tabulated)
    throw unsupported_error(
        "phi: tabulated specs have no complex continuation");
  std::complex<double> s = 0.0;
  for (const auto& t : terms_) s += t.weight * std::pow(z, t.beta);
  return s;
}

double BernsteinSpec::phi_prime(double lambda) const {
  if (!(lambda > 0.0)) throw domain_error("phi_prime: requires lambda > 0");
  if (kind_ == BernsteinKind::Tabulated) {
    const double lx = std::log(lambda);
    // chain rule from log-log slope: phi' = (phi/lambda) dlogphi/dloglambda
    return std::exp(tab_value_log(lx)) / lambda * tab_slope_log(lx);
  }
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.weight * t.beta * std::pow(lambda, t.beta - 1.0);
  return s;
}

double BernsteinSpec::phi_inverse(double y) const {
  if (!(y > 0.0)) throw domain_error("phi_inverse: requires y > 0");
  if (kind_ == BernsteinKind::Stable)
    return std::pow(y, 1.0 / terms_[0].beta);
  auto f = [&](double s) { return phi(s); };
  return quad::bisect_increasing(f, y, 1.0);
}

double BernsteinSpec::phi_prime_inverse(double y) const {
  if (!(y > 0.0)) throw domain_error("phi_prime_inverse: requires y > 0");
  if (kind_ == BernsteinKind::Stable) {
    const double b = terms_[0].beta;
    return std::pow(b / y, 1.0 / (1.0 - b));
  }
  // phi' is non-increasing, so -phi' is non-decreasing.
  auto f = [&](double s) { return -phi_prime(s); };
  return quad::bisect_increasing(f, -y, 1.0);
}

double BernsteinSpec::levy_density(double x) const {
  if (!(x > 0.0)) throw domain_error("levy_density: requires x > 0");
  if (kind_ == BernsteinKind::Tabulated)
    throw unsupported_error("levy_density: not available for tabulated specs");
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.weight * t.beta / special::gamma_fn(1.0 - t.beta) *
         std::pow(x, -1.0 - t.beta);
  return s;
}

double BernsteinSpec::levy_tail(double x) const {
  if (!(x > 0.0)) throw domain_error("levy_tail: requires x > 0");
  if (kind_ == BernsteinKind::Tabulated)
    throw unsupported_error("levy_tail: not available for tabulated specs");
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.weight / special::gamma_fn(1.0 - t.beta) * std::pow(x, -t.beta);
  return s;
}

double BernsteinSpec::levy_tail_int1(double x) const {
  if (!(x >= 0.0)) throw domain_error("levy_tail_int1: requires x >= 0");
  if (kind_ == BernsteinKind::Tabulated)
    throw unsupported_error("levy_tail_int1: not available for tabulated specs");
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.weight / special::gamma_fn(2.0 - t.beta) * std::pow(x, 1.0 - t.beta);
  return s;
}

double BernsteinSpec::levy_tail_int2(double x) const {
  if (!(x >= 0.0)) throw domain_error("levy_tail_int2: requires x >= 0");
  if (kind_ == BernsteinKind::Tabulated)
    throw unsupported_error("levy_tail_int2: not available for tabulated specs");
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.weight / ((2.0 - t.beta) * special::gamma_fn(1.0 - t.beta)) *
         std::pow(x, 2.0 - t.beta);
  return s;
}

BernsteinSpec BernsteinSpec::conjugate(int table_points) const {
  if (kind_ == BernsteinKind::Stable)
    return BernsteinSpec::stable(1.0 - terms_[0].beta);
  if (table_points < 8)
    throw domain_error("conjugate: table_points must be >= 8");
  const auto grid = log_grid(1e-8, 1e8, table_points);
  std::vector<double> ph(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) ph[i] = grid[i] / phi(grid[i]);
  return BernsteinSpec::tabulated(grid, ph);
}

nlohmann::json BernsteinSpec::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case BernsteinKind::Stable:
      j["kind"] = "stable";
      j["beta"] = terms_[0].beta;
      break;
    case BernsteinKind::Mixture: {
      j["kind"] = "mixture";
      auto arr = nlohmann::json::array();
      for (const auto& t : terms_)
        arr.push_back({{"weight", t.weight}, {"beta", t.beta}});
      j["components"] = arr;
      j["normalize"] = normalized_;
      break;
    }
    case BernsteinKind::Tabulated: {
      j["kind"] = "tabulated";
      auto lam = nlohmann::json::array(), ph = nlohmann::json::array();
      for (size_t i = 0; i < tab_lx_.size(); ++i) {
        lam.push_back(std::exp(tab_lx_[i]));
        ph.push_back(std::exp(tab_ly_[i]));
      }
      j["lambda"] = lam;
      j["phi"] = ph;
      break;
    }
  }
  return j;
}

BernsteinSpec BernsteinSpec::from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "stable")
      return BernsteinSpec::stable(j.at("beta").get<double>());
    if (kind == "mixture") {
      std::vector<MixtureTerm> terms;
      for (const auto& c : j.at("components"))
        terms.push_back(
            {c.at("weight").get<double>(), c.at("beta").get<double>()});
      return BernsteinSpec::mixture(terms, j.value("normalize", false));
    }
    if (kind == "tabulated")
      return BernsteinSpec::tabulated(j.at("lambda").get<std::vector<double>>(),
                                      j.at("phi").get<std::vector<double>>());
    throw config_error("BernsteinSpec: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("BernsteinSpec: bad JSON: ") + e.what());
  }
}

BernsteinSpec BernsteinSpec::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw config_error("BernsteinSpec: unparsable JSON");
  return from_json(j);
}

ScalingWitness verify_weak_scaling(const BernsteinSpec& spec,
                                   const std::vector<double>& lambdas,
                                   const std::vector<double>& kappas) {
  if (lambdas.empty() || kappas.empty())
    throw domain_error("verify_weak_scaling: empty grids");
  ScalingWitness w;
  w.beta1 = 1e300;
  w.beta2 = -1e300;
  for (double lam : lambdas) {
    const double p = spec.phi(lam);
    for (double k : kappas) {
      if (!(k > 1.0))
        throw domain_error("verify_weak_scaling: kappas must exceed 1");
      const double s = std::log(spec.phi(k * lam) / p) / std::log(k);
      w.beta1 = std::min(w.beta1, s);
      w.beta2 = std::max(w.beta2, s);
    }
  }
  w.c1 = 1e300;
  w.c2 = -1e300;
  for (double lam : lambdas) {
    const double p = spec.phi(lam);
    for (double k : kappas) {
      const double r = spec.phi(k * lam) / p;
      w.c1 = std::min(w.c1, r / std::pow(k, w.beta1));
      w.c2 = std::max(w.c2, r / std::pow(k, w.beta2));
    }
  }
  return w;
}

double derivative_comparison_constant(const BernsteinSpec& spec,
                                      const std::vector<double>& lambdas) {
  double c = 0.0;
  for (double lam : lambdas)
    c = std::max(c, spec.phi(lam) / (lam * spec.phi_prime(lam)));
  return c;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2)
    throw domain_error("log_grid: requires 0 < lo < hi, n >= 2");
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace tfp
