/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_VALIDATE_HPP
#define TFP_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tfp {

// Thirteen numbered validation criteria, each an identity or bounded-ratio
// property checked against an independent oracle with a tolerance pinned in
// code.  quick mode halves grid densities and relaxes tolerances five-fold.

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double observed = 0.0;   // worst error or the quantity the bound caps
  double tolerance = 0.0;
  double seconds = 0.0;
  nlohmann::json details;

  nlohmann::json to_json() const;
};

// Runs criterion id in [1, 13]; seed feeds the stochastic criterion only.
CriterionResult run_criterion(int id, bool quick = false,
                              std::uint64_t seed = 17);

// Named suite of criteria; names: scaling, unimodality, sub-envelope,
// identities, conjugate, q-envelope, pde, montecarlo, all.
struct SuiteResult {
  std::string suite;
  bool quick = false;
  std::uint64_t seed = 0;
  bool pass = false;
  std::vector<CriterionResult> criteria;

  nlohmann::json to_json() const;
  std::string table_text() const;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, bool quick = false,
                      std::uint64_t seed = 17);

}  // namespace tfp

#endif  // TFP_VALIDATE_HPP
