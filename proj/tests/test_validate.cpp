/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tfp/errors.hpp"
#include "tfp/validate.hpp"
#include "tfp/version.hpp"

using namespace tfp;

TEST_CASE("suite names cover the validation surface") {
  const auto& names = suite_names();
  REQUIRE(names.size() == 9);
  for (const char* expected :
       {"scaling", "unimodality", "sub-envelope", "identities", "conjugate",
        "q-envelope", "pde", "montecarlo", "all"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
}

TEST_CASE("criterion ids outside the table are rejected") {
  CHECK_THROWS_AS(run_criterion(0), domain_error);
  CHECK_THROWS_AS(run_criterion(14), domain_error);
  CHECK_THROWS_AS(run_suite("no-such-suite"), config_error);
}

TEST_CASE("cheap criteria report sane result records") {
  const auto c = run_criterion(2, /*quick=*/true);
  CHECK(c.id == 2);
  CHECK(c.name == "closed-density");
  CHECK(c.pass);
  CHECK(c.observed >= 0.0);
  CHECK(c.observed <= c.tolerance);
  CHECK(c.seconds >= 0.0);
  const auto j = c.to_json();
  CHECK(j.at("id").get<int>() == 2);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.contains("details"));
}

TEST_CASE("scaling suite aggregates its two criteria") {
  const auto s = run_suite("scaling", /*quick=*/true);
  REQUIRE(s.criteria.size() == 2);
  CHECK(s.criteria[0].id == 1);
  CHECK(s.criteria[1].id == 2);
  CHECK(s.pass);
  CHECK(s.quick);
  const auto j = s.to_json();
  CHECK(j.at("suite").get<std::string>() == "scaling");
  CHECK(j.at("version").get<std::string>() == std::string(kVersion));
  CHECK(j.at("criteria").size() == 2);
  const auto table = s.table_text();
  CHECK(table.find("laplace-roundtrip") != std::string::npos);
  CHECK(table.find("PASS suite scaling (quick)") != std::string::npos);
}

TEST_CASE("unimodality and sub-envelope map to single criteria") {
  const auto u = run_suite("unimodality", /*quick=*/true);
  REQUIRE(u.criteria.size() == 1);
  CHECK(u.criteria[0].id == 9);
  const auto e = run_suite("sub-envelope", /*quick=*/true);
  REQUIRE(e.criteria.size() == 1);
  CHECK(e.criteria[0].id == 8);
  CHECK(e.criteria[0].details.contains("conditions"));
}

TEST_CASE("stochastic criterion is deterministic for a fixed seed") {
  const auto a = run_criterion(13, /*quick=*/true, /*seed=*/7);
  const auto b = run_criterion(13, /*quick=*/true, /*seed=*/7);
  CHECK(a.observed == b.observed);
  const auto c = run_criterion(13, /*quick=*/true, /*seed=*/8);
  CHECK(c.observed != a.observed);
  CHECK(a.pass);
  CHECK(c.pass);
}
