/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_ERRORS_HPP
#define TFP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfp {

// Invalid parameter or argument outside the documented domain.
class domain_error : public std::domain_error {
public:
  explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// A requested operation is not available for the given configuration
// (e.g. analytic continuation of a tabulated spec).
class unsupported_error : public std::runtime_error {
public:
  explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine could not reach its accuracy target.
class accuracy_error : public std::runtime_error {
public:
  accuracy_error(const std::string& msg, double achieved, double requested)
      : std::runtime_error(msg), achieved_(achieved), requested_(requested) {}
  double achieved() const noexcept { return achieved_; }
  double requested() const noexcept { return requested_; }

private:
  double achieved_;
  double requested_;
};

// An iterative solver failed to bracket or converge.
class solver_error : public std::runtime_error {
public:
  explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration input (JSON, CLI arguments).
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tfp

#endif
