/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TFP_VERSION_HPP
#define TFP_VERSION_HPP

namespace tfp {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace tfp

#endif  // TFP_VERSION_HPP
