// SPDX-License-Identifier: Apache-2.0
//
// fmcwdb: OOK-FMCW distance-bounding simulator
// Copyright (C) 2026 The fmcwdb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmcwdb {

/// Propagation speed used for every delay/distance conversion (m/s).
inline constexpr double kSpeedOfLight = 3.0e8;

using Sample = std::complex<double>;

/// Ordered sequence of {0,1} values.
using BitVector = std::vector<std::uint8_t>;

/// Configuration that violates a documented invariant. `field()` names the
/// offending parameter so CLI diagnostics can point at it.
class InvalidConfig : public std::invalid_argument {
 public:
  InvalidConfig(std::string field, const std::string& reason)
      : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Detector could not derive a reference energy (no energy in the preamble).
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectrum has no peak above the configured floor: no reflection present.
class NoPeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

}  // namespace fmcwdb
