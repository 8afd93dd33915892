// Copyright 2026 The gestmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gestmpc/fixed_point.hpp"

#include <cmath>
#include <string>

#include "gestmpc/error.hpp"

namespace gestmpc::fixed {

FixedPointConfig::FixedPointConfig(int precision) : precision_(precision) {
  require(precision >= 1 && precision <= 32, ErrorKind::kInvalidArgument,
          "fixed-point precision must lie in [1, 32], got " +
              std::to_string(precision));
}

double FixedPointConfig::scale() const { return std::ldexp(1.0, precision_); }

double FixedPointConfig::bound() const { return std::ldexp(1.0, 63 - precision_); }

Ring encode_bits(double x, int frac_bits) {
  require(std::isfinite(x), ErrorKind::kOverflow, "cannot encode a non-finite value");
  const double scaled = std::round(std::ldexp(x, frac_bits));
  // 2^63 is exactly representable; anything at or beyond it cannot be held.
  require(std::fabs(scaled) < 0x1.0p63, ErrorKind::kOverflow,
          "value " + std::to_string(x) + " exceeds the fixed-point bound");
  return as_ring(static_cast<std::int64_t>(scaled));
}

Ring encode(double x, const FixedPointConfig& cfg) {
  require(std::isfinite(x) && std::fabs(x) < cfg.bound(), ErrorKind::kOverflow,
          "value " + std::to_string(x) + " exceeds the fixed-point bound 2^" +
              std::to_string(63 - cfg.precision()));
  return encode_bits(x, cfg.precision());
}

double decode_bits(Ring r, int frac_bits) {
  return std::ldexp(static_cast<double>(as_signed(r)), -frac_bits);
}

double decode(Ring r, const FixedPointConfig& cfg) {
  return decode_bits(r, cfg.precision());
}

Ring truncate(Ring r, const FixedPointConfig& cfg) {
  const int t = cfg.precision();
  const Ring half = Ring{1} << (t - 1);
  return as_ring(as_signed(r + half) >> t);
}

std::int64_t floor_div(std::int64_t value, std::int64_t divisor) {
  std::int64_t q = value / divisor;
  if ((value % divisor != 0) && ((value < 0) != (divisor < 0))) --q;
  return q;
}

}  // namespace gestmpc::fixed
