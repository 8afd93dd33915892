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

#pragma once

#include <cstdint>

namespace gestmpc::fixed {

// Element of Z_{2^64}. Signed reals use the two's-complement interpretation;
// all ring arithmetic wraps silently.
using Ring = std::uint64_t;

inline std::int64_t as_signed(Ring r) { return static_cast<std::int64_t>(r); }
inline Ring as_ring(std::int64_t v) { return static_cast<Ring>(v); }

class FixedPointConfig {
 public:
  static constexpr int kDefaultPrecision = 16;

  FixedPointConfig() = default;
  // Throws kInvalidArgument unless 1 <= precision <= 32.
  explicit FixedPointConfig(int precision);

  int precision() const { return precision_; }
  // 2^t as a real and as a ring element.
  double scale() const;
  Ring unit() const { return Ring{1} << precision_; }
  // Largest representable magnitude, 2^(63 - t) (exclusive).
  double bound() const;

  bool operator==(const FixedPointConfig&) const = default;

 private:
  int precision_ = kDefaultPrecision;
};

// round(x * 2^t), half away from zero. Throws kOverflow when |x| >= bound
// or x is not finite.
Ring encode(double x, const FixedPointConfig& cfg);

// Encodes at an arbitrary number of fractional bits (0 gives integers).
Ring encode_bits(double x, int frac_bits);

double decode(Ring r, const FixedPointConfig& cfg);
double decode_bits(Ring r, int frac_bits);

// Rescales a product carrying 2t fractional bits back to t, rounding to
// nearest. Wraps if the signed input is within 2^(t-1) of INT64_MAX.
Ring truncate(Ring r, const FixedPointConfig& cfg);

// Floor division of the signed interpretation by a positive divisor.
std::int64_t floor_div(std::int64_t value, std::int64_t divisor);

}  // namespace gestmpc::fixed
