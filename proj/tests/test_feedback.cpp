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

#include <gtest/gtest.h>

#include <string>
#include <utility>
#include <vector>

#include "gestmpc/error.hpp"
#include "gestmpc/feedback.hpp"

namespace {

using namespace gestmpc;
using namespace gestmpc::feedback;

TEST(Feedback, SymbolNames) {
  for (auto s : kSymbols) EXPECT_EQ(parse_symbol(to_string(s)), s);
  EXPECT_EQ(meaning(Symbol::kA), "Alert / Attention");
  EXPECT_EQ(meaning(Symbol::kE), "Emergency / Abort");
  EXPECT_THROW(parse_symbol("D"), Error);
}

TEST(Feedback, IdBits) {
  EXPECT_EQ(id_bits(5, 8), "00000101");
  EXPECT_EQ(id_bits(255, 8), "11111111");
  EXPECT_NO_THROW(validate_id("1010"));
  EXPECT_THROW(validate_id("123"), Error);
  EXPECT_THROW(validate_id("000000000"), Error);
}

TEST(Feedback, HapticScheduleShape) {
  const HapticPattern p;
  const auto s = encode_haptic(Symbol::kC, p);
  ASSERT_EQ(s.size(), 3u);
  for (const auto& pulse : s) {
    EXPECT_EQ(pulse.on_ms, p.t1_ms);
    EXPECT_EQ(pulse.amplitude, p.amplitude);
  }
  EXPECT_EQ(s[0].off_ms, p.t2_ms);
  EXPECT_EQ(s[2].off_ms, p.t3_ms);
  EXPECT_DOUBLE_EQ(total_ms(s), 3 * 150.0 + 2 * 120.0 + 600.0);
  const auto j = to_json(s, p);
  EXPECT_EQ(j.at("pulses").size(), 3u);
}

TEST(Feedback, HapticRoundTripExhaustive) {
  const HapticPattern p;
  std::size_t failures = 0;
  for (auto s : kSymbols) {
    const auto plain = decode_haptic(encode_haptic(s, p), p);
    failures += plain.symbol != s || plain.sender_id.has_value();
    for (std::uint32_t id = 0; id < 256; ++id) {
      const auto bits = id_bits(id, 8);
      const auto m = decode_haptic(encode_haptic(s, p, bits), p);
      failures += m.symbol != s || m.sender_id != bits;
    }
  }
  EXPECT_EQ(failures, 0u);
}

TEST(Feedback, HapticToleratesJitter) {
  const HapticPattern p;
  auto s = encode_haptic(Symbol::kB, p, std::string("0110"));
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i].on_ms += (i % 2 ? 20.0 : -20.0);
    s[i].off_ms += (i % 3 ? 15.0 : -15.0);
  }
  const auto m = decode_haptic(s, p);
  EXPECT_EQ(m.symbol, Symbol::kB);
  EXPECT_EQ(m.sender_id, "0110");
}

TEST(Feedback, HapticRejectsMalformed) {
  const HapticPattern p;
  EXPECT_THROW(decode_haptic({}, p), Error);
  auto s = encode_haptic(Symbol::kA, p);
  s.back().off_ms = p.t2_ms;  // never terminated
  EXPECT_THROW(decode_haptic(s, p), Error);
  Schedule five(5, Pulse{p.t1_ms, p.t2_ms, p.amplitude});
  five.back().off_ms = p.t3_ms;
  EXPECT_THROW(decode_haptic(five, p), Error);
  auto swapped = encode_haptic(Symbol::kB, p);
  std::swap(swapped.front().off_ms, swapped.back().off_ms);  // T2 and T3 exchanged
  EXPECT_THROW(decode_haptic(swapped, p), Error);
  HapticPattern bad;
  bad.pulse_counts = {1, 1, 2, 3};
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_THROW(encode_haptic(Symbol::kA, p, std::string("2")), Error);
}

TEST(Feedback, VisualTableVerbatim) {
  EXPECT_EQ(describe(encode_visual(Symbol::kA).symbol_dot), "Bottom right, 1st dot, Green");
  EXPECT_EQ(describe(encode_visual(Symbol::kB).symbol_dot), "Bottom center, 2nd dot, Red");
  EXPECT_EQ(describe(encode_visual(Symbol::kC).symbol_dot), "Bottom center, 3rd dot, Blue");
  EXPECT_EQ(describe(encode_visual(Symbol::kE).symbol_dot), "Bottom left, 4th dot, Orange");
}

TEST(Feedback, VisualRoundTripExhaustive) {
  std::size_t failures = 0;
  for (auto s : kSymbols)
    for (std::uint32_t id = 0; id < 256; ++id) {
      const auto bits = id_bits(id, 8);
      const auto m = decode_visual(encode_visual(s, bits));
      failures += m.symbol != s || m.sender_id != bits;
    }
  EXPECT_EQ(failures, 0u);
}

TEST(Feedback, VisualRejectsUnmappedDot) {
  VisualCode c = encode_visual(Symbol::kA);
  c.symbol_dot.color = Color::kRed;
  EXPECT_THROW(decode_visual(c), Error);
  EXPECT_EQ(to_json(encode_visual(Symbol::kC, std::string("01"))).at("id_bits"), "01");
}

}  // namespace
