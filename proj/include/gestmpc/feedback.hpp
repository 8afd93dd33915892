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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace gestmpc::feedback {

enum class Symbol { kA, kB, kC, kE };

inline constexpr std::array<Symbol, 4> kSymbols = {Symbol::kA, Symbol::kB, Symbol::kC,
                                                   Symbol::kE};

std::string to_string(Symbol s);
// Accepts "A", "B", "C", "E"; anything else throws kInvalidArgument.
Symbol parse_symbol(const std::string& name);
// Alert / Attention, Request / Action, ...
std::string meaning(Symbol s);

// Sender identifiers are bit strings of '0'/'1', at most 8 long.
inline constexpr std::size_t kMaxIdBits = 8;
void validate_id(const std::string& bits);
std::string id_bits(std::uint32_t value, std::size_t width);

struct HapticPattern {
  double t1_ms = 150.0;  // pulse
  double t2_ms = 120.0;  // gap between pulses of one sequence
  double t3_ms = 600.0;  // gap after a sequence
  int amplitude = 70;
  std::array<int, 4> pulse_counts = {1, 2, 3, 4};  // indexed by Symbol
  double observation_radius_m = 0.5;                // metadata only

  void validate() const;
};

struct Pulse {
  double on_ms = 0.0;
  double off_ms = 0.0;
  int amplitude = 0;
};

using Schedule = std::vector<Pulse>;

// The symbol sequence is pulse_counts[s] pulses of T1. When a sender id is
// given a second sequence follows: a 3*T1 sync pulse, then one pulse per bit
// (T1 for 0, 2*T1 for 1). Each sequence ends with a T3 gap.
Schedule encode_haptic(Symbol s, const HapticPattern& p,
                       const std::optional<std::string>& sender_id = std::nullopt);

struct HapticMessage {
  Symbol symbol;
  std::optional<std::string> sender_id;
};

// Durations are matched to the nearest nominal value. Throws kFormat on an
// empty or unterminated schedule, an unknown pulse count or a malformed id
// sequence.
HapticMessage decode_haptic(const Schedule& schedule, const HapticPattern& p);

double total_ms(const Schedule& schedule);

enum class Position { kBottomLeft, kBottomCenter, kBottomRight };
enum class Color { kGreen, kRed, kBlue, kOrange };

std::string to_string(Position p);
std::string to_string(Color c);

struct Dot {
  Position position;
  int ordinal;  // 1-based dot index in the lower row
  Color color;

  friend bool operator==(const Dot&, const Dot&) = default;
};

// "Bottom right, 1st dot, Green"
std::string describe(const Dot& d);

struct VisualCode {
  Dot symbol_dot;
  std::string id_bits;  // rendered as white dots in the upper region, '1' lit
};

VisualCode encode_visual(Symbol s, const std::optional<std::string>& sender_id = std::nullopt);

struct VisualMessage {
  Symbol symbol;
  std::string sender_id;
};

// Throws kFormat when the dot is not in the mapping.
VisualMessage decode_visual(const VisualCode& code);

nlohmann::json to_json(const Schedule& s, const HapticPattern& p);
nlohmann::json to_json(const VisualCode& c);

}  // namespace gestmpc::feedback
