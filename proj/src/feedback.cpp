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

#include "gestmpc/feedback.hpp"

#include <cmath>

#include "gestmpc/error.hpp"

namespace gestmpc::feedback {
namespace {

std::size_t index(Symbol s) { return static_cast<std::size_t>(s); }

struct Row {
  Symbol symbol;
  const char* name;
  const char* meaning;
  Dot dot;
};

const std::array<Row, 4> kTable = {{
    {Symbol::kA, "A", "Alert / Attention", {Position::kBottomRight, 1, Color::kGreen}},
    {Symbol::kB, "B", "Request / Action", {Position::kBottomCenter, 2, Color::kRed}},
    {Symbol::kC, "C", "Acknowledge / Confirm", {Position::kBottomCenter, 3, Color::kBlue}},
    {Symbol::kE, "E", "Emergency / Abort", {Position::kBottomLeft, 4, Color::kOrange}},
}};

std::string ordinal_suffix(int n) {
  if (n % 100 >= 11 && n % 100 <= 13) return "th";
  switch (n % 10) {
    case 1: return "st";
    case 2: return "nd";
    case 3: return "rd";
    default: return "th";
  }
}

// Index of the nominal value nearest to v.
std::size_t nearest(double v, std::initializer_list<double> nominal) {
  std::size_t best = 0, i = 0;
  double best_d = INFINITY;
  for (double x : nominal) {
    if (std::abs(v - x) < best_d) {
      best_d = std::abs(v - x);
      best = i;
    }
    ++i;
  }
  return best;
}

}  // namespace

std::string to_string(Symbol s) { return kTable[index(s)].name; }

Symbol parse_symbol(const std::string& name) {
  for (const auto& r : kTable)
    if (name == r.name) return r.symbol;
  fail(ErrorKind::kInvalidArgument, "unknown symbol '" + name + "'");
}

std::string meaning(Symbol s) { return kTable[index(s)].meaning; }

void validate_id(const std::string& bits) {
  require(bits.size() <= kMaxIdBits, ErrorKind::kInvalidArgument,
          "sender id longer than " + std::to_string(kMaxIdBits) + " bits");
  for (char c : bits)
    require(c == '0' || c == '1', ErrorKind::kInvalidArgument,
            "sender id must be a string of 0 and 1");
}

std::string id_bits(std::uint32_t value, std::size_t width) {
  require(width <= kMaxIdBits, ErrorKind::kInvalidArgument, "id width too large");
  require(width == 32 || (value >> width) == 0, ErrorKind::kInvalidArgument,
          "id value does not fit in the width");
  std::string out(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if ((value >> (width - 1 - i)) & 1u) out[i] = '1';
  return out;
}

void HapticPattern::validate() const {
  require(t1_ms > 0 && t2_ms > 0 && t3_ms > 0, ErrorKind::kInvalidArgument,
          "haptic durations must be positive");
  require(t3_ms > t2_ms, ErrorKind::kInvalidArgument, "T3 must exceed T2");
  require(amplitude >= 1 && amplitude <= 255, ErrorKind::kInvalidArgument,
          "amplitude must lie in [1, 255]");
  for (std::size_t i = 0; i < pulse_counts.size(); ++i) {
    require(pulse_counts[i] >= 1, ErrorKind::kInvalidArgument, "pulse counts must be positive");
    for (std::size_t j = 0; j < i; ++j)
      require(pulse_counts[i] != pulse_counts[j], ErrorKind::kInvalidArgument,
              "pulse counts must be distinct");
  }
}

Schedule encode_haptic(Symbol s, const HapticPattern& p,
                       const std::optional<std::string>& sender_id) {
  p.validate();
  Schedule out;
  const int k = p.pulse_counts[index(s)];
  for (int i = 0; i < k; ++i) out.push_back({p.t1_ms, p.t2_ms, p.amplitude});
  out.back().off_ms = p.t3_ms;
  if (sender_id) {
    validate_id(*sender_id);
    out.push_back({3 * p.t1_ms, p.t2_ms, p.amplitude});
    for (char c : *sender_id) out.push_back({(c == '1' ? 2 : 1) * p.t1_ms, p.t2_ms, p.amplitude});
    out.back().off_ms = p.t3_ms;
  }
  return out;
}

HapticMessage decode_haptic(const Schedule& schedule, const HapticPattern& p) {
  p.validate();
  require(!schedule.empty(), ErrorKind::kFormat, "empty haptic schedule");
  std::vector<std::vector<double>> sequences(1);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    sequences.back().push_back(schedule[i].on_ms);
    const bool boundary = nearest(schedule[i].off_ms, {p.t2_ms, p.t3_ms}) == 1;
    if (boundary && i + 1 < schedule.size()) sequences.emplace_back();
    if (i + 1 == schedule.size())
      require(boundary, ErrorKind::kFormat, "haptic schedule is not terminated by T3");
  }
  require(sequences.size() <= 2, ErrorKind::kFormat, "too many pulse sequences");

  HapticMessage msg{Symbol::kA, std::nullopt};
  const auto& sym = sequences[0];
  for (double on : sym)
    require(nearest(on, {p.t1_ms, 2 * p.t1_ms, 3 * p.t1_ms}) == 0, ErrorKind::kFormat,
            "symbol pulse is not T1 long");
  bool found = false;
  for (Symbol s : kSymbols)
    if (p.pulse_counts[index(s)] == static_cast<int>(sym.size())) {
      msg.symbol = s;
      found = true;
    }
  require(found, ErrorKind::kFormat,
          "pulse count " + std::to_string(sym.size()) + " is not mapped to a symbol");

  if (sequences.size() == 2) {
    const auto& id = sequences[1];
    require(nearest(id[0], {p.t1_ms, 2 * p.t1_ms, 3 * p.t1_ms}) == 2, ErrorKind::kFormat,
            "id sequence does not start with a sync pulse");
    require(id.size() - 1 <= kMaxIdBits, ErrorKind::kFormat, "id sequence too long");
    std::string bits;
    for (std::size_t i = 1; i < id.size(); ++i) {
      const std::size_t c = nearest(id[i], {p.t1_ms, 2 * p.t1_ms, 3 * p.t1_ms});
      require(c < 2, ErrorKind::kFormat, "sync pulse inside the id sequence");
      bits.push_back(c == 1 ? '1' : '0');
    }
    msg.sender_id = bits;
  }
  return msg;
}

double total_ms(const Schedule& schedule) {
  double t = 0.0;
  for (const auto& p : schedule) t += p.on_ms + p.off_ms;
  return t;
}

std::string to_string(Position p) {
  switch (p) {
    case Position::kBottomLeft: return "Bottom left";
    case Position::kBottomCenter: return "Bottom center";
    case Position::kBottomRight: return "Bottom right";
  }
  return "?";
}

std::string to_string(Color c) {
  switch (c) {
    case Color::kGreen: return "Green";
    case Color::kRed: return "Red";
    case Color::kBlue: return "Blue";
    case Color::kOrange: return "Orange";
  }
  return "?";
}

std::string describe(const Dot& d) {
  return to_string(d.position) + ", " + std::to_string(d.ordinal) + ordinal_suffix(d.ordinal) +
         " dot, " + to_string(d.color);
}

VisualCode encode_visual(Symbol s, const std::optional<std::string>& sender_id) {
  VisualCode c{kTable[index(s)].dot, sender_id.value_or("")};
  validate_id(c.id_bits);
  return c;
}

VisualMessage decode_visual(const VisualCode& code) {
  validate_id(code.id_bits);
  for (const auto& r : kTable)
    if (r.dot == code.symbol_dot) return {r.symbol, code.id_bits};
  fail(ErrorKind::kFormat, "unmapped dot: " + describe(code.symbol_dot));
}

nlohmann::json to_json(const Schedule& s, const HapticPattern& p) {
  nlohmann::json pulses = nlohmann::json::array();
  for (const auto& x : s)
    pulses.push_back({{"on_ms", x.on_ms}, {"off_ms", x.off_ms}, {"amplitude", x.amplitude}});
  return {{"pulses", pulses},
          {"total_ms", total_ms(s)},
          {"pattern",
           {{"t1_ms", p.t1_ms},
            {"t2_ms", p.t2_ms},
            {"t3_ms", p.t3_ms},
            {"amplitude", p.amplitude},
            {"pulse_counts", p.pulse_counts},
            {"observation_radius_m", p.observation_radius_m}}}};
}

nlohmann::json to_json(const VisualCode& c) {
  nlohmann::json id = nlohmann::json::array();
  for (std::size_t i = 0; i < c.id_bits.size(); ++i)
    id.push_back({{"index", i}, {"color", "White"}, {"lit", c.id_bits[i] == '1'}});
  return {{"symbol_dot",
           {{"position", to_string(c.symbol_dot.position)},
            {"ordinal", c.symbol_dot.ordinal},
            {"color", to_string(c.symbol_dot.color)},
            {"label", describe(c.symbol_dot)}}},
          {"id_dots", id},
          {"id_bits", c.id_bits}};
}

}  // namespace gestmpc::feedback
