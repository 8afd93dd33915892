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

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace gestmpc::segmentation {

struct MotionSample {
  double t = 0.0;                      // seconds
  double gx = 0.0, gy = 0.0, gz = 0.0;  // rad/s
  bool has_accel = false;
  double ax = 0.0, ay = 0.0, az = 0.0;  // m/s^2
};

using Trace = std::vector<MotionSample>;

struct PauseConfig {
  double threshold = 0.1;       // Th, rad/s
  double open_duration = 2.0;   // t1, s
  double close_duration = 2.0;  // t2, s
  double tolerance = 0.5;       // epsilon, s
  // Still runs shorter than this are treated as part of the surrounding
  // motion; longer runs inside a session separate symbols.
  double min_gap = 0.5;
  std::size_t min_motion_samples = 12;

  // Throws kInvalidArgument unless Th > 0, t1, t2 > 2 eps >= 0 and
  // 0 < min_gap < min(t1, t2) - eps.
  void validate() const;
};

struct PauseInterval {
  std::size_t start = 0;  // first still sample
  std::size_t end = 0;    // one past the last still sample
  double duration = 0.0;
};

struct GestureWindow {
  std::size_t start_index = 0;
  std::size_t end_index = 0;  // exclusive
  Trace samples;
};

enum class Phase { kIdle, kActive, kClosed };
std::string_view to_string(Phase p);

struct SessionState {
  Phase phase = Phase::kIdle;
  double pause_accumulator = 0.0;  // total qualifying pause time in the session
};

struct Event {
  enum class Kind { kPause, kMotion, kReset };
  Kind kind = Kind::kMotion;
  double duration = 0.0;  // pauses only

  static Event pause(double d) { return {Kind::kPause, d}; }
  static Event motion() { return {Kind::kMotion, 0.0}; }
  static Event reset() { return {Kind::kReset, 0.0}; }
};

enum class PauseClass { kShort, kGap, kOpening, kClosing, kLong };
// How a pause of the given length reads while `phase` is current. In an
// active session a pause in [t2 - eps, t2 + eps] closes; otherwise pauses
// in [t1 - eps, t1 + eps] open, pauses below min_gap are noise, and the rest
// separate symbols.
PauseClass classify_pause(double duration, Phase phase, const PauseConfig& cfg);

struct Transition {
  SessionState state;
  bool emits_window = false;
};

// Idle --opening pause--> Active --motion--> Active (window)
// Active --closing pause--> Closed --reset--> Idle. Anything else keeps the
// state.
Transition step(const SessionState& state, const Event& event, const PauseConfig& cfg);

// -Th <= g <= Th on all three gyroscope axes.
bool is_pause_sample(const MotionSample& s, const PauseConfig& cfg);

// Maximal runs of still samples. A run's duration spans its first to last
// timestamp plus one mean sample period. Throws kInvalidArgument on an
// empty or unsorted trace.
std::vector<PauseInterval> detect_pauses(const Trace& trace, const PauseConfig& cfg);

// Motion runs between qualifying pauses inside active sessions. Runs are
// emitted when the next delimiting pause arrives, so motion cut off by the
// end of the trace is dropped.
std::vector<GestureWindow> segment(const Trace& trace, const PauseConfig& cfg);

// Button-delimited entry path: one window per [start, stop] time interval.
std::vector<GestureWindow> windows_from_marks(const Trace& trace,
                                              std::span<const std::pair<double, double>> marks);

// Symbol-activated mode: given one predicted label per window, keeps the
// windows strictly between an `open` symbol and the next `close` symbol.
std::vector<std::size_t> symbol_activated(std::span<const int> labels, int open, int close);

// max(p99 over samples of max(|gx|, |gy|, |gz|), 0.01), linear-interpolation
// percentile. Throws kInvalidArgument when there are no samples.
double calibrate_threshold(std::span<const Trace> pause_segments);

}  // namespace gestmpc::segmentation
