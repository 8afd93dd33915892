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

#include "gestmpc/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gestmpc/error.hpp"

namespace gestmpc::segmentation {

void PauseConfig::validate() const {
  require(std::isfinite(threshold) && threshold > 0.0, ErrorKind::kInvalidArgument,
          "pause threshold must be positive");
  require(tolerance >= 0.0 && open_duration > 2 * tolerance &&
              close_duration > 2 * tolerance,
          ErrorKind::kInvalidArgument, "pause durations must exceed twice the tolerance");
  require(min_gap > 0.0 && min_gap < std::min(open_duration, close_duration) - tolerance,
          ErrorKind::kInvalidArgument,
          "min_gap must be positive and below the shorter session pause");
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kIdle: return "idle";
    case Phase::kActive: return "active";
    case Phase::kClosed: return "closed";
  }
  return "unknown";
}

namespace {

bool within(double d, double centre, double eps) {
  return d >= centre - eps && d <= centre + eps;
}

}  // namespace

PauseClass classify_pause(double duration, Phase phase, const PauseConfig& cfg) {
  if (phase == Phase::kActive && within(duration, cfg.close_duration, cfg.tolerance))
    return PauseClass::kClosing;
  if (phase != Phase::kActive && within(duration, cfg.open_duration, cfg.tolerance))
    return PauseClass::kOpening;
  if (duration < cfg.min_gap) return PauseClass::kShort;
  const double lo = std::min(cfg.open_duration, cfg.close_duration) - cfg.tolerance;
  return duration < lo ? PauseClass::kGap : PauseClass::kLong;
}

Transition step(const SessionState& state, const Event& event, const PauseConfig& cfg) {
  Transition tr{state, false};
  switch (state.phase) {
    case Phase::kIdle:
      if (event.kind == Event::Kind::kPause &&
          classify_pause(event.duration, Phase::kIdle, cfg) == PauseClass::kOpening) {
        tr.state.phase = Phase::kActive;
        tr.state.pause_accumulator = event.duration;
      }
      break;
    case Phase::kActive:
      if (event.kind == Event::Kind::kMotion) {
        tr.emits_window = true;
      } else if (event.kind == Event::Kind::kPause) {
        const auto c = classify_pause(event.duration, Phase::kActive, cfg);
        if (c != PauseClass::kShort) tr.state.pause_accumulator += event.duration;
        if (c == PauseClass::kClosing) tr.state.phase = Phase::kClosed;
      }
      break;
    case Phase::kClosed:
      if (event.kind == Event::Kind::kReset) tr.state = SessionState{};
      break;
  }
  return tr;
}

bool is_pause_sample(const MotionSample& s, const PauseConfig& cfg) {
  const double th = cfg.threshold;
  return -th <= s.gx && s.gx <= th && -th <= s.gy && s.gy <= th && -th <= s.gz &&
         s.gz <= th;
}

std::vector<PauseInterval> detect_pauses(const Trace& trace, const PauseConfig& cfg) {
  require(!trace.empty(), ErrorKind::kInvalidArgument, "empty trace");
  for (std::size_t i = 1; i < trace.size(); ++i)
    require(trace[i].t > trace[i - 1].t, ErrorKind::kInvalidArgument,
            "trace timestamps are not strictly increasing at sample " + std::to_string(i));
  const double period =
      trace.size() > 1
          ? (trace.back().t - trace.front().t) / static_cast<double>(trace.size() - 1)
          : 0.0;
  std::vector<PauseInterval> out;
  std::size_t i = 0;
  while (i < trace.size()) {
    if (!is_pause_sample(trace[i], cfg)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < trace.size() && is_pause_sample(trace[j], cfg)) ++j;
    out.push_back({i, j, trace[j - 1].t - trace[i].t + period});
    i = j;
  }
  return out;
}

std::vector<GestureWindow> segment(const Trace& trace, const PauseConfig& cfg) {
  cfg.validate();
  std::vector<PauseInterval> pauses;
  for (const auto& p : detect_pauses(trace, cfg))
    if (p.duration >= cfg.min_gap) pauses.push_back(p);

  std::vector<GestureWindow> windows;
  SessionState state;
  std::optional<std::pair<std::size_t, std::size_t>> pending;
  std::size_t cursor = 0;

  auto motion = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    const auto tr = step(state, Event::motion(), cfg);
    if (tr.emits_window) pending = {begin, end};
    state = tr.state;
  };

  for (const auto& p : pauses) {
    motion(cursor, p.start);
    const auto tr = step(state, Event::pause(p.duration), cfg);
    if (state.phase == Phase::kActive && pending &&
        classify_pause(p.duration, Phase::kActive, cfg) != PauseClass::kShort &&
        pending->second - pending->first >= cfg.min_motion_samples) {
      GestureWindow w;
      w.start_index = pending->first;
      w.end_index = pending->second;
      w.samples.assign(trace.begin() + static_cast<std::ptrdiff_t>(w.start_index),
                       trace.begin() + static_cast<std::ptrdiff_t>(w.end_index));
      windows.push_back(std::move(w));
    }
    pending.reset();
    state = tr.state;
    if (state.phase == Phase::kClosed) state = step(state, Event::reset(), cfg).state;
    cursor = p.end;
  }
  return windows;
}

std::vector<GestureWindow> windows_from_marks(
    const Trace& trace, std::span<const std::pair<double, double>> marks) {
  std::vector<GestureWindow> out;
  for (const auto& [start, stop] : marks) {
    require(stop > start, ErrorKind::kInvalidArgument, "mark interval is empty");
    GestureWindow w;
    w.start_index = static_cast<std::size_t>(
        std::lower_bound(trace.begin(), trace.end(), start,
                         [](const MotionSample& s, double t) { return s.t < t; }) -
        trace.begin());
    w.end_index = static_cast<std::size_t>(
        std::upper_bound(trace.begin(), trace.end(), stop,
                         [](double t, const MotionSample& s) { return t < s.t; }) -
        trace.begin());
    if (w.end_index <= w.start_index) continue;
    w.samples.assign(trace.begin() + static_cast<std::ptrdiff_t>(w.start_index),
                     trace.begin() + static_cast<std::ptrdiff_t>(w.end_index));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::size_t> symbol_activated(std::span<const int> labels, int open,
                                          int close) {
  std::vector<std::size_t> out;
  bool active = false;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!active) {
      active = labels[i] == open;
    } else if (labels[i] == close) {
      active = false;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

double calibrate_threshold(std::span<const Trace> pause_segments) {
  std::vector<double> mags;
  for (const auto& seg : pause_segments)
    for (const auto& s : seg)
      mags.push_back(std::max({std::fabs(s.gx), std::fabs(s.gy), std::fabs(s.gz)}));
  require(!mags.empty(), ErrorKind::kInvalidArgument,
          "calibration needs at least one pause sample");
  std::sort(mags.begin(), mags.end());
  const double pos = 0.99 * static_cast<double>(mags.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, mags.size() - 1);
  const double p99 = mags[lo] + (pos - static_cast<double>(lo)) * (mags[hi] - mags[lo]);
  return std::max(p99, 0.01);
}

}  // namespace gestmpc::segmentation
