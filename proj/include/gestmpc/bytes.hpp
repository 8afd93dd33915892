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

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "gestmpc/error.hpp"

// Little helpers for the binary formats (triple streams, wire frames,
// checkpoints). Multi-byte integers are written explicitly in the byte order
// each format asks for.
namespace gestmpc::bytes {

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32_le(std::uint32_t v) { put_le(v, 4); }
  void u64_le(std::uint64_t v) { put_le(v, 8); }
  void u32_be(std::uint32_t v) { put_be(v, 4); }
  void u64_be(std::uint64_t v) { put_be(v, 8); }
  void f64_le(double v) { u64_le(std::bit_cast<std::uint64_t>(v)); }
  void words_le(std::span<const std::uint64_t> words) {
    for (auto w : words) u64_le(w);
  }
  void raw(std::span<const std::uint8_t> data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
  }

  std::vector<std::uint8_t>& buffer() { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  void put_le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void put_be(std::uint64_t v, int n) {
    for (int i = n - 1; i >= 0; --i)
      buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
  std::uint32_t u32_le() { return static_cast<std::uint32_t>(get_le(4)); }
  std::uint64_t u64_le() { return get_le(8); }
  std::uint32_t u32_be() { return static_cast<std::uint32_t>(get_be(4)); }
  std::uint64_t u64_be() { return get_be(8); }
  double f64_le() { return std::bit_cast<double>(u64_le()); }
  std::vector<std::uint64_t> words_le(std::size_t count) {
    need(count * 8);
    std::vector<std::uint64_t> out(count);
    for (auto& w : out) w = get_le(8);
    return out;
  }
  std::span<const std::uint8_t> raw(std::size_t count) {
    need(count);
    auto s = data_.subspan(pos_, count);
    pos_ += count;
    return s;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    require(data_.size() - pos_ >= n, ErrorKind::kFormat, "truncated binary record");
  }
  std::uint64_t get_le(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{data_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::uint64_t get_be(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | data_[pos_ + i];
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace gestmpc::bytes
