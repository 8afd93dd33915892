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
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gestmpc::runtime {

enum class MessageKind : std::uint8_t {
  kShareDelivery = 1,
  kOpening = 2,
  kTriple = 3,
  kComparisonRandomness = 4,
  kRevealGrant = 5,
  kControl = 6,
  kTripleRequest = 7,
  kTruncationPair = 8,
};

std::string_view to_string(MessageKind kind);

struct Message {
  MessageKind kind = MessageKind::kControl;
  std::uint64_t session = 0;
  std::uint64_t seq = 0;
  std::vector<std::uint8_t> payload;
};

// Frame layout: u32 BE length of everything after the length field, u8 kind,
// u64 BE session id, u64 BE sequence number, payload.
inline constexpr std::size_t kFrameHeader = 4 + 1 + 8 + 8;
inline constexpr std::size_t kMaxFrame = std::size_t{1} << 31;

std::vector<std::uint8_t> encode_frame(const Message& m);
// Parses one complete frame. Throws kFormat on malformed input.
Message decode_frame(std::span<const std::uint8_t> frame);

}  // namespace gestmpc::runtime
