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

#include "gestmpc/runtime/message.hpp"

#include "gestmpc/bytes.hpp"
#include "gestmpc/error.hpp"

namespace gestmpc::runtime {

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::kShareDelivery: return "share-delivery";
    case MessageKind::kOpening: return "opening";
    case MessageKind::kTriple: return "triple";
    case MessageKind::kComparisonRandomness: return "comparison-randomness";
    case MessageKind::kRevealGrant: return "reveal-grant";
    case MessageKind::kControl: return "control";
    case MessageKind::kTripleRequest: return "triple-request";
    case MessageKind::kTruncationPair: return "truncation-pair";
  }
  return "unknown";
}

std::vector<std::uint8_t> encode_frame(const Message& m) {
  const std::size_t body = kFrameHeader - 4 + m.payload.size();
  require(body < kMaxFrame, ErrorKind::kInvalidArgument, "message too large to frame");
  bytes::Writer w;
  w.buffer().reserve(4 + body);
  w.u32_be(static_cast<std::uint32_t>(body));
  w.u8(static_cast<std::uint8_t>(m.kind));
  w.u64_be(m.session);
  w.u64_be(m.seq);
  w.raw(m.payload);
  return w.take();
}

Message decode_frame(std::span<const std::uint8_t> frame) {
  bytes::Reader r(frame);
  const std::uint32_t body = r.u32_be();
  require(body + std::size_t{4} == frame.size() && body >= kFrameHeader - 4,
          ErrorKind::kFormat, "frame length field does not match the frame");
  Message m;
  const auto kind = r.u8();
  require(kind >= 1 && kind <= 8, ErrorKind::kFormat,
          "unknown message kind " + std::to_string(kind));
  m.kind = static_cast<MessageKind>(kind);
  m.session = r.u64_be();
  m.seq = r.u64_be();
  const auto rest = r.raw(r.remaining());
  m.payload.assign(rest.begin(), rest.end());
  return m;
}

}  // namespace gestmpc::runtime
