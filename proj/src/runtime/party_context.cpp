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

#include "gestmpc/runtime/party_context.hpp"

#include <string>

#include "gestmpc/bytes.hpp"
#include "gestmpc/error.hpp"

namespace gestmpc::runtime {

using mpc::Ring;
using mpc::RingVec;

namespace {

std::vector<std::uint8_t> words_payload(std::span<const Ring> words) {
  bytes::Writer w;
  w.buffer().reserve(words.size() * 8);
  w.words_le(words);
  return w.take();
}

RingVec payload_words(const Message& m, std::size_t count) {
  require(m.payload.size() == count * 8, ErrorKind::kProtocol,
          std::string(to_string(m.kind)) + " payload has the wrong length");
  bytes::Reader r(m.payload);
  return r.words_le(count);
}

std::vector<std::uint8_t> control(ControlCode code, std::uint64_t value) {
  bytes::Writer w;
  w.u8(static_cast<std::uint8_t>(code));
  w.u64_le(value);
  return w.take();
}

}  // namespace

PartyContext::PartyContext(std::size_t party_count, int self, Endpoint& endpoint,
                           std::uint64_t seed, mpc::FixedPointConfig fp)
    : Context(party_count, fp),
      self_{self},
      ep_(endpoint),
      input_rng_(mpc::input_seed(seed, self)) {
  require(self >= 0 && static_cast<std::size_t>(self) < party_count,
          ErrorKind::kInvalidArgument, "party id out of range");
  require(endpoint.endpoints() == party_count + 1, ErrorKind::kInvalidArgument,
          "transport must connect every party and the dealer");
  require(endpoint.self() == self, ErrorKind::kInvalidArgument,
          "transport endpoint does not match the party id");
}

void PartyContext::set_grant(int party, bool granted) {
  require(party == self(), ErrorKind::kInvalidArgument,
          "a party can only set its own reveal grant");
  granted_ = granted;
}

void PartyContext::handshake(std::uint64_t program_hash) {
  const int n = static_cast<int>(party_count());
  for (int p = 0; p < n; ++p)
    if (p != self()) ep_.send(p, MessageKind::kControl, control(ControlCode::kHello, program_hash));
  for (int p = 0; p < n; ++p) {
    if (p == self()) continue;
    const auto m = ep_.recv(p, MessageKind::kControl);
    bytes::Reader r(m.payload);
    require(r.u8() == static_cast<std::uint8_t>(ControlCode::kHello), ErrorKind::kProtocol,
            "expected a hello from party " + std::to_string(p));
    const auto theirs = r.u64_le();
    require(theirs == program_hash, ErrorKind::kProtocol,
            "program hash mismatch with party " + std::to_string(p));
  }
}

void PartyContext::finish() {
  ep_.send(dealer(), MessageKind::kControl, control(ControlCode::kDone, 0));
}

RingVec PartyContext::do_open(std::span<const RingVec> planes, bool xor_shares) {
  const RingVec& mine = planes[0];
  const int n = static_cast<int>(party_count());
  for (int p = 0; p < n; ++p)
    if (p != self()) ep_.send(p, MessageKind::kOpening, words_payload(mine));
  RingVec out = mine;
  for (int p = 0; p < n; ++p) {
    if (p == self()) continue;
    const auto theirs = payload_words(ep_.recv(p, MessageKind::kOpening), mine.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = xor_shares ? out[i] ^ theirs[i] : out[i] + theirs[i];
  }
  return out;
}

std::optional<RingVec> PartyContext::do_reveal(std::span<const RingVec> planes,
                                               int target) {
  const RingVec& mine = planes[0];
  if (self() != target) {
    bytes::Writer w;
    w.u8(granted_ ? 1 : 0);
    if (granted_) w.words_le(mine);
    ep_.send(target, MessageKind::kRevealGrant, w.take());
    return std::nullopt;
  }
  RingVec out = mine;
  const int n = static_cast<int>(party_count());
  bool denied = false;
  std::string who;
  for (int p = 0; p < n; ++p) {
    if (p == self()) continue;
    const auto m = ep_.recv(p, MessageKind::kRevealGrant);
    bytes::Reader r(m.payload);
    if (r.u8() == 0) {
      denied = true;
      who = std::to_string(p);
      continue;
    }
    require(r.remaining() == mine.size() * 8, ErrorKind::kProtocol,
            "reveal grant payload has the wrong length");
    const auto theirs = r.words_le(mine.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += theirs[i];
  }
  if (denied) fail(ErrorKind::kMissingGrant, "party " + who + " withheld its reveal grant");
  return out;
}

Message PartyContext::request(std::vector<std::uint8_t> payload, MessageKind reply) {
  ep_.send(dealer(), MessageKind::kTripleRequest, std::move(payload));
  return ep_.recv(dealer(), reply);
}

sharing::BeaverTriple PartyContext::do_triple(const sharing::TripleShape& shape) {
  bytes::Writer w;
  w.u8(static_cast<std::uint8_t>(RequestCode::kTriple));
  w.u8(static_cast<std::uint8_t>(shape.kind));
  w.u64_le(shape.rows);
  w.u64_le(shape.inner);
  w.u64_le(shape.cols);
  auto t = sharing::deserialize_triple(request(w.take(), MessageKind::kTriple).payload);
  require(t.shape == shape && t.parties == self_, ErrorKind::kProtocol,
          "dealer returned a triple for another request");
  return t;
}

sharing::ComparisonRandomness PartyContext::do_comparison(std::size_t count) {
  bytes::Writer w;
  w.u8(static_cast<std::uint8_t>(RequestCode::kComparison));
  w.u64_le(count);
  auto r = sharing::deserialize_comparison(
      request(w.take(), MessageKind::kComparisonRandomness).payload);
  require(r.count == count && r.parties == self_, ErrorKind::kProtocol,
          "dealer returned comparison randomness for another request");
  return r;
}

sharing::TruncationPair PartyContext::do_truncation(std::size_t count,
                                                    std::uint64_t divisor) {
  bytes::Writer w;
  w.u8(static_cast<std::uint8_t>(RequestCode::kTruncation));
  w.u64_le(count);
  w.u64_le(divisor);
  auto p = sharing::deserialize_truncation(
      request(w.take(), MessageKind::kTruncationPair).payload);
  require(p.count == count && p.divisor == divisor && p.parties == self_,
          ErrorKind::kProtocol, "dealer returned a truncation pair for another request");
  return p;
}

std::vector<RingVec> PartyContext::do_share_input(int owner, std::span<const Ring> values,
                                                  std::size_t count) {
  if (owner == self()) {
    auto planes = sharing::split_planes(values, party_count(), input_rng_);
    for (std::size_t p = 0; p < planes.size(); ++p)
      if (static_cast<int>(p) != self())
        ep_.send(static_cast<int>(p), MessageKind::kShareDelivery, words_payload(planes[p]));
    return {std::move(planes[static_cast<std::size_t>(self())])};
  }
  return {payload_words(ep_.recv(owner, MessageKind::kShareDelivery), count)};
}

DealerReport dealer_serve(sharing::Dealer& dealer, Endpoint& ep) {
  const int n = static_cast<int>(dealer.party_count());
  require(ep.self() == n && ep.endpoints() == dealer.party_count() + 1,
          ErrorKind::kInvalidArgument, "dealer must be the last endpoint");
  DealerReport report;
  for (;;) {
    std::vector<Message> msgs;
    for (int p = 0; p < n; ++p) msgs.push_back(ep.recv(p));
    for (int p = 1; p < n; ++p)
      require(msgs[p].kind == msgs[0].kind && msgs[p].payload == msgs[0].payload,
              ErrorKind::kShapeMismatch,
              "party " + std::to_string(p) + " sent a request that differs from party 0");
    const Message& m = msgs[0];
    if (m.kind == MessageKind::kControl) {
      bytes::Reader r(m.payload);
      require(r.u8() == static_cast<std::uint8_t>(ControlCode::kDone), ErrorKind::kProtocol,
              "unexpected control message at the dealer");
      break;
    }
    require(m.kind == MessageKind::kTripleRequest, ErrorKind::kProtocol,
            "dealer received a " + std::string(to_string(m.kind)) + " message");
    ++report.requests;
    bytes::Reader r(m.payload);
    const auto code = r.u8();
    if (code == static_cast<std::uint8_t>(RequestCode::kTriple)) {
      const auto kind = r.u8();
      require(kind == 1 || kind == 2, ErrorKind::kShapeMismatch, "unknown triple kind");
      sharing::TripleShape shape;
      shape.kind = static_cast<sharing::TripleKind>(kind);
      shape.rows = r.u64_le();
      shape.inner = r.u64_le();
      shape.cols = r.u64_le();
      require(shape.c_size() > 0 &&
                  (shape.kind == sharing::TripleKind::kElementwise || shape.inner > 0),
              ErrorKind::kShapeMismatch, "empty triple request");
      const auto t = dealer.triple(shape);
      for (int p = 0; p < n; ++p)
        ep.send(p, MessageKind::kTriple, sharing::serialize(sharing::slice(t, p)));
    } else if (code == static_cast<std::uint8_t>(RequestCode::kComparison)) {
      const auto c = dealer.comparison(r.u64_le());
      for (int p = 0; p < n; ++p)
        ep.send(p, MessageKind::kComparisonRandomness,
                sharing::serialize(sharing::slice(c, p)));
    } else if (code == static_cast<std::uint8_t>(RequestCode::kTruncation)) {
      const auto count = r.u64_le();
      const auto divisor = r.u64_le();
      const auto t = dealer.truncation(count, divisor);
      for (int p = 0; p < n; ++p)
        ep.send(p, MessageKind::kTruncationPair, sharing::serialize(sharing::slice(t, p)));
    } else {
      fail(ErrorKind::kProtocol, "unknown dealer request code " + std::to_string(code));
    }
  }
  report.inbound_kinds = ep.inbound_kinds();
  return report;
}

}  // namespace gestmpc::runtime
