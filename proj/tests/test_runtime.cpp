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

#include <mutex>
#include <set>
#include <stdexcept>

#include "gestmpc/error.hpp"
#include "gestmpc/mpc/tensor.hpp"
#include "gestmpc/runtime/session.hpp"
#include "gestmpc/runtime/transport.hpp"
#include "oracles.hpp"

using namespace gestmpc;
using namespace gestmpc::runtime;

namespace {

RealMatrix words_matrix(const sharing::RingVec& v) {
  RealMatrix m(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = static_cast<double>(v[i]);
  return m;
}

// x owned by party 0, y by party 1; returns opened raw words of
// leaky(x*y + x@w) so equality checks are bitwise.
Program arithmetic_program() {
  Program p;
  p.name = "test:arith";
  p.body = [](mpc::Context& ctx) -> std::vector<RealMatrix> {
    Prng rng(99);
    const auto x = oracle::random_matrix(rng, 3, 4, -8, 8);
    const auto y = oracle::random_matrix(rng, 3, 4, -8, 8);
    const auto w = oracle::random_matrix(rng, 4, 4, -2, 2);
    const int other = ctx.party_count() > 1 ? 1 : 0;
    auto sx = mpc::share(ctx, 0, ctx.is_local(0) ? &x : nullptr, {3, 4});
    auto sy = mpc::share(ctx, other, ctx.is_local(other) ? &y : nullptr, {3, 4});
    auto sw = mpc::share(ctx, 0, ctx.is_local(0) ? &w : nullptr, {4, 4});
    auto z = mpc::add(mpc::mul(ctx, sx, sy), mpc::matmul(ctx, sx, sw));
    auto a = mpc::leaky_relu(ctx, z, 0.01).activation;
    return {words_matrix(mpc::open_ring(ctx, a)), mpc::open(ctx, a)};
  };
  return p;
}

SessionConfig config(std::size_t n, std::uint64_t seed) {
  SessionConfig c;
  c.parties = n;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Frame, RoundTripAndLayout) {
  Message m{MessageKind::kOpening, 0x0102030405060708ull, 9, {1, 2, 3}};
  const auto f = encode_frame(m);
  ASSERT_EQ(f.size(), kFrameHeader + 3);
  EXPECT_EQ(f[0], 0);
  EXPECT_EQ(f[3], kFrameHeader - 4 + 3);  // big-endian length after the field
  EXPECT_EQ(f[4], 2);
  EXPECT_EQ(f[5], 0x01);
  EXPECT_EQ(f[12], 0x08);
  const auto back = decode_frame(f);
  EXPECT_EQ(back.kind, m.kind);
  EXPECT_EQ(back.session, m.session);
  EXPECT_EQ(back.seq, m.seq);
  EXPECT_EQ(back.payload, m.payload);
}

TEST(Frame, MalformedRejected) {
  auto f = encode_frame({MessageKind::kControl, 1, 1, {4, 5}});
  auto cut = f;
  cut.pop_back();
  EXPECT_THROW(decode_frame(cut), Error);
  auto bad_kind = f;
  bad_kind[4] = 0;
  EXPECT_THROW(decode_frame(bad_kind), Error);
  EXPECT_THROW(decode_frame(std::vector<std::uint8_t>(3, 0)), Error);
}

TEST(Endpoint, SequenceAndSessionChecked) {
  InProcessHub hub(2);
  auto raw = hub.endpoint(0);
  Endpoint ep(hub.endpoint(1), 5);
  raw->send(1, encode_frame({MessageKind::kOpening, 5, 1, {}}));
  raw->send(1, encode_frame({MessageKind::kOpening, 5, 1, {}}));
  raw->send(1, encode_frame({MessageKind::kOpening, 6, 2, {}}));
  EXPECT_NO_THROW(ep.recv(0));
  try {
    ep.recv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kProtocol);
  }
  EXPECT_THROW(ep.recv(0), Error);
}

TEST(Endpoint, UnexpectedKindRejected) {
  InProcessHub hub(2);
  Endpoint a(hub.endpoint(0), 1), b(hub.endpoint(1), 1);
  a.send(1, MessageKind::kOpening, {1});
  EXPECT_THROW(b.recv(0, MessageKind::kControl), Error);
}

TEST(Session, MatchesSingleProcessReferenceBitForBit) {
  for (std::size_t n : {2u, 3u}) {
    const auto cfg = config(n, 17);
    const auto session = run_session(cfg, arithmetic_program());
    mpc::LocalContext ref(n, cfg.seed);
    const auto expect = arithmetic_program().body(ref);
    for (const auto& p : session.parties) {
      ASSERT_EQ(p.outputs.size(), 2u);
      EXPECT_EQ(p.outputs[0], expect[0]) << "party " << p.party << " of " << n;
      EXPECT_TRUE(p.transcript.same_counts(ref.transcript()));
    }
  }
}

TEST(Session, TcpMatchesInProcess) {
  auto cfg = config(2, 21);
  const auto inproc = run_session(cfg, arithmetic_program());
  cfg.transport = TransportKind::kTcp;
  const auto tcp = run_session(cfg, arithmetic_program());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(tcp.parties[i].outputs, inproc.parties[i].outputs);
    EXPECT_TRUE(tcp.parties[i].transcript.same_counts(inproc.parties[i].transcript));
  }
  EXPECT_EQ(tcp.dealer.requests, inproc.dealer.requests);
}

TEST(Session, DeterministicAcrossReruns) {
  const auto a = run_session(config(3, 5), arithmetic_program());
  const auto b = run_session(config(3, 5), arithmetic_program());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.parties[i].outputs, b.parties[i].outputs);
    EXPECT_EQ(a.parties[i].transcript.to_json(false), b.parties[i].transcript.to_json(false));
    EXPECT_EQ(a.parties[i].bytes_sent, b.parties[i].bytes_sent);
  }
}

TEST(Session, RoundAccounting) {
  Program add_only{"test:add", 0, [](mpc::Context& ctx) -> std::vector<RealMatrix> {
                     const RealMatrix x(1, 1, {2.0});
                     auto a = mpc::share(ctx, 0, ctx.is_local(0) ? &x : nullptr, {1, 1});
                     auto b = mpc::share(ctx, 1, ctx.is_local(1) ? &x : nullptr, {1, 1});
                     auto r0 = ctx.transcript().rounds();
                     mpc::add(a, b);
                     return {RealMatrix(1, 1, {double(ctx.transcript().rounds() - r0)})};
                   }};
  Program one_mul{"test:mul", 0, [](mpc::Context& ctx) -> std::vector<RealMatrix> {
                    const RealMatrix x(1, 1, {3.0});
                    auto a = mpc::share(ctx, 0, ctx.is_local(0) ? &x : nullptr, {1, 1});
                    auto b = mpc::share(ctx, 1, ctx.is_local(1) ? &x : nullptr, {1, 1});
                    auto r0 = ctx.transcript().rounds();
                    auto c = mpc::mul(ctx, a, b);
                    const double r = double(ctx.transcript().rounds() - r0);
                    return {RealMatrix(1, 1, {r}), mpc::open(ctx, c)};
                  }};
  const auto s0 = run_session(config(2, 1), add_only);
  EXPECT_EQ(s0.parties[0].outputs[0](0, 0), 0.0);
  EXPECT_EQ(s0.dealer.requests, 0u);
  const auto s1 = run_session(config(2, 1), one_mul);
  EXPECT_EQ(s1.parties[0].outputs[0](0, 0), 1.0);
  EXPECT_NEAR(s1.parties[1].outputs[1](0, 0), 9.0, 1e-4);
}

TEST(Session, RevealReachesOnlyTarget) {
  Program p{"test:reveal", 0, [](mpc::Context& ctx) -> std::vector<RealMatrix> {
              const RealMatrix x(1, 1, {7.0});
              auto s = mpc::share(ctx, 1, ctx.is_local(1) ? &x : nullptr, {1, 1});
              auto r = mpc::reveal(ctx, s, 0);
              if (!r) return {};
              return {*r};
            }};
  const auto s = run_session(config(2, 3), p);
  ASSERT_EQ(s.parties[0].outputs.size(), 1u);
  EXPECT_DOUBLE_EQ(s.parties[0].outputs[0](0, 0), 7.0);
  EXPECT_TRUE(s.parties[1].outputs.empty());
}

TEST(Session, RevokedGrantFails) {
  Program p{"test:revoke", 0, [](mpc::Context& ctx) -> std::vector<RealMatrix> {
              const RealMatrix x(1, 1, {7.0});
              auto s = mpc::share(ctx, 0, ctx.is_local(0) ? &x : nullptr, {1, 1});
              if (ctx.is_local(1)) ctx.set_grant(1, false);
              auto r = mpc::reveal(ctx, s, 0);
              if (!r) return {};
              return {*r};
            }};
  try {
    run_session(config(2, 3), p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingGrant) << e.what();
  }
}

TEST(Session, ProgramHashMismatchFails) {
  auto a = arithmetic_program();
  auto b = arithmetic_program();
  b.name = "test:other";
  try {
    run_session(config(2, 3), std::vector<Program>{a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kProtocol) << e.what();
  }
}

TEST(Session, PartyFailureAbortsWithDiagnostic) {
  Program p{"test:abort", 0, [](mpc::Context& ctx) -> std::vector<RealMatrix> {
              const RealMatrix x(2, 2, {1, 2, 3, 4});
              auto s = mpc::share(ctx, 0, ctx.is_local(0) ? &x : nullptr, {2, 2});
              if (ctx.is_local(1)) throw std::runtime_error("sensor unplugged");
              mpc::mul(ctx, s, s);
              return {mpc::open(ctx, s)};
            }};
  for (auto kind : {TransportKind::kInProcess, TransportKind::kTcp}) {
    auto cfg = config(2, 3);
    cfg.transport = kind;
    try {
      run_session(cfg, p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kSessionAborted);
      EXPECT_NE(std::string(e.what()).find("party 1"), std::string::npos) << e.what();
      EXPECT_NE(std::string(e.what()).find("sensor unplugged"), std::string::npos);
    }
  }
}

TEST(Session, DealerNeverSeesDataMessages) {
  const auto s = run_session(config(3, 8), arithmetic_program());
  EXPECT_GT(s.dealer.requests, 0u);
  for (auto k : s.dealer.inbound_kinds)
    EXPECT_TRUE(k == MessageKind::kTripleRequest || k == MessageKind::kControl)
        << to_string(k);
}

TEST(Session, ObservedTrafficIndependentOfSecret) {
  // Party 1's view of party 0's traffic for two very different secrets.
  auto collect = [](double secret, std::uint64_t seed) {
    std::vector<double> words;
    std::mutex mu;
    auto cfg = config(2, seed);
    cfg.tap = [&](int observer, int from, const Message& m) {
      if (observer != 1 || from != 0) return;
      if (m.kind != MessageKind::kOpening && m.kind != MessageKind::kShareDelivery) return;
      std::lock_guard lock(mu);
      for (std::size_t i = 0; i + 8 <= m.payload.size(); i += 8) {
        std::uint64_t w = 0;
        for (int b = 0; b < 8; ++b) w |= std::uint64_t(m.payload[i + b]) << (8 * b);
        words.push_back(std::ldexp(static_cast<double>(w >> 11), -53));
      }
    };
    Program p{"test:privacy", 0, [secret](mpc::Context& ctx) -> std::vector<RealMatrix> {
                const RealMatrix x(20, 20, secret);
                const RealMatrix y(20, 20, 0.5);
                auto sx = mpc::share(ctx, 0, ctx.is_local(0) ? &x : nullptr, {20, 20});
                auto sy = mpc::share(ctx, 1, ctx.is_local(1) ? &y : nullptr, {20, 20});
                auto z = mpc::mul(ctx, sx, sy);
                mpc::gt_zero(ctx, z);
                return {};
              }};
    run_session(cfg, p);
    return words;
  };
  const auto a = collect(1.0, 101);
  const auto b = collect(-3000.0, 202);
  ASSERT_GT(a.size(), 1000u);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_GT(oracle::ks_pvalue(a, b), 0.01);
}
