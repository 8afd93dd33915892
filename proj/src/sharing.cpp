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

#include "gestmpc/sharing.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "gestmpc/bytes.hpp"
#include "gestmpc/error.hpp"
#include "gestmpc/kernels.hpp"

namespace gestmpc::sharing {

ShareVector split(Ring secret, std::size_t party_count, Prng& rng) {
  require(party_count >= 2, ErrorKind::kInvalidArgument,
          "secret sharing needs at least two parties");
  ShareVector sv{party_count, std::vector<Ring>(party_count)};
  Ring acc = 0;
  for (std::size_t p = 0; p + 1 < party_count; ++p) {
    sv.shares[p] = rng.next();
    acc += sv.shares[p];
  }
  sv.shares.back() = secret - acc;
  return sv;
}

Ring reconstruct(const ShareVector& sv) {
  require(sv.party_count >= 2 && sv.shares.size() == sv.party_count,
          ErrorKind::kInvalidArgument,
          "cannot reconstruct: expected " + std::to_string(sv.party_count) +
              " shares, got " + std::to_string(sv.shares.size()));
  Ring acc = 0;
  for (auto s : sv.shares) acc += s;
  return acc;
}

std::vector<RingVec> split_planes(std::span<const Ring> secret,
                                  std::size_t party_count, Prng& rng) {
  require(party_count >= 2, ErrorKind::kInvalidArgument,
          "secret sharing needs at least two parties");
  std::vector<RingVec> planes(party_count, RingVec(secret.size()));
  for (std::size_t p = 1; p < party_count; ++p)
    for (auto& w : planes[p]) w = rng.next();
  for (std::size_t i = 0; i < secret.size(); ++i) {
    Ring acc = 0;
    for (std::size_t p = 1; p < party_count; ++p) acc += planes[p][i];
    planes[0][i] = secret[i] - acc;
  }
  return planes;
}

RingVec reconstruct_planes(std::span<const RingVec> planes) {
  require(!planes.empty(), ErrorKind::kInvalidArgument, "no share planes");
  RingVec out(planes[0].size(), 0);
  for (const auto& plane : planes) {
    require(plane.size() == out.size(), ErrorKind::kShapeMismatch,
            "share planes differ in size");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += plane[i];
  }
  return out;
}

std::vector<RingVec> split_xor_planes(std::span<const Ring> secret,
                                      std::size_t party_count, Prng& rng) {
  require(party_count >= 2, ErrorKind::kInvalidArgument,
          "secret sharing needs at least two parties");
  std::vector<RingVec> planes(party_count, RingVec(secret.size()));
  for (std::size_t p = 1; p < party_count; ++p)
    for (auto& w : planes[p]) w = rng.next();
  for (std::size_t i = 0; i < secret.size(); ++i) {
    Ring acc = secret[i];
    for (std::size_t p = 1; p < party_count; ++p) acc ^= planes[p][i];
    planes[0][i] = acc;
  }
  return planes;
}

RingVec reconstruct_xor_planes(std::span<const RingVec> planes) {
  require(!planes.empty(), ErrorKind::kInvalidArgument, "no share planes");
  RingVec out(planes[0].size(), 0);
  for (const auto& plane : planes) {
    require(plane.size() == out.size(), ErrorKind::kShapeMismatch,
            "share planes differ in size");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= plane[i];
  }
  return out;
}

std::size_t TripleShape::a_size() const {
  return kind == TripleKind::kMatMul ? rows * inner : rows * cols;
}

std::size_t TripleShape::b_size() const {
  return kind == TripleKind::kMatMul ? inner * cols : rows * cols;
}

namespace {

template <class T>
std::size_t index_of(const T& r, int party) {
  for (std::size_t i = 0; i < r.parties.size(); ++i)
    if (r.parties[i] == party) return i;
  fail(ErrorKind::kInvalidArgument,
       "randomness holds no plane for party " + std::to_string(party));
}

}  // namespace

BeaverTriple slice(const BeaverTriple& t, int party) {
  const auto i = index_of(t, party);
  return {t.shape, t.serial, {party}, {t.a[i]}, {t.b[i]}, {t.c[i]}, t.used};
}

ComparisonRandomness slice(const ComparisonRandomness& r, int party) {
  const auto i = index_of(r, party);
  ComparisonRandomness out;
  out.count = r.count;
  out.serial = r.serial;
  out.parties = {party};
  out.mask = {r.mask[i]};
  out.mask_bits = {r.mask_bits[i]};
  out.and_a = {r.and_a[i]};
  out.and_b = {r.and_b[i]};
  out.and_c = {r.and_c[i]};
  out.flip_bits = {r.flip_bits[i]};
  out.flip = {r.flip[i]};
  out.used = r.used;
  return out;
}

TruncationPair slice(const TruncationPair& p, int party) {
  const auto i = index_of(p, party);
  return {p.count, p.divisor, p.serial, {party}, {p.mask[i]}, {p.mask_div[i]}, p.used};
}

Dealer::Dealer(std::uint64_t seed, std::size_t party_count)
    : seed_(seed), party_count_(party_count), rng_(seed) {
  require(party_count >= 2, ErrorKind::kInvalidArgument,
          "dealer needs at least two parties");
}

std::vector<int> Dealer::all_parties() const {
  std::vector<int> ids(party_count_);
  for (std::size_t p = 0; p < party_count_; ++p) ids[p] = static_cast<int>(p);
  return ids;
}

std::vector<RingVec> Dealer::share_values(std::span<const Ring> values) {
  return split_planes(values, party_count_, rng_);
}

std::vector<RingVec> Dealer::xor_share_values(std::span<const Ring> values) {
  return split_xor_planes(values, party_count_, rng_);
}

std::vector<RingVec> Dealer::uniform_planes(std::size_t words) {
  RingVec values(words);
  for (auto& w : values) w = rng_.next();
  return share_values(values);
}

BeaverTriple Dealer::triple(const TripleShape& shape) {
  require(shape.rows > 0 && shape.cols > 0 &&
              (shape.kind == TripleKind::kElementwise || shape.inner > 0),
          ErrorKind::kInvalidArgument, "empty triple shape");
  RingVec a(shape.a_size()), b(shape.b_size()), c(shape.c_size());
  for (auto& w : a) w = rng_.next();
  for (auto& w : b) w = rng_.next();
  if (shape.kind == TripleKind::kElementwise) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] * b[i];
  } else {
    kernels::matmul<Ring>(a, b, c, shape.rows, shape.inner, shape.cols);
  }
  BeaverTriple t;
  t.shape = shape;
  t.serial = ++serial_;
  t.parties = all_parties();
  t.a = share_values(a);
  t.b = share_values(b);
  t.c = share_values(c);
  ++issued_[shape];
  return t;
}

std::vector<BeaverTriple> Dealer::deal_triples(const TripleShape& shape,
                                               std::size_t count) {
  require(count >= 1, ErrorKind::kInvalidArgument, "triple count must be positive");
  std::vector<BeaverTriple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(triple(shape));
  return out;
}

ComparisonRandomness Dealer::comparison(std::size_t count) {
  require(count > 0, ErrorKind::kInvalidArgument, "empty comparison request");
  ComparisonRandomness r;
  r.count = count;
  r.serial = ++serial_;
  r.parties = all_parties();

  RingVec mask(count);
  for (auto& w : mask) w = rng_.next();
  r.mask = share_values(mask);
  r.mask_bits = xor_share_values(mask);

  const std::size_t gates = ComparisonRandomness::kAndGates * count;
  RingVec x(gates), y(gates), z(gates);
  for (std::size_t g = 0; g < gates; ++g) {
    x[g] = rng_.next();
    y[g] = rng_.next();
    z[g] = x[g] & y[g];
  }
  r.and_a = xor_share_values(x);
  r.and_b = xor_share_values(y);
  r.and_c = xor_share_values(z);

  RingVec rho(count);
  for (auto& w : rho) w = rng_.next() & 1u;
  r.flip_bits = xor_share_values(rho);
  r.flip = share_values(rho);
  return r;
}

TruncationPair Dealer::truncation(std::size_t count, std::uint64_t divisor) {
  require(count > 0 && divisor > 0, ErrorKind::kInvalidArgument,
          "truncation pairs need a positive count and divisor");
  TruncationPair p;
  p.count = count;
  p.divisor = divisor;
  p.serial = ++serial_;
  p.parties = all_parties();
  RingVec mask(count), mask_div(count);
  for (std::size_t i = 0; i < count; ++i) {
    mask[i] = rng_.next() >> (64 - TruncationPair::kMaskBits);
    mask_div[i] = mask[i] / divisor;
  }
  p.mask = share_values(mask);
  p.mask_div = share_values(mask_div);
  return p;
}

std::uint64_t Dealer::issued(const TripleShape& shape) const {
  auto it = issued_.find(shape);
  return it == issued_.end() ? 0 : it->second;
}

// --- serialization -----------------------------------------------------------

namespace {

enum RecordType : std::uint8_t { kTripleRecord = 1, kComparisonRecord = 2, kTruncationRecord = 3 };

void put_header(bytes::Writer& w, RecordType type, std::uint64_t serial,
                const std::vector<int>& parties) {
  w.u8(type);
  w.u64_le(serial);
  w.u32_le(static_cast<std::uint32_t>(parties.size()));
  for (int p : parties) w.u32_le(static_cast<std::uint32_t>(p));
}

std::vector<std::uint8_t> frame(bytes::Writer& body) {
  bytes::Writer out;
  out.buffer().reserve(4 + body.buffer().size());
  out.u32_le(static_cast<std::uint32_t>(body.buffer().size()));
  out.raw(body.buffer());
  return out.take();
}

struct Header {
  std::uint64_t serial;
  std::vector<int> parties;
};

bytes::Reader open_record(std::span<const std::uint8_t> record, RecordType type,
                          Header& h) {
  bytes::Reader outer(record);
  const auto len = outer.u32_le();
  require(outer.remaining() == len, ErrorKind::kFormat, "record length mismatch");
  bytes::Reader r(record.subspan(4));
  require(r.u8() == type, ErrorKind::kFormat, "unexpected record type");
  h.serial = r.u64_le();
  const auto planes = r.u32_le();
  require(planes <= 1024, ErrorKind::kFormat, "implausible plane count");
  h.parties.resize(planes);
  for (auto& p : h.parties) p = static_cast<int>(r.u32_le());
  return r;
}

std::vector<RingVec> read_planes(bytes::Reader& r, std::size_t planes,
                                 std::size_t words) {
  std::vector<RingVec> out(planes);
  for (auto& plane : out) plane = r.words_le(words);
  return out;
}

void put_planes(bytes::Writer& w, const std::vector<RingVec>& planes) {
  for (const auto& plane : planes) w.words_le(plane);
}

}  // namespace

std::vector<std::uint8_t> serialize(const BeaverTriple& t) {
  bytes::Writer w;
  put_header(w, kTripleRecord, t.serial, t.parties);
  w.u8(static_cast<std::uint8_t>(t.shape.kind));
  w.u64_le(t.shape.rows);
  w.u64_le(t.shape.inner);
  w.u64_le(t.shape.cols);
  put_planes(w, t.a);
  put_planes(w, t.b);
  put_planes(w, t.c);
  return frame(w);
}

BeaverTriple deserialize_triple(std::span<const std::uint8_t> record) {
  Header h;
  auto r = open_record(record, kTripleRecord, h);
  BeaverTriple t;
  t.serial = h.serial;
  t.parties = h.parties;
  const auto kind = r.u8();
  require(kind == 1 || kind == 2, ErrorKind::kFormat, "unknown triple kind");
  t.shape.kind = static_cast<TripleKind>(kind);
  t.shape.rows = r.u64_le();
  t.shape.inner = r.u64_le();
  t.shape.cols = r.u64_le();
  const auto n = h.parties.size();
  t.a = read_planes(r, n, t.shape.a_size());
  t.b = read_planes(r, n, t.shape.b_size());
  t.c = read_planes(r, n, t.shape.c_size());
  require(r.done(), ErrorKind::kFormat, "trailing bytes in triple record");
  return t;
}

std::vector<std::uint8_t> serialize(const ComparisonRandomness& c) {
  bytes::Writer w;
  put_header(w, kComparisonRecord, c.serial, c.parties);
  w.u64_le(c.count);
  put_planes(w, c.mask);
  put_planes(w, c.mask_bits);
  put_planes(w, c.and_a);
  put_planes(w, c.and_b);
  put_planes(w, c.and_c);
  put_planes(w, c.flip_bits);
  put_planes(w, c.flip);
  return frame(w);
}

ComparisonRandomness deserialize_comparison(std::span<const std::uint8_t> record) {
  Header h;
  auto r = open_record(record, kComparisonRecord, h);
  ComparisonRandomness c;
  c.serial = h.serial;
  c.parties = h.parties;
  c.count = r.u64_le();
  const auto n = h.parties.size();
  const auto gates = ComparisonRandomness::kAndGates * c.count;
  c.mask = read_planes(r, n, c.count);
  c.mask_bits = read_planes(r, n, c.count);
  c.and_a = read_planes(r, n, gates);
  c.and_b = read_planes(r, n, gates);
  c.and_c = read_planes(r, n, gates);
  c.flip_bits = read_planes(r, n, c.count);
  c.flip = read_planes(r, n, c.count);
  require(r.done(), ErrorKind::kFormat, "trailing bytes in comparison record");
  return c;
}

std::vector<std::uint8_t> serialize(const TruncationPair& p) {
  bytes::Writer w;
  put_header(w, kTruncationRecord, p.serial, p.parties);
  w.u64_le(p.count);
  w.u64_le(p.divisor);
  put_planes(w, p.mask);
  put_planes(w, p.mask_div);
  return frame(w);
}

TruncationPair deserialize_truncation(std::span<const std::uint8_t> record) {
  Header h;
  auto r = open_record(record, kTruncationRecord, h);
  TruncationPair p;
  p.serial = h.serial;
  p.parties = h.parties;
  p.count = r.u64_le();
  p.divisor = r.u64_le();
  const auto n = h.parties.size();
  p.mask = read_planes(r, n, p.count);
  p.mask_div = read_planes(r, n, p.count);
  require(r.done(), ErrorKind::kFormat, "trailing bytes in truncation record");
  return p;
}

void write_triple_stream(std::ostream& os, std::span<const BeaverTriple> triples) {
  for (const auto& t : triples) {
    const auto rec = serialize(t);
    os.write(reinterpret_cast<const char*>(rec.data()),
             static_cast<std::streamsize>(rec.size()));
  }
  require(static_cast<bool>(os), ErrorKind::kIo, "failed writing triple stream");
}

std::vector<BeaverTriple> read_triple_stream(std::istream& is) {
  std::vector<BeaverTriple> out;
  while (true) {
    std::uint8_t len_bytes[4];
    is.read(reinterpret_cast<char*>(len_bytes), 4);
    if (is.gcount() == 0) break;
    require(is.gcount() == 4, ErrorKind::kFormat, "truncated triple stream");
    const std::uint32_t len = std::uint32_t{len_bytes[0]} | std::uint32_t{len_bytes[1]} << 8 |
                              std::uint32_t{len_bytes[2]} << 16 |
                              std::uint32_t{len_bytes[3]} << 24;
    std::vector<std::uint8_t> rec(4 + std::size_t{len});
    std::copy(len_bytes, len_bytes + 4, rec.begin());
    is.read(reinterpret_cast<char*>(rec.data() + 4), len);
    require(static_cast<std::uint32_t>(is.gcount()) == len, ErrorKind::kFormat,
            "truncated triple stream");
    out.push_back(deserialize_triple(rec));
  }
  return out;
}

}  // namespace gestmpc::sharing
