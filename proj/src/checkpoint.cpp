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

#include "gestmpc/checkpoint.hpp"

#include <fstream>
#include <iterator>

#include "gestmpc/bytes.hpp"
#include "gestmpc/error.hpp"

namespace gestmpc::checkpoint {

namespace {

constexpr char kMagic[] = "GSTCKPT1";
constexpr std::uint32_t kVersion = 1;

}  // namespace

std::size_t Checkpoint::d_in() const {
  return mode == model::Mode::kPlain ? params.d_in() : shares->d_in();
}

std::vector<std::uint8_t> serialize(const Checkpoint& c) {
  const bool mpc = c.mode == model::Mode::kMpc;
  require(!mpc || c.shares.has_value(), ErrorKind::kInvalidArgument,
          "mpc checkpoint without shares");
  bytes::Writer w;
  w.raw({reinterpret_cast<const std::uint8_t*>(kMagic), 8});
  w.u32_le(kVersion);
  w.u64_le(c.d_in());
  w.u32_le(static_cast<std::uint32_t>(c.precision));
  w.u8(mpc ? 1 : 0);
  w.f64_le(c.alpha);
  const std::size_t parties = mpc ? c.shares->w1.planes().size() : 0;
  w.u32_le(static_cast<std::uint32_t>(parties));
  if (mpc) {
    for (const auto* t : c.shares->tensors()) {
      w.u32_le(static_cast<std::uint32_t>(t->rows()));
      w.u32_le(static_cast<std::uint32_t>(t->cols()));
      w.u32_le(static_cast<std::uint32_t>(t->scale()));
      require(t->planes().size() == parties, ErrorKind::kInvalidArgument,
              "every shared parameter needs one plane per party");
      for (const auto& plane : t->planes()) w.words_le(plane);
    }
  } else {
    for (const auto* t : c.params.tensors()) {
      w.u32_le(static_cast<std::uint32_t>(t->rows()));
      w.u32_le(static_cast<std::uint32_t>(t->cols()));
      for (double v : t->data()) w.f64_le(v);
    }
  }
  w.u8(c.standardizer ? 1 : 0);
  if (c.standardizer) {
    w.u64_le(c.standardizer->mean.size());
    for (double v : c.standardizer->mean) w.f64_le(v);
    for (double v : c.standardizer->stddev) w.f64_le(v);
  }
  w.u32_le(static_cast<std::uint32_t>(c.class_names.size()));
  for (const auto& name : c.class_names) {
    w.u32_le(static_cast<std::uint32_t>(name.size()));
    w.raw({reinterpret_cast<const std::uint8_t*>(name.data()), name.size()});
  }
  return w.take();
}

Checkpoint deserialize(std::span<const std::uint8_t> data) {
  bytes::Reader r(data);
  const auto magic = r.raw(8);
  require(std::equal(magic.begin(), magic.end(), kMagic), ErrorKind::kFormat,
          "not a checkpoint file");
  require(r.u32_le() == kVersion, ErrorKind::kFormat, "unsupported checkpoint version");
  Checkpoint c;
  const auto d_in = r.u64_le();
  c.precision = static_cast<int>(r.u32_le());
  const auto mode = r.u8();
  require(mode <= 1, ErrorKind::kFormat, "unknown checkpoint mode");
  c.mode = mode == 1 ? model::Mode::kMpc : model::Mode::kPlain;
  c.alpha = r.f64_le();
  c.parties = r.u32_le();
  auto read_shape = [&](std::size_t& rows, std::size_t& cols) {
    rows = r.u32_le();
    cols = r.u32_le();
    require(rows * cols <= r.remaining(), ErrorKind::kFormat, "truncated checkpoint");
  };
  if (c.mode == model::Mode::kMpc) {
    require(c.parties >= 2, ErrorKind::kFormat, "mpc checkpoint needs two or more planes");
    model::SharedParams sp;
    std::vector<int> ids(c.parties);
    for (std::size_t p = 0; p < c.parties; ++p) ids[p] = static_cast<int>(p);
    for (auto* t : sp.tensors()) {
      std::size_t rows = 0, cols = 0;
      read_shape(rows, cols);
      const int scale = static_cast<int>(r.u32_le());
      std::vector<sharing::RingVec> planes;
      for (std::size_t p = 0; p < c.parties; ++p) planes.push_back(r.words_le(rows * cols));
      *t = mpc::SharedTensor({rows, cols}, scale, ids, std::move(planes));
    }
    c.shares = std::move(sp);
  } else {
    for (auto* t : c.params.tensors()) {
      std::size_t rows = 0, cols = 0;
      read_shape(rows, cols);
      RealMatrix m(rows, cols);
      for (auto& v : m.data()) v = r.f64_le();
      *t = std::move(m);
    }
  }
  require(c.d_in() == d_in, ErrorKind::kFormat, "checkpoint header disagrees with W1");
  if (r.u8() == 1) {
    features::StandardizationStats st;
    const auto dim = r.u64_le();
    require(dim * 16 <= r.remaining(), ErrorKind::kFormat, "truncated standardizer");
    for (std::size_t i = 0; i < dim; ++i) st.mean.push_back(r.f64_le());
    for (std::size_t i = 0; i < dim; ++i) st.stddev.push_back(r.f64_le());
    c.standardizer = std::move(st);
  }
  const auto names = r.u32_le();
  for (std::uint32_t i = 0; i < names; ++i) {
    const auto len = r.u32_le();
    const auto raw = r.raw(len);
    c.class_names.emplace_back(raw.begin(), raw.end());
  }
  require(r.done(), ErrorKind::kFormat, "trailing bytes after checkpoint");
  return c;
}

void save(const std::string& path, const Checkpoint& c) {
  const auto data = serialize(c);
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::kIo, "cannot write " + path);
  os.write(reinterpret_cast<const char*>(data.data()),
           static_cast<std::streamsize>(data.size()));
  require(static_cast<bool>(os), ErrorKind::kIo, "write failed for " + path);
}

Checkpoint load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), ErrorKind::kIo, "cannot read " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());
  return deserialize(data);
}

}  // namespace gestmpc::checkpoint
