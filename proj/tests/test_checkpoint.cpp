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

#include <cstdio>
#include <filesystem>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "gestmpc/checkpoint.hpp"
#include "gestmpc/error.hpp"
#include "gestmpc/mpc/context.hpp"

namespace {

using namespace gestmpc;
using namespace gestmpc::checkpoint;

Checkpoint plain_checkpoint() {
  Checkpoint c;
  c.params = fixture::random_params(5, 2);
  c.alpha = 0.02;
  features::StandardizationStats st;
  st.mean = {1, 2, 3, 4, 5};
  st.stddev = {0.5, 0, 1, 2, 3};
  c.standardizer = st;
  c.class_names = {"A", "B", "C", "E"};
  return c;
}

void expect_same(const model::ModelParams& a, const model::ModelParams& b) {
  const auto x = a.tensors(), y = b.tensors();
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_EQ(x[i]->rows(), y[i]->rows());
    ASSERT_EQ(x[i]->cols(), y[i]->cols());
    EXPECT_EQ(x[i]->data(), y[i]->data());
  }
}

TEST(Checkpoint, PlainRoundTripIsExact) {
  const auto c = plain_checkpoint();
  const auto bytes = serialize(c);
  const auto d = deserialize(bytes);
  EXPECT_EQ(d.mode, model::Mode::kPlain);
  EXPECT_EQ(d.alpha, 0.02);
  EXPECT_EQ(d.d_in(), 5u);
  expect_same(c.params, d.params);
  ASSERT_TRUE(d.standardizer.has_value());
  EXPECT_EQ(d.standardizer->stddev, c.standardizer->stddev);
  EXPECT_EQ(d.class_names, c.class_names);
  EXPECT_EQ(serialize(d), bytes);
}

TEST(Checkpoint, SharedRoundTripKeepsPlanes) {
  const auto p = fixture::random_params(4, 3);
  mpc::LocalContext ctx(3, 3);
  Checkpoint c;
  c.mode = model::Mode::kMpc;
  c.parties = 3;
  c.shares = model::share_params(ctx, 0, &p, 4);
  const auto d = deserialize(serialize(c));
  ASSERT_TRUE(d.shares.has_value());
  EXPECT_EQ(d.parties, 3u);
  EXPECT_FALSE(d.standardizer.has_value());
  const auto a = std::as_const(*c.shares).tensors();
  const auto b = std::as_const(*d.shares).tensors();
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i]->planes(), b[i]->planes());
    EXPECT_EQ(a[i]->scale(), b[i]->scale());
  }
  EXPECT_LE(fixture::max_abs_diff(model::reconstruct(*d.shares).w2, p.w2), 1.0 / 65536);
}

TEST(Checkpoint, RejectsCorruptInput) {
  auto bytes = serialize(plain_checkpoint());
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(deserialize(bad), Error);
  bad = bytes;
  bad[8] = 9;  // version
  EXPECT_THROW(deserialize(bad), Error);
  for (std::size_t cut : {4u, 30u, 200u}) {
    std::vector<std::uint8_t> part(bytes.begin(), bytes.begin() + static_cast<long>(cut));
    EXPECT_THROW(deserialize(part), Error) << cut;
  }
  bad = bytes;
  bad.push_back(0);
  EXPECT_THROW(deserialize(bad), Error);
  try {
    deserialize(std::vector<std::uint8_t>(3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }
}

TEST(Checkpoint, SharedModeNeedsShares) {
  Checkpoint c;
  c.mode = model::Mode::kMpc;
  c.parties = 2;
  EXPECT_THROW(serialize(c), Error);
}

TEST(Checkpoint, FileRoundTrip) {
  const auto path =
      (std::filesystem::temp_directory_path() / "gestmpc_ckpt_test.bin").string();
  const auto c = plain_checkpoint();
  save(path, c);
  expect_same(load(path).params, c.params);
  std::remove(path.c_str());
  EXPECT_THROW(load(path), Error);
}

}  // namespace
