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
#include <optional>
#include <vector>

#include "gestmpc/matrix.hpp"
#include "gestmpc/mpc/context.hpp"

namespace gestmpc::mpc {

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  bool operator==(const Shape&) const = default;
};

// A rows x cols tensor held as additive shares. `scale` is the number of
// fractional bits of the encoding (0 for integer-valued tensors such as
// comparison masks, t for ordinary fixed-point values). Planes belong to
// the parties listed in `parties`, in order.
class SharedTensor {
 public:
  SharedTensor() = default;
  SharedTensor(Shape shape, int scale, std::vector<int> parties,
               std::vector<RingVec> planes);

  const Shape& shape() const { return shape_; }
  std::size_t rows() const { return shape_.rows; }
  std::size_t cols() const { return shape_.cols; }
  std::size_t size() const { return shape_.size(); }
  int scale() const { return scale_; }
  const std::vector<int>& parties() const { return parties_; }
  const std::vector<RingVec>& planes() const { return planes_; }
  std::vector<RingVec>& planes() { return planes_; }

 private:
  Shape shape_;
  int scale_ = 0;
  std::vector<int> parties_;
  std::vector<RingVec> planes_;
};

// --- construction and opening ------------------------------------------------

// Encodes `value` (present only on the owner's executor) at the context's
// precision and secret-shares it.
SharedTensor share(Context& ctx, int owner, const RealMatrix* value, Shape shape);
// Shares raw ring values at the given scale.
SharedTensor share_ring(Context& ctx, int owner, const RingVec* values, Shape shape,
                        int scale);
// A public constant as a sharing (party 0 holds the encoding, others zero).
SharedTensor from_public(Context& ctx, const RealMatrix& value);
SharedTensor zeros(Context& ctx, Shape shape, int scale);

RealMatrix open(Context& ctx, const SharedTensor& x);
RingVec open_ring(Context& ctx, const SharedTensor& x);
std::optional<RealMatrix> reveal(Context& ctx, const SharedTensor& x, int target);

// --- local (zero-round) operations ------------------------------------------

SharedTensor add(const SharedTensor& x, const SharedTensor& y);
SharedTensor sub(const SharedTensor& x, const SharedTensor& y);
SharedTensor neg(const SharedTensor& x);
SharedTensor scale_int(const SharedTensor& x, std::int64_t k);
SharedTensor add_public(const SharedTensor& x, const RealMatrix& value);
// Adds a 1 x cols row to every row.
SharedTensor add_row(const SharedTensor& x, const SharedTensor& row);
SharedTensor transpose(const SharedTensor& x);
// axis 0 sums over rows (1 x cols result); axis 1 over columns (rows x 1).
SharedTensor sum(const SharedTensor& x, int axis);
SharedTensor sum_all(const SharedTensor& x);
// Same elements in row-major order under a new shape.
SharedTensor reshape(const SharedTensor& x, Shape shape);
// Rows [begin, end).
SharedTensor slice_rows(const SharedTensor& x, std::size_t begin, std::size_t end);
// The single plane held by `party`, and the inverse: planes of the same
// tensor held by different parties, combined in party order.
SharedTensor party_slice(const SharedTensor& x, int party);
SharedTensor merge_planes(const std::vector<SharedTensor>& slices);
// Reinterprets an integer tensor at fixed-point scale (exact multiply by 2^t).
SharedTensor to_fixed(Context& ctx, const SharedTensor& x);

// --- interactive operations --------------------------------------------------

// Division by a public positive integer, within one unit of the last place.
// Local for two parties; otherwise one opening round with a truncation pair.
SharedTensor div_public(Context& ctx, const SharedTensor& x, std::uint64_t divisor);
// Drops `bits` fractional bits (scale decreases by `bits`).
SharedTensor truncate(Context& ctx, const SharedTensor& x, int bits);
// Multiplication by a public real; integers are applied exactly.
SharedTensor scale_by_public(Context& ctx, const SharedTensor& x, double k);

// Element-wise product, one opening round. The result scale is the sum of
// the operand scales, truncated back to the context precision when larger.
SharedTensor mul(Context& ctx, const SharedTensor& x, const SharedTensor& y);
SharedTensor mul(Context& ctx, const SharedTensor& x, const SharedTensor& y,
                 sharing::BeaverTriple& triple);

SharedTensor matmul(Context& ctx, const SharedTensor& x, const SharedTensor& w);
SharedTensor matmul(Context& ctx, const SharedTensor& x, const SharedTensor& w,
                    sharing::BeaverTriple& triple);

// Shared {0,1} mask (scale 0) of x > 0. Opens x' = -x + r, then evaluates the
// borrow of x' - r over XOR-shared bits of r with a six-level AND tree and
// converts the resulting bit to an arithmetic share.
inline constexpr std::uint64_t kComparisonRounds = 8;
SharedTensor gt_zero(Context& ctx, const SharedTensor& x);
SharedTensor gt_zero(Context& ctx, const SharedTensor& x,
                     sharing::ComparisonRandomness& randomness);

// mask * x + (1 - mask) * y for a shared bit mask.
SharedTensor select(Context& ctx, const SharedTensor& mask, const SharedTensor& x,
                    const SharedTensor& y);

struct LeakyRelu {
  SharedTensor activation;
  SharedTensor grad_mask;  // 1 where x > 0, alpha elsewhere (fixed point)
};
LeakyRelu leaky_relu(Context& ctx, const SharedTensor& x, double alpha);

SharedTensor mean(Context& ctx, const SharedTensor& x, int axis);

}  // namespace gestmpc::mpc
