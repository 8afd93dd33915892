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

#include "gestmpc/mpc/tensor.hpp"

#include <cmath>
#include <string>

#include "gestmpc/error.hpp"
#include "gestmpc/kernels.hpp"

namespace gestmpc::mpc {

using fixed::as_ring;
using fixed::as_signed;
using sharing::BeaverTriple;
using sharing::ComparisonRandomness;
using sharing::TripleShape;

SharedTensor::SharedTensor(Shape shape, int scale, std::vector<int> parties,
                           std::vector<RingVec> planes)
    : shape_(shape), scale_(scale), parties_(std::move(parties)),
      planes_(std::move(planes)) {
  require(parties_.size() == planes_.size(), ErrorKind::kShapeMismatch,
          "one share plane per party expected");
  for (const auto& p : planes_)
    require(p.size() == shape_.size(), ErrorKind::kShapeMismatch,
            "share plane size does not match the tensor shape");
}

namespace {

std::string shape_str(const Shape& s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

void check_compatible(const SharedTensor& x, const SharedTensor& y, const char* op) {
  require(x.shape() == y.shape(), ErrorKind::kShapeMismatch,
          std::string(op) + ": shape " + shape_str(x.shape()) + " vs " +
              shape_str(y.shape()));
  require(x.parties() == y.parties(), ErrorKind::kShapeMismatch,
          std::string(op) + ": operands are held by different parties");
}

void check_same_scale(const SharedTensor& x, const SharedTensor& y, const char* op) {
  check_compatible(x, y, op);
  require(x.scale() == y.scale(), ErrorKind::kShapeMismatch,
          std::string(op) + ": operands carry different fixed-point scales");
}

template <class F>
SharedTensor map_planes(const SharedTensor& x, int scale, F&& f) {
  std::vector<RingVec> planes(x.planes().size());
  for (std::size_t k = 0; k < planes.size(); ++k)
    planes[k] = f(x.parties()[k], x.planes()[k]);
  return SharedTensor(x.shape(), scale, x.parties(), std::move(planes));
}

std::vector<int> local_ids(Context& ctx) {
  auto s = ctx.local_parties();
  return {s.begin(), s.end()};
}

void check_randomness_parties(const std::vector<int>& held, const SharedTensor& x) {
  require(held == x.parties(), ErrorKind::kShapeMismatch,
          "randomness planes do not match the tensor's parties");
}

}  // namespace

// --- construction -----------------------------------------------------------

SharedTensor share_ring(Context& ctx, int owner, const RingVec* values, Shape shape,
                        int scale) {
  std::span<const Ring> data;
  if (values != nullptr) {
    require(values->size() == shape.size(), ErrorKind::kShapeMismatch,
            "input does not match the declared shape");
    data = *values;
  }
  auto planes = ctx.share_input(owner, data, shape.size());
  return SharedTensor(shape, scale, local_ids(ctx), std::move(planes));
}

SharedTensor share(Context& ctx, int owner, const RealMatrix* value, Shape shape) {
  const int t = ctx.fixed_point().precision();
  if (ctx.is_local(owner)) {
    require(value != nullptr, ErrorKind::kInvalidArgument,
            "the input owner must supply a value");
    require(value->rows() == shape.rows && value->cols() == shape.cols,
            ErrorKind::kShapeMismatch, "input does not match the declared shape");
    RingVec enc(value->size());
    for (std::size_t i = 0; i < enc.size(); ++i)
      enc[i] = fixed::encode(value->data()[i], ctx.fixed_point());
    return share_ring(ctx, owner, &enc, shape, t);
  }
  return share_ring(ctx, owner, nullptr, shape, t);
}

SharedTensor zeros(Context& ctx, Shape shape, int scale) {
  const auto ids = local_ids(ctx);
  return SharedTensor(shape, scale, ids,
                      std::vector<RingVec>(ids.size(), RingVec(shape.size(), 0)));
}

SharedTensor from_public(Context& ctx, const RealMatrix& value) {
  auto out = zeros(ctx, {value.rows(), value.cols()}, ctx.fixed_point().precision());
  return add_public(out, value);
}

RingVec open_ring(Context& ctx, const SharedTensor& x) {
  Transcript::Scope scope(ctx.transcript(), "open");
  return ctx.open(x.planes());
}

RealMatrix open(Context& ctx, const SharedTensor& x) {
  const auto ring = open_ring(ctx, x);
  RealMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < ring.size(); ++i)
    out.data()[i] = fixed::decode_bits(ring[i], x.scale());
  return out;
}

std::optional<RealMatrix> reveal(Context& ctx, const SharedTensor& x, int target) {
  auto ring = ctx.reveal(x.planes(), target);
  if (!ring) return std::nullopt;
  RealMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < ring->size(); ++i)
    out.data()[i] = fixed::decode_bits((*ring)[i], x.scale());
  return out;
}

// --- local operations -------------------------------------------------------

SharedTensor add(const SharedTensor& x, const SharedTensor& y) {
  check_same_scale(x, y, "add");
  auto out = x;
  for (std::size_t k = 0; k < out.planes().size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out.planes()[k][i] += y.planes()[k][i];
  return out;
}

SharedTensor sub(const SharedTensor& x, const SharedTensor& y) {
  check_same_scale(x, y, "sub");
  auto out = x;
  for (std::size_t k = 0; k < out.planes().size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out.planes()[k][i] -= y.planes()[k][i];
  return out;
}

SharedTensor neg(const SharedTensor& x) { return scale_int(x, -1); }

SharedTensor scale_int(const SharedTensor& x, std::int64_t k) {
  const Ring kr = as_ring(k);
  return map_planes(x, x.scale(), [&](int, const RingVec& p) {
    RingVec out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * kr;
    return out;
  });
}

SharedTensor add_public(const SharedTensor& x, const RealMatrix& value) {
  require(value.rows() == x.rows() && value.cols() == x.cols(),
          ErrorKind::kShapeMismatch, "add_public: shape mismatch");
  return map_planes(x, x.scale(), [&](int party, const RingVec& p) {
    RingVec out = p;
    if (party == 0)
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += fixed::encode_bits(value.data()[i], x.scale());
    return out;
  });
}

SharedTensor add_row(const SharedTensor& x, const SharedTensor& row) {
  require(row.rows() == 1 && row.cols() == x.cols(), ErrorKind::kShapeMismatch,
          "add_row: bias must be 1 x cols");
  require(row.scale() == x.scale() && row.parties() == x.parties(),
          ErrorKind::kShapeMismatch, "add_row: incompatible operands");
  auto out = x;
  for (std::size_t k = 0; k < out.planes().size(); ++k)
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c)
        out.planes()[k][r * x.cols() + c] += row.planes()[k][c];
  return out;
}

SharedTensor transpose(const SharedTensor& x) {
  std::vector<RingVec> planes(x.planes().size(), RingVec(x.size()));
  for (std::size_t k = 0; k < planes.size(); ++k)
    kernels::transpose<Ring>(x.planes()[k], planes[k], x.rows(), x.cols());
  return SharedTensor({x.cols(), x.rows()}, x.scale(), x.parties(), std::move(planes));
}

SharedTensor sum(const SharedTensor& x, int axis) {
  require(axis == 0 || axis == 1, ErrorKind::kInvalidArgument, "axis must be 0 or 1");
  const Shape shape = axis == 0 ? Shape{1, x.cols()} : Shape{x.rows(), 1};
  std::vector<RingVec> planes(x.planes().size(), RingVec(shape.size(), 0));
  for (std::size_t k = 0; k < planes.size(); ++k)
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c)
        planes[k][axis == 0 ? c : r] += x.planes()[k][r * x.cols() + c];
  return SharedTensor(shape, x.scale(), x.parties(), std::move(planes));
}

SharedTensor sum_all(const SharedTensor& x) {
  std::vector<RingVec> planes(x.planes().size(), RingVec(1, 0));
  for (std::size_t k = 0; k < planes.size(); ++k)
    for (auto v : x.planes()[k]) planes[k][0] += v;
  return SharedTensor({1, 1}, x.scale(), x.parties(), std::move(planes));
}

SharedTensor reshape(const SharedTensor& x, Shape shape) {
  require(shape.size() == x.size(), ErrorKind::kShapeMismatch,
          "reshape must keep the element count");
  return SharedTensor(shape, x.scale(), x.parties(), x.planes());
}

SharedTensor slice_rows(const SharedTensor& x, std::size_t begin, std::size_t end) {
  require(begin <= end && end <= x.rows(), ErrorKind::kShapeMismatch,
          "row range out of bounds");
  std::vector<RingVec> planes(x.planes().size());
  for (std::size_t k = 0; k < planes.size(); ++k)
    planes[k].assign(x.planes()[k].begin() + static_cast<std::ptrdiff_t>(begin * x.cols()),
                     x.planes()[k].begin() + static_cast<std::ptrdiff_t>(end * x.cols()));
  return SharedTensor({end - begin, x.cols()}, x.scale(), x.parties(), std::move(planes));
}

SharedTensor party_slice(const SharedTensor& x, int party) {
  for (std::size_t k = 0; k < x.parties().size(); ++k)
    if (x.parties()[k] == party)
      return SharedTensor(x.shape(), x.scale(), {party}, {x.planes()[k]});
  fail(ErrorKind::kInvalidArgument,
       "tensor holds no plane for party " + std::to_string(party));
}

SharedTensor merge_planes(const std::vector<SharedTensor>& slices) {
  require(!slices.empty(), ErrorKind::kInvalidArgument, "nothing to merge");
  std::vector<int> parties;
  std::vector<RingVec> planes;
  for (const auto& s : slices) {
    require(s.shape() == slices[0].shape() && s.scale() == slices[0].scale(),
            ErrorKind::kShapeMismatch, "merged slices differ in shape or scale");
    parties.insert(parties.end(), s.parties().begin(), s.parties().end());
    planes.insert(planes.end(), s.planes().begin(), s.planes().end());
  }
  return SharedTensor(slices[0].shape(), slices[0].scale(), std::move(parties),
                      std::move(planes));
}

SharedTensor to_fixed(Context& ctx, const SharedTensor& x) {
  const int t = ctx.fixed_point().precision();
  require(x.scale() <= t, ErrorKind::kInvalidArgument,
          "to_fixed: tensor already carries more fractional bits");
  auto out = scale_int(x, std::int64_t{1} << (t - x.scale()));
  return SharedTensor(out.shape(), t, out.parties(), std::move(out.planes()));
}

// --- division and truncation -------------------------------------------------

SharedTensor div_public(Context& ctx, const SharedTensor& x, std::uint64_t divisor) {
  require(divisor > 0 && divisor < (std::uint64_t{1} << 40), ErrorKind::kInvalidArgument,
          "public divisor out of range");
  if (divisor == 1) return x;
  const auto d = static_cast<std::int64_t>(divisor);
  if (ctx.party_count() == 2) {
    // Each party divides its own share; the result is off by at most one
    // unit unless the two signed shares wrap when summed, which happens with
    // probability about |x| / 2^64.
    return map_planes(x, x.scale(), [&](int party, const RingVec& p) {
      RingVec out(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = party == 0 ? as_ring(fixed::floor_div(as_signed(p[i]), d))
                            : as_ring(-fixed::floor_div(-as_signed(p[i]), d));
      }
      return out;
    });
  }
  Transcript::Scope scope(ctx.transcript(), "truncate");
  auto pair = ctx.truncation(x.size(), divisor);
  ctx.transcript().record_truncation();
  check_randomness_parties(pair.parties, x);
  // Offset keeping x + K non-negative for |x| < 2^50; a multiple of d.
  const std::uint64_t k_offset =
      divisor * (((std::uint64_t{1} << sharing::TruncationPair::kInputBits) + divisor - 1) /
                 divisor);
  std::vector<RingVec> masked(x.planes().size(), RingVec(x.size()));
  for (std::size_t k = 0; k < masked.size(); ++k)
    for (std::size_t i = 0; i < x.size(); ++i)
      masked[k][i] = x.planes()[k][i] + pair.mask[k][i] + (x.parties()[k] == 0 ? k_offset : 0);
  const RingVec c = ctx.open(masked);
  std::vector<RingVec> planes(x.planes().size(), RingVec(x.size()));
  for (std::size_t k = 0; k < planes.size(); ++k)
    for (std::size_t i = 0; i < x.size(); ++i) {
      Ring v = Ring{0} - pair.mask_div[k][i];
      if (x.parties()[k] == 0) v += c[i] / divisor - k_offset / divisor;
      planes[k][i] = v;
    }
  return SharedTensor(x.shape(), x.scale(), x.parties(), std::move(planes));
}

SharedTensor truncate(Context& ctx, const SharedTensor& x, int bits) {
  require(bits >= 0 && bits <= x.scale(), ErrorKind::kInvalidArgument,
          "cannot drop more fractional bits than the tensor carries");
  if (bits == 0) return x;
  auto out = div_public(ctx, x, std::uint64_t{1} << bits);
  return SharedTensor(out.shape(), x.scale() - bits, out.parties(),
                      std::move(out.planes()));
}

SharedTensor scale_by_public(Context& ctx, const SharedTensor& x, double k) {
  if (std::nearbyint(k) == k && std::fabs(k) < 0x1.0p31)
    return scale_int(x, static_cast<std::int64_t>(k));
  Transcript::Scope scope(ctx.transcript(), "scale_by_public");
  const int t = ctx.fixed_point().precision();
  const auto enc = as_signed(fixed::encode(k, ctx.fixed_point()));
  auto scaled = scale_int(x, enc);
  scaled = SharedTensor(scaled.shape(), x.scale() + t, scaled.parties(),
                        std::move(scaled.planes()));
  return truncate(ctx, scaled, t);
}

// --- multiplication -----------------------------------------------------------

namespace {

SharedTensor rescale_product(Context& ctx, SharedTensor z) {
  const int t = ctx.fixed_point().precision();
  if (z.scale() > t) return truncate(ctx, z, z.scale() - t);
  return z;
}

void claim(BeaverTriple& triple, const TripleShape& want, const SharedTensor& x) {
  require(!triple.used, ErrorKind::kRandomnessReuse,
          "Beaver triple #" + std::to_string(triple.serial) + " was already consumed");
  require(triple.shape == want, ErrorKind::kShapeMismatch,
          "Beaver triple shape does not match the operands");
  check_randomness_parties(triple.parties, x);
  triple.used = true;
}

}  // namespace

SharedTensor mul(Context& ctx, const SharedTensor& x, const SharedTensor& y) {
  check_compatible(x, y, "mul");
  auto triple = ctx.triple(TripleShape::elementwise(x.rows(), x.cols()));
  return mul(ctx, x, y, triple);
}

SharedTensor mul(Context& ctx, const SharedTensor& x, const SharedTensor& y,
                 BeaverTriple& triple) {
  check_compatible(x, y, "mul");
  Transcript::Scope scope(ctx.transcript(), "mul");
  claim(triple, TripleShape::elementwise(x.rows(), x.cols()), x);
  const std::size_t n = x.size();
  const std::size_t planes = x.planes().size();

  // Open epsilon = x - a and delta = y - b together in a single round.
  std::vector<RingVec> masked(planes, RingVec(2 * n));
  for (std::size_t k = 0; k < planes; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      masked[k][i] = x.planes()[k][i] - triple.a[k][i];
      masked[k][n + i] = y.planes()[k][i] - triple.b[k][i];
    }
  const RingVec opened = ctx.open(masked);

  std::vector<RingVec> z(planes, RingVec(n));
  for (std::size_t k = 0; k < planes; ++k) {
    const bool lead = x.parties()[k] == 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Ring e = opened[i], d = opened[n + i];
      Ring v = triple.c[k][i] + e * triple.b[k][i] + d * triple.a[k][i];
      if (lead) v += e * d;
      z[k][i] = v;
    }
  }
  return rescale_product(
      ctx, SharedTensor(x.shape(), x.scale() + y.scale(), x.parties(), std::move(z)));
}

SharedTensor matmul(Context& ctx, const SharedTensor& x, const SharedTensor& w) {
  require(x.cols() == w.rows(), ErrorKind::kShapeMismatch,
          "matmul: inner dimensions " + shape_str(x.shape()) + " * " +
              shape_str(w.shape()));
  auto triple = ctx.triple(TripleShape::matmul(x.rows(), x.cols(), w.cols()));
  return matmul(ctx, x, w, triple);
}

SharedTensor matmul(Context& ctx, const SharedTensor& x, const SharedTensor& w,
                    BeaverTriple& triple) {
  require(x.cols() == w.rows(), ErrorKind::kShapeMismatch,
          "matmul: inner dimensions " + shape_str(x.shape()) + " * " +
              shape_str(w.shape()));
  require(x.parties() == w.parties(), ErrorKind::kShapeMismatch,
          "matmul: operands are held by different parties");
  Transcript::Scope scope(ctx.transcript(), "matmul");
  const std::size_t n = x.rows(), k = x.cols(), m = w.cols();
  claim(triple, TripleShape::matmul(n, k, m), x);
  const std::size_t planes = x.planes().size();

  std::vector<RingVec> masked(planes, RingVec(n * k + k * m));
  for (std::size_t p = 0; p < planes; ++p) {
    for (std::size_t i = 0; i < n * k; ++i)
      masked[p][i] = x.planes()[p][i] - triple.a[p][i];
    for (std::size_t i = 0; i < k * m; ++i)
      masked[p][n * k + i] = w.planes()[p][i] - triple.b[p][i];
  }
  const RingVec opened = ctx.open(masked);
  const std::span<const Ring> eps(opened.data(), n * k);
  const std::span<const Ring> del(opened.data() + n * k, k * m);

  std::vector<RingVec> z(planes, RingVec(n * m));
  RingVec tmp(n * m);
  for (std::size_t p = 0; p < planes; ++p) {
    z[p] = triple.c[p];
    kernels::matmul<Ring>(eps, triple.b[p], tmp, n, k, m);
    for (std::size_t i = 0; i < n * m; ++i) z[p][i] += tmp[i];
    kernels::matmul<Ring>(triple.a[p], del, tmp, n, k, m);
    for (std::size_t i = 0; i < n * m; ++i) z[p][i] += tmp[i];
    if (x.parties()[p] == 0) {
      kernels::matmul<Ring>(eps, del, tmp, n, k, m);
      for (std::size_t i = 0; i < n * m; ++i) z[p][i] += tmp[i];
    }
  }
  return rescale_product(
      ctx, SharedTensor({n, m}, x.scale() + w.scale(), x.parties(), std::move(z)));
}

// --- comparison -----------------------------------------------------------------

SharedTensor gt_zero(Context& ctx, const SharedTensor& x) {
  auto randomness = ctx.comparison(x.size());
  return gt_zero(ctx, x, randomness);
}

SharedTensor gt_zero(Context& ctx, const SharedTensor& x, ComparisonRandomness& cr) {
  require(!cr.used, ErrorKind::kRandomnessReuse,
          "comparison randomness #" + std::to_string(cr.serial) + " was already consumed");
  require(cr.count == x.size(), ErrorKind::kRandomnessExhausted,
          "comparison randomness covers " + std::to_string(cr.count) +
              " elements, need " + std::to_string(x.size()));
  check_randomness_parties(cr.parties, x);
  cr.used = true;
  Transcript::Scope scope(ctx.transcript(), "gt_zero");
  ctx.transcript().record_comparison();

  constexpr Ring kTop = Ring{1} << 63;
  const std::size_t n = x.size();
  const std::size_t planes = x.planes().size();
  auto lead = [&](std::size_t k) { return x.parties()[k] == 0; };

  // [x > 0] is the sign bit of z = -x. Open c = z + r.
  std::vector<RingVec> masked(planes, RingVec(n));
  for (std::size_t k = 0; k < planes; ++k)
    for (std::size_t i = 0; i < n; ++i)
      masked[k][i] = Ring{0} - x.planes()[k][i] + cr.mask[k][i];
  const RingVec c = ctx.open(masked);

  // Borrow of (c - r) out of the low 63 bits: per bit, generate g = r & ~c
  // and equal e = ~(r ^ c), packed 64 to a word. Bit 63 is padded neutral.
  std::vector<RingVec> g(planes, RingVec(n)), e(planes, RingVec(n));
  for (std::size_t k = 0; k < planes; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Ring rb = cr.mask_bits[k][i];
      g[k][i] = rb & ~c[i] & ~kTop;
      e[k][i] = (lead(k) ? rb ^ ~c[i] : rb) & ~kTop;
      if (lead(k)) e[k][i] |= kTop;
    }

  // Combine adjacent blocks: G = G_hi ^ (E_hi & G_lo), E = E_hi & E_lo.
  for (std::size_t level = 0; level < ComparisonRandomness::kLevels; ++level) {
    const unsigned w = 1u << level;
    const std::size_t gate1 = (2 * level) * n, gate2 = (2 * level + 1) * n;
    std::vector<RingVec> opened_in(planes, RingVec(4 * n));
    for (std::size_t k = 0; k < planes; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        const Ring eh = e[k][i] >> w;
        opened_in[k][i] = eh ^ cr.and_a[k][gate1 + i];
        opened_in[k][n + i] = g[k][i] ^ cr.and_b[k][gate1 + i];
        opened_in[k][2 * n + i] = eh ^ cr.and_a[k][gate2 + i];
        opened_in[k][3 * n + i] = e[k][i] ^ cr.and_b[k][gate2 + i];
      }
    const RingVec d = ctx.open_xor(opened_in);
    for (std::size_t k = 0; k < planes; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        const Ring d1 = d[i], f1 = d[n + i], d2 = d[2 * n + i], f2 = d[3 * n + i];
        Ring and1 = cr.and_c[k][gate1 + i] ^ (d1 & cr.and_b[k][gate1 + i]) ^
                    (f1 & cr.and_a[k][gate1 + i]);
        Ring and2 = cr.and_c[k][gate2 + i] ^ (d2 & cr.and_b[k][gate2 + i]) ^
                    (f2 & cr.and_a[k][gate2 + i]);
        if (lead(k)) {
          and1 ^= d1 & f1;
          and2 ^= d2 & f2;
        }
        g[k][i] = (g[k][i] >> w) ^ and1;
        e[k][i] = and2;
      }
  }

  // sign(z) = c63 ^ r63 ^ borrow, still XOR-shared; mask with rho and open.
  std::vector<RingVec> bit(planes, RingVec(n));
  for (std::size_t k = 0; k < planes; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      Ring b = ((cr.mask_bits[k][i] >> 63) ^ g[k][i]) & 1u;
      if (lead(k)) b ^= c[i] >> 63;
      bit[k][i] = b ^ (cr.flip_bits[k][i] & 1u);
    }
  const RingVec f = ctx.open_xor(bit);

  std::vector<RingVec> out(planes, RingVec(n));
  for (std::size_t k = 0; k < planes; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Ring rho = cr.flip[k][i];
      if (f[i] & 1u)
        out[k][i] = (lead(k) ? Ring{1} : Ring{0}) - rho;
      else
        out[k][i] = rho;
    }
  return SharedTensor(x.shape(), 0, x.parties(), std::move(out));
}

SharedTensor select(Context& ctx, const SharedTensor& mask, const SharedTensor& x,
                    const SharedTensor& y) {
  check_compatible(mask, x, "select");
  check_same_scale(x, y, "select");
  require(mask.scale() == 0, ErrorKind::kInvalidArgument,
          "select: mask must be an integer-scale bit tensor");
  Transcript::Scope scope(ctx.transcript(), "select");
  return add(y, mul(ctx, mask, sub(x, y)));
}

LeakyRelu leaky_relu(Context& ctx, const SharedTensor& x, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, ErrorKind::kInvalidArgument,
          "leak coefficient must lie in (0, 1)");
  const int t = ctx.fixed_point().precision();
  require(x.scale() == t, ErrorKind::kInvalidArgument,
          "leaky_relu expects a fixed-point tensor");
  Transcript::Scope scope(ctx.transcript(), "leaky_relu");
  const auto mask = gt_zero(ctx, x);
  // grad = alpha + (1 - alpha) * mask, exact since mask is an integer bit.
  const Ring alpha_enc = fixed::encode(alpha, ctx.fixed_point());
  const Ring slope = ctx.fixed_point().unit() - alpha_enc;
  auto grad = map_planes(mask, t, [&](int party, const RingVec& p) {
    RingVec out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      out[i] = p[i] * slope + (party == 0 ? alpha_enc : 0);
    return out;
  });
  auto activation = mul(ctx, x, grad);
  return {std::move(activation), std::move(grad)};
}

SharedTensor mean(Context& ctx, const SharedTensor& x, int axis) {
  require(axis == 0 || axis == 1, ErrorKind::kInvalidArgument, "axis must be 0 or 1");
  const std::size_t count = axis == 0 ? x.rows() : x.cols();
  require(count > 0, ErrorKind::kInvalidArgument, "mean over an empty axis");
  Transcript::Scope scope(ctx.transcript(), "mean");
  return div_public(ctx, sum(x, axis), count);
}

}  // namespace gestmpc::mpc
