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

#include "gestmpc/lwe.hpp"

#include <bit>
#include <cmath>

#include "gestmpc/error.hpp"

namespace gestmpc::lwe {

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t q) {
  const auto m = static_cast<std::int64_t>(q);
  return static_cast<std::uint32_t>(((v % m) + m) % m);
}

std::vector<std::uint32_t> gaussian_vector(std::size_t n, double sigma, std::uint32_t q,
                                           Prng& rng) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = reduce(rng.discrete_gaussian(sigma), q);
  return v;
}

std::uint32_t dot(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y,
                  std::uint32_t q) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::uint64_t{x[i]} * y[i];
  return static_cast<std::uint32_t>(acc % q);
}

}  // namespace

void LweParams::validate() const {
  require(n >= 1, ErrorKind::kInvalidArgument, "LWE dimension must be positive");
  require(q >= 16 && q <= (1u << 24), ErrorKind::kInvalidArgument,
          "LWE modulus must lie in [16, 2^24]");
  require((q & 1u) == 1u || std::has_single_bit(q), ErrorKind::kInvalidArgument,
          "LWE modulus must be odd or a power of two");
  for (double s : {sigma_key, sigma_err, sigma_enc})
    require(std::isfinite(s) && s >= 0.0, ErrorKind::kInvalidArgument,
            "noise widths must be finite and non-negative");
}

KeyPair keygen(const LweParams& params, Prng& rng) {
  params.validate();
  const std::size_t n = params.n;
  const std::uint32_t q = params.q;
  KeyPair kp;
  kp.sk.params = params;
  kp.pk.params = params;
  kp.pk.a = Matrix<std::uint32_t>(n, n);
  for (auto& x : kp.pk.a.data()) x = static_cast<std::uint32_t>(rng.below(q));
  kp.sk.s = gaussian_vector(n, params.sigma_key, q, rng);
  const auto e = gaussian_vector(n, params.sigma_err, q, rng);
  kp.pk.b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = e[i];
    const auto row = kp.pk.a.row(i);
    for (std::size_t j = 0; j < n; ++j) acc += std::uint64_t{row[j]} * kp.sk.s[j];
    kp.pk.b[i] = static_cast<std::uint32_t>(acc % q);
  }
  return kp;
}

LweCiphertext encrypt_bit(int m, const PublicKey& pk, Prng& rng) {
  require(m == 0 || m == 1, ErrorKind::kInvalidArgument, "plaintext must be a bit");
  const std::size_t n = pk.params.n;
  const std::uint32_t q = pk.params.q;
  const auto u = gaussian_vector(n, pk.params.sigma_enc, q, rng);
  const auto e1 = reduce(rng.discrete_gaussian(pk.params.sigma_err), q);
  const auto e2 = gaussian_vector(n, pk.params.sigma_err, q, rng);

  LweCiphertext ct;
  ct.params = pk.params;
  const std::uint64_t half = q / 2;
  ct.c0 = static_cast<std::uint32_t>(
      (std::uint64_t{dot(pk.b, u, q)} + e1 + static_cast<std::uint64_t>(m) * half) % q);
  std::vector<std::uint64_t> acc(e2.begin(), e2.end());
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = pk.a.row(i);
    const std::uint64_t ui = u[i];
    for (std::size_t j = 0; j < n; ++j) acc[j] += row[j] * ui;
  }
  ct.c1.resize(n);
  for (std::size_t j = 0; j < n; ++j) ct.c1[j] = static_cast<std::uint32_t>(acc[j] % q);
  return ct;
}

std::int64_t phase(const LweCiphertext& ct, const SecretKey& sk) {
  require(ct.params == sk.params && ct.c1.size() == sk.s.size(),
          ErrorKind::kInvalidArgument, "ciphertext and key use different parameters");
  const std::uint32_t q = sk.params.q;
  const std::uint32_t v = reduce(std::int64_t{ct.c0} - dot(ct.c1, sk.s, q), q);
  const auto sv = static_cast<std::int64_t>(v);
  return sv > static_cast<std::int64_t>(q / 2) ? sv - q : sv;
}

int decrypt_bit(const LweCiphertext& ct, const SecretKey& sk) {
  const std::uint32_t q = sk.params.q;
  std::int64_t v = phase(ct, sk);
  if (v < 0) v += q;
  // Nearest of 0, q/2 and q; the outer two both decode to 0.
  const double k = std::round(static_cast<double>(v) / (static_cast<double>(q) / 2.0));
  return static_cast<int>(static_cast<std::int64_t>(k) % 2);
}

LweCiphertext add_ciphertexts(const LweCiphertext& x, const LweCiphertext& y) {
  require(x.params == y.params && x.c1.size() == y.c1.size(),
          ErrorKind::kInvalidArgument, "ciphertexts use different parameters");
  const std::uint32_t q = x.params.q;
  LweCiphertext out;
  out.params = x.params;
  out.c0 = static_cast<std::uint32_t>((std::uint64_t{x.c0} + y.c0) % q);
  out.c1.resize(x.c1.size());
  for (std::size_t i = 0; i < out.c1.size(); ++i)
    out.c1[i] = static_cast<std::uint32_t>((std::uint64_t{x.c1[i]} + y.c1[i]) % q);
  return out;
}

}  // namespace gestmpc::lwe
