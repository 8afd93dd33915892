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
#include <vector>

#include "gestmpc/matrix.hpp"
#include "gestmpc/random.hpp"

// Single-bit LWE public-key encryption with additive (XOR) homomorphism.
namespace gestmpc::lwe {

struct LweParams {
  std::size_t n = 512;
  std::uint32_t q = 1u << 15;
  double sigma_key = 3.2;
  double sigma_err = 3.2;
  double sigma_enc = 3.2;

  // Throws kInvalidArgument unless n >= 1, 16 <= q <= 2^24 with q odd or a
  // power of two, and every width is finite and non-negative.
  void validate() const;
  bool operator==(const LweParams&) const = default;
};

struct SecretKey {
  LweParams params;
  std::vector<std::uint32_t> s;  // the key vector is (1, -s)
};

struct PublicKey {
  LweParams params;
  Matrix<std::uint32_t> a;       // n x n, uniform mod q
  std::vector<std::uint32_t> b;  // a * s + e mod q
};

struct KeyPair {
  SecretKey sk;
  PublicKey pk;
};

struct LweCiphertext {
  LweParams params;
  std::uint32_t c0 = 0;
  std::vector<std::uint32_t> c1;
};

KeyPair keygen(const LweParams& params, Prng& rng);

// c0 = <b, u> + e1 + m * q/2, c1 = a^T u + e2 (mod q), u from the encryption
// distribution. Throws kInvalidArgument for m outside {0, 1}.
LweCiphertext encrypt_bit(int m, const PublicKey& pk, Prng& rng);

// Rounds the phase c0 - <c1, s> to the nearest multiple of q/2.
int decrypt_bit(const LweCiphertext& ct, const SecretKey& sk);

// Centered phase in (-q/2, q/2]: the decryption noise plus m * q/2.
std::int64_t phase(const LweCiphertext& ct, const SecretKey& sk);

// Component-wise sum mod q; decrypts to the XOR of the plaintexts.
LweCiphertext add_ciphertexts(const LweCiphertext& x, const LweCiphertext& y);

}  // namespace gestmpc::lwe
