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
#include <span>

#include "gestmpc/matrix.hpp"

// Dense kernels shared by the plaintext network and the share-plane
// arithmetic. Every parallel kernel has a serial twin with the same
// accumulation order, so results are bitwise identical for both the ring
// (exact mod 2^64) and for doubles (each output is reduced over k serially).
namespace gestmpc::kernels {

// out[n x m] = a[n x k] * b[k x m]
template <class T>
void matmul_serial(std::span<const T> a, std::span<const T> b, std::span<T> out,
                   std::size_t n, std::size_t k, std::size_t m);

template <class T>
void matmul_parallel(std::span<const T> a, std::span<const T> b, std::span<T> out,
                     std::size_t n, std::size_t k, std::size_t m);

// Picks the parallel kernel once the product is large enough to pay for
// the thread team.
template <class T>
void matmul(std::span<const T> a, std::span<const T> b, std::span<T> out,
            std::size_t n, std::size_t k, std::size_t m);

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b);

template <class T>
void transpose(std::span<const T> in, std::span<T> out, std::size_t rows,
               std::size_t cols);

template <class T>
Matrix<T> transpose(const Matrix<T>& a);

// Squared Euclidean distance of every point to every centroid, and the index
// of the nearest centroid per point (lowest index wins ties).
void nearest_centroid_serial(std::span<const double> points,
                             std::span<const double> centroids, std::size_t dim,
                             std::span<std::size_t> assignment,
                             std::span<double> distance);

void nearest_centroid_parallel(std::span<const double> points,
                               std::span<const double> centroids, std::size_t dim,
                               std::span<std::size_t> assignment,
                               std::span<double> distance);

// Number of OpenMP threads the parallel kernels will use.
int max_threads();

}  // namespace gestmpc::kernels
