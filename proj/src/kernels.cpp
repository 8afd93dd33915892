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

#include "gestmpc/kernels.hpp"

#include <algorithm>
#include <limits>

#include <omp.h>

namespace gestmpc::kernels {
namespace {

constexpr std::size_t kParallelWork = 1u << 15;

template <class T>
void check_dims(std::span<const T> a, std::span<const T> b, std::span<T> out,
                std::size_t n, std::size_t k, std::size_t m) {
  require(a.size() == n * k && b.size() == k * m && out.size() == n * m,
          ErrorKind::kShapeMismatch, "matmul operand sizes disagree with dimensions");
}

template <class T>
inline void row_product(const T* a_row, const T* b, T* out_row, std::size_t k,
                        std::size_t m) {
  std::fill(out_row, out_row + m, T{});
  for (std::size_t p = 0; p < k; ++p) {
    const T av = a_row[p];
    const T* b_row = b + p * m;
    for (std::size_t j = 0; j < m; ++j) out_row[j] += av * b_row[j];
  }
}

}  // namespace

template <class T>
void matmul_serial(std::span<const T> a, std::span<const T> b, std::span<T> out,
                   std::size_t n, std::size_t k, std::size_t m) {
  check_dims(a, b, out, n, k, m);
  for (std::size_t i = 0; i < n; ++i)
    row_product(a.data() + i * k, b.data(), out.data() + i * m, k, m);
}

template <class T>
void matmul_parallel(std::span<const T> a, std::span<const T> b, std::span<T> out,
                     std::size_t n, std::size_t k, std::size_t m) {
  check_dims(a, b, out, n, k, m);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i)
    row_product(a.data() + i * k, b.data(), out.data() + i * m, k, m);
}

template <class T>
void matmul(std::span<const T> a, std::span<const T> b, std::span<T> out,
            std::size_t n, std::size_t k, std::size_t m) {
  if (n > 1 && n * k * m >= kParallelWork && max_threads() > 1)
    matmul_parallel(a, b, out, n, k, m);
  else
    matmul_serial(a, b, out, n, k, m);
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  require(a.cols() == b.rows(), ErrorKind::kShapeMismatch,
          "matmul inner dimensions disagree");
  Matrix<T> out(a.rows(), b.cols());
  matmul<T>(a.data(), b.data(), out.data(), a.rows(), a.cols(), b.cols());
  return out;
}

template <class T>
void transpose(std::span<const T> in, std::span<T> out, std::size_t rows,
               std::size_t cols) {
  require(in.size() == rows * cols && out.size() == rows * cols,
          ErrorKind::kShapeMismatch, "transpose size mismatch");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j * rows + i] = in[i * cols + j];
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  transpose<T>(a.data(), out.data(), a.rows(), a.cols());
  return out;
}

namespace {

inline void nearest_one(const double* p, std::span<const double> centroids,
                        std::size_t dim, std::size_t& best, double& best_d) {
  const std::size_t k = centroids.size() / dim;
  best = 0;
  best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < k; ++c) {
    const double* q = centroids.data() + c * dim;
    double d = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double diff = p[j] - q[j];
      d += diff * diff;
    }
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
}

}  // namespace

void nearest_centroid_serial(std::span<const double> points,
                             std::span<const double> centroids, std::size_t dim,
                             std::span<std::size_t> assignment,
                             std::span<double> distance) {
  const std::size_t n = assignment.size();
  for (std::size_t i = 0; i < n; ++i)
    nearest_one(points.data() + i * dim, centroids, dim, assignment[i], distance[i]);
}

void nearest_centroid_parallel(std::span<const double> points,
                               std::span<const double> centroids, std::size_t dim,
                               std::span<std::size_t> assignment,
                               std::span<double> distance) {
  const auto n = static_cast<std::ptrdiff_t>(assignment.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    nearest_one(points.data() + i * dim, centroids, dim, assignment[i], distance[i]);
}

int max_threads() { return omp_get_max_threads(); }

#define GESTMPC_INSTANTIATE(T)                                                     \
  template void matmul_serial<T>(std::span<const T>, std::span<const T>,           \
                                 std::span<T>, std::size_t, std::size_t,           \
                                 std::size_t);                                     \
  template void matmul_parallel<T>(std::span<const T>, std::span<const T>,         \
                                   std::span<T>, std::size_t, std::size_t,         \
                                   std::size_t);                                   \
  template void matmul<T>(std::span<const T>, std::span<const T>, std::span<T>,    \
                          std::size_t, std::size_t, std::size_t);                  \
  template Matrix<T> matmul<T>(const Matrix<T>&, const Matrix<T>&);                \
  template void transpose<T>(std::span<const T>, std::span<T>, std::size_t,        \
                             std::size_t);                                         \
  template Matrix<T> transpose<T>(const Matrix<T>&);

GESTMPC_INSTANTIATE(std::uint64_t)
GESTMPC_INSTANTIATE(double)

#undef GESTMPC_INSTANTIATE

}  // namespace gestmpc::kernels
