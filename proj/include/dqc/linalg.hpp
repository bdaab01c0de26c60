// Copyright 2026 The dqcopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense and sparse complex matrices used by the gate library, the
// commutation checks and the unitary-equivalence oracle.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dqc {

using Complex = std::complex<double>;

/// Max-norm tolerance for every matrix comparison in the library.
inline constexpr double kTolerance = 1e-9;

/// 2x2 complex matrix stored row-major.
struct Matrix2 {
  std::array<Complex, 4> m{};

  constexpr Complex operator()(std::size_t row, std::size_t col) const {
    return m[row * 2 + col];
  }
  constexpr Complex& operator()(std::size_t row, std::size_t col) {
    return m[row * 2 + col];
  }

  std::span<const Complex> entries() const { return m; }

  static Matrix2 identity() { return Matrix2{{1.0, 0.0, 0.0, 1.0}}; }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  Matrix2 r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    }
  }
  return r;
}

inline Matrix2 adjoint(const Matrix2& a) {
  Matrix2 r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      r(i, j) = std::conj(a(j, i));
    }
  }
  return r;
}

inline double max_norm_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_norm_diff: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// max-norm of (U^dagger U - I).
inline double unitarity_defect(const Matrix2& u) {
  return max_norm_diff((adjoint(u) * u).entries(), Matrix2::identity().entries());
}

inline bool is_unitary(const Matrix2& u, double tol = kTolerance) {
  return unitarity_defect(u) <= tol;
}

/// True iff a = e^{i theta} b for some real theta. The phase is taken from the
/// largest-magnitude entry of `a`.
inline bool equal_up_to_global_phase(std::span<const Complex> a, std::span<const Complex> b,
                                     double tol = kTolerance) {
  if (a.size() != b.size()) return false;
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (std::abs(a[i]) > std::abs(a[pivot])) pivot = i;
  }
  if (a.empty() || std::abs(a[pivot]) <= tol) {
    return std::all_of(b.begin(), b.end(), [&](Complex z) { return std::abs(z) <= tol; });
  }
  Complex phase = b[pivot] / a[pivot];
  if (std::abs(phase) <= tol) return false;
  phase /= std::abs(phase);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] * phase - b[i]) > tol) return false;
  }
  return true;
}

/// Dense square matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix r(dim);
    for (std::size_t i = 0; i < dim; ++i) r(i, i) = 1.0;
    return r;
  }

  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  std::span<const Complex> entries() const { return data_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Square operator with sparse rows. Built by Kronecker products so that
/// 2^12-dimensional gate embeddings stay small.
class SparseOperator {
 public:
  using Row = std::vector<std::pair<std::size_t, Complex>>;

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim) : rows_(dim) {}

  explicit SparseOperator(const Matrix2& m) : rows_(2) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        if (m(i, j) != Complex{}) rows_[i].emplace_back(j, m(i, j));
      }
    }
  }

  std::size_t dim() const { return rows_.size(); }
  const Row& row(std::size_t i) const { return rows_[i]; }

  Complex at(std::size_t r, std::size_t c) const {
    for (const auto& [col, v] : rows_[r]) {
      if (col == c) return v;
    }
    return {};
  }

  friend SparseOperator kron(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator r(a.dim() * b.dim());
    for (std::size_t ra = 0; ra < a.dim(); ++ra) {
      for (std::size_t rb = 0; rb < b.dim(); ++rb) {
        auto& out = r.rows_[ra * b.dim() + rb];
        for (const auto& [ca, va] : a.rows_[ra]) {
          for (const auto& [cb, vb] : b.rows_[rb]) out.emplace_back(ca * b.dim() + cb, va * vb);
        }
      }
    }
    return r;
  }

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("SparseOperator: dimension mismatch");
    SparseOperator r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      std::map<std::size_t, Complex> acc;
      for (const auto& [c, v] : a.rows_[i]) acc[c] += v;
      for (const auto& [c, v] : b.rows_[i]) acc[c] += v;
      r.rows_[i].assign(acc.begin(), acc.end());
    }
    return r;
  }

  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("SparseOperator: dimension mismatch");
    SparseOperator r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      std::map<std::size_t, Complex> acc;
      for (const auto& [k, va] : a.rows_[i]) {
        for (const auto& [j, vb] : b.rows_[k]) acc[j] += va * vb;
      }
      r.rows_[i].assign(acc.begin(), acc.end());
    }
    return r;
  }

 private:
  std::vector<Row> rows_;
};

/// Sparse counterpart of the dense phase comparison: the phase comes from the
/// largest-magnitude entry of `a`, and every structural entry of either side
/// is checked.
inline bool equal_up_to_global_phase(const SparseOperator& a, const SparseOperator& b,
                                     double tol = kTolerance) {
  if (a.dim() != b.dim()) return false;
  std::size_t prow = 0, pcol = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (const auto& [c, v] : a.row(i)) {
      if (std::abs(v) > best) {
        best = std::abs(v);
        prow = i;
        pcol = c;
      }
    }
  }
  Complex phase = 1.0;
  if (best > tol) {
    phase = b.at(prow, pcol) / a.at(prow, pcol);
    if (std::abs(phase) <= tol) return false;
    phase /= std::abs(phase);
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::map<std::size_t, Complex> diff;
    for (const auto& [c, v] : a.row(i)) diff[c] += v * phase;
    for (const auto& [c, v] : b.row(i)) diff[c] -= v;
    for (const auto& [c, v] : diff) {
      if (std::abs(v) > tol) return false;
    }
  }
  return true;
}

}  // namespace dqc
