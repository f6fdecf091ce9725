// Copyright 2026 The gamma-persist authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "gp/field.hpp"

namespace gp {

// Small dense matrix over an exact field K (F2 or Rat). Elimination always
// picks the lowest-index pivot, so every derived object (rank profile,
// canonical solutions, kernel bases) is reproducible bit for bit.
template <class K>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, K(0)) {}
  Matrix(std::initializer_list<std::initializer_list<int>> init)
      : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      assert(row.size() == cols_);
      for (int x : row) data_.push_back(K(x));
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const K& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const = default;

  bool is_zero() const {
    for (const K& x : data_)
      if (!(x == K(0))) return false;
    return true;
  }

  Matrix operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& a = (*this)(i, k);
        if (a == K(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix col(std::size_t j) const {
    Matrix r(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
    return r;
  }

  void set_col(std::size_t j, const Matrix& c) {
    assert(c.rows_ == rows_ && c.cols_ == 1);
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c(i, 0);
  }

  // Reduced row echelon form of the leading `limit` columns (trailing
  // columns are carried along but never host a pivot). Returns the pivot
  // column of each nonzero row, in increasing order.
  std::vector<std::size_t> rref_in_place(std::size_t limit) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < limit && row < rows_; ++c) {
      std::size_t p = row;
      while (p < rows_ && (*this)(p, c) == K(0)) ++p;
      if (p == rows_) continue;
      if (p != row)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(row, j));
      K inv = K(1) / (*this)(row, c);
      for (std::size_t j = 0; j < cols_; ++j) (*this)(row, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row) continue;
        K f = (*this)(i, c);
        if (f == K(0)) continue;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
      }
      pivots.push_back(c);
      ++row;
    }
    return pivots;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<K> data_;
};

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  assert(a.rows() == b.rows());
  Matrix<K> r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  assert(a.cols() == b.cols());
  Matrix<K> r(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) r(a.rows() + i, j) = b(i, j);
  }
  return r;
}

template <class K>
std::size_t rank(Matrix<K> m) {
  return m.rref_in_place(m.cols()).size();
}

// Canonical solution of a x = b with free variables set to zero, or nullopt
// when the system is inconsistent. b may have several columns.
template <class K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
  assert(a.rows() == b.rows());
  Matrix<K> aug = hstack(a, b);
  std::vector<std::size_t> pivots = aug.rref_in_place(a.cols());
  // A nonzero row beyond the pivot rows means b is outside the column space.
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    for (std::size_t j = a.cols(); j < aug.cols(); ++j)
      if (!(aug(i, j) == K(0))) return std::nullopt;
  Matrix<K> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[r], j) = aug(r, a.cols() + j);
  return x;
}

// Columns form a basis of ker(a), ordered by increasing free-column index.
template <class K>
Matrix<K> kernel_basis(Matrix<K> a) {
  std::vector<std::size_t> pivots = a.rref_in_place(a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::size_t nfree = a.cols() - pivots.size();
  Matrix<K> kb(a.cols(), nfree);
  std::size_t out = 0;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    kb(f, out) = K(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) kb(pivots[r], out) = -a(r, f);
    ++out;
  }
  return kb;
}

}  // namespace gp
