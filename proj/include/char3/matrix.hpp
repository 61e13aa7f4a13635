/* Copyright 2026 The char3lab Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CHAR3_MATRIX_HPP_
#define CHAR3_MATRIX_HPP_

#include <cstddef>
#include <utility>
#include <string>
#include <vector>

#include "char3/errors.hpp"
#include "char3/field.hpp"

namespace char3 {

/// Dense row-major matrix over a kernel ring R (Fq, Series, Dual<...>).
/// The field pointer is kept so that 0x0 and 0xm matrices still know their
/// ring.
template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field* f, size_t rows, size_t cols)
      : f_(f), rows_(rows), cols_(cols), data_(rows * cols, R::zero(f)) {}
  Matrix(const Field* f, size_t rows, size_t cols, std::vector<R> data)
      : f_(f), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw ShapeMismatch("entry count does not match shape");
  }
  /// Row-list constructor; all rows must have equal length.
  Matrix(const Field* f, const std::vector<std::vector<R>>& rows) : f_(f), rows_(rows.size()) {
    cols_ = rows.empty() ? 0 : rows.front().size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeMismatch("ragged rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  const Field* field_ptr() const { return f_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  R& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<R>& data() const { return data_; }

  std::vector<R> row(size_t i) const {
    return std::vector<R>(data_.begin() + static_cast<long>(i * cols_),
                          data_.begin() + static_cast<long>((i + 1) * cols_));
  }
  std::vector<R> col(size_t j) const {
    std::vector<R> c;
    c.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  Matrix transpose() const {
    Matrix t(f_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product inner dimensions differ");
    Matrix c(a.f_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix sum shapes differ");
    Matrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix difference shapes differ");
    Matrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  Matrix operator-() const {
    Matrix c = *this;
    for (auto& e : c.data_) e = -e;
    return c;
  }
  friend Matrix operator*(const R& s, const Matrix& a) {
    Matrix c = a;
    for (auto& e : c.data_) e = s * e;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Matrix-vector product.
  std::vector<R> apply(const std::vector<R>& v) const {
    if (v.size() != cols_) throw ShapeMismatch("matrix-vector dimensions differ");
    std::vector<R> out(rows_, R::zero(f_));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  template <class F>
  auto map(F&& fn) const {
    using S = decltype(fn(std::declval<const R&>()));
    std::vector<S> d;
    d.reserve(data_.size());
    for (const auto& e : data_) d.push_back(fn(e));
    return Matrix<S>(f_, rows_, cols_, std::move(d));
  }

 private:
  const Field* f_ = nullptr;
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<R> data_;
};

template <class R>
using Vec = std::vector<R>;

using FqMatrix = Matrix<Fq>;
using FqVec = Vec<Fq>;

}  // namespace char3

#endif  // CHAR3_MATRIX_HPP_
