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

#include "char3/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace char3 {

int binom_mod3(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  static constexpr int small[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  int r = 1;
  while (n > 0 || k > 0) {
    const int nd = static_cast<int>(n % 3), kd = static_cast<int>(k % 3);
    if (kd > nd) return 0;
    r = (r * small[nd][kd]) % 3;
    n /= 3;
    k /= 3;
  }
  return r;
}

uint64_t binom_count(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(r);
}

int factorial_mod3(long long n) {
  if (n >= 3) return 0;
  return n == 2 ? 2 : 1;
}

Index complement(size_t n, const Index& subset) {
  std::vector<bool> in(n, false);
  for (size_t i : subset) {
    if (i >= n) throw IndexOutOfRange("index " + std::to_string(i));
    in[i] = true;
  }
  Index out;
  for (size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

FqMatrix hadamard_cube_root(const FqMatrix& a) {
  return a.map([](const Fq& x) { return cube_root(x); });
}

FqMatrix hadamard_stack(const FqMatrix& a, const std::vector<HadamardExponent>& exps) {
  std::vector<FqMatrix> parts;
  for (const auto& e : exps) {
    FqMatrix p = e.cube_root ? hadamard_cube_root(a) : a;
    if (e.power != 1) p = hadamard_power(p, e.power);
    parts.push_back(std::move(p));
  }
  if (parts.empty()) return FqMatrix(a.field_ptr(), 0, a.cols());
  return vconcat(parts);
}

Fq det_elimination(const FqMatrix& a_in) {
  if (!a_in.is_square()) throw ShapeMismatch("det of non-square matrix");
  FqMatrix a = a_in;
  const size_t n = a.rows();
  const Field* f = a.field_ptr();
  Fq d = Fq::one(f);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Fq::zero(f);
    if (p != c) {
      for (size_t j = c; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    const Fq piv = a(c, c);
    d *= piv;
    const Fq pinv = piv.inv();
    for (size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Fq factor = a(i, c) * pinv;
      for (size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return d;
}

namespace {

// Ryser partial sum over Gray-code steps k in [begin, end).
Fq ryser_range(const FqMatrix& a, uint64_t begin, uint64_t end) {
  const size_t n = a.rows();
  const Field* f = a.field_ptr();
  std::vector<Fq> sums(n, Fq::zero(f));
  uint64_t gray = (begin - 1) ^ ((begin - 1) >> 1);
  for (size_t j = 0; j < n; ++j)
    if (gray & (uint64_t{1} << j))
      for (size_t i = 0; i < n; ++i) sums[i] += a(i, j);
  Fq total = Fq::zero(f);
  for (uint64_t k = begin; k < end; ++k) {
    const int bit = std::countr_zero(k);
    const uint64_t next = k ^ (k >> 1);
    const bool added = next & (uint64_t{1} << bit);
    for (size_t i = 0; i < n; ++i) {
      if (added)
        sums[i] += a(i, static_cast<size_t>(bit));
      else
        sums[i] -= a(i, static_cast<size_t>(bit));
    }
    gray = next;
    Fq prod = Fq::one(f);
    for (size_t i = 0; i < n && !prod.is_zero(); ++i) prod *= sums[i];
    if ((n - static_cast<size_t>(std::popcount(gray))) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

}  // namespace

Fq permanent_ryser(const FqMatrix& a) {
  if (a.is_square() && a.rows() < 12) return permanent_ryser_serial(a);
  return permanent_ryser_parallel(a);
}

Fq permanent_ryser_parallel(const FqMatrix& a) {
  if (!a.is_square()) throw ShapeMismatch("Ryser needs a square matrix");
  const size_t n = a.rows();
  if (n > 20) throw TooLarge("Ryser limited to n <= 20");
  if (n == 0) return Fq::one(a.field_ptr());
  const Field* f = a.field_ptr();
  const uint64_t last = uint64_t{1} << n;
  constexpr int64_t kChunks = 256;
  std::vector<Fq> partial(kChunks, Fq::zero(f));
#pragma omp parallel for schedule(dynamic)
  for (int64_t c = 0; c < kChunks; ++c) {
    const uint64_t span = (last - 1 + kChunks - 1) / kChunks;
    const uint64_t begin = 1 + static_cast<uint64_t>(c) * span;
    const uint64_t end = std::min(last, begin + span);
    if (begin < end) partial[static_cast<size_t>(c)] = ryser_range(a, begin, end);
  }
  Fq total = Fq::zero(f);
  for (const Fq& p : partial) total += p;
  return total;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(FqMatrix& a) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    for (size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Fq pinv = a(r, c).inv();
    for (size_t j = 0; j < a.cols(); ++j) a(r, j) *= pinv;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Fq factor = a(i, c);
      for (size_t j = 0; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

size_t rank(const FqMatrix& a) {
  FqMatrix b = a;
  return rref(b).size();
}

FqVec solve(const FqMatrix& a, const FqVec& b) {
  if (!a.is_square()) throw ShapeMismatch("solve needs a square system");
  if (b.size() != a.rows()) throw ShapeMismatch("right-hand side length differs");
  const size_t n = a.rows();
  FqMatrix aug = hconcat<Fq>({a, column_matrix(a.field_ptr(), b)});
  const auto piv = rref(aug);
  if (std::count_if(piv.begin(), piv.end(), [n](size_t c) { return c < n; }) != static_cast<long>(n)) throw SingularSystem("matrix is singular");
  FqVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

FqMatrix inverse(const FqMatrix& a) {
  if (!a.is_square()) throw ShapeMismatch("inverse of non-square matrix");
  const size_t n = a.rows();
  FqMatrix aug = hconcat<Fq>({a, identity<Fq>(a.field_ptr(), n)});
  const auto piv = rref(aug);
  if (std::count_if(piv.begin(), piv.end(), [n](size_t c) { return c < n; }) != static_cast<long>(n)) throw SingularSystem("matrix is singular");
  return submatrix(aug, all_indices<Fq>(n), [&] {
    Index c(n);
    for (size_t i = 0; i < n; ++i) c[i] = n + i;
    return c;
  }());
}

std::vector<FqVec> kernel_basis(const FqMatrix& a) {
  FqMatrix b = a;
  const auto piv = rref(b);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t c : piv) is_pivot[c] = true;
  std::vector<FqVec> basis;
  const Field* f = a.field_ptr();
  for (size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    FqVec v(a.cols(), Fq::zero(f));
    v[free] = Fq::one(f);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -b(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::string to_string(const FqMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < a.rows(); ++i) {
    os << (i ? "," : "") << "[";
    for (size_t j = 0; j < a.cols(); ++j) os << (j ? "," : "") << a(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace char3
