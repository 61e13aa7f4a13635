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

#ifndef CHAR3_LINALG_HPP_
#define CHAR3_LINALG_HPP_

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "char3/errors.hpp"
#include "char3/field.hpp"
#include "char3/matrix.hpp"

namespace char3 {

using Index = std::vector<size_t>;

// ---------------------------------------------------------------------------
// Small combinatorial helpers.

/// 1 if u == 0 else 0.
inline int delta(long long u) { return u == 0 ? 1 : 0; }

/// Binomial coefficient reduced mod 3 (Lucas' theorem); 0 for k < 0 or k > n.
int binom_mod3(long long n, long long k);

/// Exact binomial coefficient as a 64-bit count (saturates at UINT64_MAX).
uint64_t binom_count(uint64_t n, uint64_t k);

/// (n)! mod 3 as an integer 0..2.
int factorial_mod3(long long n);

/// Indices 0..n-1 not in `subset` (subset may be unsorted).
Index complement(size_t n, const Index& subset);

/// u_I, with duplicated coordinates for multiset I.
template <class R>
Vec<R> select(const Vec<R>& u, const Index& idx) {
  Vec<R> out;
  out.reserve(idx.size());
  for (size_t i : idx) {
    if (i >= u.size()) throw IndexOutOfRange("vector index " + std::to_string(i));
    out.push_back(u[i]);
  }
  return out;
}

template <class R>
Vec<R> concat(std::initializer_list<Vec<R>> parts) {
  Vec<R> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// u (x) 1_k: every coordinate repeated k times consecutively.
template <class R>
Vec<R> repeat_each(const Vec<R>& u, size_t k) {
  Vec<R> out;
  out.reserve(u.size() * k);
  for (const auto& x : u)
    for (size_t i = 0; i < k; ++i) out.push_back(x);
  return out;
}

template <class R>
Vec<R> filled(const Field* f, size_t n, const R& value) {
  (void)f;
  return Vec<R>(n, value);
}

template <class R>
Vec<R> ones(const Field* f, size_t n) {
  return Vec<R>(n, R::one(f));
}

// ---------------------------------------------------------------------------
// Structural operators.

/// A^{(I,J)}; duplicated indices repeat rows/columns.
template <class R>
Matrix<R> submatrix(const Matrix<R>& a, const Index& rows, const Index& cols) {
  Matrix<R> s(a.field_ptr(), rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= a.rows()) throw IndexOutOfRange("row " + std::to_string(rows[i]));
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] >= a.cols()) throw IndexOutOfRange("column " + std::to_string(cols[j]));
      s(i, j) = a(rows[i], cols[j]);
    }
  }
  return s;
}

template <class R>
Index all_indices(size_t n) {
  Index idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

/// (A1 | A2 | ...); all parts must share the row count.
template <class R>
Matrix<R> hconcat(const std::vector<Matrix<R>>& parts) {
  if (parts.empty()) throw ShapeMismatch("hconcat of nothing");
  const size_t rows = parts.front().rows();
  size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw ShapeMismatch("hconcat row counts differ");
    cols += p.cols();
  }
  Matrix<R> out(parts.front().field_ptr(), rows, cols);
  size_t off = 0;
  for (const auto& p : parts) {
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < p.cols(); ++j) out(i, off + j) = p(i, j);
    off += p.cols();
  }
  return out;
}

/// Vertical stacking; all parts must share the column count.
template <class R>
Matrix<R> vconcat(const std::vector<Matrix<R>>& parts) {
  if (parts.empty()) throw ShapeMismatch("vconcat of nothing");
  const size_t cols = parts.front().cols();
  size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw ShapeMismatch("vconcat column counts differ");
    rows += p.rows();
  }
  Matrix<R> out(parts.front().field_ptr(), rows, cols);
  size_t off = 0;
  for (const auto& p : parts) {
    for (size_t i = 0; i < p.rows(); ++i)
      for (size_t j = 0; j < cols; ++j) out(off + i, j) = p(i, j);
    off += p.rows();
  }
  return out;
}

template <class R>
Matrix<R> column_matrix(const Field* f, const Vec<R>& v) {
  return Matrix<R>(f, v.size(), 1, v);
}

template <class R>
Matrix<R> row_matrix(const Field* f, const Vec<R>& v) {
  return Matrix<R>(f, 1, v.size(), v);
}

template <class R>
Matrix<R> diag(const Field* f, const Vec<R>& rho) {
  Matrix<R> d(f, rho.size(), rho.size());
  for (size_t i = 0; i < rho.size(); ++i) d(i, i) = rho[i];
  return d;
}

/// tau_{n x m}: every entry equals tau.
template <class R>
Matrix<R> constant_matrix(const Field* f, const R& tau, size_t n, size_t m) {
  return Matrix<R>(f, n, m, std::vector<R>(n * m, tau));
}

template <class R>
Matrix<R> identity(const Field* f, size_t n) {
  Matrix<R> d(f, n, n);
  for (size_t i = 0; i < n; ++i) d(i, i) = R::one(f);
  return d;
}

/// {sign(i - j)}_{n x n} with -1 represented as 2.
template <class R>
Matrix<R> sign_matrix(const Field* f, size_t n) {
  Matrix<R> s(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) s(i, j) = R::from_int(f, i > j ? 1 : -1);
  return s;
}

/// Sum over columns of the product of the column's entries.
template <class R>
R scal(const Matrix<R>& a) {
  const Field* f = a.field_ptr();
  R total = R::zero(f);
  for (size_t j = 0; j < a.cols(); ++j) {
    R p = R::one(f);
    for (size_t i = 0; i < a.rows(); ++i) p *= a(i, j);
    total += p;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Hadamard operations.

template <class R>
Matrix<R> hadamard(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("Hadamard product shapes differ");
  Matrix<R> c = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
  return c;
}

/// Entrywise integer power; negative powers need invertible entries.
template <class R>
Matrix<R> hadamard_power(const Matrix<R>& a, long long h) {
  return a.map([h](const R& x) { return x.pow(h); });
}

/// A^{.(1/3)}: entrywise cube root (inverse Frobenius).
FqMatrix hadamard_cube_root(const FqMatrix& a);

/// One exponent of a vector-degree: an integer power or the 1/3 power.
struct HadamardExponent {
  long long power = 1;
  bool cube_root = false;
  static HadamardExponent third() { return {1, true}; }
};

/// A^{.(h1,...,hq)}: the Hadamard powers stacked vertically.
FqMatrix hadamard_stack(const FqMatrix& a, const std::vector<HadamardExponent>& exps);

template <class R>
Matrix<R> hadamard_stack_int(const Matrix<R>& a, const std::vector<long long>& exps) {
  std::vector<Matrix<R>> parts;
  for (long long h : exps) parts.push_back(hadamard_power(a, h));
  if (parts.empty()) return Matrix<R>(a.field_ptr(), 0, a.cols());
  return vconcat(parts);
}

// ---------------------------------------------------------------------------
// Cauchy / Vandermonde / pol.

/// C(x,y) = {1/(x_i - y_j)}. Throws CoincidentNodes naming the colliding pair.
template <class R>
Matrix<R> cauchy(const Field* f, const Vec<R>& x, const Vec<R>& y) {
  Matrix<R> c(f, x.size(), y.size());
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) {
      const R d = x[i] - y[j];
      if (d.is_zero())
        throw CoincidentNodes("x[" + std::to_string(i) + "] == y[" + std::to_string(j) + "]");
      c(i, j) = d.inv();
    }
  return c;
}

/// Van^{[h]}(t): h x dim(t), row k holds t_j^k. Default h = dim(t).
template <class R>
Matrix<R> vandermonde(const Field* f, const Vec<R>& t, std::optional<size_t> h = std::nullopt) {
  const size_t height = h.value_or(t.size());
  Matrix<R> v(f, height, t.size());
  for (size_t j = 0; j < t.size(); ++j) {
    R p = R::one(f);
    for (size_t k = 0; k < height; ++k) {
      v(k, j) = p;
      p *= t[j];
    }
  }
  return v;
}

/// Van^{[h]'}(t): column j differentiated by t_j, so row k is k t_j^{k-1}.
template <class R>
Matrix<R> vandermonde_derivative(const Field* f, const Vec<R>& t, size_t h) {
  Matrix<R> v(f, h, t.size());
  for (size_t j = 0; j < t.size(); ++j) {
    R p = R::one(f);  // t_j^{k-1}
    for (size_t k = 1; k < h; ++k) {
      v(k, j) = R::from_int(f, static_cast<long long>(k)) * p;
      p *= t[j];
    }
  }
  return v;
}

/// W(t): two stacked Vandermonde blocks of heights floor(d/2), ceil(d/2).
template <class R>
Matrix<R> w_matrix(const Field* f, const Vec<R>& t) {
  const size_t d = t.size();
  return vconcat<R>({vandermonde(f, t, d / 2), vandermonde(f, t, d - d / 2)});
}

/// prod_i prod_j (u_i - v_j).
template <class R>
R pol(const Field* f, const Vec<R>& u, const Vec<R>& v) {
  R p = R::one(f);
  for (const auto& a : u)
    for (const auto& b : v) p *= a - b;
  return p;
}

/// d/dtau prod_j (tau - v_j) at tau.
template <class R>
R pol_d1(const Field* f, const R& tau, const Vec<R>& v) {
  R total = R::zero(f);
  for (size_t k = 0; k < v.size(); ++k) {
    R p = R::one(f);
    for (size_t j = 0; j < v.size(); ++j)
      if (j != k) p *= tau - v[j];
    total += p;
  }
  return total;
}

/// d^2/dtau^2 prod_j (tau - v_j) at tau.
template <class R>
R pol_d2(const Field* f, const R& tau, const Vec<R>& v) {
  R total = R::zero(f);
  for (size_t a = 0; a < v.size(); ++a)
    for (size_t b = 0; b < v.size(); ++b) {
      if (a == b) continue;
      R p = R::one(f);
      for (size_t j = 0; j < v.size(); ++j)
        if (j != a && j != b) p *= tau - v[j];
      total += p;
    }
  return total;
}

// ---------------------------------------------------------------------------
// Determinants, permanents, Pfaffians.

/// Division-free determinant by Laplace expansion memoized over column
/// subsets: O(2^n n) ring operations, exact over any commutative ring.
template <class R>
R det_expansion(const Matrix<R>& a) {
  if (!a.is_square()) throw ShapeMismatch("det of non-square matrix");
  const size_t n = a.rows();
  const Field* f = a.field_ptr();
  if (n == 0) return R::one(f);
  if (n > 18) throw TooLarge("division-free det limited to n <= 18");
  std::vector<R> dp(size_t{1} << n, R::zero(f));
  dp[0] = R::one(f);
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    const size_t r = static_cast<size_t>(std::popcount(mask)) - 1;
    R acc = R::zero(f);
    size_t pos = 0;
    for (size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const uint32_t rest = mask & ~(1u << j);
      if (!a(r, j).is_zero() && !dp[rest].is_zero()) {
        // Expansion along row r over the columns in mask: sign (-1)^{r+pos}.
        if ((r + pos) % 2 == 0)
          acc += a(r, j) * dp[rest];
        else
          acc -= a(r, j) * dp[rest];
      }
      ++pos;
    }
    dp[mask] = acc;
  }
  return dp[(1u << n) - 1];
}

/// Gaussian elimination over the field.
Fq det_elimination(const FqMatrix& a);

template <class R>
R det(const Matrix<R>& a) {
  if constexpr (std::is_same_v<R, Fq>)
    return det_elimination(a);
  else
    return det_expansion(a);
}

/// Sum over injective maps rows -> columns of the entry product. Requires
/// rows <= cols <= 9.
template <class R>
R permanent_naive(const Matrix<R>& a) {
  const size_t n = a.rows(), m = a.cols();
  const Field* f = a.field_ptr();
  if (n > m) throw ShapeMismatch("permanent_naive needs rows <= cols");
  if (m > 9) throw TooLarge("permanent_naive limited to 9 columns");
  R total = R::zero(f);
  std::vector<size_t> choice(n);
  // Iterative DFS over partial injections.
  struct Frame {
    size_t row;
    uint32_t used;
    R prod;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0, R::one(f)});
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    if (fr.row == n) {
      total += fr.prod;
      continue;
    }
    for (size_t j = m; j-- > 0;) {
      if (fr.used & (1u << j)) continue;
      const R& e = a(fr.row, j);
      if (e.is_zero()) continue;
      stack.push_back({fr.row + 1, fr.used | (1u << j), fr.prod * e});
    }
  }
  return total;
}

/// Ryser inclusion-exclusion with Gray-code row sums; serial reference.
/// per(A) = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij.
template <class R>
R permanent_ryser_serial(const Matrix<R>& a) {
  if (!a.is_square()) throw ShapeMismatch("Ryser needs a square matrix");
  const size_t n = a.rows();
  const Field* f = a.field_ptr();
  if (n == 0) return R::one(f);
  if (n > 20) throw TooLarge("Ryser limited to n <= 20");
  std::vector<R> sums(n, R::zero(f));
  R total = R::zero(f);
  uint64_t gray = 0;
  for (uint64_t k = 1; k < (uint64_t{1} << n); ++k) {
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
    R prod = R::one(f);
    for (size_t i = 0; i < n && !prod.is_zero(); ++i) prod *= sums[i];
    if ((n - static_cast<size_t>(std::popcount(gray))) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

/// Ryser over GF(3^q): serial below n = 12, parallel above.
Fq permanent_ryser(const FqMatrix& a);
/// The subset range split across OpenMP threads; each chunk rebuilds its
/// starting row sums from its Gray code.
Fq permanent_ryser_parallel(const FqMatrix& a);

/// Rectangular permanent (sum over injections) by Ryser's rectangular
/// formula: per(A) = sum_{k<n} (-1)^k C(m-n+k, k) S_{n-k}, where S_r sums
/// prod_i (row sum over X) over r-subsets X of the columns. Rows > cols is
/// handled through the transpose.
template <class R>
R permanent_rect(const Matrix<R>& a_in) {
  const Matrix<R> a = a_in.rows() > a_in.cols() ? a_in.transpose() : a_in;
  const size_t n = a.rows(), m = a.cols();
  const Field* f = a.field_ptr();
  if (n == 0) return R::one(f);
  if (n == m) {
    if constexpr (std::is_same_v<R, Fq>)
      return permanent_ryser(a);
    else
      return permanent_ryser_serial(a);
  }
  uint64_t work = 0;
  for (size_t k = 0; k < n; ++k) work += binom_count(m, n - k);
  if (work > 20'000'000) throw TooLarge("rectangular permanent too large");
  R total = R::zero(f);
  for (size_t k = 0; k < n; ++k) {
    const int c = binom_mod3(static_cast<long long>(m - n + k), static_cast<long long>(k));
    if (c == 0) continue;
    const size_t r = n - k;
    R s = R::zero(f);
    Index x(r);
    for (size_t i = 0; i < r; ++i) x[i] = i;
    while (true) {
      R prod = R::one(f);
      for (size_t i = 0; i < n && !prod.is_zero(); ++i) {
        R rs = R::zero(f);
        for (size_t j : x) rs += a(i, j);
        prod *= rs;
      }
      s += prod;
      size_t pos = r;
      while (pos > 0 && x[pos - 1] == m - r + pos - 1) --pos;
      if (pos == 0) break;
      ++x[pos - 1];
      for (size_t i = pos; i < r; ++i) x[i] = x[i - 1] + 1;
    }
    total += R::from_int(f, (k % 2 == 0 ? 1 : -1) * c) * s;
  }
  return total;
}

/// Calls fn(J) for every k-subset J of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(size_t n, size_t k, Fn&& fn) {
  if (k > n) return;
  Index j(k);
  for (size_t i = 0; i < k; ++i) j[i] = i;
  while (true) {
    fn(static_cast<const Index&>(j));
    size_t pos = k;
    while (pos > 0 && j[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++j[pos - 1];
    for (size_t i = pos; i < k; ++i) j[i] = j[i - 1] + 1;
  }
}

inline void guard_subsets(size_t m, size_t n, uint64_t limit = 1'000'000) {
  if (binom_count(m, n) > limit) throw TooLarge("C(" + std::to_string(m) + "," + std::to_string(n) + ") too large");
}

/// Sum of all maximal (n x n) minors' determinants, n <= m.
template <class R>
R hatted_det(const Matrix<R>& a) {
  const size_t n = a.rows(), m = a.cols();
  if (n > m) throw ShapeMismatch("hatted det needs rows <= cols");
  guard_subsets(m, n);
  const Index rows = all_indices<R>(n);
  R total = R::zero(a.field_ptr());
  for_each_subset(m, n, [&](const Index& j) { total += det(submatrix(a, rows, j)); });
  return total;
}

/// Sum of the permanents of all maximal (n x n) minors, n <= m.
template <class R>
R hatted_per(const Matrix<R>& a) {
  const size_t n = a.rows(), m = a.cols();
  if (n > m) throw ShapeMismatch("hatted per needs rows <= cols");
  guard_subsets(m, n);
  const Index rows = all_indices<R>(n);
  R total = R::zero(a.field_ptr());
  for_each_subset(m, n, [&](const Index& j) { total += permanent_ryser_serial(submatrix(a, rows, j)); });
  return total;
}

/// Perfect-matching expansion. Odd sizes give 0. Throws NotSkew.
template <class R>
R pfaffian(const Matrix<R>& a) {
  if (!a.is_square()) throw ShapeMismatch("Pfaffian of non-square matrix");
  const size_t n = a.rows();
  const Field* f = a.field_ptr();
  for (size_t i = 0; i < n; ++i) {
    if (!a(i, i).is_zero()) throw NotSkew("nonzero diagonal");
    for (size_t j = i + 1; j < n; ++j)
      if (!(a(i, j) + a(j, i)).is_zero()) throw NotSkew("A^T != -A");
  }
  if (n % 2 == 1) return R::zero(f);
  if (n > 14) throw TooLarge("Pfaffian limited to 14 x 14");
  // Recursive expansion along the first remaining index.
  auto rec = [&](auto&& self, uint32_t remaining) -> R {
    if (remaining == 0) return R::one(f);
    const size_t i = static_cast<size_t>(std::countr_zero(remaining));
    const uint32_t rest = remaining & ~(1u << i);
    R total = R::zero(f);
    size_t pos = 0;
    for (size_t j = i + 1; j < n; ++j) {
      if (!(rest & (1u << j))) continue;
      if (!a(i, j).is_zero()) {
        const R term = a(i, j) * self(self, rest & ~(1u << j));
        if (pos % 2 == 0)
          total += term;
        else
          total -= term;
      }
      ++pos;
    }
    return total;
  };
  return rec(rec, n == 0 ? 0u : ((1u << n) - 1));
}

// ---------------------------------------------------------------------------
// Exact linear algebra over GF(3^q).

size_t rank(const FqMatrix& a);
/// Solves A x = b for square nonsingular A. Throws SingularSystem.
FqVec solve(const FqMatrix& a, const FqVec& b);
FqMatrix inverse(const FqMatrix& a);
/// Basis of {x : A x = 0}.
std::vector<FqVec> kernel_basis(const FqMatrix& a);

std::string to_string(const FqMatrix& a);

}  // namespace char3

#endif  // CHAR3_LINALG_HPP_
