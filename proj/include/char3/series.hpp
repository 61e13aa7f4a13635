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

#ifndef CHAR3_SERIES_HPP_
#define CHAR3_SERIES_HPP_

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "char3/field.hpp"

namespace char3 {

/// Truncation value of series known exactly (Laurent polynomials).
inline constexpr int kExact = INT_MAX / 4;
/// order() of a zero series.
inline constexpr int kInfiniteOrder = INT_MAX / 2;

/// Relative precision used when inverting an exact series that is not a
/// monomial (its inverse is an infinite expansion). Thread-local so that
/// parallel audit trials can budget independently.
int series_budget();
void set_series_budget(int budget);

class ScopedSeriesBudget {
 public:
  explicit ScopedSeriesBudget(int budget) : saved_(series_budget()) { set_series_budget(budget); }
  ~ScopedSeriesBudget() { set_series_budget(saved_); }
  ScopedSeriesBudget(const ScopedSeriesBudget&) = delete;
  ScopedSeriesBudget& operator=(const ScopedSeriesBudget&) = delete;

 private:
  int saved_;
};

/// Truncated formal Laurent series in eps over a Field: the coefficients at
/// exponents <= truncation() are exact, everything above is unknown.
class Series {
 public:
  Series() = default;
  /// Zero coefficients in `coeffs` are dropped; exponents above `truncation` are rejected.
  Series(const Field* f, const std::map<int, Fq>& coeffs, int truncation = kExact);

  static Series zero(const Field* f) { return Series(f); }
  static Series one(const Field* f) { return constant(f->one()); }
  static Series from_int(const Field* f, long long k) { return constant(f->from_int(k)); }
  static Series constant(Fq c);
  /// c * eps^k, exact.
  static Series monomial(Fq c, int k);
  static Series eps(const Field* f) { return monomial(f->one(), 1); }

  const Field& field() const { return *f_; }
  const Field* field_ptr() const { return f_; }
  /// Least exponent with a nonzero coefficient; kInfiniteOrder for zero.
  int order() const { return c_.empty() ? kInfiniteOrder : lo_; }
  int truncation() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kExact; }
  /// No nonzero coefficient up to the truncation.
  bool is_zero() const { return c_.empty(); }
  /// Highest exponent with a stored coefficient (order() - 1 for zero).
  int top() const { return lo_ + static_cast<int>(c_.size()) - 1; }

  /// Throws PrecisionExhausted when k > truncation().
  Fq coef(int k) const;
  /// Coefficient at eps^0. Throws LimitDoesNotExist (order < 0) or PrecisionExhausted.
  Fq limit() const;
  /// Same series with the truncation lowered to min(truncation(), t).
  Series truncated(int t) const;
  /// eps^k * this.
  Series shifted(int k) const;

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator/(const Series& a, const Series& b) { return a * b.inv(); }
  Series operator-() const;
  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }
  Series& operator/=(const Series& b) { return *this = *this / b; }
  /// Structural equality: same truncation and coefficients.
  friend bool operator==(const Series& a, const Series& b);
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  /// Throws DivisionByZero when no nonzero coefficient is known.
  Series inv() const;
  Series pow(long long k) const;

  /// "[1]*eps^-1 + [2]*eps^0;T=5" ("0;T=..." for zero, "T=exact" when exact).
  std::string to_string() const;

 private:
  explicit Series(const Field* f) : f_(f) {}
  void normalize();

  const Field* f_ = nullptr;
  int lo_ = 0;             // exponent of c_[0]
  std::vector<Fq> c_;      // c_.front() and c_.back() nonzero when non-empty
  int trunc_ = kExact;
};

/// Coefficient-wise lift of a field element into the series ring.
inline Series lift(Fq c) { return Series::constant(c); }

}  // namespace char3

#endif  // CHAR3_SERIES_HPP_
