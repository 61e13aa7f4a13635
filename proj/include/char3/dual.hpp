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

#ifndef CHAR3_DUAL_HPP_
#define CHAR3_DUAL_HPP_

#include <string>

#include "char3/field.hpp"

namespace char3 {

/// Element value + deriv * eta of R[eta]/(eta^2). Exact first derivatives
/// propagate through any expression built from ring operations.
template <class R>
struct Dual {
  R value;
  R deriv;

  Dual() = default;
  Dual(R v, R d) : value(std::move(v)), deriv(std::move(d)) {}
  /// Constant (zero derivative).
  explicit Dual(R v) : value(v), deriv(R::zero(v.field_ptr())) {}

  static Dual zero(const Field* f) { return {R::zero(f), R::zero(f)}; }
  static Dual one(const Field* f) { return {R::one(f), R::zero(f)}; }
  static Dual from_int(const Field* f, long long k) { return {R::from_int(f, k), R::zero(f)}; }
  static Dual variable(R v) { return {v, R::one(v.field_ptr())}; }

  const Field* field_ptr() const { return value.field_ptr(); }
  bool is_zero() const { return value.is_zero() && deriv.is_zero(); }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.value + b.value, a.deriv + b.deriv}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.value - b.value, a.deriv - b.deriv}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.value * b.value, a.value * b.deriv + a.deriv * b.value};
  }
  Dual inv() const {
    const R vi = value.inv();
    return {vi, -(deriv * vi * vi)};
  }
  friend Dual operator/(const Dual& a, const Dual& b) { return a * b.inv(); }
  Dual operator-() const { return {-value, -deriv}; }
  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator-=(const Dual& b) { return *this = *this - b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
  Dual& operator/=(const Dual& b) { return *this = *this / b; }
  friend bool operator==(const Dual& a, const Dual& b) { return a.value == b.value && a.deriv == b.deriv; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }

  Dual pow(long long k) const {
    if (k < 0) return inv().pow(-k);
    Dual r = one(field_ptr());
    Dual b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  std::string to_string() const { return value.to_string() + "+" + deriv.to_string() + "*eta"; }
};

}  // namespace char3

#endif  // CHAR3_DUAL_HPP_
