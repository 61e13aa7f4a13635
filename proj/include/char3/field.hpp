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

#ifndef CHAR3_FIELD_HPP_
#define CHAR3_FIELD_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "char3/errors.hpp"

namespace char3 {

/// Largest supported extension degree. Elements are stored as base-3 indices
/// in a uint32, so 3^q must fit comfortably.
inline constexpr int kMaxDegree = 16;

class Fq;

/// GF(3^q) presented as GF(3)[x]/(modulus). Instances are interned by
/// make_field and live for the whole process; elements refer to them by
/// pointer.
class Field {
 public:
  int degree() const { return q_; }
  uint32_t order() const { return order_; }
  /// Modulus coefficients low-to-high, length q+1, last entry 1.
  const std::vector<int>& modulus() const { return modulus_; }

  Fq zero() const;
  Fq one() const;
  Fq from_int(long long k) const;
  /// Element with the given power-basis coordinates (length q, entries mod 3).
  Fq from_coeffs(const std::vector<int>& coeffs) const;
  Fq from_index(uint32_t index) const;
  /// The generator x of the power basis (equals 0 or a constant when q = 1).
  Fq generator() const;

  /// "3^q/[c0,c1,...,1]".
  std::string to_string() const;

  // Raw arithmetic on base-3 indices; used by Fq.
  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;

 private:
  friend const Field& make_field(int, std::optional<std::vector<int>>);
  Field(int q, std::vector<int> modulus);
  uint32_t mul_slow(uint32_t a, uint32_t b) const;

  int q_;
  uint32_t order_;
  std::vector<int> modulus_;
  std::vector<uint32_t> pow3_;
  // Cayley tables, populated only for small fields.
  std::vector<uint16_t> add_table_;
  std::vector<uint16_t> mul_table_;
};

/// Returns the interned field GF(3^q). Without a modulus, the lexicographically
/// smallest monic irreducible of degree q is used (coefficients compared from
/// c0 upward). Throws ReducibleModulus or InvalidArgument.
const Field& make_field(int q, std::optional<std::vector<int>> modulus = std::nullopt);

/// Parses "3^q" or "3^q/[c0,...,1]".
const Field& parse_field(std::string_view text);

/// True iff the monic polynomial (low-to-high coefficients over GF(3)) is irreducible.
bool is_irreducible_gf3(const std::vector<int>& poly);

/// An element of a Field. Cheap to copy; immutable.
class Fq {
 public:
  Fq() = default;
  Fq(const Field* f, uint32_t v) : f_(f), v_(v) {}

  const Field& field() const { return *f_; }
  const Field* field_ptr() const { return f_; }
  uint32_t index() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::vector<int> coeffs() const;

  friend Fq operator+(Fq a, Fq b) { return {a.f_, a.f_->add(a.v_, b.v_)}; }
  friend Fq operator-(Fq a, Fq b) { return {a.f_, a.f_->add(a.v_, a.f_->neg(b.v_))}; }
  friend Fq operator*(Fq a, Fq b) { return {a.f_, a.f_->mul(a.v_, b.v_)}; }
  friend Fq operator/(Fq a, Fq b) { return a * b.inv(); }
  Fq operator-() const { return {f_, f_->neg(v_)}; }
  Fq& operator+=(Fq b) { return *this = *this + b; }
  Fq& operator-=(Fq b) { return *this = *this - b; }
  Fq& operator*=(Fq b) { return *this = *this * b; }
  Fq& operator/=(Fq b) { return *this = *this / b; }
  friend bool operator==(Fq a, Fq b) { return a.v_ == b.v_ && a.f_ == b.f_; }
  friend bool operator!=(Fq a, Fq b) { return !(a == b); }

  /// Throws DivisionByZero.
  Fq inv() const;
  /// Any integer exponent; negative exponents invert first.
  Fq pow(long long k) const;
  /// x -> x^3.
  Fq frobenius() const;

  std::string to_string() const;

  static Fq zero(const Field* f) { return {f, 0}; }
  static Fq one(const Field* f) { return {f, 1}; }
  static Fq from_int(const Field* f, long long k) { return f->from_int(k); }

 private:
  const Field* f_ = nullptr;
  uint32_t v_ = 0;
};

/// Square root with the lexicographically smaller coefficient sequence among
/// the two roots, or nullopt when a is not a square.
std::optional<Fq> sqrt(Fq a);
/// Throws NotASquare instead of returning nullopt.
Fq sqrt_or_throw(Fq a);
/// The unique c with c^3 = a.
Fq cube_root(Fq a);

/// Ring embedding GF(3^q) -> GF(3^Q) for q | Q, fixed by sending x to the
/// smallest root (by index) of the small modulus in the large field. Throws NoEmbedding.
Fq embed(Fq a, const Field& target);

/// Parses "[c0,...,c_{q-1}]" (or a bare integer) into an element of f.
Fq parse_element(const Field& f, std::string_view text);

}  // namespace char3

#endif  // CHAR3_FIELD_HPP_
