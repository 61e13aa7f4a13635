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

#include "char3/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace char3 {
namespace {

constexpr uint32_t kTableLimit = 729;  // Cayley tables up to GF(3^6)

int mod3(long long v) {
  int r = static_cast<int>(v % 3);
  return r < 0 ? r + 3 : r;
}

// Polynomials over GF(3) as coefficient vectors, low-to-high, trimmed.
using Poly = std::vector<int>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& m) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = m.back();  // 1 or 2, self-inverse mod 3
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = a.back() * lead_inv % 3;
    for (int i = 0; i <= dm; ++i) a[i + shift] = mod3(a[i + shift] - c * m[i]);
    trim(a);
  }
  return a;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::vector<int>, std::unique_ptr<Field>>& registry() {
  static std::map<std::vector<int>, std::unique_ptr<Field>> r;
  return r;
}

}  // namespace

bool is_irreducible_gf3(const std::vector<int>& poly_in) {
  Poly poly = poly_in;
  for (auto& c : poly) c = mod3(c);
  trim(poly);
  const int d = static_cast<int>(poly.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (int k = 1; k <= d / 2; ++k) {
    uint32_t count = 1;
    for (int i = 0; i < k; ++i) count *= 3;
    for (uint32_t idx = 0; idx < count; ++idx) {
      Poly div(k + 1, 0);
      uint32_t t = idx;
      for (int i = 0; i < k; ++i) {
        div[i] = static_cast<int>(t % 3);
        t /= 3;
      }
      div[k] = 1;
      if (poly_mod(poly, div).empty()) return false;
    }
  }
  return true;
}

Field::Field(int q, std::vector<int> modulus) : q_(q), modulus_(std::move(modulus)) {
  pow3_.resize(q_ + 1);
  pow3_[0] = 1;
  for (int i = 1; i <= q_; ++i) pow3_[i] = pow3_[i - 1] * 3;
  order_ = pow3_[q_];
  if (order_ <= kTableLimit) {
    add_table_.resize(static_cast<size_t>(order_) * order_);
    mul_table_.resize(static_cast<size_t>(order_) * order_);
    for (uint32_t a = 0; a < order_; ++a) {
      for (uint32_t b = 0; b < order_; ++b) {
        uint32_t s = 0;
        uint32_t x = a, y = b;
        for (int i = 0; i < q_; ++i) {
          s += pow3_[i] * ((x % 3 + y % 3) % 3);
          x /= 3;
          y /= 3;
        }
        add_table_[a * order_ + b] = static_cast<uint16_t>(s);
        mul_table_[a * order_ + b] = static_cast<uint16_t>(mul_slow(a, b));
      }
    }
  }
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
  if (!add_table_.empty()) return add_table_[a * order_ + b];
  uint32_t s = 0;
  for (int i = 0; i < q_; ++i) {
    s += pow3_[i] * ((a % 3 + b % 3) % 3);
    a /= 3;
    b /= 3;
  }
  return s;
}

uint32_t Field::neg(uint32_t a) const {
  uint32_t s = 0;
  for (int i = 0; i < q_; ++i) {
    s += pow3_[i] * ((3 - a % 3) % 3);
    a /= 3;
  }
  return s;
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
  if (!mul_table_.empty()) return mul_table_[a * order_ + b];
  return mul_slow(a, b);
}

uint32_t Field::mul_slow(uint32_t a, uint32_t b) const {
  std::array<int, kMaxDegree> da{}, db{};
  for (int i = 0; i < q_; ++i) {
    da[i] = static_cast<int>(a % 3);
    db[i] = static_cast<int>(b % 3);
    a /= 3;
    b /= 3;
  }
  std::array<int, 2 * kMaxDegree> prod{};
  for (int i = 0; i < q_; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j < q_; ++j) prod[i + j] += da[i] * db[j];
  }
  // Reduce x^k for k >= q using x^q = -(c0 + ... + c_{q-1} x^{q-1}).
  for (int k = 2 * q_ - 2; k >= q_; --k) {
    const int c = prod[k] % 3;
    if (c == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < q_; ++i) prod[k - q_ + i] -= c * modulus_[i];
  }
  uint32_t s = 0;
  for (int i = 0; i < q_; ++i) s += pow3_[i] * static_cast<uint32_t>(mod3(prod[i]));
  return s;
}

Fq Field::zero() const { return {this, 0}; }
Fq Field::one() const { return {this, 1}; }
Fq Field::from_int(long long k) const { return {this, static_cast<uint32_t>(mod3(k))}; }
Fq Field::from_index(uint32_t index) const {
  if (index >= order_) throw InvalidArgument("element index out of range");
  return {this, index};
}
Fq Field::generator() const {
  if (q_ == 1) return from_int(-modulus_[0]);
  return {this, 3};
}

Fq Field::from_coeffs(const std::vector<int>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != q_)
    throw InvalidArgument("expected " + std::to_string(q_) + " coordinates");
  uint32_t s = 0;
  for (int i = 0; i < q_; ++i) s += pow3_[i] * static_cast<uint32_t>(mod3(coeffs[i]));
  return {this, s};
}

std::string Field::to_string() const {
  std::ostringstream os;
  os << "3^" << q_ << "/[";
  for (size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  os << "]";
  return os.str();
}

const Field& make_field(int q, std::optional<std::vector<int>> modulus) {
  if (q < 1 || q > kMaxDegree) throw InvalidArgument("extension degree out of range");
  std::vector<int> m;
  if (modulus) {
    m = *modulus;
    for (auto& c : m) c = mod3(c);
    if (static_cast<int>(m.size()) != q + 1 || m.back() != 1)
      throw InvalidArgument("modulus must be monic of degree " + std::to_string(q));
    if (!is_irreducible_gf3(m)) throw ReducibleModulus("modulus factors over GF(3)");
  } else {
    // Lexicographic order on (c0, c1, ..., c_{q-1}): c0 is the most significant digit.
    uint32_t count = 1;
    for (int i = 0; i < q; ++i) count *= 3;
    for (uint32_t idx = 0; idx < count; ++idx) {
      std::vector<int> cand(q + 1, 0);
      uint32_t t = idx;
      for (int i = q - 1; i >= 0; --i) {
        cand[i] = static_cast<int>(t % 3);
        t /= 3;
      }
      cand[q] = 1;
      if (is_irreducible_gf3(cand)) {
        m = std::move(cand);
        break;
      }
    }
  }
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry();
  auto it = reg.find(m);
  if (it == reg.end()) it = reg.emplace(m, std::unique_ptr<Field>(new Field(q, m))).first;
  return *it->second;
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '[') throw ParseError("expected '[' in \"" + std::string(text) + "\"");
  ++i;
  skip();
  if (i < text.size() && text[i] == ']') return out;
  while (true) {
    skip();
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc()) throw ParseError("bad integer in \"" + std::string(text) + "\"");
    out.push_back(static_cast<int>(v));
    i = static_cast<size_t>(ptr - text.data());
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ']') break;
    throw ParseError("expected ',' or ']' in \"" + std::string(text) + "\"");
  }
  return out;
}

}  // namespace

const Field& parse_field(std::string_view text) {
  if (text.substr(0, 2) != "3^") throw ParseError("field spec must start with 3^");
  text.remove_prefix(2);
  const size_t slash = text.find('/');
  const std::string_view qtext = text.substr(0, slash);
  int q = 0;
  auto [ptr, ec] = std::from_chars(qtext.data(), qtext.data() + qtext.size(), q);
  if (ec != std::errc() || ptr != qtext.data() + qtext.size()) throw ParseError("bad extension degree");
  if (slash == std::string_view::npos) return make_field(q);
  return make_field(q, parse_int_list(text.substr(slash + 1)));
}

std::vector<int> Fq::coeffs() const {
  std::vector<int> c(f_->degree());
  uint32_t v = v_;
  for (auto& x : c) {
    x = static_cast<int>(v % 3);
    v /= 3;
  }
  return c;
}

Fq Fq::pow(long long k) const {
  if (k < 0) return inv().pow(-k);
  Fq result = Fq::one(f_);
  Fq base = *this;
  unsigned long long e = static_cast<unsigned long long>(k);
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Fq Fq::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of 0 in " + f_->to_string());
  return pow(static_cast<long long>(f_->order()) - 2);
}

Fq Fq::frobenius() const { return *this * *this * *this; }

std::string Fq::to_string() const {
  std::ostringstream os;
  os << "[";
  const auto c = coeffs();
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

namespace {

// Lexicographic comparison of coefficient sequences starting at c0.
bool lex_less(Fq a, Fq b) { return a.coeffs() < b.coeffs(); }

Fq pick_root(Fq s) {
  const Fq t = -s;
  return lex_less(t, s) ? t : s;
}

// Tonelli-Shanks in the cyclic group of order 3^q - 1.
std::optional<Fq> tonelli_shanks(Fq a) {
  const Field& f = a.field();
  const long long n = static_cast<long long>(f.order()) - 1;
  if (a.pow(n / 2) != f.one()) return std::nullopt;
  long long odd = n;
  int twos = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++twos;
  }
  // Any non-square generates the Sylow 2-subgroup through its odd power.
  Fq non_square = f.zero();
  for (uint32_t i = 1; i < f.order(); ++i) {
    const Fq c = f.from_index(i);
    if (c.pow(n / 2) != f.one()) {
      non_square = c;
      break;
    }
  }
  Fq z = non_square.pow(odd);
  Fq x = a.pow((odd + 1) / 2);
  Fq b = a.pow(odd);
  int m = twos;
  while (b != f.one()) {
    int i = 0;
    Fq t = b;
    while (t != f.one()) {
      t *= t;
      ++i;
    }
    Fq g = z;
    for (int k = 0; k < m - i - 1; ++k) g *= g;
    x *= g;
    z = g * g;
    b *= z;
    m = i;
  }
  return x;
}

}  // namespace

std::optional<Fq> sqrt(Fq a) {
  if (a.is_zero()) return a;
  const Field& f = a.field();
  if (f.order() <= 729) {
    for (uint32_t i = 0; i < f.order(); ++i) {
      const Fq s = f.from_index(i);
      if (s * s == a) return pick_root(s);
    }
    return std::nullopt;
  }
  auto r = tonelli_shanks(a);
  if (!r) return std::nullopt;
  return pick_root(*r);
}

Fq sqrt_or_throw(Fq a) {
  auto r = sqrt(a);
  if (!r) throw NotASquare(a.to_string() + " in " + a.field().to_string());
  return *r;
}

Fq cube_root(Fq a) {
  Fq c = a;
  for (int i = 0; i + 1 < a.field().degree(); ++i) c = c.frobenius();
  return c;
}

namespace {

struct EmbeddingCache {
  std::mutex mu;
  std::map<std::pair<const Field*, const Field*>, std::vector<Fq>> images;  // images of x^i
};

EmbeddingCache& embedding_cache() {
  static EmbeddingCache c;
  return c;
}

}  // namespace

Fq embed(Fq a, const Field& target) {
  const Field& src = a.field();
  if (&src == &target) return a;
  if (target.degree() % src.degree() != 0)
    throw NoEmbedding(src.to_string() + " does not embed in " + target.to_string());
  auto& cache = embedding_cache();
  std::vector<Fq> basis;
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.images.find({&src, &target});
    if (it != cache.images.end()) basis = it->second;
  }
  if (basis.empty()) {
    // Root of the source modulus in the target, smallest index first.
    const auto& m = src.modulus();
    std::optional<Fq> root;
    for (uint32_t i = 0; i < target.order() && !root; ++i) {
      const Fq r = target.from_index(i);
      Fq acc = target.zero();
      for (int k = static_cast<int>(m.size()) - 1; k >= 0; --k) acc = acc * r + target.from_int(m[k]);
      if (acc.is_zero()) root = r;
    }
    if (!root) throw NoEmbedding("modulus has no root in target");
    basis.resize(src.degree());
    Fq p = target.one();
    for (int i = 0; i < src.degree(); ++i) {
      basis[i] = p;
      p *= *root;
    }
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.images.emplace(std::make_pair(&src, &target), basis);
  }
  Fq out = target.zero();
  const auto c = a.coeffs();
  for (size_t i = 0; i < c.size(); ++i) out += target.from_int(c[i]) * basis[i];
  return out;
}

Fq parse_element(const Field& f, std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  if (!text.empty() && text.front() != '[') {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc()) throw ParseError("bad element \"" + std::string(text) + "\"");
    return f.from_int(v);
  }
  return f.from_coeffs(parse_int_list(text));
}

}  // namespace char3
