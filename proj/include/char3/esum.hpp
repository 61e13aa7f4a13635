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

#ifndef CHAR3_ESUM_HPP_
#define CHAR3_ESUM_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "char3/linalg.hpp"

namespace char3 {

/// A pair of non-decreasing derivative-order sequences attached to one value.
struct ExtensionDegree {
  std::vector<int> left;
  std::vector<int> right;

  int height() const { return static_cast<int>(left.size()); }
  int width() const { return static_cast<int>(right.size()); }
  int balance() const { return height() - width(); }
  friend bool operator==(const ExtensionDegree&, const ExtensionDegree&) = default;
  friend auto operator<=>(const ExtensionDegree&, const ExtensionDegree&) = default;
  /// "(<0,0>,<1>)", "(∅,0)".
  std::string to_string() const;
};

template <class R>
struct PlaneTerm {
  ExtensionDegree degree;
  R weight;
};

/// Formal weighted sum of extension-degrees; degrees are distinct.
template <class R>
using ExtensionPlane = std::vector<PlaneTerm<R>>;

namespace planes {

inline ExtensionDegree deg(std::vector<int> left, std::vector<int> right) {
  return {std::move(left), std::move(right)};
}

template <class R>
ExtensionPlane<R> single(const ExtensionDegree& d, const R& w) {
  return {{d, w}};
}

/// (∅,∅)·1.
template <class R>
ExtensionPlane<R> empty(const Field* f) {
  return single(deg({}, {}), R::one(f));
}

/// (0,∅)·w: one row.
template <class R>
ExtensionPlane<R> row(const Field* f, const R& w) {
  (void)f;
  return single(deg({0}, {}), w);
}

/// (∅,0)·w: one column.
template <class R>
ExtensionPlane<R> column(const Field* f, const R& w) {
  (void)f;
  return single(deg({}, {0}), w);
}

/// The wave (0,0) with weight w.
template <class R>
ExtensionPlane<R> wave(const Field* f, const R& w) {
  (void)f;
  return single(deg({0}, {0}), w);
}

/// Θ = (<0,0>,<0,0>) + (0,1) - (1,0).
template <class R>
ExtensionPlane<R> biwave(const Field* f) {
  return {{deg({0, 0}, {0, 0}), R::one(f)}, {deg({0}, {1}), R::one(f)}, {deg({1}, {0}), -R::one(f)}};
}

/// θ1 + θ2 with equal degrees merged and zero weights dropped.
template <class R>
ExtensionPlane<R> sum(const ExtensionPlane<R>& a, const ExtensionPlane<R>& b) {
  ExtensionPlane<R> out = a;
  for (const auto& t : b) {
    auto it = std::find_if(out.begin(), out.end(), [&](const PlaneTerm<R>& o) { return o.degree == t.degree; });
    if (it == out.end())
      out.push_back(t);
    else
      it->weight += t.weight;
  }
  std::erase_if(out, [](const PlaneTerm<R>& t) { return t.weight.is_zero(); });
  return out;
}

template <class R>
ExtensionPlane<R> scaled(const ExtensionPlane<R>& a, const R& c) {
  ExtensionPlane<R> out;
  for (const auto& t : a)
    if (!(c * t.weight).is_zero()) out.push_back({t.degree, c * t.weight});
  return out;
}

template <class R>
std::vector<ExtensionPlane<R>> repeated(const ExtensionPlane<R>& p, size_t n) {
  return std::vector<ExtensionPlane<R>>(n, p);
}

}  // namespace planes

template <class R>
std::vector<ExtensionPlane<R>> concat_planes(std::initializer_list<std::vector<ExtensionPlane<R>>> parts) {
  std::vector<ExtensionPlane<R>> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// E(a, φ): rows (i,k) for every left order φ_{i,k}, columns (j,l) for every
/// right order ψ_{j,l}; zero when i = j, else
/// (-1)^φ binom(φ+ψ, φ) (a_i - a_j)^{-(φ+ψ+1)} with the binomial reduced mod 3.
template <class R>
Matrix<R> extension_matrix(const Field* f, const Vec<R>& a, const std::vector<ExtensionDegree>& phi) {
  if (a.size() != phi.size()) throw ShapeMismatch("values and extension-degrees differ in length");
  struct Slot {
    size_t owner;
    int order;
  };
  std::vector<Slot> rows, cols;
  for (size_t i = 0; i < a.size(); ++i) {
    for (int o : phi[i].left) rows.push_back({i, o});
    for (int o : phi[i].right) cols.push_back({i, o});
  }
  Matrix<R> e(f, rows.size(), cols.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) {
      const size_t i = rows[r].owner, j = cols[c].owner;
      if (i == j) continue;
      const R d = a[i] - a[j];
      if (d.is_zero())
        throw CoincidentValues("a[" + std::to_string(i) + "] == a[" + std::to_string(j) + "]");
      const int p = rows[r].order, q = cols[c].order;
      const int b = binom_mod3(p + q, p);
      if (b == 0) continue;
      e(r, c) = R::from_int(f, p % 2 == 0 ? b : -b) * d.inv().pow(p + q + 1);
    }
  return e;
}

/// Permanent used by E-sums: the injection oracle up to 9, Ryser above.
template <class R>
R esum_permanent(const Matrix<R>& m) {
  if (m.rows() <= 9) return permanent_naive(m);
  return permanent_ryser_serial(m);
}

inline constexpr uint64_t kEsumBudget = 100'000;

/// sum over degree choices of (prod weights) δ(bal) per(E(a, φ)).
template <class R>
R esum(const Field* f, const Vec<R>& a, const std::vector<ExtensionPlane<R>>& theta) {
  if (a.size() != theta.size()) throw ShapeMismatch("values and planes differ in length");
  const size_t n = a.size();
  uint64_t work = 1;
  for (const auto& p : theta) {
    if (p.empty()) return R::zero(f);
    work *= p.size();
    if (work > kEsumBudget) throw TooLarge("E-sum enumeration exceeds budget");
  }
  // Balance range still reachable from position i onward.
  std::vector<int> lo(n + 1, 0), hi(n + 1, 0);
  for (size_t i = n; i-- > 0;) {
    int mn = theta[i][0].degree.balance(), mx = mn;
    for (const auto& t : theta[i]) {
      mn = std::min(mn, t.degree.balance());
      mx = std::max(mx, t.degree.balance());
    }
    lo[i] = lo[i + 1] + mn;
    hi[i] = hi[i + 1] + mx;
  }
  R total = R::zero(f);
  std::vector<ExtensionDegree> phi(n);
  auto rec = [&](auto&& self, size_t i, int bal, const R& w) -> void {
    if (i == n) {
      if (bal == 0) total += w * esum_permanent(extension_matrix(f, a, phi));
      return;
    }
    for (const auto& t : theta[i]) {
      const int b = bal + t.degree.balance();
      if (b + lo[i + 1] > 0 || b + hi[i + 1] < 0) continue;
      phi[i] = t.degree;
      self(self, i + 1, b, w * t.weight);
    }
  };
  rec(rec, 0, 0, R::one(f));
  return total;
}

/// C̃(x, y, z) = E((x;y;z), ((0,∅); (∅,0); (0,0))).
template <class R>
Matrix<R> c_tilde(const Field* f, const Vec<R>& x, const Vec<R>& y, const Vec<R>& z) {
  std::vector<ExtensionDegree> phi;
  for (size_t i = 0; i < x.size(); ++i) phi.push_back(planes::deg({0}, {}));
  for (size_t i = 0; i < y.size(); ++i) phi.push_back(planes::deg({}, {0}));
  for (size_t i = 0; i < z.size(); ++i) phi.push_back(planes::deg({0}, {0}));
  return extension_matrix(f, concat<R>({x, y, z}), phi);
}

/// C̃(z): zero diagonal, 1/(z_i - z_j) elsewhere.
template <class R>
Matrix<R> c_tilde_diag(const Field* f, const Vec<R>& z) {
  return c_tilde(f, Vec<R>{}, Vec<R>{}, z);
}

/// sum over perfect matchings of prod -1/(z_i - z_j)^2, computed by the
/// first-index recursion.
template <class R>
R matching_formula(const Field* f, const Vec<R>& z) {
  const size_t n = z.size();
  if (n % 2 == 1) return R::zero(f);
  if (n > 16) throw TooLarge("matching formula limited to 16 values");
  auto rec = [&](auto&& self, uint32_t remaining) -> R {
    if (remaining == 0) return R::one(f);
    const size_t i = static_cast<size_t>(std::countr_zero(remaining));
    const uint32_t rest = remaining & ~(1u << i);
    R total = R::zero(f);
    for (size_t j = i + 1; j < n; ++j) {
      if (!(rest & (1u << j))) continue;
      const R d = z[i] - z[j];
      if (d.is_zero()) throw CoincidentValues("z[" + std::to_string(i) + "] == z[" + std::to_string(j) + "]");
      total -= (d * d).inv() * self(self, rest & ~(1u << j));
    }
    return total;
  };
  return rec(rec, n == 0 ? 0u : (1u << n) - 1);
}

enum class ProlongationSide { kLeft, kRight };

/// The extended plane vector (G; (∅,∅) + (1,∅)λ) for a left prolongation or
/// (G; (∅,∅) + (∅,1)λ) for a right one.
template <class R>
std::vector<ExtensionPlane<R>> prolonged_planes(const Field* f, const std::vector<ExtensionPlane<R>>& g,
                                                ProlongationSide side, const Vec<R>& lambda) {
  std::vector<ExtensionPlane<R>> out = g;
  for (const R& l : lambda) {
    const ExtensionDegree d = side == ProlongationSide::kLeft ? planes::deg({1}, {}) : planes::deg({}, {1});
    out.push_back(planes::sum(planes::empty<R>(f), planes::single(d, l)));
  }
  return out;
}

/// Both sides of one prolongation-derivative substitution: the E-sum of the
/// extended variety (β;γ) against the E-sum of β on the transformed planes.
template <class R>
std::pair<R, R> prolongation_sides(const Field* f, const Vec<R>& beta, const std::vector<ExtensionPlane<R>>& g,
                                   ProlongationSide side, const Vec<R>& gamma, const Vec<R>& lambda,
                                   const std::vector<ExtensionPlane<R>>& transformed) {
  if (gamma.size() != lambda.size()) throw ShapeMismatch("γ and λ differ in length");
  const R extended = esum(f, concat<R>({beta, gamma}), prolonged_planes(f, g, side, lambda));
  return {extended, esum(f, beta, transformed)};
}

}  // namespace char3

#endif  // CHAR3_ESUM_HPP_
