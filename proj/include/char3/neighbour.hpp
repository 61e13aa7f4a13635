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


#ifndef CHAR3_NEIGHBOUR_HPP_
#define CHAR3_NEIGHBOUR_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "char3/dual.hpp"
#include "char3/linalg.hpp"
#include "char3/series.hpp"

namespace char3 {

using DualFq = Dual<Fq>;

/// Embeds a field constant into the kernel ring R.
template <class R>
R ring_const(const Fq& c) {
  if constexpr (std::is_same_v<R, Fq>)
    return c;
  else if constexpr (std::is_same_v<R, Series>)
    return Series::constant(c);
  else
    return R(ring_const<std::remove_cvref_t<decltype(std::declval<R>().value)>>(c));
}

template <class R>
Vec<R> ring_vec(const FqVec& v) {
  Vec<R> out;
  out.reserve(v.size());
  for (const Fq& c : v) out.push_back(ring_const<R>(c));
  return out;
}

/// sum_{i=0}^d coef_{ε^i} f(x + ε(χ - x)). `fn` maps Vec<Series> to Series.
template <class Fn>
Fq poly_extrapolate(const Field* f, Fn&& fn, int d, const FqVec& x, const FqVec& chi) {
  if (x.size() != chi.size()) throw ShapeMismatch("x and χ differ in length");
  Vec<Series> point;
  for (size_t i = 0; i < x.size(); ++i)
    point.push_back(Series::constant(x[i]) + Series::monomial(chi[i] - x[i], 1));
  const Series value = fn(point);
  Fq total = f->zero();
  for (int i = 0; i <= d; ++i) total += value.coef(i);
  return total;
}

/// Exact Jacobian of a vector function (generic in the ring) at x0, one dual
/// direction per parameter. A pole at x0 raises PoleAtPoint.
template <class Fn>
FqMatrix jacobian(const Field* f, Fn&& fn, const FqVec& x0) {
  const size_t n = x0.size();
  std::optional<FqMatrix> jac;
  for (size_t j = 0; j < n; ++j) {
    Vec<DualFq> point = ring_vec<DualFq>(x0);
    point[j] = DualFq::variable(x0[j]);
    Vec<DualFq> value;
    try {
      value = fn(point);
    } catch (const DivisionByZero& e) {
      throw PoleAtPoint(e.what());
    }
    if (!jac) jac.emplace(f, value.size(), n);
    for (size_t i = 0; i < value.size(); ++i) (*jac)(i, j) = value[i].deriv;
  }
  return jac ? *jac : FqMatrix(f, 0, 0);
}

/// u(h) and v(h) realized in every kernel ring the engine needs.
struct ParameterizedSystem {
  size_t dim_h = 0, dim_u = 0, dim_v = 0;
  std::function<FqVec(const FqVec&)> u_field, v_field;
  std::function<Vec<DualFq>(const Vec<DualFq>&)> joint_dual;
  std::function<Vec<Series>(const Vec<Series>&)> u_series, v_series;
};

/// Builds a system from two generic callables `u(h)`, `v(h)` templated on the
/// element type of h.
template <class U, class V>
ParameterizedSystem make_system(size_t dim_h, size_t dim_u, size_t dim_v, U u, V v) {
  ParameterizedSystem s;
  s.dim_h = dim_h;
  s.dim_u = dim_u;
  s.dim_v = dim_v;
  s.u_field = [u](const FqVec& h) { return u(h); };
  s.v_field = [v](const FqVec& h) { return v(h); };
  s.joint_dual = [u, v](const Vec<DualFq>& h) { return concat<DualFq>({u(h), v(h)}); };
  s.u_series = [u](const Vec<Series>& h) { return u(h); };
  s.v_series = [v](const Vec<Series>& h) { return v(h); };
  return s;
}

/// Right-hand side convention for the h^{[k]} systems. kCorrected uses
/// δ(k-1)(target - u(h0)) and -coef_k(v) in the region block, so that
/// u(h(ε)) = u(h0) + ε(target - u(h0)) + O(ε^{d+1}) with v(h(ε)) = O(ε^{d+1});
/// kLiteral uses δ(k-1)(u(h0) - target) and zeros with no region correction.
enum class NeighbourRule { kCorrected, kLiteral };

struct NeighbourTrace {
  FqVec h0;
  std::vector<FqVec> steps;  // h^{[1]} .. h^{[d]}
  int budget = 0;
  Fq value;
};

/// Neighbouring computation of f(target) from the bearing point h0.
/// `fn` maps Vec<Series> (the value of u) to Series.
NeighbourTrace neighbouring_compute(const Field* f, const ParameterizedSystem& sys,
                                    const std::function<Series(const Vec<Series>&)>& fn, int d, const FqVec& h0,
                                    const FqVec& target, NeighbourRule rule = NeighbourRule::kCorrected);

/// Same, with the evaluator given as a function of the parameters: it must
/// agree with f(u(h)) on the region.
NeighbourTrace neighbouring_compute_h(const Field* f, const ParameterizedSystem& sys,
                                      const std::function<Series(const Vec<Series>&)>& fn_of_h, int d,
                                      const FqVec& h0, const FqVec& target,
                                      NeighbourRule rule = NeighbourRule::kCorrected);

// ---------------------------------------------------------------------------
// The μ-region and its parameterization. Parameters h = (x; y; λ) with
// dim(x) = n, dim(y) = dim(λ) = 2n; μ2, μ3 are fixed constants.

struct MuRegion {
  size_t n = 0;
  Fq mu2, mu3;
  FqVec z;
};

/// Splits h into (x, y, λ).
template <class R>
void split_h(const Vec<R>& h, size_t n, Vec<R>& x, Vec<R>& y, Vec<R>& lam) {
  if (h.size() != 5 * n) throw ShapeMismatch("parameter vector must have 5n entries");
  x.assign(h.begin(), h.begin() + static_cast<long>(n));
  y.assign(h.begin() + static_cast<long>(n), h.begin() + static_cast<long>(3 * n));
  lam.assign(h.begin() + static_cast<long>(3 * n), h.end());
}

/// Region (ℜ): C̃(x)1 + C(x,y)1 (n rows), then C(x,y)λ^{•s} - μ_s 1 for s = 2, 3.
template <class R>
Vec<R> region_vi(const MuRegion& reg, const Vec<R>& h) {
  Vec<R> x, y, lam;
  split_h(h, reg.n, x, y, lam);
  const size_t n = reg.n;
  Vec<R> out;
  for (size_t i = 0; i < n; ++i) {
    R s = R::zero(x[i].field_ptr());
    for (size_t j = 0; j < n; ++j)
      if (j != i) s += (x[i] - x[j]).inv();
    for (const R& yk : y) s += (x[i] - yk).inv();
    out.push_back(s);
  }
  for (int s = 2; s <= 3; ++s) {
    const R mu = ring_const<R>(s == 2 ? reg.mu2 : reg.mu3);
    for (size_t i = 0; i < n; ++i) {
      R acc = -mu;
      for (size_t k = 0; k < y.size(); ++k) acc += lam[k].pow(s) * (x[i] - y[k]).inv();
      out.push_back(acc);
    }
  }
  return out;
}

/// The (q, s) pairs of the Cauchy-Binet-Minc weights C^{•q}(z_k, u)ρ^{•s}.
inline constexpr std::pair<int, int> kWeightOrders[] = {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}};

/// Essential variables of gen_* at (x, y, λ): for every z_k the star weights
/// ω¹_k = C(z_k,y)λ^{•2} - μ2, ω²_k = C(z_k,y)λ^{•3} - μ3, then the five
/// weights C^{•q}(z_k, x)(C(x,y)λ)^{•(-s)}. Layout: 2m star weights first,
/// then 5m Cauchy-Binet-Minc weights in kWeightOrders order per k.
template <class R>
Vec<R> essential_weights(const MuRegion& reg, const Vec<R>& h) {
  Vec<R> x, y, lam;
  split_h(h, reg.n, x, y, lam);
  const Vec<R> z = ring_vec<R>(reg.z);
  Vec<R> out;
  for (int s = 2; s <= 3; ++s) {
    const R mu = ring_const<R>(s == 2 ? reg.mu2 : reg.mu3);
    for (const R& zk : z) {
      R acc = -mu;
      for (size_t k = 0; k < y.size(); ++k) acc += lam[k].pow(s) * (zk - y[k]).inv();
      out.push_back(acc);
    }
  }
  Vec<R> rho_inv;  // C(x,y)λ
  for (const R& xi : x) {
    R acc = R::zero(xi.field_ptr());
    for (size_t k = 0; k < y.size(); ++k) acc += lam[k] * (xi - y[k]).inv();
    rho_inv.push_back(acc);
  }
  Vec<R> rho;
  for (const R& r : rho_inv) rho.push_back(r.inv());
  for (const R& zk : z)
    for (auto [q, s] : kWeightOrders) {
      R acc = R::zero(zk.field_ptr());
      for (size_t i = 0; i < x.size(); ++i) acc += (zk - x[i]).inv().pow(q) * rho[i].pow(s);
      out.push_back(acc);
    }
  return out;
}

/// The same weights computed from an arbitrary instance (z, u, ρ, ω¹, ω²).
FqVec essential_of_instance(const FqVec& z, const FqVec& u, const FqVec& rho, const FqVec& w1, const FqVec& w2);

ParameterizedSystem region_system(const MuRegion& reg);

/// Coefficients (low to high) of the monic polynomial with the given roots.
FqVec poly_from_roots(const Field* f, const FqVec& roots);
Fq poly_eval(const FqVec& coeffs, const Fq& t);
/// All roots lying in the field, by exhaustive evaluation.
FqVec roots_in_field(const Field* f, const FqVec& coeffs);

/// n distinct values, none marked in `used`, whose polynomial X has X'' = 0:
/// n - c roots are free and the last c solve the linear conditions on the
/// τ^k coefficients, k ≡ 2 (mod 3), k < n. Marks the values it returns.
std::optional<FqVec> sample_flat_roots(std::mt19937_64& rng, const Field* f, size_t n, std::vector<bool>& used);

enum class BearingStrategy { kStructured, kRandom };

struct BearingPoint {
  size_t n = 0;
  FqVec h0;  // (x; y; λ)
  Fq mu2, mu3;
  FqVec z;
  FqVec region_residual;  // v(h0), all zero
  std::optional<Fq> jacobian_det;  // set, and nonzero, when the joint Jacobian is square
  size_t jacobian_rank = 0;
  uint64_t attempts = 0;
  std::string strategy;
};

struct BearingSearchResult {
  std::optional<BearingPoint> point;
  uint64_t attempts = 0;
  uint64_t region_points = 0;  // points with v = 0 that reached the certificate
  std::string reason;
};

/// Searches for a certified point of (ℜ) with m fresh z-values (or the given
/// z). Deterministic per seed. A point is certified when v(h0) = 0 and the
/// joint Jacobian of (essential; region) has full row rank (nonzero
/// determinant when square).
/// With `certify` false the first region point is returned whatever its
/// Jacobian rank.
BearingSearchResult bearing_search(size_t n, size_t m, const Field* f, BearingStrategy strategy, uint64_t seed,
                                   std::optional<FqVec> z = std::nullopt, uint64_t max_attempts = 200'000,
                                   bool certify = true);

/// Full-rank certificate of the joint Jacobian at h0.
struct JacobianCertificate {
  FqMatrix jacobian;
  size_t rank = 0;
  bool full_row_rank = false;
  std::optional<Fq> det;
};
JacobianCertificate certify_region(const MuRegion& reg, const FqVec& h0);

}  // namespace char3

#endif  // CHAR3_NEIGHBOUR_HPP_
