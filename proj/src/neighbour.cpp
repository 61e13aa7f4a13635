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


#include "char3/neighbour.hpp"

#include <algorithm>
#include <random>

namespace char3 {

namespace {

NeighbourTrace neighbouring_once(const Field* f, const ParameterizedSystem& sys,
                                 const std::function<Series(const Vec<Series>&)>& fn_of_h, int d, const FqVec& h0,
                                 const FqVec& target, NeighbourRule rule, const FqMatrix& jinv) {
  NeighbourTrace trace;
  trace.h0 = h0;
  trace.budget = series_budget();
  const FqVec u0 = sys.u_field(h0);
  Vec<Series> h = ring_vec<Series>(h0);
  for (int k = 1; k <= d; ++k) {
    const Vec<Series> us = sys.u_series(h);
    const Vec<Series> vs = sys.v_series(h);
    FqVec rhs;
    for (size_t i = 0; i < sys.dim_u; ++i) {
      Fq r = -us[i].coef(k);
      if (k == 1) r += rule == NeighbourRule::kCorrected ? target[i] - u0[i] : u0[i] - target[i];
      rhs.push_back(r);
    }
    for (size_t i = 0; i < sys.dim_v; ++i) rhs.push_back(rule == NeighbourRule::kCorrected ? -vs[i].coef(k) : f->zero());
    const FqVec step = jinv.apply(rhs);
    for (size_t i = 0; i < h.size(); ++i)
      if (!step[i].is_zero()) h[i] += Series::monomial(step[i], k);
    trace.steps.push_back(step);
  }
  const Series value = fn_of_h(h);
  trace.value = f->zero();
  for (int i = 0; i <= d; ++i) trace.value += value.coef(i);
  return trace;
}

}  // namespace

NeighbourTrace neighbouring_compute_h(const Field* f, const ParameterizedSystem& sys,
                                      const std::function<Series(const Vec<Series>&)>& fn_of_h, int d,
                                      const FqVec& h0, const FqVec& target, NeighbourRule rule) {
  if (h0.size() != sys.dim_h) throw ShapeMismatch("bearing point has the wrong dimension");
  if (target.size() != sys.dim_u) throw ShapeMismatch("target has the wrong dimension");
  if (sys.dim_u + sys.dim_v != sys.dim_h) throw ShapeMismatch("neighbouring needs dim(u) + dim(v) = dim(h)");
  for (const Fq& r : sys.v_field(h0))
    if (!r.is_zero()) throw RegionViolation("v(h0) != 0");
  FqMatrix jinv;
  try {
    jinv = inverse(jacobian(f, sys.joint_dual, h0));
  } catch (const SingularSystem&) {
    throw SingularJacobian("Jacobian of (u; v) is singular at the bearing point");
  }
  const int base = series_budget();
  for (int scale = 1;; scale *= 2) {
    ScopedSeriesBudget budget(base * scale);
    try {
      return neighbouring_once(f, sys, fn_of_h, d, h0, target, rule, jinv);
    } catch (const PrecisionExhausted&) {
      if (scale >= 64) throw;
    }
  }
}

NeighbourTrace neighbouring_compute(const Field* f, const ParameterizedSystem& sys,
                                    const std::function<Series(const Vec<Series>&)>& fn, int d, const FqVec& h0,
                                    const FqVec& target, NeighbourRule rule) {
  auto u_series = sys.u_series;
  return neighbouring_compute_h(
      f, sys, [&fn, u_series](const Vec<Series>& h) { return fn(u_series(h)); }, d, h0, target, rule);
}

FqVec essential_of_instance(const FqVec& z, const FqVec& u, const FqVec& rho, const FqVec& w1, const FqVec& w2) {
  if (rho.size() != u.size()) throw ShapeMismatch("ρ and u differ in length");
  if (w1.size() != z.size() || w2.size() != z.size()) throw ShapeMismatch("ω and z differ in length");
  FqVec out = concat<Fq>({w1, w2});
  for (const Fq& zk : z)
    for (auto [q, s] : kWeightOrders) {
      Fq acc = zk.field().zero();
      for (size_t i = 0; i < u.size(); ++i) {
        const Fq d = zk - u[i];
        if (d.is_zero()) throw CoincidentNodes("z and u share a value");
        acc += d.inv().pow(q) * rho[i].pow(s);
      }
      out.push_back(acc);
    }
  return out;
}

ParameterizedSystem region_system(const MuRegion& reg) {
  const size_t n = reg.n, m = reg.z.size();
  return make_system(
      5 * n, 7 * m, 3 * n,
      [reg](const auto& h) { return essential_weights<typename std::decay_t<decltype(h)>::value_type>(reg, h); },
      [reg](const auto& h) { return region_vi<typename std::decay_t<decltype(h)>::value_type>(reg, h); });
}

JacobianCertificate certify_region(const MuRegion& reg, const FqVec& h0) {
  const ParameterizedSystem sys = region_system(reg);
  JacobianCertificate c;
  c.jacobian = jacobian(h0.front().field_ptr(), sys.joint_dual, h0);
  c.rank = rank(c.jacobian);
  c.full_row_rank = c.rank == c.jacobian.rows();
  if (c.jacobian.is_square()) c.det = det_elimination(c.jacobian);
  return c;
}

FqVec poly_from_roots(const Field* f, const FqVec& roots) {
  FqVec c{f->one()};
  for (const Fq& a : roots) {
    FqVec next(c.size() + 1, f->zero());
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= a * c[i];
    }
    c = std::move(next);
  }
  return c;
}

Fq poly_eval(const FqVec& c, const Fq& t) {
  Fq v = t.field().zero();
  for (size_t j = c.size(); j-- > 0;) v = v * t + c[j];
  return v;
}

FqVec roots_in_field(const Field* f, const FqVec& c) {
  FqVec out;
  for (uint32_t i = 0; i < f->order(); ++i) {
    const Fq t = f->from_index(i);
    if (poly_eval(c, t).is_zero()) out.push_back(t);
  }
  return out;
}

std::optional<FqVec> sample_flat_roots(std::mt19937_64& rng, const Field* f, size_t n, std::vector<bool>& used) {
  std::vector<size_t> cons;
  for (size_t k = 2; k < n; k += 3) cons.push_back(k);
  const size_t c = cons.size();
  FqVec a;
  while (a.size() < n - c) {
    const uint32_t i = static_cast<uint32_t>(rng() % f->order());
    if (!used[i]) {
      used[i] = true;
      a.push_back(f->from_index(i));
    }
  }
  if (c == 0) return a;
  const FqVec pa = poly_from_roots(f, a);
  FqMatrix sys(f, c, c);
  FqVec rhs(c, f->zero());
  for (size_t r = 0; r < c; ++r) {
    const long k = static_cast<long>(cons[r]);
    for (size_t j = 0; j < c; ++j) {
      const long ai = k - static_cast<long>(j);
      if (ai >= 0 && ai < static_cast<long>(pa.size())) sys(r, j) = pa[static_cast<size_t>(ai)];
    }
    const long ai = k - static_cast<long>(c);
    if (ai >= 0 && ai < static_cast<long>(pa.size())) rhs[r] = -pa[static_cast<size_t>(ai)];
  }
  FqVec b;
  try {
    b = solve(sys, rhs);
  } catch (const SingularSystem&) {
    return std::nullopt;
  }
  b.push_back(f->one());
  const FqVec broots = roots_in_field(f, b);
  if (broots.size() != c) return std::nullopt;
  for (const Fq& r : broots) {
    if (used[r.index()]) return std::nullopt;
    used[r.index()] = true;
  }
  a.insert(a.end(), broots.begin(), broots.end());
  return a;
}

namespace {

using Rng = std::mt19937_64;

Fq random_nonzero(Rng& rng, const Field* f) {
  return f->from_index(1 + static_cast<uint32_t>(rng() % (f->order() - 1)));
}

struct Candidate {
  FqVec x, y, lam;
};

// λ ∈ {±1}: y± are the full fibres of Σ 1/(τ - x_i) over ∓α.
std::vector<Candidate> structured_candidates(Rng& rng, const Field* f, size_t n) {
  std::vector<bool> used(f->order(), false);
  const auto x = sample_flat_roots(rng, f, n, used);
  if (!x) return {};
  std::vector<std::vector<uint32_t>> fibre(f->order());
  for (uint32_t i = 0; i < f->order(); ++i) {
    if (used[i]) continue;
    const Fq t = f->from_index(i);
    Fq s = f->zero();
    for (const Fq& xi : *x) s += (t - xi).inv();
    fibre[s.index()].push_back(i);
  }
  std::vector<Candidate> out;
  for (uint32_t v = 1; v < f->order(); ++v) {
    const Fq alpha = f->from_index(v);
    const uint32_t w = (-alpha).index();
    if (v > w || fibre[v].size() != n || fibre[w].size() != n) continue;
    Candidate c;
    c.x = *x;
    for (uint32_t i : fibre[v]) c.y.push_back(f->from_index(i));
    for (uint32_t i : fibre[w]) c.y.push_back(f->from_index(i));
    c.lam = FqVec(n, f->one());
    c.lam.resize(2 * n, -f->one());
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<FqVec> distinct_sample(Rng& rng, const Field* f, size_t k, std::vector<bool>& used) {
  size_t free = 0;
  for (bool u : used) free += !u;
  if (free < k) return std::nullopt;
  FqVec out;
  while (out.size() < k) {
    const uint32_t i = static_cast<uint32_t>(rng() % f->order());
    if (!used[i]) {
      used[i] = true;
      out.push_back(f->from_index(i));
    }
  }
  return out;
}

std::vector<Candidate> random_candidates(Rng& rng, const Field* f, size_t n) {
  std::vector<bool> used(f->order(), false);
  if (n == 1) {
    const auto y = distinct_sample(rng, f, 2, used);
    const Fq x = -((*y)[0] + (*y)[1]);
    if (used[x.index()]) return {};
    return {{{x}, *y, {random_nonzero(rng, f), random_nonzero(rng, f)}}};
  }
  // n = 2: y3, y4 from the two region rows, λ3, λ4 from the λ rows.
  auto xv = distinct_sample(rng, f, 2, used);
  auto yv = distinct_sample(rng, f, 2, used);
  const FqVec& x = *xv;
  FqVec y = *yv;
  Fq r[2];
  for (size_t i = 0; i < 2; ++i) r[i] = -(x[i] - x[1 - i]).inv() - (x[i] - y[0]).inv() - (x[i] - y[1]).inv();
  std::vector<Candidate> out;
  for (uint32_t i3 = 0; i3 < f->order() && out.empty(); ++i3) {
    if (used[i3]) continue;
    const Fq y3 = f->from_index(i3);
    const Fq rest = r[0] - (x[0] - y3).inv();
    if (rest.is_zero()) continue;
    const Fq y4 = x[0] - rest.inv();
    if (used[y4.index()] || y4 == y3) continue;
    if (!(r[1] - (x[1] - y3).inv() - (x[1] - y4).inv()).is_zero()) continue;
    FqVec yy = {y[0], y[1], y3, y4};
    FqVec d(4);
    for (size_t k = 0; k < 4; ++k) d[k] = (x[0] - yy[k]).inv() - (x[1] - yy[k]).inv();
    const Fq l1 = random_nonzero(rng, f), l2 = random_nonzero(rng, f);
    const Fq r2 = -(d[0] * l1.pow(2) + d[1] * l2.pow(2)), r3 = -(d[0] * l1.pow(3) + d[1] * l2.pow(3));
    for (uint32_t i = 1; i < f->order(); ++i) {
      const Fq l3 = f->from_index(i);
      const auto s = sqrt((r2 - d[2] * l3.pow(2)) * d[3].inv());
      if (!s || s->is_zero()) continue;
      for (const Fq& l4 : {*s, -*s})
        if (d[2] * l3.pow(3) + d[3] * l4.pow(3) == r3) {
          out.push_back({x, yy, {l1, l2, l3, l4}});
          break;
        }
      if (!out.empty()) break;
    }
  }
  return out;
}

}  // namespace

BearingSearchResult bearing_search(size_t n, size_t m, const Field* f, BearingStrategy strategy, uint64_t seed,
                                   std::optional<FqVec> z, uint64_t max_attempts, bool certify) {
  if (n == 0) throw InvalidArgument("bearing search needs n >= 1");
  if (f->order() <= 3 * n + m) throw InvalidArgument("field too small for 3n + m distinct nodes");
  if (z && z->size() != m) throw ShapeMismatch("z must have m entries");
  BearingSearchResult result;
  if (strategy == BearingStrategy::kStructured && n % 3 == 2) {
    result.reason = "structured ansatz (λ = ±1, X'' = 0) needs n != 2 (mod 3)";
    return result;
  }
  if (strategy == BearingStrategy::kRandom && n > 2) {
    result.reason = "random strategy solves the λ-subsystem only for n <= 2";
    return result;
  }
  Rng rng(seed);
  for (uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    result.attempts = attempt;
    const auto cands =
        strategy == BearingStrategy::kStructured ? structured_candidates(rng, f, n) : random_candidates(rng, f, n);
    for (const Candidate& c : cands) {
      std::vector<bool> used(f->order(), false);
      for (const Fq& v : concat<Fq>({c.x, c.y})) used[v.index()] = true;
      FqVec zz;
      if (z) {
        bool clash = false;
        for (const Fq& v : *z) clash |= used[v.index()];
        if (clash) continue;
        zz = *z;
      } else {
        const auto s = distinct_sample(rng, f, m, used);
        if (!s) continue;
        zz = *s;
      }
      MuRegion reg{n, f->zero(), f->zero(), zz};
      FqVec cx(c.y.size(), f->zero());
      for (size_t k = 0; k < c.y.size(); ++k) cx[k] = (c.x[0] - c.y[k]).inv();
      for (size_t k = 0; k < c.y.size(); ++k) {
        reg.mu2 += cx[k] * c.lam[k].pow(2);
        reg.mu3 += cx[k] * c.lam[k].pow(3);
      }
      const FqVec h0 = concat<Fq>({c.x, c.y, c.lam});
      FqVec residual;
      try {
        residual = region_vi(reg, h0);
      } catch (const DivisionByZero&) {
        continue;
      }
      if (!std::all_of(residual.begin(), residual.end(), [](const Fq& r) { return r.is_zero(); })) continue;
      ++result.region_points;
      JacobianCertificate cert;
      try {
        cert = certify_region(reg, h0);
      } catch (const PoleAtPoint&) {
        continue;
      }
      if (certify && (!cert.full_row_rank || (cert.det && cert.det->is_zero()))) continue;
      BearingPoint p;
      p.n = n;
      p.h0 = h0;
      p.mu2 = reg.mu2;
      p.mu3 = reg.mu3;
      p.z = zz;
      p.region_residual = residual;
      p.jacobian_det = cert.det;
      p.jacobian_rank = cert.rank;
      p.attempts = attempt;
      p.strategy = strategy == BearingStrategy::kStructured ? "structured" : "random";
      result.point = p;
      return result;
    }
  }
  result.reason = "no certified point after " + std::to_string(result.attempts) + " attempts (" +
                  std::to_string(result.region_points) + " region points failed the Jacobian certificate)";
  return result;
}

}  // namespace char3
