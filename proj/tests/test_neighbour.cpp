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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "char3/neighbour.hpp"

using namespace char3;

namespace {

const Field* gf3() { return &make_field(1); }
const Field* gf27() { return &make_field(3); }
const Field* gf81() { return &make_field(4); }

Fq random_fq(std::mt19937_64& rng, const Field* f) {
  return f->from_index(static_cast<uint32_t>(rng() % f->order()));
}

FqVec random_vec(std::mt19937_64& rng, const Field* f, size_t n) {
  FqVec v;
  for (size_t i = 0; i < n; ++i) v.push_back(random_fq(rng, f));
  return v;
}

// Sparse polynomial: coefficient times a monomial exponent vector.
struct Poly {
  std::vector<std::pair<Fq, std::vector<int>>> terms;

  template <class R>
  R operator()(const Vec<R>& x) const {
    R acc = ring_const<R>(terms.front().first.field().zero());
    for (const auto& [c, e] : terms) {
      R t = ring_const<R>(c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) t = t * x[i].pow(e[i]);
      acc += t;
    }
    return acc;
  }
};

Poly random_poly(std::mt19937_64& rng, const Field* f, size_t vars, int degree) {
  Poly p;
  const int terms = 1 + static_cast<int>(rng() % 6);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(vars, 0);
    int left = static_cast<int>(rng() % (degree + 1));
    for (size_t i = 0; i < vars && left > 0; ++i) {
      const int k = i + 1 == vars ? left : static_cast<int>(rng() % (left + 1));
      e[i] = k;
      left -= k;
    }
    p.terms.push_back({random_fq(rng, f), e});
  }
  return p;
}

ParameterizedSystem identity_system(size_t n) {
  return make_system(
      n, n, 0, [](const auto& h) { return h; },
      [](const auto& h) { return std::decay_t<decltype(h)>{}; });
}

}  // namespace

TEST_CASE("poly_extrapolate: hand expansion and constants") {
  const Field* f = gf3();
  auto sq = [](const Vec<Series>& x) { return x[0] * x[0]; };
  CHECK(poly_extrapolate(f, sq, 2, {f->from_int(1)}, {f->from_int(2)}) == f->from_int(1));
  auto seven = [f](const Vec<Series>&) { return Series::constant(f->from_int(7)); };
  CHECK(poly_extrapolate(f, seven, 0, {f->from_int(2)}, {f->from_int(0)}) == f->from_int(7));
}

TEST_CASE("poly_extrapolate: random cubics in two variables") {
  const Field* f = gf27();
  std::mt19937_64 rng(11);
  const Poly p = random_poly(rng, f, 2, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const FqVec x = random_vec(rng, f, 2), chi = random_vec(rng, f, 2);
    CHECK(poly_extrapolate(f, p, 3, x, chi) == p(chi));
  }
}

TEST_CASE("poly_extrapolate: 100 random polynomials of degree <= 4 in <= 3 variables") {
  const Field* f = gf81();
  std::mt19937_64 rng(12);
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const size_t vars = 1 + rng() % 3;
    const int degree = static_cast<int>(rng() % 5);
    const Poly p = random_poly(rng, f, vars, degree);
    const FqVec x = random_vec(rng, f, vars), chi = random_vec(rng, f, vars);
    agree += poly_extrapolate(f, p, degree, x, chi) == p(chi);
  }
  CHECK(agree == 100);
}

TEST_CASE("jacobian: closed forms") {
  const Field* f = gf3();
  auto sq = [](const auto& h) { return std::decay_t<decltype(h)>{h[0] * h[0]}; };
  CHECK(jacobian(f, sq, {f->from_int(2)}) == FqMatrix(f, {{f->from_int(1)}}));
  auto cauchy1 = [](const auto& h) { return std::decay_t<decltype(h)>{(h[0] - h[1]).inv()}; };
  CHECK(jacobian(f, cauchy1, {f->from_int(0), f->from_int(1)}) == FqMatrix(f, {{f->from_int(2), f->from_int(1)}}));
  CHECK_THROWS_AS(jacobian(f, cauchy1, {f->from_int(1), f->from_int(1)}), PoleAtPoint);

  const Field* g = gf81();
  std::mt19937_64 rng(13);
  const FqMatrix a(g, 3, 2, random_vec(rng, g, 6));
  auto linear = [&a](const auto& h) {
    using R = typename std::decay_t<decltype(h)>::value_type;
    std::decay_t<decltype(h)> out;
    for (size_t i = 0; i < a.rows(); ++i) {
      R acc = ring_const<R>(a.field_ptr()->zero());
      for (size_t j = 0; j < a.cols(); ++j) acc += ring_const<R>(a(i, j)) * h[j];
      out.push_back(acc);
    }
    return out;
  };
  CHECK(jacobian(g, linear, random_vec(rng, g, 2)) == a);

  int agree = 0;
  for (int trial = 0; trial < 50; ++trial) {
    FqVec p = random_vec(rng, g, 2);
    if (p[0] == p[1]) p[1] += g->one();
    const Fq d2 = (p[0] - p[1]).pow(2).inv();
    agree += jacobian(g, cauchy1, p) == FqMatrix(g, {{-d2, d2}});
  }
  CHECK(agree == 50);
}

TEST_CASE("neighbouring_compute: unconstrained targets") {
  const Field* f = gf3();
  const ParameterizedSystem id1 = identity_system(1);
  auto sq = [](const Vec<Series>& u) { return u[0] * u[0]; };
  CHECK(neighbouring_compute(f, id1, sq, 2, {f->from_int(1)}, {f->from_int(2)}).value == f->from_int(1));

  const Field* g = gf81();
  std::mt19937_64 rng(14);
  int agree = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const size_t vars = 1 + rng() % 3;
    const int degree = static_cast<int>(rng() % 5);
    const Poly p = random_poly(rng, g, vars, degree);
    const FqVec h0 = random_vec(rng, g, vars), target = random_vec(rng, g, vars);
    const auto trace = neighbouring_compute(g, identity_system(vars), p, degree, h0, target);
    agree += trace.value == p(target);
  }
  CHECK(agree == 50);
}

TEST_CASE("neighbouring_compute: one coordinate pinned by the region") {
  const Field* f = gf81();
  const ParameterizedSystem sys = make_system(
      2, 1, 1, [](const auto& h) { return std::decay_t<decltype(h)>{h[0]}; },
      [](const auto& h) { return std::decay_t<decltype(h)>{h[1]}; });
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly p = random_poly(rng, f, 1, 2);
    const FqVec h0 = {random_fq(rng, f), f->zero()};
    const FqVec target = {random_fq(rng, f)};
    CHECK(neighbouring_compute(f, sys, p, 2, h0, target).value == p(target));
  }
}

TEST_CASE("neighbouring_compute: curved region needs the region correction") {
  // Region a·b = 1, u = a + b: the path must bend to stay on the hyperbola.
  const Field* f = gf81();
  const ParameterizedSystem sys = make_system(
      2, 1, 1, [](const auto& h) { return std::decay_t<decltype(h)>{h[0] + h[1]}; },
      [](const auto& h) {
        using R = typename std::decay_t<decltype(h)>::value_type;
        return std::decay_t<decltype(h)>{h[0] * h[1] - R::one(h[0].field_ptr())};
      });
  std::mt19937_64 rng(16);
  int agree = 0, literal_agree = 0, trials = 0;
  while (trials < 20) {
    const Fq a = random_fq(rng, f);
    if (a.is_zero() || a * a == f->one()) continue;  // singular at a = ±1
    ++trials;
    const Poly p = random_poly(rng, f, 1, 3);
    const FqVec h0 = {a, a.inv()}, target = {random_fq(rng, f)};
    agree += neighbouring_compute(f, sys, p, 3, h0, target).value == p(target);
    literal_agree += neighbouring_compute(f, sys, p, 3, h0, target, NeighbourRule::kLiteral).value == p(target);
  }
  CHECK(agree == 20);
  CHECK(literal_agree < 20);
}

TEST_CASE("neighbouring_compute: contracts") {
  const Field* f = gf27();
  auto sq = [](const Vec<Series>& u) { return u[0] * u[0]; };
  const ParameterizedSystem squared = make_system(
      1, 1, 0, [](const auto& h) { return std::decay_t<decltype(h)>{h[0] * h[0]}; },
      [](const auto& h) { return std::decay_t<decltype(h)>{}; });
  CHECK_THROWS_AS(neighbouring_compute(f, squared, sq, 2, {f->zero()}, {f->one()}), SingularJacobian);
  const ParameterizedSystem pinned = make_system(
      2, 1, 1, [](const auto& h) { return std::decay_t<decltype(h)>{h[0]}; },
      [](const auto& h) { return std::decay_t<decltype(h)>{h[1]}; });
  CHECK_THROWS_AS(neighbouring_compute(f, pinned, sq, 2, {f->zero(), f->one()}, {f->one()}), RegionViolation);
}

TEST_CASE("bearing_search: small region, replayable certificate") {
  const Field* f = gf27();
  for (auto strategy : {BearingStrategy::kRandom, BearingStrategy::kStructured}) {
    const auto r = bearing_search(1, 0, f, strategy, 7);
    REQUIRE(r.point);
    const BearingPoint& p = *r.point;
    MuRegion reg{1, p.mu2, p.mu3, p.z};
    for (const Fq& v : region_vi(reg, p.h0)) CHECK(v.is_zero());
    const auto cert = certify_region(reg, p.h0);
    CHECK(cert.full_row_rank);
    CHECK(cert.rank == p.jacobian_rank);
    const auto again = bearing_search(1, 0, f, strategy, 7);
    CHECK(again.point->h0 == p.h0);
  }
  CHECK_THROWS_AS(bearing_search(2, 0, gf3(), BearingStrategy::kRandom, 1), InvalidArgument);
}

TEST_CASE("bearing_search: failure is reported, not thrown") {
  const auto r = bearing_search(2, 1, gf27(), BearingStrategy::kRandom, 3, std::nullopt, 50);
  CHECK_FALSE(r.point);
  CHECK(r.attempts == 50);
  CHECK_FALSE(r.reason.empty());
  CHECK_FALSE(bearing_search(2, 1, gf81(), BearingStrategy::kStructured, 3).point);
}

TEST_CASE("region system: essential weights agree with the instance formula") {
  const Field* f = gf81();
  std::mt19937_64 rng(17);
  const auto r = bearing_search(4, 1, f, BearingStrategy::kStructured, 5, std::nullopt, 200);
  // Structured points exist but the essential block is rank deficient there.
  CHECK_FALSE(r.point);
  CHECK(r.region_points > 0);

  MuRegion reg{1, random_fq(rng, f), random_fq(rng, f), random_vec(rng, f, 2)};
  FqVec h0;
  while (true) {
    h0 = random_vec(rng, f, 5);
    try {
      const FqVec e = essential_weights(reg, h0);
      FqVec x{h0[0]}, y{h0[1], h0[2]}, lam{h0[3], h0[4]};
      FqVec w1, w2;
      for (const Fq& zk : reg.z) {
        Fq a = -reg.mu2, b = -reg.mu3;
        for (size_t k = 0; k < 2; ++k) {
          a += lam[k].pow(2) * (zk - y[k]).inv();
          b += lam[k].pow(3) * (zk - y[k]).inv();
        }
        w1.push_back(a);
        w2.push_back(b);
      }
      Fq rho = f->zero();
      for (size_t k = 0; k < 2; ++k) rho += lam[k] * (x[0] - y[k]).inv();
      CHECK(e == essential_of_instance(reg.z, x, {rho.inv()}, w1, w2));
      break;
    } catch (const DivisionByZero&) {
    }
  }
  const ParameterizedSystem sys = region_system(reg);
  CHECK(sys.dim_h == 5);
  CHECK(sys.dim_u == 14);
  CHECK(sys.dim_v == 3);
}
