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

#include "char3/esum.hpp"
#include "char3/series.hpp"

using namespace char3;
using planes::deg;

namespace {

const Field* gf3() { return &make_field(1); }
const Field* gf9() { return &make_field(2); }
const Field* gf27() { return &make_field(3); }

FqVec distinct(std::mt19937_64& rng, const Field* f, size_t n) {
  std::vector<uint32_t> idx(f->order());
  for (uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  FqVec v;
  for (size_t i = 0; i < n; ++i) v.push_back(f->from_index(idx[i]));
  return v;
}

Fq random_nonzero(std::mt19937_64& rng, const Field* f) {
  std::uniform_int_distribution<uint32_t> pick(1, f->order() - 1);
  return f->from_index(pick(rng));
}

ExtensionPlane<Fq> random_plane(std::mt19937_64& rng, const Field* f) {
  static const std::vector<ExtensionDegree> pool = {deg({}, {}),   deg({0}, {}),     deg({}, {0}),
                                                    deg({0}, {0}), deg({0}, {1}),    deg({1}, {0}),
                                                    deg({1}, {2}), deg({0, 0}, {0, 1})};
  ExtensionPlane<Fq> p;
  for (const auto& d : pool)
    if (rng() % 2) p.push_back({d, random_nonzero(rng, f)});
  if (p.empty()) p.push_back({pool[rng() % pool.size()], random_nonzero(rng, f)});
  return p;
}

}  // namespace

TEST_CASE("extension degree shape") {
  const ExtensionDegree d = deg({0, 0}, {1});
  CHECK(d.height() == 2);
  CHECK(d.width() == 1);
  CHECK(d.balance() == 1);
  CHECK(d.to_string() == "(<0,0>,1)");
  CHECK(deg({}, {0}).to_string() == "(∅,0)");
}

TEST_CASE("extension matrix examples") {
  const Field* f = gf9();
  const Fq x = f->from_int(1), y = f->generator();
  const FqMatrix e = extension_matrix<Fq>(f, {x, y}, {deg({0}, {}), deg({}, {0})});
  CHECK(e == FqMatrix(f, {{(x - y).inv()}}));
  const FqMatrix w = extension_matrix<Fq>(f, {x, y}, {deg({0}, {0}), deg({0}, {0})});
  CHECK(w == FqMatrix(f, {{f->zero(), (x - y).inv()}, {(y - x).inv(), f->zero()}}));
  const FqMatrix d11 = extension_matrix<Fq>(f, {x, y}, {deg({1}, {}), deg({}, {1})});
  CHECK(d11(0, 0) == (x - y).inv().pow(3));
  CHECK_THROWS_AS(extension_matrix<Fq>(f, {x, x}, {deg({0}, {}), deg({}, {0})}), CoincidentValues);
  CHECK_THROWS_AS(extension_matrix<Fq>(f, {x}, {deg({0}, {}), deg({}, {0})}), ShapeMismatch);
}

TEST_CASE("c_tilde reductions") {
  std::mt19937_64 rng(5);
  const Field* f3 = gf3();
  CHECK(c_tilde_diag<Fq>(f3, {f3->zero(), f3->one()}) ==
        FqMatrix(f3, {{f3->zero(), f3->from_int(2)}, {f3->one(), f3->zero()}}));
  for (const Field* f : {gf9(), gf27()})
    for (int t = 0; t < 30; ++t) {
      const size_t nx = 1 + t % 3, ny = 1 + (t / 3) % 3, nz = t % 4;
      const FqVec v = distinct(rng, f, nx + ny + nz);
      const FqVec x(v.begin(), v.begin() + nx), y(v.begin() + nx, v.begin() + nx + ny),
          z(v.begin() + nx + ny, v.end());
      REQUIRE(c_tilde<Fq>(f, x, y, {}) == cauchy(f, x, y));
      const FqMatrix cz = c_tilde_diag(f, z);
      for (size_t i = 0; i < nz; ++i)
        for (size_t j = 0; j < nz; ++j) REQUIRE(cz(i, j) == (i == j ? f->zero() : (z[i] - z[j]).inv()));
      // Block layout: rows (x; z), columns (y; z).
      const FqMatrix full = c_tilde(f, x, y, z);
      REQUIRE(full.rows() == nx + nz);
      REQUIRE(full.cols() == ny + nz);
      if (nz > 0) {
        REQUIRE(full(0, ny) == (x[0] - z[0]).inv());
        REQUIRE(full(nx, 0) == (z[0] - y[0]).inv());
      }
    }
}

TEST_CASE("closed-form entries agree with series differentiation") {
  // coef_{ε^p} of (d + ε)^{-(q+1)} is the normalized mixed derivative.
  std::mt19937_64 rng(11);
  for (const Field* f : {gf3(), gf9(), gf27()})
    for (int t = 0; t < 40; ++t) {
      const FqVec v = distinct(rng, f, 2);
      const int p = static_cast<int>(rng() % 6), q = static_cast<int>(rng() % 6);
      const FqMatrix e = extension_matrix<Fq>(f, v, {deg({p}, {}), deg({}, {q})});
      const Series s = (Series::constant(v[0] - v[1]) + Series::eps(f)).pow(-(q + 1));
      REQUIRE(e(0, 0) == s.coef(p));
    }
}

TEST_CASE("esum examples") {
  const Field* f = gf9();
  const FqVec z = {f->zero(), f->generator()};
  CHECK(esum<Fq>(f, z, {planes::empty<Fq>(f), planes::empty<Fq>(f)}) == f->one());
  const Fq d = z[0] - z[1];
  CHECK(esum<Fq>(f, z, planes::repeated(planes::wave<Fq>(f, f->one()), 2)) == -(d * d).inv());
  CHECK(esum<Fq>(f, z, {planes::row<Fq>(f, f->one()), planes::empty<Fq>(f)}) == f->zero());
  CHECK(esum<Fq>(f, {z[0]}, {ExtensionPlane<Fq>{}}) == f->zero());
  CHECK_THROWS_AS(esum<Fq>(f, z, {planes::empty<Fq>(f)}), ShapeMismatch);
  std::vector<ExtensionPlane<Fq>> big(11, planes::biwave<Fq>(f));
  CHECK_THROWS_AS(esum<Fq>(f, FqVec(11, f->zero()), big), TooLarge);
}

TEST_CASE("plane algebra") {
  const Field* f = gf3();
  const auto th = planes::biwave<Fq>(f);
  CHECK(th.size() == 3);
  const auto merged = planes::sum(th, planes::single(deg({1}, {0}), f->one()));
  CHECK(merged.size() == 2);
  CHECK(planes::scaled(th, f->zero()).empty());
}

TEST_CASE("esum is multilinear in each plane") {
  std::mt19937_64 rng(17);
  const Field* f = gf27();
  for (int t = 0; t < 10; ++t) {
    const size_t n = 2 + t % 3;
    const FqVec a = distinct(rng, f, n);
    std::vector<ExtensionPlane<Fq>> th;
    for (size_t i = 0; i < n; ++i) th.push_back(random_plane(rng, f));
    const size_t k = rng() % n;
    const auto p1 = random_plane(rng, f), p2 = random_plane(rng, f);
    auto t1 = th, t2 = th, t12 = th;
    t1[k] = p1;
    t2[k] = p2;
    t12[k] = planes::sum(p1, p2);
    REQUIRE(esum(f, a, t12) == esum(f, a, t1) + esum(f, a, t2));
    const Fq c = random_nonzero(rng, f);
    auto tc = th;
    tc[k] = planes::scaled(p1, c);
    REQUIRE(esum(f, a, tc) == c * esum(f, a, t1));
  }
}

TEST_CASE("esum over Laurent weights") {
  const Field* f = gf9();
  using S = Series;
  const std::vector<S> z = {S::constant(f->one()), S::constant(f->generator())};
  const S w = S::monomial(f->one(), -1);
  const S got = esum<S>(f, z, planes::repeated(planes::wave<S>(f, w), 2));
  const Fq d = f->one() - f->generator();
  CHECK(got == S::monomial(-(d * d).inv(), -2));
}

TEST_CASE("permanent of C~(z) equals the matching sum") {
  std::mt19937_64 rng(23);
  for (const Field* f : {gf9(), gf27()})
    for (size_t n = 0; n <= 6; ++n)
      for (int t = 0; t < 8; ++t) {
        const FqVec z = distinct(rng, f, n);
        REQUIRE(permanent_naive(c_tilde_diag(f, z)) == matching_formula(f, z));
      }
  const Field* f = gf9();
  const FqVec z3 = {f->zero(), f->one(), f->generator()};
  CHECK(permanent_naive(c_tilde_diag(f, z3)) == f->zero());
}

TEST_CASE("prolongation with zero weights drops the derivative terms") {
  std::mt19937_64 rng(29);
  const Field* f = gf9();
  for (int t = 0; t < 10; ++t) {
    const FqVec v = distinct(rng, f, 3);
    const FqVec beta = {v[0], v[1]}, gamma = {v[2]};
    const std::vector<ExtensionPlane<Fq>> g = {planes::row<Fq>(f, f->one()), planes::column<Fq>(f, f->one())};
    const auto side = t % 2 ? ProlongationSide::kLeft : ProlongationSide::kRight;
    const auto [ext, reduced] = prolongation_sides(f, beta, g, side, gamma, {f->zero()}, g);
    REQUIRE(ext == reduced);
    REQUIRE(ext == esum(f, concat<Fq>({beta, gamma}), concat_planes<Fq>({g, {planes::empty<Fq>(f)}})));
  }
}
