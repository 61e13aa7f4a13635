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

#include "char3/genfun.hpp"

using namespace char3;

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

FqVec random_vec(std::mt19937_64& rng, const Field* f, size_t n) {
  std::uniform_int_distribution<uint32_t> pick(0, f->order() - 1);
  FqVec v;
  for (size_t i = 0; i < n; ++i) v.push_back(f->from_index(pick(rng)));
  return v;
}

// Splits n distinct values into consecutive blocks of the given sizes.
std::vector<FqVec> distinct_blocks(std::mt19937_64& rng, const Field* f, std::vector<size_t> sizes) {
  size_t total = 0;
  for (size_t s : sizes) total += s;
  const FqVec v = distinct(rng, f, total);
  std::vector<FqVec> out;
  size_t pos = 0;
  for (size_t s : sizes) {
    out.emplace_back(v.begin() + static_cast<long>(pos), v.begin() + static_cast<long>(pos + s));
    pos += s;
  }
  return out;
}

const StarReading kReadings[] = {{StarRows::kConcatenated, StarPairs::kComplementRows},
                                 {StarRows::kJDoubled, StarPairs::kComplementRows},
                                 {StarRows::kConcatenated, StarPairs::kChosenRows},
                                 {StarRows::kJDoubled, StarPairs::kChosenRows}};

}  // namespace

TEST_CASE("dis examples") {
  const Field* f = gf3();
  const Fq a1 = f->from_int(2), a2 = f->one(), b1 = f->one(), b2 = f->one();
  CHECK(dis<Fq>(f, {f->zero()}, {a1}, {b1}, 1, 0) == a1);
  CHECK(dis<Fq>(f, {f->zero(), f->one()}, {a1, a2}, {b1, b2}, 2, 1) == a1 * a2 * (b1 + b2));
  CHECK(dis<Fq>(f, {f->one(), f->one()}, {a1, a2}, {b1, b2}, 2, 1) == f->zero());
  CHECK(dis<Fq>(f, {f->one()}, {a1}, {b1}, 2, 0) == f->zero());
  CHECK_THROWS_AS(dis<Fq>(f, {f->one()}, {a1}, {b1}, 0, 1), InvalidArgument);
}

TEST_CASE("dis agrees with the referee") {
  std::mt19937_64 rng(41);
  for (const Field* f : {gf9(), gf27()})
    for (int t = 0; t < 30; ++t) {
      const size_t r = 1 + t % 6, p = rng() % (r + 1), q = rng() % (p + 1);
      const FqVec u = random_vec(rng, f, r), a = random_vec(rng, f, r), b = random_vec(rng, f, r);
      REQUIRE(dis(f, u, a, b, p, q) == referee::dis(f, u, a, b, p, q));
    }
}

TEST_CASE("gen_star examples") {
  const Field* f = gf9();
  CHECK(gen_star<Fq>(f, {}, {f->one()}, {f->one()}, {}, {}) == f->one());
  const FqVec z = {f->zero(), f->one()}, zero2 = {f->zero(), f->zero()};
  CHECK(gen_star<Fq>(f, z, {f->generator()}, {f->one()}, zero2, zero2) == f->zero());
  CHECK_THROWS_AS(gen_star<Fq>(f, {f->one()}, {}, {}, {f->one()}, {f->one()}), InvalidArgument);
}

TEST_CASE("gen_star hand enumeration, dim(z)=2, dim(u)=1") {
  std::mt19937_64 rng(43);
  const Field* f = gf9();
  for (int t = 0; t < 10; ++t) {
    const auto b = distinct_blocks(rng, f, {2, 1});
    const FqVec &z = b[0], &u = b[1];
    const FqVec rho = random_vec(rng, f, 1), w1 = random_vec(rng, f, 2), w2 = random_vec(rng, f, 2);
    // (I,J) in {({1},∅), ({2},∅), (∅,{1}), (∅,{2})}; one row against one column.
    Fq expect = f->zero();
    for (size_t s = 0; s < 2; ++s) {
      const Fq pair = (z[1 - s] - z[s]).inv();
      const Fq row = rho[0] * (z[s] - u[0]).inv();
      expect += (w1[s] + w2[s]) * pair * row;
    }
    REQUIRE(gen_star(f, z, u, rho, w1, w2) == expect);
  }
}

TEST_CASE("gen_star agrees with the referee under every reading") {
  std::mt19937_64 rng(47);
  const Field* f = gf27();
  for (int t = 0; t < 24; ++t) {
    const size_t m = 2 * (1 + t % 3), du = 1 + t % 4;
    const auto b = distinct_blocks(rng, f, {m, du});
    const FqVec rho = random_vec(rng, f, du), w1 = random_vec(rng, f, m), w2 = random_vec(rng, f, m);
    for (const auto& rd : kReadings) REQUIRE(gen_star(f, b[0], b[1], rho, w1, w2, rd) == referee::gen_star(f, b[0], b[1], rho, w1, w2, rd));
  }
}

TEST_CASE("gen_star pairing orientations differ by the sign (-1)^{dim(z)/2}") {
  std::mt19937_64 rng(53);
  const Field* f = gf27();
  for (int t = 0; t < 10; ++t) {
    const size_t m = 2 * (1 + t % 3);
    const auto b = distinct_blocks(rng, f, {m, 3});
    const FqVec rho = random_vec(rng, f, 3), w1 = random_vec(rng, f, m), w2 = random_vec(rng, f, m);
    const Fq a = gen_star(f, b[0], b[1], rho, w1, w2, {StarRows::kJDoubled, StarPairs::kComplementRows});
    const Fq c = gen_star(f, b[0], b[1], rho, w1, w2, {StarRows::kJDoubled, StarPairs::kChosenRows});
    REQUIRE(c == ((m / 2) % 2 ? -a : a));
  }
}

TEST_CASE("gen_2waves examples") {
  const Field* f = gf9();
  const Fq t1 = f->generator(), r1 = f->from_int(2);
  CHECK(gen_2waves<Fq>(f, {}, {}, {}, {}, {t1}, {r1}) == f->one());
  std::mt19937_64 rng(59);
  for (int t = 0; t < 5; ++t) {
    const auto b = distinct_blocks(rng, f, {3, 1, 2});
    const FqVec zero3(3, f->zero()), rho = random_vec(rng, f, 2);
    // α = 0: only I = all of z survives.
    Fq expect = f->zero();
    for_each_subset(2, 1, [&](const Index& j) {
      expect += rho[j[0]] * permanent_naive(c_tilde(f, b[1], select(b[2], j), b[0]));
    });
    REQUIRE(gen_2waves(f, b[0], zero3, {}, b[1], b[2], rho) == expect);
  }
}

TEST_CASE("gen_2waves with no biwaves equals gen_wave") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    const Field* f = t % 2 ? gf27() : gf9();
    const size_t dz = t % 4, dh = t % 3, dt = dh + t % 2 + (t / 4) % 2;
    const auto b = distinct_blocks(rng, f, {dz, dh, dt});
    const FqVec alpha = random_vec(rng, f, dz), rho = random_vec(rng, f, dt);
    const Fq wave = gen_wave(f, b[0], alpha, b[1], b[2], rho);
    REQUIRE(gen_2waves(f, b[0], alpha, {}, b[1], b[2], rho) == wave);
    REQUIRE(referee::gen_wave(f, b[0], alpha, b[1], b[2], rho) == wave);
  }
}

TEST_CASE("gen_2waves agrees with the referee") {
  std::mt19937_64 rng(67);
  const Field* f = gf27();
  for (int t = 0; t < 12; ++t) {
    const size_t dz = t % 3, dw = 1 + t % 2, dh = t % 2, dt = dh + 1;
    const auto b = distinct_blocks(rng, f, {dz, dw, dh, dt});
    const FqVec alpha = random_vec(rng, f, dz), rho = random_vec(rng, f, dt);
    REQUIRE(gen_2waves(f, b[0], alpha, b[1], b[2], b[3], rho) ==
            referee::gen_2waves(f, b[0], alpha, b[1], b[2], b[3], rho));
  }
}

TEST_CASE("gen_wave examples and homogeneity") {
  const Field* f = gf9();
  const Fq h = f->one(), t1 = f->generator(), r1 = f->from_int(2);
  CHECK(gen_wave<Fq>(f, {}, {}, {h}, {t1}, {r1}) == r1 * (h - t1).inv());
  std::mt19937_64 rng(71);
  for (int t = 0; t < 10; ++t) {
    const size_t dz = 1 + t % 3, dh = 1 + t % 2, dt = dh + 1;
    const auto b = distinct_blocks(rng, gf27(), {dz, dh, dt});
    const FqVec alpha = random_vec(rng, gf27(), dz), rho = random_vec(rng, gf27(), dt);
    const Fq c = gf27()->generator();
    FqVec crho;
    for (const Fq& r : rho) crho.push_back(c * r);
    REQUIRE(gen_wave(gf27(), b[0], alpha, b[1], b[2], crho) ==
            c.pow(static_cast<long long>(dh)) * gen_wave(gf27(), b[0], alpha, b[1], b[2], rho));
  }
}

TEST_CASE("gen_base forms") {
  std::mt19937_64 rng(73);
  const Field* f = gf27();
  {
    // dim(u) = 0: the hatted permanent of the block argument.
    const auto b = distinct_blocks(rng, f, {1, 2});
    const FqVec rho = random_vec(rng, f, 2);
    Matrix<Fq> a(f, 2, 3);
    a(0, 0) = f->one();
    for (size_t j = 0; j < 2; ++j) a(1, 1 + j) = rho[j] * (b[0][0] - b[1][j]).inv();
    CHECK(gen_base<Fq>(f, {}, b[0], b[1], rho, BaseForm::kBasePermanent) == hatted_per(a));
  }
  int agree = 0;
  for (int t = 0; t < 20; ++t) {
    const size_t du = 1 + t % 3, dh = 1 + t % 2, dt = dh + 1 + t % 2;
    const auto b = distinct_blocks(rng, f, {du, dh, dt});
    const FqVec rho = random_vec(rng, f, dt);
    const Fq base = gen_base(f, b[0], b[1], b[2], rho, BaseForm::kBasePermanent);
    REQUIRE(base == referee::gen_base(f, b[0], b[1], b[2], rho));
    agree += base == gen_base(f, b[0], b[1], b[2], rho, BaseForm::kExpansion);
  }
  MESSAGE("gen_base forms agree on " << agree << "/20");
  CHECK(agree == 20);
}
