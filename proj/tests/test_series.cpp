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

#include "char3/series.hpp"

using namespace char3;

namespace {

const Field* gf3() { return &make_field(1); }

Series S(std::map<int, int> c, int t = kExact, const Field* f = gf3()) {
  std::map<int, Fq> m;
  for (auto [k, v] : c) m[k] = f->from_int(v);
  return Series(f, m, t);
}

Series random_series(std::mt19937_64& rng, const Field* f, int lo, int hi, int t) {
  std::uniform_int_distribution<uint32_t> pick(0, f->order() - 1);
  std::map<int, Fq> m;
  for (int k = lo; k <= hi; ++k) m[k] = f->from_index(pick(rng));
  return Series(f, m, t);
}

}  // namespace

TEST_CASE("arithmetic examples") {
  const Series a = S({{0, 1}, {1, 2}}), b = S({{0, 2}, {1, 1}});
  CHECK((a + b).is_zero());
  CHECK(S({{1, 2}}).inv() == S({{-1, 2}}));
  CHECK(S({{0, 1}, {1, 1}}).pow(2) == S({{0, 1}, {1, 2}, {2, 1}}));
  CHECK(S({{1, 2}}).inv().to_string() == "[2]*eps^-1;T=exact");
}

TEST_CASE("order") {
  CHECK(S({{-2, 1}, {0, 1}}).order() == -2);
  CHECK(Series::zero(gf3()).order() == kInfiniteOrder);
  CHECK(S({{3, 2}}).order() == 3);
}

TEST_CASE("limit and coef") {
  CHECK(S({{0, 1}, {1, 2}}).limit() == gf3()->one());
  CHECK(Series::eps(gf3()).limit().is_zero());
  CHECK_THROWS_AS(S({{-1, 1}}).limit(), LimitDoesNotExist);
  CHECK_THROWS_AS(S({}, -1).limit(), PrecisionExhausted);
  CHECK(S({{0, 1}, {1, 2}}).coef(1) == gf3()->from_int(2));
  CHECK(S({{-1, 1}}).coef(0).is_zero());
  const Series f = S({{0, 1}}, 4);
  CHECK_THROWS_AS(f.coef(5), PrecisionExhausted);
}

TEST_CASE("truncation propagation") {
  const Series f = S({{0, 1}, {2, 1}}, 5);
  const Series g = S({{2, 1}}, 6);
  CHECK((f * g).truncation() == 6);
  CHECK((f + g).truncation() == 5);
  // Exact times truncated: truncation shifts by the exact factor's order.
  CHECK((f * Series::eps(gf3())).truncation() == 6);
  // An inexact zero bounds the product by its own truncation.
  const Series z = S({}, 3);
  CHECK((z * f).truncation() == 3);
}

TEST_CASE("inverse of exact non-monomial uses the budget") {
  ScopedSeriesBudget budget(10);
  const Series f = S({{0, 1}, {1, 1}});
  const Series g = f.inv();
  CHECK(g.truncation() == 10);
  const Series p = f * g;
  CHECK(p.truncation() == 10);
  CHECK(p.limit() == gf3()->one());
  for (int k = 1; k <= 10; ++k) CHECK(p.coef(k).is_zero());
}

TEST_CASE("ring laws and order arithmetic on random series") {
  std::mt19937_64 rng(5);
  const Field* f = &make_field(2);
  for (int t = 0; t < 100; ++t) {
    const Series a = random_series(rng, f, -2, 3, 6), b = random_series(rng, f, -1, 2, 5),
                 c = random_series(rng, f, 0, 4, 7);
    const Series l = (a + b) + c, r = a + (b + c);
    CHECK(l == r);
    const Series d1 = a * (b + c), d2 = a * b + a * c;
    const int t_common = std::min(d1.truncation(), d2.truncation());
    CHECK(d1.truncated(t_common) == d2.truncated(t_common));
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).order() == a.order() + b.order());
    if (!a.is_zero() && !b.is_zero() && a.order() != b.order())
      CHECK((a + b).order() == std::min(a.order(), b.order()));
    if (!a.is_zero()) {
      const Series p = a * a.inv();
      CHECK(p.truncation() >= 0);
      CHECK(p.limit() == f->one());
      for (int k = 1; k <= p.truncation(); ++k) CHECK(p.coef(k).is_zero());
    }
  }
}
