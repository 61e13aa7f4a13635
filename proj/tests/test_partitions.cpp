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

#include <set>

#include "char3/partitions.hpp"

using namespace char3;

namespace {

size_t count(size_t n, PartitionFamily fam) {
  size_t c = 0;
  for_each_partition(all_indices<Fq>(n), fam, [&](const Partition&) { ++c; });
  return c;
}

// Brute-force filter of all partitions of H' ∪ H'' (H' = 0..a-1, H'' = a..a+b-1).
size_t brute_bipartite(size_t a, size_t b, BipartiteFamily fam) {
  size_t c = 0;
  for_each_partition(all_indices<Fq>(a + b), PartitionFamily::kAll, [&](const Partition& p) {
    for (const auto& blk : p) {
      size_t l = 0, r = 0;
      for (size_t e : blk) (e < a ? l : r) += 1;
      if (l < 1 || l > 2) return;
      if (fam == BipartiteFamily::kSizes12And2 && r != 2) return;
      if (fam == BipartiteFamily::kSizes12AndAtLeast1 && r < 1) return;
    }
    ++c;
  });
  return c;
}

}  // namespace

TEST_CASE("Bell numbers and restricted families") {
  const size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (size_t n = 0; n <= 8; ++n) CHECK(count(n, PartitionFamily::kAll) == bell[n]);
  CHECK(count(4, PartitionFamily::kMaxBlock3) == 14);
  CHECK(count(4, PartitionFamily::kPerfectMatching) == 3);
  const size_t dfact[] = {1, 1, 3, 15, 105, 945};
  for (size_t k = 0; k <= 5; ++k) CHECK(count(2 * k, PartitionFamily::kPerfectMatching) == dfact[k]);
  CHECK(count(5, PartitionFamily::kPerfectMatching) == 0);
  CHECK_THROWS_AS(count(13, PartitionFamily::kAll), TooLarge);
}

TEST_CASE("partitions are valid and distinct") {
  std::set<Partition> seen;
  for_each_partition(all_indices<Fq>(6), PartitionFamily::kAll, [&](const Partition& p) {
    std::set<size_t> cover;
    for (const auto& b : p) {
      CHECK_FALSE(b.empty());
      for (size_t e : b) CHECK(cover.insert(e).second);
    }
    CHECK(cover.size() == 6);
    CHECK(seen.insert(p).second);
  });
  CHECK(seen.size() == 203);
}

TEST_CASE("bipartite families") {
  size_t c = 0;
  for_each_bipartite_partition({0}, {1, 2}, BipartiteFamily::kSizes12And2, [&](const BipartitePartition& p) {
    ++c;
    REQUIRE(p.size() == 1);
    CHECK(p[0].left == Index{0});
    CHECK(p[0].right == Index{1, 2});
  });
  CHECK(c == 1);
  c = 0;
  for_each_bipartite_partition({0, 1}, {2, 3, 4}, BipartiteFamily::kSizes12And2,
                               [&](const BipartitePartition&) { ++c; });
  CHECK(c == 0);
  c = 0;
  for_each_bipartite_partition({0}, {1}, BipartiteFamily::kSizes12AndAtLeast1,
                               [&](const BipartitePartition&) { ++c; });
  CHECK(c == 1);
  for (size_t a = 0; a <= 4; ++a)
    for (size_t b = 0; b <= 5; ++b)
      for (auto fam : {BipartiteFamily::kSizes12And2, BipartiteFamily::kSizes12AndAtLeast1}) {
        size_t got = 0;
        std::set<std::vector<std::pair<Index, Index>>> seen;
        Index l = all_indices<Fq>(a), r;
        for (size_t i = 0; i < b; ++i) r.push_back(a + i);
        for_each_bipartite_partition(l, r, fam, [&](const BipartitePartition& p) {
          ++got;
          std::vector<std::pair<Index, Index>> key;
          for (const auto& blk : p) key.emplace_back(blk.left, blk.right);
          CHECK(seen.insert(key).second);
        });
        CHECK(got == brute_bipartite(a, b, fam));
      }
}

TEST_CASE("subsets and nested pairs") {
  size_t c = 0;
  for_each_subset_of({0, 1, 2, 3}, 2, [&](const Index&) { ++c; });
  CHECK(c == 6);
  std::vector<std::pair<Index, Index>> got;
  for_each_nested_pair(2, 1, 0, [&](const Index& i, const Index& j) { got.emplace_back(i, j); });
  CHECK(got == std::vector<std::pair<Index, Index>>{{{0}, {}}, {{1}, {}}});
  for_each_nested_pair(3, 2, 2, [&](const Index& i, const Index& j) { CHECK(i == j); });
  c = 0;
  for_each_subset_all(5, [&](const Index&) { ++c; });
  CHECK(c == 32);
}
