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

#include "char3/partitions.hpp"

#include <string>

namespace char3 {
namespace {

void check_ground(size_t n) {
  if (n > kMaxGroundSet)
    throw TooLarge("ground set of " + std::to_string(n) + " exceeds " + std::to_string(kMaxGroundSet));
}

struct SetPartitionWalker {
  const Index& ground;
  size_t max_block;
  bool exact_pairs;
  const std::function<void(const Partition&)>& fn;
  Partition blocks;

  void walk(size_t pos) {
    if (pos == ground.size()) {
      if (exact_pairs)
        for (const auto& b : blocks)
          if (b.size() != 2) return;
      fn(blocks);
      return;
    }
    const size_t e = ground[pos];
    for (size_t k = 0; k < blocks.size(); ++k) {
      if (blocks[k].size() >= max_block) continue;
      blocks[k].push_back(e);
      walk(pos + 1);
      blocks[k].pop_back();
    }
    blocks.push_back({e});
    walk(pos + 1);
    blocks.pop_back();
  }
};

}  // namespace

void for_each_partition(const Index& ground, PartitionFamily family,
                        const std::function<void(const Partition&)>& fn) {
  check_ground(ground.size());
  if (family == PartitionFamily::kPerfectMatching && ground.size() % 2 == 1) return;
  const size_t max_block = family == PartitionFamily::kAll               ? ground.size() + 1
                           : family == PartitionFamily::kMaxBlock3       ? 3
                                                                         : 2;
  SetPartitionWalker w{ground, max_block, family == PartitionFamily::kPerfectMatching, fn, {}};
  w.walk(0);
}

namespace {

struct BipartiteWalker {
  const Index& left;
  const Index& right;
  BipartiteFamily family;
  const std::function<void(const BipartitePartition&)>& fn;
  BipartitePartition blocks;

  size_t right_cap() const { return family == BipartiteFamily::kSizes12And2 ? 2 : right.size() + 1; }

  void walk_left(size_t pos) {
    if (pos == left.size()) {
      walk_right(0);
      return;
    }
    for (size_t k = 0; k < blocks.size(); ++k) {
      if (blocks[k].left.size() >= 2) continue;
      blocks[k].left.push_back(left[pos]);
      walk_left(pos + 1);
      blocks[k].left.pop_back();
    }
    blocks.push_back({{left[pos]}, {}});
    walk_left(pos + 1);
    blocks.pop_back();
  }

  // H'' elements may only join blocks opened by H' elements.
  void walk_right(size_t pos) {
    if (pos == right.size()) {
      for (const auto& b : blocks) {
        if (family == BipartiteFamily::kSizes12And2 && b.right.size() != 2) return;
        if (b.right.empty()) return;
      }
      fn(blocks);
      return;
    }
    for (size_t k = 0; k < blocks.size(); ++k) {
      if (blocks[k].right.size() >= right_cap()) continue;
      blocks[k].right.push_back(right[pos]);
      walk_right(pos + 1);
      blocks[k].right.pop_back();
    }
  }
};

}  // namespace

void for_each_bipartite_partition(const Index& left, const Index& right, BipartiteFamily family,
                                  const std::function<void(const BipartitePartition&)>& fn) {
  check_ground(left.size() + right.size());
  if (left.empty() && right.empty()) {
    fn({});
    return;
  }
  if (family == BipartiteFamily::kSizes12And2 && right.size() % 2 == 1) return;
  BipartiteWalker w{left, right, family, fn, {}};
  w.walk_left(0);
}

void for_each_subset_of(const Index& set, size_t k, const std::function<void(const Index&)>& fn) {
  Index chosen(k);
  for_each_subset(set.size(), k, [&](const Index& pos) {
    for (size_t i = 0; i < k; ++i) chosen[i] = set[pos[i]];
    fn(chosen);
  });
}

void for_each_nested_pair(size_t n, size_t p, size_t q,
                          const std::function<void(const Index& i, const Index& j)>& fn) {
  if (q > p || p > n) return;
  for_each_subset(n, p, [&](const Index& i) { for_each_subset_of(i, q, [&](const Index& j) { fn(i, j); }); });
}

void for_each_subset_all(size_t n, const std::function<void(const Index&)>& fn) {
  if (n > 24) throw TooLarge("subset enumeration limited to 24 elements");
  Index s;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    s.clear();
    for (size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    fn(s);
  }
}

}  // namespace char3
