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

#ifndef CHAR3_PARTITIONS_HPP_
#define CHAR3_PARTITIONS_HPP_

#include <functional>
#include <vector>

#include "char3/linalg.hpp"

namespace char3 {

inline constexpr size_t kMaxGroundSet = 12;

/// Blocks are listed by increasing minimum; each block is sorted.
using Partition = std::vector<Index>;

enum class PartitionFamily {
  kAll,
  kMaxBlock3,        // every block has at most 3 elements
  kPerfectMatching,  // every block has exactly 2 elements
};

/// Streams every qualifying partition of `ground` exactly once, in
/// restricted-growth order. Throws TooLarge above kMaxGroundSet elements.
void for_each_partition(const Index& ground, PartitionFamily family,
                        const std::function<void(const Partition&)>& fn);

struct BipartiteBlock {
  Index left;   // subset of H'
  Index right;  // subset of H''
};
using BipartitePartition = std::vector<BipartiteBlock>;

enum class BipartiteFamily {
  kSizes12And2,         // 1 or 2 elements of H', exactly 2 of H''
  kSizes12AndAtLeast1,  // 1 or 2 elements of H', at least 1 of H''
};

/// Partitions of H' ∪ H'' (disjoint index sets) into blocks obeying the
/// family's per-side size rules.
void for_each_bipartite_partition(const Index& left, const Index& right, BipartiteFamily family,
                                  const std::function<void(const BipartitePartition&)>& fn);

/// Every k-subset of `set` (lexicographic by position).
void for_each_subset_of(const Index& set, size_t k, const std::function<void(const Index&)>& fn);

/// Pairs I ⊇ J of subsets of {0..n-1} with |I| = p, |J| = q.
void for_each_nested_pair(size_t n, size_t p, size_t q,
                          const std::function<void(const Index& i, const Index& j)>& fn);

/// Every subset of {0..n-1}, by increasing bitmask.
void for_each_subset_all(size_t n, const std::function<void(const Index&)>& fn);

}  // namespace char3

#endif  // CHAR3_PARTITIONS_HPP_
