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

#include "char3/binet.hpp"

#include <algorithm>
#include <numeric>

namespace char3 {
namespace {

Fq sign(const Field* f, size_t k) { return f->from_int(k % 2 == 0 ? 1 : -1); }

Fq scal_rows(const FqMatrix& a, const Index& rows) {
  return scal(submatrix(a, rows, all_indices<Fq>(a.cols())));
}

// scal of (A^{(I',R)} ; B^{(I'',R)}).
Fq scal_stacked(const FqMatrix& a, const Index& ia, const FqMatrix& b, const Index& ib) {
  const Field* f = a.field_ptr();
  Fq total = Fq::zero(f);
  for (size_t j = 0; j < a.cols(); ++j) {
    Fq p = Fq::one(f);
    for (size_t i : ia) p *= a(i, j);
    for (size_t i : ib) p *= b(i, j);
    total += p;
  }
  return total;
}

Fq block_factor(const Field* f, size_t size, BlockFactor factor) {
  const Fq fact = f->from_int(factorial_mod3(static_cast<long long>(size) - 1));
  return factor == BlockFactor::kNegFactorial ? -fact : sign(f, size + 1) * fact;
}

// sum over P in Part_{1,2,3}(rows) of prod_I factor(|I|) scal(A^{(I,R)}).
Fq char3_partition_sum(const FqMatrix& a, const Index& rows, BlockFactor factor) {
  const Field* f = a.field_ptr();
  Fq total = Fq::zero(f);
  for_each_partition(rows, PartitionFamily::kMaxBlock3, [&](const Partition& p) {
    Fq prod = Fq::one(f);
    for (const auto& blk : p) {
      prod *= block_factor(f, blk.size(), factor) * scal_rows(a, blk);
      if (prod.is_zero()) return;
    }
    total += prod;
  });
  return total;
}

void check_cols(const FqMatrix& a, const FqMatrix& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("A and B need the same column count");
}

// Shared body of the generalized identities; `signed_outer` adds the
// (-1)^{n-|K|} factors, `with_pair_sign` the base-permanent block sign.
Fq generalized_sum(const FqMatrix& a, const FqMatrix& b, BipartiteFamily family, BlockFactor factor,
                   bool signed_outer, bool with_pair_sign) {
  check_cols(a, b);
  const Field* f = a.field_ptr();
  const size_t n = a.rows(), m = b.rows();
  if (n + m > kMaxGroundSet) throw TooLarge("generalized Binet-Minc ground set too large");
  Index mset(m);
  std::iota(mset.begin(), mset.end(), 0);
  Fq total = Fq::zero(f);
  for_each_subset_all(n, [&](const Index& k) {
    const Index rest = complement(n, k);
    const Fq tail = char3_partition_sum(a, rest, factor);
    if (tail.is_zero()) return;
    Fq head = Fq::zero(f);
    for_each_bipartite_partition(k, mset, family, [&](const BipartitePartition& p) {
      Fq prod = Fq::one(f);
      for (const auto& blk : p) {
        Fq s = scal_stacked(a, blk.left, b, blk.right);
        if (with_pair_sign && blk.left.size() == 2 && (1 + blk.right.size()) % 2 == 1) s = -s;
        prod *= s;
        if (prod.is_zero()) return;
      }
      head += prod;
    });
    Fq term = head * tail;
    if (signed_outer) term *= sign(f, n - k.size());
    total += term;
  });
  return total;
}

}  // namespace

Fq binet_minc_rhs(const FqMatrix& a, BinetVariant variant) {
  const Field* f = a.field_ptr();
  const size_t n = a.rows();
  if (n > 9) throw TooLarge("Binet-Minc evaluator limited to 9 rows");
  const auto family = variant == BinetVariant::kGeneral ? PartitionFamily::kAll : PartitionFamily::kMaxBlock3;
  Fq total = Fq::zero(f);
  for_each_partition(all_indices<Fq>(n), family, [&](const Partition& p) {
    Fq prod = Fq::one(f);
    for (const auto& blk : p) {
      prod *= -f->from_int(factorial_mod3(static_cast<long long>(blk.size()) - 1)) * scal_rows(a, blk);
      if (prod.is_zero()) return;
    }
    total += prod;
  });
  return sign(f, n) * total;
}

Fq coper(const FqMatrix& a, const FqMatrix& b) {
  check_cols(a, b);
  const size_t n = a.rows(), m = b.rows(), r = a.cols();
  if (m % 2 != 0) throw ShapeMismatch("coper needs an even row count for B");
  if (m > 2 * n) throw ShapeMismatch("coper needs rows(B) <= 2 rows(A)");
  if (n > r) return Fq::zero(a.field_ptr());
  if (binom_count(r, n) * binom_count(n, m / 2) > 1'000'000) throw TooLarge("coper enumeration too large");
  const Index nrows = all_indices<Fq>(n), mrows = all_indices<Fq>(m);
  Fq total = Fq::zero(a.field_ptr());
  for_each_nested_pair(r, n, m / 2, [&](const Index& i, const Index& j) {
    const Fq pa = permanent_naive(submatrix(a, nrows, i));
    if (pa.is_zero()) return;
    total += pa * permanent_naive(submatrix(b, mrows, repeat_each(j, 2)));
  });
  return total;
}

Fq coper_binet_rhs(const FqMatrix& a, const FqMatrix& b, BlockFactor factor) {
  if (b.rows() % 2 != 0) throw ShapeMismatch("coper needs an even row count for B");
  const Fq s = generalized_sum(a, b, BipartiteFamily::kSizes12And2, factor, true, false);
  return sign(a.field_ptr(), b.rows() / 2) * s;
}

Fq base_permanent(const FqMatrix& a, const FqMatrix& b) {
  check_cols(a, b);
  const size_t n = a.rows(), r = a.cols();
  const Field* f = a.field_ptr();
  if (n > r) return Fq::zero(f);
  guard_subsets(r, n);
  const Index nrows = all_indices<Fq>(n);
  Fq total = Fq::zero(f);
  for_each_subset(r, n, [&](const Index& j) {
    Fq w = Fq::one(f);
    for (size_t k = 0; k < b.rows() && !w.is_zero(); ++k) {
      Fq s = Fq::zero(f);
      for (size_t c : j) s += b(k, c);
      w *= s;
    }
    if (w.is_zero()) return;
    total += w * permanent_naive(submatrix(a, nrows, j));
  });
  return total;
}

Fq base_permanent_binet_rhs(const FqMatrix& a, const FqMatrix& b, BlockFactor factor) {
  return generalized_sum(a, b, BipartiteFamily::kSizes12AndAtLeast1, factor, true, true);
}

Fq eta(const FqMatrix& a, const FqMatrix& b) {
  return generalized_sum(a, b, BipartiteFamily::kSizes12And2, BlockFactor::kSignedFactorial, false, false);
}

Fq eta_hat(const FqMatrix& a, const FqMatrix& b) {
  return generalized_sum(a, b, BipartiteFamily::kSizes12AndAtLeast1, BlockFactor::kSignedFactorial, false, true);
}

Fq eta_base_case(const Field* f, size_t q, size_t s, EtaVariant variant) {
  const FqMatrix a = constant_matrix(f, Fq::one(f), q, 1);
  const FqMatrix b = constant_matrix(f, Fq::one(f), s, 1);
  return variant == EtaVariant::kCoper ? eta(a, b) : eta_hat(a, b);
}

Fq eta_base_case_claimed(const Field* f, size_t q, size_t s, EtaVariant variant) {
  const int qs = delta(static_cast<long long>(q) - 1);
  if (variant == EtaVariant::kBasePermanent) return f->from_int(qs);
  return f->from_int(qs * (delta(static_cast<long long>(s)) + delta(static_cast<long long>(s) - 2)));
}

Fq ham(const FqMatrix& a) {
  if (!a.is_square()) throw ShapeMismatch("ham of non-square matrix");
  const size_t d = a.rows();
  const Field* f = a.field_ptr();
  if (d == 0) return Fq::one(f);
  if (d > 9) throw TooLarge("ham limited to 9 x 9");
  // A one-cycle permutation is 0 -> c[0] -> c[1] -> ... -> 0 with c a
  // permutation of 1..d-1.
  std::vector<size_t> c(d - 1);
  std::iota(c.begin(), c.end(), 1);
  Fq total = Fq::zero(f);
  do {
    Fq p = a(0, d == 1 ? 0 : c[0]);
    for (size_t k = 0; k + 1 < c.size() && !p.is_zero(); ++k) p *= a(c[k], c[k + 1]);
    if (d > 1) p *= a(c.back(), 0);
    total += p;
  } while (std::next_permutation(c.begin(), c.end()));
  return total;
}

Fq per_via_ham(const FqMatrix& a) {
  if (!a.is_square()) throw ShapeMismatch("per of non-square matrix");
  const Field* f = a.field_ptr();
  Fq total = Fq::zero(f);
  for_each_partition(all_indices<Fq>(a.rows()), PartitionFamily::kAll, [&](const Partition& p) {
    Fq prod = Fq::one(f);
    for (const auto& blk : p) {
      prod *= ham(submatrix(a, blk, blk));
      if (prod.is_zero()) return;
    }
    total += prod;
  });
  return total;
}

}  // namespace char3
