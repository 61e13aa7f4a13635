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

#ifndef CHAR3_BINET_HPP_
#define CHAR3_BINET_HPP_

#include "char3/linalg.hpp"
#include "char3/partitions.hpp"

namespace char3 {

enum class BinetVariant {
  kGeneral,  // all set partitions
  kChar3,    // blocks of size <= 3
};

/// (-1)^n sum_P prod_I (-(|I|-1)! scal(A^{(I,R)})), with the factorial
/// reduced in the field.
Fq binet_minc_rhs(const FqMatrix& a, BinetVariant variant);

/// The two parenthesizations of the block factor in the generalized
/// identities: -(|I|-1)! and (-1)^{|I|+1} (|I|-1)!.
enum class BlockFactor {
  kNegFactorial,
  kSignedFactorial,
};

/// sum_{I ⊇ J, |I| = n, |J| = m/2} per(A^{(N,I)}) per(B^{(M,{J,J})}).
Fq coper(const FqMatrix& a, const FqMatrix& b);

/// The generalized Binet-Minc right side for coper(A, B).
Fq coper_binet_rhs(const FqMatrix& a, const FqMatrix& b, BlockFactor factor);

/// sum_{|J| = n} per(A^{(N,J)}) prod_k sum_{j in J} b_kj.
Fq base_permanent(const FqMatrix& a, const FqMatrix& b);

/// The generalized Binet-Minc right side for the base-permanent.
Fq base_permanent_binet_rhs(const FqMatrix& a, const FqMatrix& b, BlockFactor factor);

/// The unsigned rewritten sums of the two generalized identities.
Fq eta(const FqMatrix& a, const FqMatrix& b);
Fq eta_hat(const FqMatrix& a, const FqMatrix& b);

enum class EtaVariant { kCoper, kBasePermanent };

/// eta (or eta-hat) at all-ones columns of lengths q and s, over `f`.
Fq eta_base_case(const Field* f, size_t q, size_t s, EtaVariant variant);
/// The closed forms claimed for those base cases.
Fq eta_base_case_claimed(const Field* f, size_t q, size_t s, EtaVariant variant);

/// Sum over one-cycle permutations of prod_i a_{i,pi(i)}.
Fq ham(const FqMatrix& a);
/// sum_{P in Part} prod_I ham(A^{(I,I)}).
Fq per_via_ham(const FqMatrix& a);

}  // namespace char3

#endif  // CHAR3_BINET_HPP_
