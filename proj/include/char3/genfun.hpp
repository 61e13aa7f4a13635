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


#ifndef CHAR3_GENFUN_HPP_
#define CHAR3_GENFUN_HPP_

#include <vector>

#include "char3/esum.hpp"
#include "char3/linalg.hpp"

namespace char3 {

inline constexpr uint64_t kGenBudget = 100'000;

/// Permanent over injections of rows into columns; 0 when rows > cols.
template <class R>
R per_injective(const Matrix<R>& a) {
  if (a.rows() > a.cols()) return R::zero(a.field_ptr());
  if (a.cols() <= 9) return permanent_naive(a);
  return permanent_rect(a);
}

/// det^2(Van(u)) as a product of squared differences.
template <class R>
R van_det_squared(const Field* f, const Vec<R>& u) {
  R out = R::one(f);
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j) {
      const R d = u[i] - u[j];
      out *= d * d;
    }
  return out;
}

/// dis_{p,q}(u, α, β) = sum_{I ⊇ J, |I|=p, |J|=q} det²Van(u_I) det²Van(u_J) Πα_I Πβ_J.
template <class R>
R dis(const Field* f, const Vec<R>& u, const Vec<R>& alpha, const Vec<R>& beta, size_t p, size_t q) {
  const size_t r = u.size();
  if (alpha.size() != r || beta.size() != r) throw ShapeMismatch("dis: u, α, β differ in length");
  if (q > p) throw InvalidArgument("dis needs p >= q");
  if (p > r) return R::zero(f);
  if (binom_count(r, p) * binom_count(p, q) > kGenBudget) throw TooLarge("dis enumeration exceeds budget");
  R total = R::zero(f);
  for_each_subset(r, p, [&](const Index& i_set) {
    const Vec<R> ui = select(u, i_set);
    R ai = van_det_squared(f, ui);
    for (size_t i : i_set) ai *= alpha[i];
    if (ai.is_zero()) return;
    for_each_subset(p, q, [&](const Index& jj) {
      Index j_set;
      for (size_t k : jj) j_set.push_back(i_set[k]);
      R term = ai * van_det_squared(f, select(u, j_set));
      for (size_t j : j_set) term *= beta[j];
      total += term;
    });
  });
  return total;
}

/// Row multiset z_{{I,J}} of the star-function: the rows (z_I; z_J), or
/// (z_I; z_J; z_J) by analogy with the copermanent's {J,J}.
enum class StarRows { kConcatenated, kJDoubled };

/// Orientation of the pairing factor: C(z_{\(I∪J)}, z_{I∪J}) or
/// C(z_{I∪J}, z_{\(I∪J)}); their permanents differ by (-1)^{dim(z)/2}.
enum class StarPairs { kComplementRows, kChosenRows };

struct StarReading {
  StarRows rows = StarRows::kConcatenated;
  StarPairs pairs = StarPairs::kComplementRows;
};

/// gen_*(z, u, ρ, ω¹, ω²): sum over disjoint I, J with |I ∪ J| = dim(z)/2 of
/// Πω¹_I Πω²_J per(C(z_{\(I∪J)}, z_{I∪J})) per(C(z_{{I,J}}, u) Diag ρ).
template <class R>
R gen_star(const Field* f, const Vec<R>& z, const Vec<R>& u, const Vec<R>& rho, const Vec<R>& w1,
           const Vec<R>& w2, StarReading reading = {}) {
  const size_t m = z.size();
  if (m % 2 == 1) throw InvalidArgument("gen_star needs dim(z) even");
  if (rho.size() != u.size()) throw ShapeMismatch("gen_star: ρ and u differ in length");
  if (w1.size() != m || w2.size() != m) throw ShapeMismatch("gen_star: ω and z differ in length");
  const size_t k = m / 2;
  if (binom_count(m, k) << k > kGenBudget) throw TooLarge("gen_star enumeration exceeds budget");
  const Matrix<R> dr = diag(f, rho);
  R total = R::zero(f);
  for_each_subset(m, k, [&](const Index& s) {
    const Index rest = complement(m, s);
    const R pair_part = permanent_naive(reading.pairs == StarPairs::kComplementRows
                                            ? cauchy(f, select(z, rest), select(z, s))
                                            : cauchy(f, select(z, s), select(z, rest)));
    if (pair_part.is_zero()) return;
    // Bit b of mask puts s[b] into J.
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
      Index i_set, j_set;
      R w = R::one(f);
      for (size_t b = 0; b < k; ++b) {
        if (mask & (1u << b)) {
          j_set.push_back(s[b]);
          w *= w2[s[b]];
        } else {
          i_set.push_back(s[b]);
          w *= w1[s[b]];
        }
      }
      if (w.is_zero()) continue;
      Index row_set = i_set;
      row_set.insert(row_set.end(), j_set.begin(), j_set.end());
      if (reading.rows == StarRows::kJDoubled) row_set.insert(row_set.end(), j_set.begin(), j_set.end());
      total += w * pair_part * per_injective(cauchy(f, select(z, row_set), u) * dr);
    }
  });
  return total;
}

/// gen_≈(z, α, w, h, t, ρ): sum over I ⊆ z-indices, J ⊆ w-indices of
/// esum((h; t; z_I; w_J), ((0,∅); (∅,∅)+(∅,0)ρ; (0,0); Θ)) ·
/// esum((z_{\I}; w_{\J}), ((0,0)α_{\I}; -Θ)).
template <class R>
R gen_2waves(const Field* f, const Vec<R>& z, const Vec<R>& alpha, const Vec<R>& w, const Vec<R>& h,
             const Vec<R>& t, const Vec<R>& rho) {
  if (alpha.size() != z.size()) throw ShapeMismatch("gen_2waves: α and z differ in length");
  if (rho.size() != t.size()) throw ShapeMismatch("gen_2waves: ρ and t differ in length");
  if (z.size() + w.size() > 20) throw TooLarge("gen_2waves: too many waves");
  const auto theta = planes::biwave<R>(f);
  const auto neg_theta = planes::scaled(theta, -R::one(f));
  std::vector<ExtensionPlane<R>> head;
  for (size_t i = 0; i < h.size(); ++i) head.push_back(planes::row<R>(f, R::one(f)));
  for (size_t j = 0; j < t.size(); ++j)
    head.push_back(planes::sum(planes::empty<R>(f), planes::column<R>(f, rho[j])));
  const Vec<R> ht = concat<R>({h, t});
  R total = R::zero(f);
  const uint32_t nz = static_cast<uint32_t>(z.size()), nw = static_cast<uint32_t>(w.size());
  for (uint32_t im = 0; im < (1u << nz); ++im) {
    Index in_i, out_i;
    for (uint32_t i = 0; i < nz; ++i) ((im >> i) & 1 ? in_i : out_i).push_back(i);
    for (uint32_t jm = 0; jm < (1u << nw); ++jm) {
      Index in_j, out_j;
      for (uint32_t j = 0; j < nw; ++j) ((jm >> j) & 1 ? in_j : out_j).push_back(j);
      std::vector<ExtensionPlane<R>> rest_planes;
      for (size_t i : out_i) rest_planes.push_back(planes::wave<R>(f, alpha[i]));
      for (size_t j = 0; j < out_j.size(); ++j) rest_planes.push_back(neg_theta);
      const R rest = esum(f, concat<R>({select(z, out_i), select(w, out_j)}), rest_planes);
      if (rest.is_zero()) continue;
      auto main_planes = head;
      for (size_t i = 0; i < in_i.size(); ++i) main_planes.push_back(planes::wave<R>(f, R::one(f)));
      for (size_t j = 0; j < in_j.size(); ++j) main_planes.push_back(theta);
      total += esum(f, concat<R>({ht, select(z, in_i), select(w, in_j)}), main_planes) * rest;
    }
  }
  return total;
}

/// gen_~(z, α, h, t, ρ) = sum_I sum_{|J|=dim(h)} per(C̃(h, t_J, z_I)) Πα_{\I}
/// per(C̃(z_{\I})) Πρ_J, evaluated directly on C̃ matrices.
template <class R>
R gen_wave(const Field* f, const Vec<R>& z, const Vec<R>& alpha, const Vec<R>& h, const Vec<R>& t,
           const Vec<R>& rho) {
  if (alpha.size() != z.size()) throw ShapeMismatch("gen_wave: α and z differ in length");
  if (rho.size() != t.size()) throw ShapeMismatch("gen_wave: ρ and t differ in length");
  if (h.size() > t.size()) return R::zero(f);
  const uint32_t nz = static_cast<uint32_t>(z.size());
  if ((uint64_t{1} << nz) * binom_count(t.size(), h.size()) > kGenBudget)
    throw TooLarge("gen_wave enumeration exceeds budget");
  R total = R::zero(f);
  for (uint32_t im = 0; im < (1u << nz); ++im) {
    Index in_i, out_i;
    for (uint32_t i = 0; i < nz; ++i) ((im >> i) & 1 ? in_i : out_i).push_back(i);
    R rest = permanent_naive(c_tilde_diag(f, select(z, out_i)));
    for (size_t i : out_i) rest *= alpha[i];
    if (rest.is_zero()) continue;
    const Vec<R> zi = select(z, in_i);
    for_each_subset(t.size(), h.size(), [&](const Index& j_set) {
      R term = esum_permanent(c_tilde(f, h, select(t, j_set), zi));
      for (size_t j : j_set) term *= rho[j];
      total += term * rest;
    });
  }
  return total;
}

/// p̂er_B(A) over any kernel ring: sum over n-subsets J of columns of
/// per(A^{(·,J)}) Π_k Σ_{j∈J} b_kj.
template <class R>
R base_per(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("base and matrix column counts differ");
  const size_t n = a.rows(), m = a.cols();
  const Field* f = a.field_ptr();
  if (n > m) return R::zero(f);
  guard_subsets(m, n, kGenBudget);
  const Index rows = all_indices<R>(n);
  R total = R::zero(f);
  for_each_subset(m, n, [&](const Index& j_set) {
    R base = R::one(f);
    for (size_t k = 0; k < b.rows() && !base.is_zero(); ++k) {
      R s = R::zero(f);
      for (size_t j : j_set) s += b(k, j);
      base *= s;
    }
    if (base.is_zero()) return;
    total += base * esum_permanent(submatrix(a, rows, j_set));
  });
  return total;
}

enum class BaseForm { kBasePermanent, kExpansion };

/// gen_∧(u, h, t, ρ) in either of its two forms.
template <class R>
R gen_base(const Field* f, const Vec<R>& u, const Vec<R>& h, const Vec<R>& t, const Vec<R>& rho, BaseForm form) {
  if (rho.size() != t.size()) throw ShapeMismatch("gen_base: ρ and t differ in length");
  const size_t du = u.size(), dh = h.size(), dt = t.size();
  const Matrix<R> cht = cauchy(f, h, t) * diag(f, rho);
  if (form == BaseForm::kBasePermanent) {
    const Matrix<R> base = hconcat<R>({-cauchy(f, u, h), cauchy(f, u, t)});
    Matrix<R> a(f, 2 * dh, dh + dt);
    for (size_t i = 0; i < dh; ++i) {
      a(i, i) = R::one(f);
      for (size_t j = 0; j < dt; ++j) a(dh + i, dh + j) = cht(i, j);
    }
    return base_per(a, base);
  }
  if (du > 20) throw TooLarge("gen_base: too many base rows");
  R total = R::zero(f);
  for (uint32_t im = 0; im < (1u << du); ++im) {
    Index in_i, out_i;
    for (uint32_t i = 0; i < du; ++i) ((im >> i) & 1 ? in_i : out_i).push_back(i);
    R w = R::one(f);
    for (size_t i : in_i) {
      R s = R::zero(f);
      for (size_t k = 0; k < dh; ++k) s -= (u[i] - h[k]).inv();
      w *= s;
    }
    if (w.is_zero()) continue;
    total += w * base_per(cht, cauchy(f, select(u, out_i), t));
  }
  return total;
}

/// Independently coded evaluators used only as referees: different
/// enumeration order, Ryser-based permanents, no pruning.
namespace referee {

template <class R>
R per(const Matrix<R>& a) {
  if (a.rows() > a.cols()) return R::zero(a.field_ptr());
  return permanent_rect(a);
}

template <class R>
R esum(const Field* f, const Vec<R>& a, const std::vector<ExtensionPlane<R>>& theta) {
  if (a.size() != theta.size()) throw ShapeMismatch("values and planes differ in length");
  uint64_t work = 1;
  for (const auto& p : theta) {
    work *= std::max<size_t>(p.size(), 1);
    if (work > kEsumBudget) throw TooLarge("E-sum enumeration exceeds budget");
  }
  R total = R::zero(f);
  std::vector<size_t> pick(a.size(), 0);
  while (true) {
    bool empty = false;
    int bal = 0;
    R w = R::one(f);
    std::vector<ExtensionDegree> phi;
    for (size_t i = 0; i < a.size(); ++i) {
      if (theta[i].empty()) {
        empty = true;
        break;
      }
      phi.push_back(theta[i][pick[i]].degree);
      bal += phi.back().balance();
      w *= theta[i][pick[i]].weight;
    }
    if (empty) return R::zero(f);
    if (bal == 0) total += w * per(extension_matrix(f, a, phi));
    size_t pos = 0;
    while (pos < a.size() && ++pick[pos] == theta[pos].size()) pick[pos++] = 0;
    if (pos == a.size()) break;
  }
  return total;
}

template <class R>
R dis(const Field* f, const Vec<R>& u, const Vec<R>& alpha, const Vec<R>& beta, size_t p, size_t q) {
  const size_t r = u.size();
  if (r > 20) throw TooLarge("dis referee limited to 20 values");
  R total = R::zero(f);
  // J outer, I ⊇ J inner, determinants by elimination-free Leibniz over Van.
  for (uint32_t jm = 0; jm < (1u << r); ++jm) {
    if (static_cast<size_t>(std::popcount(jm)) != q) continue;
    for (uint32_t im = jm; im < (1u << r); im = (im + 1) | jm) {
      if (static_cast<size_t>(std::popcount(im)) == p) {
        Index i_set, j_set;
        for (uint32_t k = 0; k < r; ++k) {
          if ((im >> k) & 1) i_set.push_back(k);
          if ((jm >> k) & 1) j_set.push_back(k);
        }
        const R di = det(vandermonde(f, select(u, i_set)));
        const R dj = det(vandermonde(f, select(u, j_set)));
        R term = di * di * dj * dj;
        for (size_t i : i_set) term *= alpha[i];
        for (size_t j : j_set) term *= beta[j];
        total += term;
      }
      if (im == (1u << r) - 1) break;
    }
  }
  return total;
}

template <class R>
R gen_star(const Field* f, const Vec<R>& z, const Vec<R>& u, const Vec<R>& rho, const Vec<R>& w1,
           const Vec<R>& w2, StarReading reading = {}) {
  const size_t m = z.size();
  if (m % 2 == 1) throw InvalidArgument("gen_star needs dim(z) even");
  if (m > 12) throw TooLarge("gen_star referee limited to 12 values");
  // Ternary label per index: 0 outside, 1 in I, 2 in J.
  size_t combos = 1;
  for (size_t i = 0; i < m; ++i) combos *= 3;
  R total = R::zero(f);
  for (size_t code = 0; code < combos; ++code) {
    Index i_set, j_set, rest;
    size_t c = code;
    for (size_t i = 0; i < m; ++i, c /= 3) (c % 3 == 0 ? rest : c % 3 == 1 ? i_set : j_set).push_back(i);
    if (i_set.size() + j_set.size() != m / 2) continue;
    R w = R::one(f);
    for (size_t i : i_set) w *= w1[i];
    for (size_t j : j_set) w *= w2[j];
    Index chosen = i_set;
    chosen.insert(chosen.end(), j_set.begin(), j_set.end());
    std::sort(chosen.begin(), chosen.end());
    Index row_set = i_set;
    row_set.insert(row_set.end(), j_set.begin(), j_set.end());
    if (reading.rows == StarRows::kJDoubled) row_set.insert(row_set.end(), j_set.begin(), j_set.end());
    Matrix<R> cu = cauchy(f, select(z, row_set), u);
    for (size_t r = 0; r < cu.rows(); ++r)
      for (size_t k = 0; k < cu.cols(); ++k) cu(r, k) *= rho[k];
    const Matrix<R> pairing = reading.pairs == StarPairs::kComplementRows
                                  ? cauchy(f, select(z, rest), select(z, chosen))
                                  : cauchy(f, select(z, chosen), select(z, rest));
    total += w * per(pairing) * per(cu);
  }
  return total;
}

template <class R>
R gen_2waves(const Field* f, const Vec<R>& z, const Vec<R>& alpha, const Vec<R>& w, const Vec<R>& h,
             const Vec<R>& t, const Vec<R>& rho) {
  const auto theta = planes::biwave<R>(f);
  std::vector<ExtensionPlane<R>> head;
  for (size_t i = 0; i < h.size(); ++i) head.push_back({{planes::deg({0}, {}), R::one(f)}});
  for (size_t j = 0; j < t.size(); ++j)
    head.push_back({{planes::deg({}, {}), R::one(f)}, {planes::deg({}, {0}), rho[j]}});
  R total = R::zero(f);
  const uint32_t nz = static_cast<uint32_t>(z.size()), nw = static_cast<uint32_t>(w.size());
  for (uint32_t jm = 0; jm < (1u << nw); ++jm)
    for (uint32_t im = 0; im < (1u << nz); ++im) {
      Vec<R> main_vals = concat<R>({h, t}), rest_vals;
      auto main_planes = head;
      std::vector<ExtensionPlane<R>> rest_planes;
      for (uint32_t i = 0; i < nz; ++i) {
        if ((im >> i) & 1) {
          main_vals.push_back(z[i]);
          main_planes.push_back({{planes::deg({0}, {0}), R::one(f)}});
        } else {
          rest_vals.push_back(z[i]);
          rest_planes.push_back({{planes::deg({0}, {0}), alpha[i]}});
        }
      }
      for (uint32_t j = 0; j < nw; ++j) {
        if ((jm >> j) & 1) {
          main_vals.push_back(w[j]);
          main_planes.push_back(theta);
        } else {
          rest_vals.push_back(w[j]);
          ExtensionPlane<R> neg;
          for (const auto& term : theta) neg.push_back({term.degree, -term.weight});
          rest_planes.push_back(neg);
        }
      }
      total += referee::esum(f, main_vals, main_planes) * referee::esum(f, rest_vals, rest_planes);
    }
  return total;
}

template <class R>
R gen_wave(const Field* f, const Vec<R>& z, const Vec<R>& alpha, const Vec<R>& h, const Vec<R>& t,
           const Vec<R>& rho) {
  R total = R::zero(f);
  const uint32_t nz = static_cast<uint32_t>(z.size()), nt = static_cast<uint32_t>(t.size());
  for (uint32_t jm = 0; jm < (1u << nt); ++jm) {
    if (static_cast<size_t>(std::popcount(jm)) != h.size()) continue;
    Index j_set;
    R rj = R::one(f);
    for (uint32_t j = 0; j < nt; ++j)
      if ((jm >> j) & 1) {
        j_set.push_back(j);
        rj *= rho[j];
      }
    for (uint32_t im = 0; im < (1u << nz); ++im) {
      Index in_i, out_i;
      R a = R::one(f);
      for (uint32_t i = 0; i < nz; ++i) {
        if ((im >> i) & 1) {
          in_i.push_back(i);
        } else {
          out_i.push_back(i);
          a *= alpha[i];
        }
      }
      total += rj * a * per(c_tilde(f, h, select(t, j_set), select(z, in_i))) *
               per(c_tilde_diag(f, select(z, out_i)));
    }
  }
  return total;
}

/// Base-permanent form with columns enumerated by bitmask and Ryser minors.
template <class R>
R gen_base(const Field* f, const Vec<R>& u, const Vec<R>& h, const Vec<R>& t, const Vec<R>& rho) {
  const size_t dh = h.size(), dt = t.size(), cols = dh + dt;
  if (cols > 20) throw TooLarge("gen_base referee limited to 20 columns");
  Matrix<R> a(f, 2 * dh, cols), b(f, u.size(), cols);
  for (size_t i = 0; i < dh; ++i) a(i, i) = R::one(f);
  for (size_t i = 0; i < dh; ++i)
    for (size_t j = 0; j < dt; ++j) a(dh + i, dh + j) = rho[j] / (h[i] - t[j]);
  for (size_t k = 0; k < u.size(); ++k) {
    for (size_t i = 0; i < dh; ++i) b(k, i) = -(u[k] - h[i]).inv();
    for (size_t j = 0; j < dt; ++j) b(k, dh + j) = (u[k] - t[j]).inv();
  }
  R total = R::zero(f);
  for (uint32_t jm = 0; jm < (1u << cols); ++jm) {
    if (static_cast<size_t>(std::popcount(jm)) != 2 * dh) continue;
    Index j_set;
    for (uint32_t j = 0; j < cols; ++j)
      if ((jm >> j) & 1) j_set.push_back(j);
    R base = R::one(f);
    for (size_t k = 0; k < b.rows(); ++k) {
      R s = R::zero(f);
      for (size_t j : j_set) s += b(k, j);
      base *= s;
    }
    total += base * per(submatrix(a, all_indices<R>(2 * dh), j_set));
  }
  return total;
}

}  // namespace referee

}  // namespace char3

#endif  // CHAR3_GENFUN_HPP_
