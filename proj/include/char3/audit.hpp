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

#ifndef CHAR3_AUDIT_HPP_
#define CHAR3_AUDIT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "char3/genfun.hpp"
#include "char3/neighbour.hpp"
#include "json.hpp"

namespace char3 {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Symmetric-function evaluation paths, generic in the kernel ring.

/// Product of two coefficient vectors (low to high).
template <class R>
Vec<R> poly_mul(const Field* f, const Vec<R>& a, const Vec<R>& b) {
  if (a.empty() || b.empty()) return {};
  Vec<R> out(a.size() + b.size() - 1, R::zero(f));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class R>
Vec<R> monic_from_roots(const Field* f, const Vec<R>& roots) {
  Vec<R> c{R::one(f)};
  for (const R& r : roots) c = poly_mul(f, c, Vec<R>{-r, R::one(f)});
  return c;
}

template <class R>
R poly_value(const Field* f, const Vec<R>& c, const R& t) {
  R v = R::zero(f);
  for (size_t j = c.size(); j-- > 0;) v = v * t + c[j];
  return v;
}

/// e_0..e_N of the roots of a monic polynomial of degree N.
template <class R>
Vec<R> elementary_from_monic(const Vec<R>& c) {
  const size_t n = c.size() - 1;
  Vec<R> e;
  for (size_t k = 0; k <= n; ++k) e.push_back(k % 2 == 0 ? c[n - k] : -c[n - k]);
  return e;
}

/// The antiderivative T of P with T(0) = 0, leading coefficient kept. The
/// τ^k terms with k ≡ 2 (mod 3) have no antiderivative and must vanish; they
/// are dropped.
template <class R>
Vec<R> antiderivative_mod3(const Field* f, const Vec<R>& p) {
  Vec<R> t(p.size() + 1, R::zero(f));
  for (size_t k = 0; k < p.size(); ++k) {
    if ((k + 1) % 3 == 0) continue;
    t[k + 1] = p[k] * R::from_int(f, static_cast<long long>(k + 1)).inv();
  }
  return t;
}

/// The exponent sequence 0, 1, 3, 4, 6, 7, ... cut to d members.
std::vector<int> eta_exponents(size_t d);

/// det(t^{•η})/det(Van(t)) as the Schur function s_λ, λ_i = η_i - i, computed
/// from e_1..e_d by the dual Jacobi-Trudi determinant.
template <class R>
R schur_eta_from_elementary(const Field* f, const Vec<R>& e) {
  const size_t d = e.size() - 1;
  const std::vector<int> eta = eta_exponents(d);
  std::vector<int> lambda;
  for (size_t i = d; i-- > 0;) lambda.push_back(eta[i] - static_cast<int>(i));
  std::vector<int> conj;
  for (int k = 1; !lambda.empty() && k <= lambda.front(); ++k) {
    int c = 0;
    for (int l : lambda) c += l >= k;
    conj.push_back(c);
  }
  const size_t l = conj.size();
  Matrix<R> jt(f, l, l);
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j) {
      const long k = conj[i] - static_cast<long>(i) + static_cast<long>(j);
      if (k >= 0 && k <= static_cast<long>(d)) jt(i, j) = e[static_cast<size_t>(k)];
    }
  return det(jt);
}

/// per(W(t)) from the elementary symmetric functions of t: the η-Schur
/// function times (-1)^{d(d-1)/2}.
template <class R>
R per_w_from_elementary(const Field* f, const Vec<R>& e) {
  const size_t d = e.size() - 1;
  const R s = schur_eta_from_elementary(f, e);
  return (d * (d - 1) / 2) % 2 == 0 ? s : -s;
}

/// The block matrix whose hatted determinant is dis_{p,q}(u, α, β): per u_i
/// the three columns (α van^{[p+q]}; 0), (β van^{[p+q]'}; van^{[p-q]}) and
/// minus their sum.
template <class R>
Matrix<R> dis_block_matrix(const Field* f, const Vec<R>& u, const Vec<R>& alpha, const Vec<R>& beta, size_t p,
                           size_t q) {
  if (q > p) throw InvalidArgument("dis needs p >= q");
  const size_t r = u.size(), top = p + q, bottom = p - q;
  Matrix<R> a(f, top + bottom, 3 * r);
  for (size_t i = 0; i < r; ++i) {
    const Matrix<R> v = vandermonde(f, Vec<R>{u[i]}, top);
    const Matrix<R> dv = vandermonde_derivative(f, Vec<R>{u[i]}, top);
    const Matrix<R> vb = vandermonde(f, Vec<R>{u[i]}, bottom);
    for (size_t k = 0; k < top; ++k) {
      a(k, 3 * i) = alpha[i] * v(k, 0);
      a(k, 3 * i + 1) = beta[i] * dv(k, 0);
      a(k, 3 * i + 2) = -a(k, 3 * i) - a(k, 3 * i + 1);
    }
    for (size_t k = 0; k < bottom; ++k) {
      a(top + k, 3 * i + 1) = vb(k, 0);
      a(top + k, 3 * i + 2) = -vb(k, 0);
    }
  }
  return a;
}

/// Hatted determinant of an even-row matrix as Pf(A S A^T)/Pf(S).
template <class R>
R hatted_det_pfaffian(const Matrix<R>& a) {
  const Field* f = a.field_ptr();
  if (a.rows() % 2 == 1) throw InvalidArgument("Pfaffian path needs an even number of rows");
  if (a.rows() > a.cols()) return R::zero(f);
  const Matrix<R> s = sign_matrix<R>(f, a.cols());
  return pfaffian(a * s * a.transpose()) * pfaffian(sign_matrix<R>(f, a.rows())).inv();
}

/// dis_{p,q} through the block-matrix determinant and the Pfaffian path.
template <class R>
R dis_fast(const Field* f, const Vec<R>& u, const Vec<R>& alpha, const Vec<R>& beta, size_t p, size_t q) {
  return hatted_det_pfaffian(dis_block_matrix(f, u, alpha, beta, p, q));
}

/// Which β enters the discriminantal of the closed gen_* formula:
/// λ_i/pol(y_i,z) in the closed formula, or λ_i²/pol(y_i,z).
enum class DisBeta { kLambda, kLambdaSquared };

/// The closed formula for gen_* in terms of a region point (x, y, λ) and z:
/// per(W((t;x))) per(W(z)) / pol(x,t) · dis_{n,m/2}(y, λ/pol'(y,y), β), with t
/// the roots of the antiderivative of pol(τ,(x;y)) (entering only through its
/// coefficients).
template <class R>
R star_closed_formula(const Field* f, const Vec<R>& x, const Vec<R>& y, const Vec<R>& lam, const Vec<R>& z,
                      DisBeta variant) {
  const size_t n = x.size(), m = z.size();
  if (y.size() != 2 * n || lam.size() != 2 * n) throw ShapeMismatch("closed formula needs dim(y) = dim(λ) = 2n");
  if (m % 2 == 1) throw InvalidArgument("closed formula needs dim(z) even");
  const Vec<R> t_poly = antiderivative_mod3(f, monic_from_roots(f, concat<R>({x, y})));
  const Vec<R> tx = poly_mul(f, t_poly, monic_from_roots(f, x));
  const R per_tx = per_w_from_elementary(f, elementary_from_monic(tx));
  const R per_z = per_w_from_elementary(f, elementary_from_monic(monic_from_roots(f, z)));
  R pol_xt = R::one(f);
  for (const R& xi : x) pol_xt *= poly_value(f, t_poly, xi);
  Vec<R> alpha, beta;
  for (size_t i = 0; i < 2 * n; ++i) {
    R d1 = R::one(f), dz = R::one(f);
    for (size_t j = 0; j < 2 * n; ++j)
      if (j != i) d1 *= y[i] - y[j];
    for (const R& zk : z) dz *= y[i] - zk;
    alpha.push_back(lam[i] * d1.inv());
    beta.push_back((variant == DisBeta::kLambda ? lam[i] : lam[i] * lam[i]) * dz.inv());
  }
  return per_tx * per_z * pol_xt.inv() * dis_fast(f, y, alpha, beta, n, m / 2);
}

// ---------------------------------------------------------------------------
// Pipelines.

struct StarFastTrace {
  std::optional<BearingPoint> bearing;
  uint64_t bearing_attempts = 0;
  std::optional<NeighbourTrace> neighbour;
  int degree = 0;
};

struct StarFastResult {
  Fq value;
  StarFastTrace trace;
};

/// gen_* by the neighbouring computation from a bearing point of the
/// μ-region at n = 7 dim(z)/2, evaluating the closed formula along
/// the lifted path. Throws NotFound when no bearing point is certified.
StarFastResult gen_star_fast(const Field* f, const FqVec& z, const FqVec& u, const FqVec& rho, const FqVec& w1,
                             const FqVec& w2, DisBeta variant, uint64_t seed, uint64_t max_attempts = 20'000);

enum class PaperMode {
  kDefinitional,  // gen_∧ by the exponential reference evaluator
  kFast,          // gen_∧ through the reduction chain down to the fast gen_*
};

struct PaperPermanentResult {
  Fq value;
  Json trace;
};

/// per(M) by the base-function formula: samples u, h, t, solves the stacked
/// system for ρ and evaluates (1+√-1)^{-n} gen_∧(u⊗1, h, (t;t), (ρ; √-1 ρ)).
/// n must be a power of 3 and the field must contain √-1.
PaperPermanentResult permanent_via_paper(const FqMatrix& m, uint64_t seed, PaperMode mode = PaperMode::kDefinitional,
                                         int max_resamples = 50);

// ---------------------------------------------------------------------------
// Verdicts and the catalog.

enum class Status { kPass, kFail, kPreconditionUnmet, kResourceExhausted };
std::string to_string(Status s);

/// A size profile such as "n=2,m=2".
struct Dims {
  std::map<std::string, int> values;

  static Dims parse(std::string_view text);
  /// Throws InvalidArgument when the key is missing.
  int get(const std::string& key) const;
  /// Keys of `*this` override those of `defaults`.
  Dims over(const Dims& defaults) const;
  std::string to_string() const;
};

struct Verdict {
  std::string id;
  Dims dims;
  std::string field;
  uint64_t seed = 0;
  Json inputs = Json::object();
  std::string lhs, rhs;
  Status status = Status::kPass;
  std::string reason;
  Json trace = Json::object();

  /// The replay record: everything check_identity needs plus the sides.
  Json witness() const;
  /// Carries "witness" exactly when the status is fail.
  Json to_json() const;
};

struct CatalogEntry {
  std::string id;
  std::string statement;
  bool must_pass = false;
  Dims smallest;
  int trials = 1;
};

const std::vector<CatalogEntry>& catalog();
/// Throws NotFound for unknown ids.
const CatalogEntry& catalog_entry(const std::string& id);

/// Seed of trial k under a run seed (splitmix64 of both).
uint64_t trial_seed(uint64_t seed, uint64_t trial);

/// One instance of an identity: samples it from `seed`, evaluates both sides
/// and compares. Mathematical failures are verdicts, never exceptions.
Verdict check_identity(const std::string& id, const Dims& dims, const Field& f, uint64_t seed);

/// Re-runs a witness; the result's sides must equal the witness's.
Verdict replay_witness(const Json& witness);

struct PlanEntry {
  std::string id;
  Dims dims;
  int trials = 1;
  int field_degree = 4;
};

/// Every catalog id at its smallest dims over GF(3^4); MUST-PASS ids also
/// over GF(9).
std::vector<PlanEntry> default_plan();
std::vector<PlanEntry> parse_plan(const Json& plan);

struct IdentityTally {
  std::string id;
  bool must_pass = false;
  std::string field;
  Dims dims;
  int trials = 0, pass = 0, fail = 0, precondition_unmet = 0, resource_exhausted = 0;
  std::optional<Verdict> first_failure;
  std::optional<Verdict> first_other;  // first unmet or exhausted verdict
};

struct AuditReport {
  uint64_t seed = 0;
  std::vector<IdentityTally> tallies;
  double runtime_seconds = 0;

  bool must_pass_ok() const;
  /// Byte-stable unless `with_runtime`.
  Json to_json(bool with_runtime = false) const;
};

/// Trials run in parallel, each with trial_seed(seed, k); the reduction is
/// in plan order.
AuditReport audit_run(const std::vector<PlanEntry>& plan, uint64_t seed);

inline constexpr int kReportSchemaVersion = 1;

/// Replaces the Ryser oracle used by the catalog (an empty function restores
/// it). Exists so that a sabotaged oracle can be shown to break the MUST-PASS
/// exit status; not thread-safe against a running audit.
void set_oracle_override(std::function<Fq(const FqMatrix&)> per);

}  // namespace char3

#endif  // CHAR3_AUDIT_HPP_
