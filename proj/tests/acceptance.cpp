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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "char3/audit.hpp"
#include "char3/esum.hpp"

#ifndef CHAR3_CLI_PATH
#error "CHAR3_CLI_PATH must name the char3 executable"
#endif

using namespace char3;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Fq random_fq(std::mt19937_64& rng, const Field* f) { return f->from_index(static_cast<uint32_t>(rng() % f->order())); }

FqVec random_vec(std::mt19937_64& rng, const Field* f, size_t n) {
  FqVec v;
  for (size_t i = 0; i < n; ++i) v.push_back(random_fq(rng, f));
  return v;
}

FqVec distinct(std::mt19937_64& rng, const Field* f, size_t n) {
  std::vector<uint32_t> idx(f->order());
  for (uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  FqVec v;
  for (size_t i = 0; i < n; ++i) v.push_back(f->from_index(idx[i]));
  return v;
}

FqMatrix random_matrix(std::mt19937_64& rng, const Field* f, size_t n) {
  FqMatrix m(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = random_fq(rng, f);
  return m;
}

// Counts cases and failures of one named property.
struct Tally {
  std::string name;
  int cases = 0, bad = 0;
  void check(bool ok) {
    ++cases;
    bad += !ok;
  }
};

Outcome summarize(const std::vector<Tally>& ts, int min_cases, double elapsed, double limit) {
  Outcome o;
  std::ostringstream s;
  for (const auto& t : ts) {
    s << t.name << " " << (t.cases - t.bad) << "/" << t.cases << "; ";
    if (t.bad > 0 || t.cases < min_cases) o.ok = false;
  }
  s << elapsed << " s (limit " << limit << " s)";
  if (elapsed >= limit) o.ok = false;
  o.detail = s.str();
  return o;
}

Outcome oracle_concordance() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::vector<Tally> ts;
  for (int q : {1, 2, 4}) {
    const Field* f = &make_field(q);
    Tally t{"GF(3^" + std::to_string(q) + ")"};
    for (int k = 0; k < 200; ++k) {
      const FqMatrix m = random_matrix(rng, f, static_cast<size_t>(k % 8));
      t.check(permanent_ryser(m) == permanent_naive(m));
    }
    ts.push_back(t);
  }
  return summarize(ts, 200, seconds_since(t0), 10);
}

// The MUST-PASS identities through the audit at sizes cycling over the
// required ranges, 50 instances each.
Outcome classical_suite() {
  const auto t0 = Clock::now();
  const Field& f = make_field(4);
  struct Range {
    std::string id;
    std::vector<std::string> dims;
  };
  const std::vector<Range> ranges = {
      {"lemma1", {"n=1", "n=2", "n=3", "n=4", "n=5"}},
      {"borchardt", {"n=1", "n=2", "n=3", "n=4", "n=5"}},
      {"lemma4", {"n=1", "n=2", "n=3"}},
      {"bm_general", {"n=1,m=1", "n=2,m=3", "n=3,m=5", "n=4,m=4", "n=5,m=5"}},
      {"bm_char3", {"n=1,m=2", "n=2,m=2", "n=3,m=4", "n=4,m=5", "n=5,m=5"}},
      {"thm10_1", {"z=0", "z=2", "z=3", "z=4", "z=5", "z=6"}},
      {"per_via_ham", {"d=1", "d=2", "d=3", "d=4", "d=5"}},
      {"pfaffian", {"k=1", "k=2", "k=3"}},
  };
  std::vector<Tally> ts;
  for (const auto& r : ranges) {
    Tally t{r.id};
    for (int k = 0; k < 50; ++k) {
      const Dims d = Dims::parse(r.dims[static_cast<size_t>(k) % r.dims.size()]);
      t.check(check_identity(r.id, d, f, trial_seed(2, static_cast<uint64_t>(k))).status == Status::kPass);
    }
    ts.push_back(t);
  }
  return summarize(ts, 50, seconds_since(t0), 60);
}

Series random_series(std::mt19937_64& rng, const Field* f, int lo, int hi, int trunc) {
  std::map<int, Fq> m;
  for (int k = lo; k <= hi; ++k) m[k] = random_fq(rng, f);
  return Series(f, m, trunc);
}

Outcome kernel_properties() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(3);
  Tally exhaustive{"field axioms exhaustive q<=2"}, randomized{"field axioms random q<=6"},
      frob{"frobenius/cube root"}, ring{"Laurent ring laws"}, lucas{"extension entries vs series"};
  for (int q = 1; q <= 2; ++q) {
    const Field* f = &make_field(q);
    const uint32_t n = f->order();
    for (uint32_t a = 0; a < n; ++a)
      for (uint32_t b = 0; b < n; ++b)
        for (uint32_t c = 0; c < n; ++c) {
          const Fq x = f->from_index(a), y = f->from_index(b), z = f->from_index(c);
          exhaustive.check((x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) &&
                           x * (y + z) == x * y + x * z && x + y == y + x && x * y == y * x &&
                           x + (-x) == f->zero() && (x.is_zero() || x * x.inv() == f->one()));
        }
  }
  for (int q = 1; q <= 6; ++q) {
    const Field* f = &make_field(q);
    for (int k = 0; k < 100; ++k) {
      const Fq x = random_fq(rng, f), y = random_fq(rng, f), z = random_fq(rng, f);
      randomized.check((x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z &&
                       (x.is_zero() || x * x.inv() == f->one()) && x.pow(static_cast<long long>(f->order())) == x);
      frob.check(cube_root(x).frobenius() == x && cube_root(x.frobenius()) == x &&
                 (x * y).frobenius() == x.frobenius() * y.frobenius() &&
                 (x + y).frobenius() == x.frobenius() + y.frobenius());
    }
  }
  const Field* g = &make_field(2);
  for (int k = 0; k < 100; ++k) {
    const Series a = random_series(rng, g, -2, 3, 6), b = random_series(rng, g, -1, 2, 5),
                 c = random_series(rng, g, 0, 4, 7);
    bool ok = (a + b) + c == a + (b + c);
    const Series d1 = a * (b + c), d2 = a * b + a * c;
    const int tc = std::min(d1.truncation(), d2.truncation());
    ok = ok && d1.truncated(tc) == d2.truncated(tc);
    if (!a.is_zero() && !b.is_zero()) ok = ok && (a * b).order() == a.order() + b.order();
    if (!a.is_zero()) ok = ok && (a * a.inv()).limit() == g->one();
    ring.check(ok);
  }
  for (int q : {1, 2, 3})
    for (int k = 0; k < 40; ++k) {
      const Field* f = &make_field(q);
      const FqVec v = distinct(rng, f, 2);
      const int p = static_cast<int>(rng() % 7), r = static_cast<int>(rng() % 7);
      const FqMatrix e = extension_matrix<Fq>(f, v, {planes::deg({p}, {}), planes::deg({}, {r})});
      // coef_{ε^p} of (d + ε)^{-(r+1)}.
      const Series s = (Series::constant(v[0] - v[1]) + Series::eps(f)).pow(-(r + 1));
      lucas.check(e(0, 0) == s.coef(p));
    }
  return summarize({exhaustive, randomized, frob, ring, lucas}, 100, seconds_since(t0), 30);
}

ExtensionPlane<Fq> random_plane(std::mt19937_64& rng, const Field* f) {
  using planes::deg;
  static const std::vector<ExtensionDegree> pool = {deg({}, {}),   deg({0}, {}),  deg({}, {0}),
                                                    deg({0}, {0}), deg({0}, {1}), deg({1}, {0}),
                                                    deg({1}, {2}), deg({0, 0}, {0, 1})};
  ExtensionPlane<Fq> p;
  for (const auto& d : pool)
    if (rng() % 2) p.push_back({d, f->from_index(1 + static_cast<uint32_t>(rng() % (f->order() - 1)))});
  if (p.empty()) p.push_back({pool[rng() % pool.size()], f->one()});
  return p;
}

Outcome esum_machinery() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(4);
  const Field* f = &make_field(3);
  Tally linear{"esum multilinearity"}, reduce{"C~ reductions"}, waves{"gen_2waves(w=0) = gen_wave"};
  for (int k = 0; k < 10; ++k) {
    const size_t n = 2 + k % 3;
    const FqVec a = distinct(rng, f, n);
    std::vector<ExtensionPlane<Fq>> th;
    for (size_t i = 0; i < n; ++i) th.push_back(random_plane(rng, f));
    const size_t at = rng() % n;
    const auto p1 = random_plane(rng, f), p2 = random_plane(rng, f);
    auto t1 = th, t2 = th, t12 = th;
    t1[at] = p1;
    t2[at] = p2;
    t12[at] = planes::sum(p1, p2);
    const Fq c = f->generator();
    auto tc = th;
    tc[at] = planes::scaled(p1, c);
    linear.check(esum(f, a, t12) == esum(f, a, t1) + esum(f, a, t2) && esum(f, a, tc) == c * esum(f, a, t1));
  }
  for (int k = 0; k < 20; ++k) {
    const size_t nx = 1 + k % 3, ny = 1 + (k / 3) % 3, nz = k % 4;
    const FqVec v = distinct(rng, f, nx + ny + nz);
    const FqVec x(v.begin(), v.begin() + static_cast<long>(nx)),
        y(v.begin() + static_cast<long>(nx), v.begin() + static_cast<long>(nx + ny)),
        z(v.begin() + static_cast<long>(nx + ny), v.end());
    bool ok = c_tilde<Fq>(f, x, y, {}) == cauchy(f, x, y);
    const FqMatrix cz = c_tilde_diag(f, z);
    for (size_t i = 0; i < nz; ++i)
      for (size_t j = 0; j < nz; ++j) ok = ok && cz(i, j) == (i == j ? f->zero() : (z[i] - z[j]).inv());
    reduce.check(ok);
  }
  for (int k = 0; k < 20; ++k) {
    const size_t dz = k % 4, dh = k % 3, dt = dh + k % 2 + (k / 4) % 2;
    const FqVec v = distinct(rng, f, dz + dh + dt);
    const FqVec z(v.begin(), v.begin() + static_cast<long>(dz)),
        h(v.begin() + static_cast<long>(dz), v.begin() + static_cast<long>(dz + dh)),
        t(v.begin() + static_cast<long>(dz + dh), v.end());
    const FqVec alpha = random_vec(rng, f, dz), rho = random_vec(rng, f, dt);
    waves.check(gen_2waves(f, z, alpha, {}, h, t, rho) == gen_wave(f, z, alpha, h, t, rho));
  }
  return summarize({linear, reduce, waves}, 10, seconds_since(t0), 60);
}

// Sparse polynomial in several variables.
struct Poly {
  std::vector<std::pair<Fq, std::vector<int>>> terms;

  template <class R>
  R operator()(const Vec<R>& x) const {
    R acc = ring_const<R>(terms.front().first.field().zero());
    for (const auto& [c, e] : terms) {
      R t = ring_const<R>(c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) t = t * x[i].pow(e[i]);
      acc += t;
    }
    return acc;
  }
};

Poly random_poly(std::mt19937_64& rng, const Field* f, size_t vars, int degree) {
  Poly p;
  const int terms = 1 + static_cast<int>(rng() % 6);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(vars, 0);
    int left = static_cast<int>(rng() % static_cast<uint64_t>(degree + 1));
    for (size_t i = 0; i < vars && left > 0; ++i) {
      const int k = i + 1 == vars ? left : static_cast<int>(rng() % static_cast<uint64_t>(left + 1));
      e[i] = k;
      left -= k;
    }
    p.terms.push_back({random_fq(rng, f), e});
  }
  return p;
}

Outcome neighbouring_engine() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5);
  const Field* f = &make_field(4);
  Tally extrap{"poly_extrapolate"}, neigh{"neighbouring_compute"};
  for (int k = 0; k < 100; ++k) {
    const size_t vars = 1 + rng() % 3;
    const int degree = static_cast<int>(rng() % 5);
    const Poly p = random_poly(rng, f, vars, degree);
    const FqVec x = random_vec(rng, f, vars), chi = random_vec(rng, f, vars);
    extrap.check(poly_extrapolate(f, p, degree, x, chi) == p(chi));
  }
  for (int k = 0; k < 100; ++k) {
    const size_t vars = 1 + rng() % 3;
    const int degree = static_cast<int>(rng() % 5);
    const Poly p = random_poly(rng, f, vars, degree);
    const ParameterizedSystem id = make_system(
        vars, vars, 0, [](const auto& h) { return h; }, [](const auto& h) { return std::decay_t<decltype(h)>{}; });
    const FqVec h0 = random_vec(rng, f, vars), target = random_vec(rng, f, vars);
    neigh.check(neighbouring_compute(f, id, p, degree, h0, target).value == p(target));
  }
  return summarize({extrap, neigh}, 100, seconds_since(t0), 30);
}

std::vector<Json> g_witnesses;

Outcome audit_completeness() {
  const auto t0 = Clock::now();
  std::vector<PlanEntry> plan;
  for (const auto& e : catalog()) plan.push_back({e.id, e.smallest, e.trials, 4});
  const AuditReport a = audit_run(plan, 0);
  const AuditReport b = audit_run(plan, 0);
  Outcome o;
  std::set<std::string> seen;
  int pass = 0, fail = 0, unmet = 0, exhausted = 0;
  for (const auto& t : a.tallies) {
    seen.insert(t.id);
    pass += t.pass;
    fail += t.fail;
    unmet += t.precondition_unmet;
    exhausted += t.resource_exhausted;
    if (t.pass + t.fail + t.precondition_unmet + t.resource_exhausted != t.trials) o.ok = false;
    if (t.fail > 0 && !(t.first_failure && t.first_failure->to_json().contains("witness"))) o.ok = false;
    if (t.precondition_unmet + t.resource_exhausted > 0 && (!t.first_other || t.first_other->reason.empty()))
      o.ok = false;
    if (t.first_failure) g_witnesses.push_back(t.first_failure->witness());
  }
  const bool complete = seen.size() == catalog().size();
  const bool deterministic = a.to_json().dump() == b.to_json().dump();
  const double s = seconds_since(t0);
  o.ok = o.ok && complete && deterministic && s < 900;
  std::ostringstream d;
  d << seen.size() << "/" << catalog().size() << " ids with verdicts (" << pass << " pass, " << fail << " fail, "
    << unmet << " unmet, " << exhausted << " exhausted); deterministic " << (deterministic ? "yes" : "no") << "; "
    << s << " s";
  o.detail = d.str();
  return o;
}

Outcome headline() {
  const auto t0 = Clock::now();
  const Field& f = make_field(4);
  const char* keys[] = {"u", "h", "t", "rho", "gen_base", "value", "sqrt_minus_one", "reconstructs_transpose"};
  int agree[2] = {0, 0}, negated[2] = {0, 0}, complete[2] = {0, 0};
  const int dims[2] = {1, 3};
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k < 30; ++k) {
      const Verdict v = check_identity("cor12_1", Dims::parse("n=" + std::to_string(dims[s])), f,
                                       trial_seed(7, static_cast<uint64_t>(k)));
      agree[s] += v.status == Status::kPass;
      negated[s] += v.trace.value("ratio_rhs_over_lhs", "") == (-f.one()).to_string();
      bool full = v.status == Status::kPass || v.status == Status::kFail;
      for (const char* key : keys) full = full && v.trace.contains(key);
      complete[s] += full;
      if (v.status == Status::kFail) g_witnesses.push_back(v.witness());
    }
  // per(I_3) = 1.
  FqMatrix id(&f, 3, 3);
  for (size_t i = 0; i < 3; ++i) id(i, i) = f.one();
  std::string identity_value;
  try {
    identity_value = permanent_via_paper(id, 7).value.to_string();
  } catch (const Error& e) {
    identity_value = std::string("error: ") + e.what();
  }
  const double s = seconds_since(t0);
  Outcome o;
  o.ok = agree[0] == 30 && complete[0] == 30 && complete[1] == 30 && s < 1800;
  std::ostringstream d;
  d << "n=1 agreement " << agree[0] << "/30 (required 30); n=3 agreement " << agree[1]
 << "/30 (reported); off by exactly -1: " << negated[0] << "/30 and " << negated[1]
    << "/30; complete traces " << complete[0] << "/30 and " << complete[1] << "/30; per(I_3) by the "
    << "formula " << identity_value << " vs 1; " << s << " s";
  o.detail = d.str();
  return o;
}

Outcome replayability() {
  const auto t0 = Clock::now();
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "char3_acceptance";
  std::filesystem::create_directories(dir);
  int same = 0, k = 0;
  for (const Json& w : g_witnesses) {
    const auto in = dir / ("witness" + std::to_string(k) + ".json"), out = dir / ("replay" + std::to_string(k) + ".json");
    ++k;
    std::ofstream(in) << w.dump();
    const std::string cmd = std::string(CHAR3_CLI_PATH) + " check --witness " + in.string() + " --json " +
                            out.string() + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) continue;
    std::ifstream r(out);
    const Json v = Json::parse(r);
    same += v["lhs"] == w["lhs"] && v["rhs"] == w["rhs"];
  }
  Outcome o;
  o.ok = same == static_cast<int>(g_witnesses.size()) && !g_witnesses.empty();
  std::ostringstream d;
  d << same << "/" << g_witnesses.size() << " fail witnesses reproduced through `char3 check --witness`; "
    << seconds_since(t0) << " s";
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"oracle concordance", oracle_concordance},     {"classical identity suite", classical_suite},
      {"kernel property suites", kernel_properties},  {"E-sum machinery", esum_machinery},
      {"neighbouring engine", neighbouring_engine},   {"audit completeness", audit_completeness},
      {"headline experiment", headline},              {"replayability", replayability},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("crashed: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.ok ? "PASS" : "FAIL") << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
