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

#include "char3/series.hpp"

#include <algorithm>
#include <sstream>

namespace char3 {
namespace {

thread_local int g_series_budget = 24;

int sat_add(int a, int b) {
  if (a >= kExact || b >= kExact) return kExact;
  const long long s = static_cast<long long>(a) + b;
  if (s >= kExact) return kExact;
  return static_cast<int>(s);
}

// Lower bound on the order: the order itself, or one past the truncation for
// a zero series whose tail is unknown.
int order_bound(const Series& s) {
  if (!s.is_zero()) return s.order();
  return s.is_exact() ? kExact : s.truncation() + 1;
}

}  // namespace

int series_budget() { return g_series_budget; }
void set_series_budget(int budget) { g_series_budget = std::max(1, budget); }

Series::Series(const Field* f, const std::map<int, Fq>& coeffs, int truncation)
    : f_(f), trunc_(truncation) {
  if (coeffs.empty()) return;
  if (coeffs.rbegin()->first > truncation)
    throw InvalidArgument("series coefficient above truncation");
  lo_ = coeffs.begin()->first;
  c_.assign(static_cast<size_t>(coeffs.rbegin()->first - lo_ + 1), f->zero());
  for (const auto& [k, v] : coeffs) c_[static_cast<size_t>(k - lo_)] = v;
  normalize();
}

Series Series::constant(Fq c) {
  Series s(c.field_ptr());
  if (!c.is_zero()) s.c_.push_back(c);
  return s;
}

Series Series::monomial(Fq c, int k) {
  Series s = constant(c);
  s.lo_ = k;
  return s;
}

void Series::normalize() {
  size_t first = 0;
  while (first < c_.size() && c_[first].is_zero()) ++first;
  if (first == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  size_t last = c_.size();
  while (c_[last - 1].is_zero()) --last;
  if (first > 0 || last < c_.size()) {
    c_ = std::vector<Fq>(c_.begin() + static_cast<long>(first), c_.begin() + static_cast<long>(last));
    lo_ += static_cast<int>(first);
  }
}

Fq Series::coef(int k) const {
  if (k > trunc_)
    throw PrecisionExhausted("coefficient at eps^" + std::to_string(k) + " above truncation " +
                             std::to_string(trunc_));
  if (c_.empty() || k < lo_ || k > top()) return f_->zero();
  return c_[static_cast<size_t>(k - lo_)];
}

Fq Series::limit() const {
  if (!c_.empty() && lo_ < 0)
    throw LimitDoesNotExist("order " + std::to_string(lo_) + " < 0");
  if (trunc_ < 0) throw PrecisionExhausted("truncation " + std::to_string(trunc_) + " < 0");
  return coef(0);
}

Series Series::truncated(int t) const {
  if (t >= trunc_) return *this;
  Series s(f_);
  s.trunc_ = t;
  if (!c_.empty() && lo_ <= t) {
    s.lo_ = lo_;
    s.c_.assign(c_.begin(), c_.begin() + (std::min(t, top()) - lo_ + 1));
    s.normalize();
  }
  return s;
}

Series Series::shifted(int k) const {
  Series s = *this;
  if (!s.c_.empty()) s.lo_ += k;
  s.trunc_ = sat_add(trunc_, k);
  return s;
}

Series operator+(const Series& a, const Series& b) {
  const int t = std::min(a.trunc_, b.trunc_);
  if (a.c_.empty()) return b.truncated(t);
  if (b.c_.empty()) return a.truncated(t);
  const int lo = std::min(a.lo_, b.lo_);
  const int hi = std::min(std::max(a.top(), b.top()), t);
  Series s(a.f_);
  s.trunc_ = t;
  if (hi < lo) return s;
  s.lo_ = lo;
  s.c_.assign(static_cast<size_t>(hi - lo + 1), a.f_->zero());
  for (int k = a.lo_; k <= std::min(a.top(), hi); ++k) s.c_[k - lo] += a.c_[k - a.lo_];
  for (int k = b.lo_; k <= std::min(b.top(), hi); ++k) s.c_[k - lo] += b.c_[k - b.lo_];
  s.normalize();
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

Series operator*(const Series& a, const Series& b) {
  const int t = std::min(sat_add(a.trunc_, order_bound(b)), sat_add(b.trunc_, order_bound(a)));
  Series s(a.f_);
  s.trunc_ = t;
  if (a.c_.empty() || b.c_.empty()) return s;
  const int lo = a.lo_ + b.lo_;
  const int hi = std::min(a.top() + b.top(), t);
  if (hi < lo) return s;
  s.lo_ = lo;
  s.c_.assign(static_cast<size_t>(hi - lo + 1), a.f_->zero());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    const int ei = a.lo_ + static_cast<int>(i);
    for (size_t j = 0; j < b.c_.size(); ++j) {
      const int e = ei + b.lo_ + static_cast<int>(j);
      if (e > hi) break;
      s.c_[e - lo] += a.c_[i] * b.c_[j];
    }
  }
  s.normalize();
  return s;
}

bool operator==(const Series& a, const Series& b) {
  return a.f_ == b.f_ && a.trunc_ == b.trunc_ && a.c_ == b.c_ && (a.c_.empty() || a.lo_ == b.lo_);
}

Series Series::inv() const {
  if (c_.empty()) throw DivisionByZero("series with no known nonzero coefficient");
  const int v = lo_;
  if (is_exact() && c_.size() == 1) return monomial(c_[0].inv(), -v);
  const int rel = is_exact() ? series_budget() : trunc_ - v;
  const Fq u0_inv = c_[0].inv();
  std::vector<Fq> w(static_cast<size_t>(rel + 1), f_->zero());
  w[0] = u0_inv;
  for (int k = 1; k <= rel; ++k) {
    Fq acc = f_->zero();
    for (int i = 1; i <= k && i < static_cast<int>(c_.size()); ++i) acc += c_[i] * w[k - i];
    w[k] = -(u0_inv * acc);
  }
  Series s(f_);
  s.lo_ = -v;
  s.c_ = std::move(w);
  s.trunc_ = -v + rel;
  s.normalize();
  return s;
}

Series Series::pow(long long k) const {
  if (k < 0) return inv().pow(-k);
  Series result = one(f_);
  Series base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::string Series::to_string() const {
  std::ostringstream os;
  if (c_.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      os << (first ? "" : " + ") << c_[i].to_string() << "*eps^" << lo_ + static_cast<int>(i);
      first = false;
    }
  }
  os << ";T=";
  if (is_exact())
    os << "exact";
  else
    os << trunc_;
  return os.str();
}

}  // namespace char3
