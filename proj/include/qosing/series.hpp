#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "expvec.hpp"
#include "lp.hpp"

namespace qosing {

// Finite-support fractional power series in d variables with cyclotomic coefficients.
class FracSeries {
 public:
  using Terms = std::map<ExpVec, Cyclotomic>;

  FracSeries() = default;
  explicit FracSeries(std::size_t d) : d_(d) {}

  static FracSeries monomial(const ExpVec& e, const Cyclotomic& c = Cyclotomic(1L)) {
    FracSeries s(e.dim());
    s.add_term(e, c);
    return s;
  }
  static FracSeries constant(std::size_t d, const Cyclotomic& c) { return monomial(ExpVec(d), c); }

  std::size_t dim() const { return d_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  Cyclotomic coefficient(const ExpVec& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Cyclotomic() : it->second;
  }

  void add_term(const ExpVec& e, const Cyclotomic& c) {
    if (e.dim() != d_) fail(ErrorKind::DimensionMismatch, "term of wrong dimension");
    if (!e.is_nonneg()) fail(ErrorKind::PreconditionViolated, "negative exponent " + to_string(e));
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  std::vector<ExpVec> support() const {
    std::vector<ExpVec> s;
    for (const auto& kv : t_) s.push_back(kv.first);
    return s;
  }

  // Least N with every exponent in (1/N) Z^d.
  Int denom() const {
    Int n = 1;
    for (const auto& kv : t_)
      for (const auto& x : kv.first.c) n = lcm_int(n, x.get_den());
    return n;
  }

  bool has_rational_coefficients() const {
    return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.is_rational(); });
  }
  bool has_integral_exponents() const {
    return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.first.is_integral(); });
  }

  FracSeries operator-() const {
    FracSeries r(d_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }

  friend FracSeries operator+(const FracSeries& a, const FracSeries& b) {
    check(a, b);
    FracSeries r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }
  friend FracSeries operator-(const FracSeries& a, const FracSeries& b) { return a + (-b); }

  friend FracSeries operator*(const FracSeries& a, const FracSeries& b) {
    check(a, b);
    FracSeries r(a.d_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  friend FracSeries operator*(const Cyclotomic& k, const FracSeries& a) {
    FracSeries r(a.d_);
    if (k.is_zero()) return r;
    for (const auto& [e, c] : a.t_) r.add_term(e, k * c);
    return r;
  }

  FracSeries& operator+=(const FracSeries& b) { return *this = *this + b; }
  FracSeries& operator-=(const FracSeries& b) { return *this = *this - b; }
  FracSeries& operator*=(const FracSeries& b) { return *this = *this * b; }

  FracSeries pow(unsigned long e) const {
    FracSeries r = constant(d_, Cyclotomic(1L)), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  // Multiply every exponent by the monomial X^shift.
  FracSeries shifted(const ExpVec& shift) const {
    FracSeries r(d_);
    for (const auto& [e, c] : t_) r.add_term(e + shift, c);
    return r;
  }

  friend bool operator==(const FracSeries& a, const FracSeries& b) { return a.d_ == b.d_ && a.t_ == b.t_; }
  friend bool operator!=(const FracSeries& a, const FracSeries& b) { return !(a == b); }

 private:
  static void check(const FracSeries& a, const FracSeries& b) {
    if (a.d_ != b.d_) fail(ErrorKind::DimensionMismatch, "series of different dimension");
  }

  std::size_t d_ = 0;
  Terms t_;
};

struct NewtonPolyhedron {
  std::size_t dim = 0;
  std::vector<ExpVec> vertices;  // sorted lexicographically

  friend bool operator==(const NewtonPolyhedron& a, const NewtonPolyhedron& b) {
    return a.dim == b.dim && a.vertices == b.vertices;
  }
  friend bool operator!=(const NewtonPolyhedron& a, const NewtonPolyhedron& b) { return !(a == b); }
};

// Vertices of conv(points + R_+^d).
inline NewtonPolyhedron extremize(const std::vector<ExpVec>& points, std::size_t d) {
  std::set<ExpVec> uniq(points.begin(), points.end());
  std::vector<ExpVec> pts(uniq.begin(), uniq.end());
  std::vector<ExpVec> minimal;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts)
      if (q != p && leq(q, p)) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(p);
  }
  NewtonPolyhedron out;
  out.dim = d;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ExpVec> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    if (!in_hull_plus_orthant(minimal[i], others)) out.vertices.push_back(minimal[i]);
  }
  return out;
}

inline NewtonPolyhedron newton_polyhedron(const FracSeries& eta) {
  if (eta.is_zero()) fail(ErrorKind::EmptySeries, "zero series has no Newton polyhedron");
  return extremize(eta.support(), eta.dim());
}

inline std::optional<ExpVec> dominating_exponent(const FracSeries& eta) {
  if (eta.is_zero()) fail(ErrorKind::EmptySeries, "zero series has no dominating exponent");
  auto supp = eta.support();
  ExpVec m = supp.front();
  for (const auto& e : supp) m = componentwise_min(m, e);
  if (eta.coefficient(m).is_zero()) return std::nullopt;
  return m;
}

inline std::vector<std::size_t> complement_indices(const std::vector<std::size_t>& keep, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d; ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) out.push_back(i);
  return out;
}

inline void check_keep(const std::vector<std::size_t>& keep, std::size_t d) {
  if (keep.empty()) fail(ErrorKind::PreconditionViolated, "empty coordinate subset");
  std::set<std::size_t> seen;
  for (auto k : keep) {
    if (k >= d) fail(ErrorKind::DimensionMismatch, "coordinate index out of range");
    if (!seen.insert(k).second) fail(ErrorKind::PreconditionViolated, "repeated coordinate index");
  }
}

inline NewtonPolyhedron project_polyhedron(const NewtonPolyhedron& P, const std::vector<std::size_t>& keep) {
  std::vector<ExpVec> pts;
  for (const auto& v : P.vertices) pts.push_back(project(v, keep));
  return extremize(pts, keep.size());
}

inline NewtonPolyhedron reduced_newton_polyhedron(const FracSeries& eta, const std::vector<std::size_t>& keep) {
  check_keep(keep, eta.dim());
  return project_polyhedron(newton_polyhedron(eta), keep);
}

// Literal test: single reduced vertex m and the X^m coefficient series survives at dropped variables = 0.
inline std::optional<ExpVec> reduced_dominating_exponent(const FracSeries& eta, const std::vector<std::size_t>& keep) {
  auto P = reduced_newton_polyhedron(eta, keep);
  if (P.vertices.size() != 1) return std::nullopt;
  const ExpVec& m = P.vertices.front();
  auto dropped = complement_indices(keep, eta.dim());
  Cyclotomic at_zero;
  for (const auto& [e, c] : eta.terms()) {
    if (project(e, keep) != m) continue;
    bool all_zero = true;
    for (auto k : dropped)
      if (e[k] != 0) all_zero = false;
    if (all_zero) at_zero += c;
  }
  if (at_zero.is_zero()) return std::nullopt;
  return m;
}

inline bool hull_of_sum_check(const std::vector<FracSeries>& parts) {
  if (parts.empty()) fail(ErrorKind::PreconditionViolated, "no parts");
  const std::size_t d = parts.front().dim();
  std::vector<NewtonPolyhedron> polys;
  for (const auto& p : parts) polys.push_back(newton_polyhedron(p));
  std::set<ExpVec> seen;
  std::vector<ExpVec> all;
  for (const auto& P : polys)
    for (const auto& v : P.vertices) {
      if (!seen.insert(v).second) fail(ErrorKind::PreconditionViolated, "vertex sets intersect at " + to_string(v));
      all.push_back(v);
    }
  FracSeries sum(d);
  for (const auto& p : parts) sum += p;
  if (sum.is_zero()) return false;
  return newton_polyhedron(sum) == extremize(all, d);
}

namespace detail {

// u^e for a unit u; non-integral e uses the binomial series of (1 + w)^e truncated after `order` powers of w.
inline FracSeries unit_power(const FracSeries& u, const Rat& e, unsigned order) {
  if (is_integer(e)) return u.pow(static_cast<unsigned long>(to_long(e.get_num())));
  ExpVec zero(u.dim());
  if (u.coefficient(zero) != Cyclotomic(1L))
    fail(ErrorKind::NotAUnit, "fractional twist needs a unit with constant term 1");
  FracSeries w = u - FracSeries::constant(u.dim(), Cyclotomic(1L));
  FracSeries acc = FracSeries::constant(u.dim(), Cyclotomic(1L));
  FracSeries wp = acc;
  Rat binom = 1;
  for (unsigned j = 1; j <= order; ++j) {
    binom = binom * (e - Rat(j - 1)) / Rat(j);
    wp *= w;
    acc += Cyclotomic(binom) * wp;
  }
  return acc;
}

}  // namespace detail

// Substitute X_k <- X_k * u_k for the listed coordinates.
inline FracSeries unit_twist(const FracSeries& eta, const std::map<std::size_t, FracSeries>& units,
                             unsigned truncation = 4) {
  const std::size_t d = eta.dim();
  for (const auto& [k, u] : units) {
    if (k >= d || u.dim() != d) fail(ErrorKind::DimensionMismatch, "unit does not match the series");
    if (u.coefficient(ExpVec(d)).is_zero()) fail(ErrorKind::NotAUnit, "unit with zero constant term");
  }
  std::map<std::pair<std::size_t, ExpVec>, FracSeries> cache;
  FracSeries out(d);
  for (const auto& [e, c] : eta.terms()) {
    FracSeries term = FracSeries::monomial(e, c);
    for (const auto& [k, u] : units) {
      if (e[k] == 0) continue;
      auto key = std::make_pair(k, ExpVec{e[k]});
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, detail::unit_power(u, e[k], truncation)).first;
      term *= it->second;
    }
    out += term;
  }
  return out;
}

}  // namespace qosing
