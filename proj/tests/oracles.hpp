#pragma once

// Independent reference computations used to cross-check the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qosing/sections.hpp"
#include "qosing/toric.hpp"

namespace oracle {

using qosing::ExpVec;
using qosing::Int;
using qosing::Rat;

// |M / Z^d| for M = Z^d + sum Z g: size of the subgroup of (Q/Z)^d generated by the fractional parts.
inline Int index_over_integers(const std::vector<ExpVec>& gens, std::size_t d) {
  auto reduce = [](ExpVec v) {
    for (auto& x : v.c) x = qosing::frac_part(x);
    return v;
  };
  std::set<ExpVec> seen{ExpVec(d)};
  std::vector<ExpVec> todo{ExpVec(d)};
  while (!todo.empty()) {
    ExpVec x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      ExpVec y = reduce(x + g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return Int(static_cast<long>(seen.size()));
}

// [Z^d : W] for W = {v in Z^d : <v, g> in Z for all g}, by counting residues in a box.
inline Int dual_index_by_counting(const std::vector<ExpVec>& gens, std::size_t d) {
  Int D = 1;
  for (const auto& g : gens)
    for (const auto& x : g.c) D = qosing::lcm_int(D, x.get_den());
  const long n = qosing::to_long(D);
  std::vector<long> cur(d, 0);
  long count = 0;
  for (;;) {
    bool ok = true;
    for (const auto& g : gens) {
      Rat s = 0;
      for (std::size_t i = 0; i < d; ++i) s += Rat(cur[i]) * g[i];
      if (!qosing::is_integer(s)) ok = false;
    }
    if (ok) ++count;
    std::size_t i = 0;
    while (i < d && cur[i] + 1 == n) cur[i++] = 0;
    if (i == d) break;
    ++cur[i];
  }
  Int total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= D;
  return Int(total / count);
}

// Vertices of conv(points + R_+^k) for k = 1, 2 via a monotone staircase and a lower hull.
inline std::vector<ExpVec> hull_vertices_low_dim(const std::vector<ExpVec>& pts) {
  if (pts.empty()) return {};
  const std::size_t k = pts.front().dim();
  if (k == 1) {
    ExpVec m = pts.front();
    for (const auto& p : pts) m = qosing::componentwise_min(m, p);
    return {m};
  }
  if (k != 2) throw std::logic_error("hull oracle handles dimension 1 and 2 only");
  std::vector<ExpVec> s(pts.begin(), pts.end());
  std::sort(s.begin(), s.end());
  std::vector<ExpVec> stair;
  for (const auto& p : s)
    if (stair.empty() || p[1] < stair.back()[1]) stair.push_back(p);
  std::vector<ExpVec> hull;
  for (const auto& p : stair) {
    while (hull.size() >= 2) {
      const ExpVec& a = hull[hull.size() - 2];
      const ExpVec& b = hull.back();
      Rat cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  return hull;
}

// Univariate polynomials over Q, index = power of X.
using UPoly = std::vector<Rat>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline UPoly sub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline UPoly exact_div(UPoly a, const UPoly& b) {
  if (b.empty()) throw std::logic_error("division by zero polynomial");
  trim(a);
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::logic_error("inexact division");
  UPoly q(a.size() - b.size() + 1, Rat(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = a[i + b.size() - 1] / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= q[i] * b[j];
  }
  trim(a);
  if (!a.empty()) throw std::logic_error("inexact division");
  trim(q);
  return q;
}

// Polynomial in Y with coefficients in Q[X]; index = power of Y.
using BiPoly = std::vector<UPoly>;

// Determinant of a square matrix over Q[X] by fraction-free Bareiss elimination.
inline UPoly bareiss_det(std::vector<std::vector<UPoly>> m) {
  const std::size_t n = m.size();
  UPoly prev{Rat(1)};
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].empty()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_div(sub(mul(m[i][j], m[k][k]), mul(m[i][k], m[k][j])), prev);
    prev = m[k][k];
  }
  UPoly d = m[n - 1][n - 1];
  if (sign < 0)
    for (auto& x : d) x = -x;
  return d;
}

inline UPoly resultant_y(const BiPoly& f, const BiPoly& g) {
  const std::size_t n = f.size() - 1, m = g.size() - 1;
  const std::size_t size = n + m;
  std::vector<std::vector<UPoly>> S(size, std::vector<UPoly>(size));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) S[r][r + j] = f[n - j];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) S[m + r][r + j] = g[m - j];
  return bareiss_det(S);
}

inline long x_order(const UPoly& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) return static_cast<long>(i);
  throw std::logic_error("zero resultant");
}

inline BiPoly from_series_poly(const qosing::SeriesPoly& p) {
  BiPoly out;
  for (long k = 0; k <= p.degree(); ++k) {
    UPoly c;
    const qosing::FracSeries coeff = p.coeff(k);
    for (const auto& [e, coef] : coeff.terms()) {
      if (!qosing::is_integer(e[0])) throw std::logic_error("fractional exponent in polynomial");
      std::size_t pw = static_cast<std::size_t>(qosing::to_long(e[0].get_num()));
      if (c.size() <= pw) c.resize(pw + 1, Rat(0));
      c[pw] += coef.rational();
    }
    trim(c);
    out.push_back(c);
  }
  return out;
}

// Integer polynomial in variables X_1..X_d, Y (last slot).
using MPoly = std::map<std::vector<long>, long>;

inline MPoly derivative(const MPoly& p, std::size_t var) {
  MPoly out;
  for (const auto& [e, c] : p) {
    if (e[var] == 0) continue;
    auto f = e;
    f[var] -= 1;
    out[f] += c * e[var];
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Does p vanish identically on the coordinate subspace {x_v = 0 : v in zero_vars}?
inline bool vanishes_on(const MPoly& p, const std::vector<std::size_t>& zero_vars) {
  for (const auto& [e, c] : p) {
    bool killed = false;
    for (auto v : zero_vars)
      if (e[v] > 0) killed = true;
    if (!killed && c != 0) return false;
  }
  return true;
}

// Is the stratum {Y = 0, X_v = 0 : v in vars} inside Sing(Y^N - X^B)?
inline bool stratum_singular(long N, const std::vector<long>& B, const std::vector<std::size_t>& vars) {
  const std::size_t d = B.size();
  MPoly f;
  std::vector<long> ey(d + 1, 0);
  ey[d] = N;
  f[ey] += 1;
  std::vector<long> ex(B.begin(), B.end());
  ex.push_back(0);
  f[ex] -= 1;
  std::vector<std::size_t> zero(vars.begin(), vars.end());
  zero.push_back(d);
  if (!vanishes_on(f, zero)) return false;
  for (std::size_t v = 0; v <= d; ++v)
    if (!vanishes_on(derivative(f, v), zero)) return false;
  return true;
}

// Breadth-first closure of generators inside the box below bound.
inline std::set<ExpVec> semigroup_below(const std::vector<ExpVec>& gens, const ExpVec& bound) {
  std::set<ExpVec> seen{ExpVec(bound.dim())};
  std::vector<ExpVec> queue{ExpVec(bound.dim())};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ExpVec x = queue[head];
    for (const auto& g : gens) {
      ExpVec y = x + g;
      if (qosing::leq(y, bound) && seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen;
}

// All (A, i) with A in N^d and 0 <= i_k < cap_k summing to u.
inline std::vector<std::vector<long>> capped_decomposition_list(const ExpVec& u, const std::vector<ExpVec>& derived,
                                                                const std::vector<Int>& caps) {
  const std::size_t G = derived.size();
  std::vector<long> i(G, 0);
  std::vector<std::vector<long>> out;
  for (;;) {
    ExpVec rest = u;
    for (std::size_t k = 0; k < G; ++k) rest = rest - Rat(i[k]) * derived[k];
    bool ok = true;
    for (const auto& x : rest.c)
      if (x < 0 || !qosing::is_integer(x)) ok = false;
    if (ok) out.push_back(i);
    std::size_t k = 0;
    while (k < G && i[k] + 1 == qosing::to_long(caps[k])) i[k++] = 0;
    if (k == G) break;
    ++i[k];
  }
  return out;
}

inline std::size_t capped_decompositions(const ExpVec& u, const std::vector<ExpVec>& derived,
                                         const std::vector<Int>& caps) {
  return capped_decomposition_list(u, derived, caps).size();
}

// Coordinates of p in the basis of the rows of R (R square and invertible).
inline std::vector<Rat> cone_coordinates(const std::vector<ExpVec>& rays, const ExpVec& p) {
  const std::size_t d = p.dim();
  std::vector<std::vector<Rat>> a(d, std::vector<Rat>(d + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = rays[j][i];
    a[i][d] = p[i];
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t r = c;
    while (r < d && a[r][c] == 0) ++r;
    if (r == d) throw std::logic_error("singular cone");
    std::swap(a[c], a[r]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= d; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<Rat> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = a[i][d] / a[i][i];
  return x;
}

// Deterministic generator of small random objects.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  long nonzero(long lo, long hi) {
    long v = 0;
    while (v == 0) v = integer(lo, hi);
    return v;
  }

  Rat rational(long max_num, long max_den) { return qosing::make_rat(integer(0, max_num), integer(1, max_den)); }

  ExpVec exponent(std::size_t d, long max_num, long max_den) {
    ExpVec v(d);
    for (auto& x : v.c) x = rational(max_num, max_den);
    return v;
  }

  qosing::FracSeries series(std::size_t d, std::size_t terms, long max_num, long max_den) {
    qosing::FracSeries s(d);
    while (s.is_zero())
      for (std::size_t t = 0; t < terms; ++t)
        s.add_term(exponent(d, max_num, max_den), qosing::Cyclotomic(nonzero(-4, 4)));
    return s;
  }

  std::vector<std::size_t> subset(std::size_t d) {
    std::vector<std::size_t> keep;
    while (keep.empty())
      for (std::size_t i = 0; i < d; ++i)
        if (coin()) keep.push_back(i);
    return keep;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
