#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "branch.hpp"
#include "lp.hpp"

namespace qosing {

// N^r + N extras[0] + ... ; caps[k] is the index of the lattice step adding extras[k].
struct QOSemigroup {
  std::size_t rank = 0;
  std::vector<ExpVec> extras;
  std::vector<Int> caps;
  std::vector<Lattice> tower;  // Z^r, Z^r + Z extras[0], ...
};

struct Decomposition {
  ExpVec A;
  std::vector<Int> i;

  friend bool operator==(const Decomposition& a, const Decomposition& b) { return a.A == b.A && a.i == b.i; }
};

inline QOSemigroup make_semigroup(std::size_t rank, const std::vector<ExpVec>& extras) {
  QOSemigroup sg;
  sg.rank = rank;
  sg.extras = extras;
  sg.tower.push_back(Lattice::standard(rank));
  for (const auto& e : extras) {
    if (e.dim() != rank) fail(ErrorKind::DimensionMismatch, "generator of wrong rank");
    if (!e.is_nonneg() || e.is_zero()) fail(ErrorKind::PreconditionViolated, "generator must be nonzero and nonnegative");
    Lattice next = lattice_sum(sg.tower.back(), {e});
    sg.caps.push_back(lattice_index(sg.tower.back(), next));
    sg.tower.push_back(next);
  }
  return sg;
}

inline QOSemigroup gamma(const Branch& b) {
  if (b.G() == 0) fail(ErrorKind::Smooth, "semigroup of a smooth branch");
  return make_semigroup(b.dim, derive(b).derived);
}

inline QOSemigroup gamma_reduced(const Branch& b) {
  if (b.G() == 0) fail(ErrorKind::Smooth, "semigroup of a smooth branch");
  auto r = reduced_exponents(b);
  return make_semigroup(r.c_reduced, r.derived);
}

inline Decomposition unique_decompose(const ExpVec& u, const QOSemigroup& sg) {
  if (u.dim() != sg.rank) fail(ErrorKind::DimensionMismatch, "element of wrong rank");
  const std::size_t G = sg.extras.size();
  if (!lattice_member(u, sg.tower[G])) fail(ErrorKind::NotInLattice, to_string(u) + " is not in the lattice");
  Decomposition dec;
  dec.i.assign(G, Int(0));
  ExpVec rest = u;
  for (std::size_t k = G; k-- > 0;) {
    bool found = false;
    for (Int j = 0; j < sg.caps[k]; ++j) {
      ExpVec cand = rest - Rat(j) * sg.extras[k];
      if (lattice_member(cand, sg.tower[k])) {
        dec.i[k] = j;
        rest = cand;
        found = true;
        break;
      }
    }
    if (!found) fail(ErrorKind::NotInLattice, "no residue for step " + std::to_string(k + 1));
  }
  dec.A = rest;
  return dec;
}

inline ExpVec recompose(const Decomposition& dec, const QOSemigroup& sg) {
  ExpVec u = dec.A;
  for (std::size_t k = 0; k < dec.i.size(); ++k) u = u + Rat(dec.i[k]) * sg.extras[k];
  return u;
}

inline bool membership(const ExpVec& u, const QOSemigroup& sg) {
  if (!u.is_nonneg()) return false;
  if (!lattice_member(u, sg.tower.back())) return false;
  return unique_decompose(u, sg).A.is_nonneg();
}

constexpr std::size_t kDefaultMaxFragment = 200000;

inline std::vector<ExpVec> enumerate_up_to(const QOSemigroup& sg, const ExpVec& bound,
                                           std::size_t max_size = kDefaultMaxFragment) {
  if (bound.dim() != sg.rank) fail(ErrorKind::DimensionMismatch, "bound of wrong rank");
  if (!bound.is_nonneg()) fail(ErrorKind::PreconditionViolated, "negative bound");
  std::set<ExpVec> out;
  const std::size_t r = sg.rank;
  auto add_units = [&](const ExpVec& base) {
    std::vector<long> slack(r), cur(r, 0);
    for (std::size_t i = 0; i < r; ++i) slack[i] = to_long(floor_rat(bound[i] - base[i]));
    for (;;) {
      ExpVec v = base;
      for (std::size_t i = 0; i < r; ++i) v[i] += cur[i];
      out.insert(v);
      if (out.size() > max_size) fail(ErrorKind::FragmentTooLarge, "fragment exceeds " + std::to_string(max_size));
      std::size_t i = 0;
      while (i < r && cur[i] == slack[i]) cur[i++] = 0;
      if (i == r) break;
      ++cur[i];
    }
  };
  // Depth-first over extra-generator coefficients.
  std::vector<std::pair<std::size_t, ExpVec>> stack{{0, ExpVec(r)}};
  while (!stack.empty()) {
    auto [k, base] = stack.back();
    stack.pop_back();
    if (k == sg.extras.size()) {
      add_units(base);
      continue;
    }
    for (ExpVec cur = base; leq(cur, bound); cur = cur + sg.extras[k]) stack.emplace_back(k + 1, cur);
  }
  return std::vector<ExpVec>(out.begin(), out.end());
}

// Twice the last extra generator plus two in every coordinate.
inline ExpVec default_bound(const QOSemigroup& sg) {
  ExpVec b(sg.rank);
  for (std::size_t i = 0; i < sg.rank; ++i) b[i] = 2;
  if (!sg.extras.empty()) b = b + Rat(2) * sg.extras.back();
  return b;
}

struct RecoveredGenerators {
  std::vector<ExpVec> units;
  std::vector<ExpVec> extras;      // in the coordinates of the unit basis
  std::vector<std::string> transcript;
};

namespace detail {

inline std::set<ExpVec> closure_below(const std::vector<ExpVec>& gens, const ExpVec& bound) {
  std::set<ExpVec> seen{ExpVec(bound.dim())};
  std::vector<ExpVec> frontier{ExpVec(bound.dim())};
  while (!frontier.empty()) {
    ExpVec x = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      ExpVec y = x + g;
      if (leq(y, bound) && seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen;
}

}  // namespace detail

inline RecoveredGenerators recover_generators(const std::vector<ExpVec>& elements, const ExpVec& bound) {
  const std::size_t r = bound.dim();
  RecoveredGenerators out;
  std::set<ExpVec> frag;
  for (const auto& e : elements) {
    if (e.dim() != r) fail(ErrorKind::DimensionMismatch, "fragment element of wrong rank");
    if (leq(e, bound)) frag.insert(e);
  }
  // Group nonzero elements by ray and keep the smallest element on each ray.
  std::map<ExpVec, ExpVec> ray_min;
  for (const auto& e : frag) {
    if (e.is_zero()) continue;
    Rat sum = 0;
    for (const auto& x : e.c) sum += x;
    if (sum <= 0) fail(ErrorKind::PreconditionViolated, "fragment element outside the positive orthant");
    ExpVec dir = (Rat(1) / sum) * e;
    auto it = ray_min.find(dir);
    if (it == ray_min.end() || leq(e, it->second)) ray_min[dir] = e;
  }
  // Incremental extreme rays: keep a generating set of the cone seen so far with no redundant member.
  for (const auto& kv : ray_min) {
    const ExpVec& p = kv.second;
    if (!out.units.empty() && in_cone(p, out.units)) continue;
    out.units.push_back(p);
    for (std::size_t i = out.units.size() - 1; i-- > 0;) {
      std::vector<ExpVec> others;
      for (std::size_t j = 0; j < out.units.size(); ++j)
        if (j != i) others.push_back(out.units[j]);
      if (in_cone(out.units[i], others)) out.units.erase(out.units.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  std::sort(out.units.begin(), out.units.end(), [](const ExpVec& a, const ExpVec& b) { return b < a; });
  if (out.units.size() != r) fail(ErrorKind::PreconditionViolated, "cone of the fragment is not simplicial of full rank");
  for (const auto& u : out.units) out.transcript.push_back("unit " + to_string(u));

  std::vector<ExpVec> gens = out.units;
  std::vector<ExpVec> alphas;
  for (;;) {
    auto S = detail::closure_below(gens, bound);
    std::vector<ExpVec> outside;
    for (const auto& e : frag)
      if (!S.count(e)) outside.push_back(e);
    if (outside.empty()) break;
    std::vector<ExpVec> minimal;
    for (const auto& e : outside) {
      bool dominated = false;
      for (const auto& f : outside)
        if (f != e && leq(f, e)) {
          dominated = true;
          break;
        }
      if (!dominated) minimal.push_back(e);
    }
    if (minimal.size() != 1) {
      std::string names;
      for (const auto& m : minimal) names += " " + to_string(m);
      fail(ErrorKind::NoUniqueMinimum, "incomparable minimal candidates:" + names);
    }
    alphas.push_back(minimal.front());
    gens.push_back(minimal.front());
    out.transcript.push_back("extra " + to_string(minimal.front()));
  }
  // Coordinates of each extra in the unit basis.
  RatMat U(r, std::vector<Rat>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) U[i][j] = out.units[i][j];
  RatMat Uinv = invert(U);
  for (const auto& a : alphas) {
    ExpVec coords(r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i) coords[j] += a[i] * Uinv[i][j];
    out.extras.push_back(coords);
  }
  return out;
}

}  // namespace qosing
