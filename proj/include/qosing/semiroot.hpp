#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "branch.hpp"
#include "poly.hpp"
#include "series.hpp"

namespace qosing {

inline FracSeries canonical_root(const Branch& b) {
  if (b.G() == 0) fail(ErrorKind::Smooth, "smooth branch has no characteristic root");
  FracSeries xi(b.dim);
  for (const auto& a : b.exponents) xi.add_term(a, Cyclotomic(1L));
  return xi;
}

// Truncation sum of the first k monomials of the canonical root.
inline FracSeries root_truncation(const Branch& b, std::size_t k) {
  FracSeries xi(b.dim);
  for (std::size_t j = 0; j < k; ++j) xi.add_term(b.exponents[j], Cyclotomic(1L));
  return xi;
}

// v . X^u = exp(2 pi i <v,u>) X^u
inline FracSeries galois_act(const FracSeries& s, const ExpVec& v) {
  FracSeries out(s.dim());
  for (const auto& [u, c] : s.terms()) {
    Rat t = frac_part(dot(v, u));
    Cyclotomic z = t == 0 ? Cyclotomic(1L)
                          : Cyclotomic::root_of_unity(static_cast<unsigned>(to_long(t.get_den())), to_long(t.get_num()));
    out.add_term(u, z * c);
  }
  return out;
}

// Box transversal of Z^d / W read off the lower-triangular Hermite basis of W.
inline std::vector<ExpVec> coset_representatives(const Lattice& W) {
  if (W.denominator() != 1) fail(ErrorKind::PreconditionViolated, "lattice is not contained in Z^d");
  const std::size_t d = W.dim();
  std::vector<long> diag(d), cur(d, 0);
  for (std::size_t i = 0; i < d; ++i) diag[i] = to_long(W.hermite()[i][i]);
  std::vector<ExpVec> reps;
  for (;;) {
    ExpVec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = cur[i];
    reps.push_back(v);
    std::size_t i = 0;
    while (i < d && cur[i] + 1 == diag[i]) cur[i++] = 0;
    if (i == d) break;
    ++cur[i];
  }
  return reps;
}

inline std::vector<FracSeries> conjugates_with(const FracSeries& xi_k, const std::vector<ExpVec>& reps) {
  std::vector<FracSeries> out;
  for (const auto& v : reps) {
    FracSeries t = galois_act(xi_k, v);
    bool seen = false;
    for (const auto& o : out)
      if (o == t) seen = true;
    if (!seen) out.push_back(t);
  }
  return out;
}

inline std::vector<FracSeries> conjugates(const FracSeries& xi_k, const std::vector<Lattice>& tower, std::size_t k) {
  if (k >= tower.size()) fail(ErrorKind::PreconditionViolated, "tower level out of range");
  for (const auto& u : xi_k.support())
    if (!lattice_member(u, tower[k])) fail(ErrorKind::NotInLattice, "series not supported in the lattice");
  auto reps = coset_representatives(dual_lattice(tower[k]));
  auto out = conjugates_with(xi_k, reps);
  if (out.size() != reps.size()) fail(ErrorKind::ShapeViolation, "conjugates are not pairwise distinct");
  return out;
}

struct SemirootSystem {
  Branch branch;
  BranchInvariants inv;
  FracSeries xi;
  std::vector<std::vector<FracSeries>> roots;  // conjugates of xi_k, k = 0..G
  std::vector<SeriesPoly> semiroots;           // f_0..f_G
  std::vector<FracSeries> values;              // f_k(xi), k = 0..G-1
};

inline SemirootSystem build_semiroots(const Branch& b) {
  if (b.G() == 0) fail(ErrorKind::Smooth, "semiroots of a smooth branch");
  SemirootSystem sys;
  sys.branch = b;
  sys.inv = derive(b);
  sys.xi = canonical_root(b);
  const std::size_t G = b.G();
  for (std::size_t k = 0; k <= G; ++k) {
    auto conj = conjugates(root_truncation(b, k), sys.inv.tower, k);
    SeriesPoly f = SeriesPoly::constant(FracSeries::constant(b.dim, Cyclotomic(1L)));
    for (const auto& r : conj) f = f * SeriesPoly::linear(r);
    for (const auto& c : f.coeffs())
      if (!c.has_rational_coefficients() || !c.has_integral_exponents())
        fail(ErrorKind::ShapeViolation, "semiroot " + std::to_string(k) + " is not defined over the integral series");
    sys.roots.push_back(std::move(conj));
    sys.semiroots.push_back(std::move(f));
  }
  for (std::size_t k = 0; k < G; ++k) {
    FracSeries v = sys.semiroots[k].evaluate(sys.xi);
    auto m = v.is_zero() ? std::nullopt : dominating_exponent(v);
    if (!m || *m != sys.inv.derived[k])
      fail(ErrorKind::ValuationMismatch, "f_" + std::to_string(k) + "(xi) has no dominating exponent " +
                                             to_string(sys.inv.derived[k]));
    sys.values.push_back(std::move(v));
  }
  if (!sys.semiroots[G].evaluate(sys.xi).is_zero()) fail(ErrorKind::ValuationMismatch, "xi is not a root of f_G");
  return sys;
}

// Valuation of f_k(xi); absent means the infinite sentinel (k = G).
inline std::optional<ExpVec> semiroot_valuation(const SemirootSystem& sys, std::size_t k) {
  if (k < sys.values.size()) return sys.inv.derived[k];
  return std::nullopt;
}

// Coefficients indexed by (i_0, ..., i_G).
struct AdicExpansion {
  std::map<std::vector<long>, FracSeries> terms;
};

namespace detail {

inline std::map<std::vector<long>, FracSeries> adic_level(const SeriesPoly& h, const SemirootSystem& sys,
                                                          std::size_t k) {
  std::map<std::vector<long>, FracSeries> out;
  SeriesPoly q = h;
  long j = 0;
  while (!q.is_zero()) {
    auto [quot, rem] = euclid_div(q, sys.semiroots[k]);
    if (!rem.is_zero()) {
      if (k == 0) {
        out.emplace(std::vector<long>{j}, rem.coeff(0));
      } else {
        for (auto& [idx, c] : adic_level(rem, sys, k - 1)) {
          auto full = idx;
          full.push_back(j);
          out.emplace(std::move(full), std::move(c));
        }
      }
    }
    q = quot;
    ++j;
  }
  return out;
}

}  // namespace detail

inline SeriesPoly adic_term(const std::vector<long>& idx, const FracSeries& c, const SemirootSystem& sys) {
  SeriesPoly t = SeriesPoly::constant(c);
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (idx[k] > 0) t = t * sys.semiroots[k].pow(static_cast<unsigned long>(idx[k]));
  return t;
}

inline SeriesPoly reassemble(const AdicExpansion& e, const SemirootSystem& sys) {
  SeriesPoly acc(sys.branch.dim);
  for (const auto& [idx, c] : e.terms) acc = acc + adic_term(idx, c, sys);
  return acc;
}

inline AdicExpansion adic_expand(const SeriesPoly& h, const SemirootSystem& sys) {
  if (h.is_zero()) fail(ErrorKind::PreconditionViolated, "adic expansion of zero");
  AdicExpansion e;
  e.terms = detail::adic_level(h, sys, sys.branch.G());
  const std::size_t G = sys.branch.G();
  const long top = h.degree() / to_long(sys.inv.degree);
  for (const auto& [idx, c] : e.terms) {
    for (std::size_t k = 0; k < G; ++k)
      if (idx[k] < 0 || idx[k] >= to_long(sys.inv.indices[k]))
        fail(ErrorKind::ShapeViolation, "adic index exceeds its cap");
    if (idx[G] > top) fail(ErrorKind::ShapeViolation, "top adic index exceeds the degree bound");
  }
  if (reassemble(e, sys) != h) fail(ErrorKind::ShapeViolation, "adic expansion does not reassemble");
  return e;
}

inline FracSeries evaluate(const SeriesPoly& h, const FracSeries& xi) { return h.evaluate(xi); }

// X^m f_0^{i_0} ... f_{G-1}^{i_{G-1}}
inline SeriesPoly monomial_witness(const ExpVec& m, const std::vector<long>& i, const SemirootSystem& sys) {
  return adic_term(i, FracSeries::monomial(m), sys);
}

struct WitnessTerm {
  ExpVec vertex;         // vertex of the (possibly reduced) polyhedron
  ExpVec m;              // monomial part, in Z^d
  std::vector<long> i;   // i_0..i_{G-1}
};

struct WitnessReport {
  NewtonPolyhedron polyhedron;                 // of h(xi), reduced to keep when given
  std::vector<WitnessTerm> witnesses;
  std::vector<NewtonPolyhedron> part_vertices; // one per surviving adic term
  bool parts_disjoint = false;
  bool hull_matches = false;
};

inline WitnessReport semigroup_witness(const SeriesPoly& h, const SemirootSystem& sys,
                                       const std::vector<std::size_t>& keep = {}) {
  const std::size_t G = sys.branch.G(), d = sys.branch.dim;
  auto [q, r] = euclid_div(h, sys.semiroots[G]);
  if (r.is_zero()) fail(ErrorKind::InIdeal, "polynomial lies in the ideal of the branch");
  AdicExpansion e = adic_expand(r, sys);

  std::map<std::pair<std::size_t, long>, FracSeries> power_cache;
  auto value_power = [&](std::size_t k, long p) -> const FracSeries& {
    auto key = std::make_pair(k, p);
    auto it = power_cache.find(key);
    if (it == power_cache.end())
      it = power_cache.emplace(key, sys.values[k].pow(static_cast<unsigned long>(p))).first;
    return it->second;
  };

  WitnessReport rep;
  std::vector<FracSeries> parts;
  std::vector<std::vector<long>> part_idx;
  for (const auto& [idx, c] : e.terms) {
    FracSeries t = c;
    for (std::size_t k = 0; k < G; ++k)
      if (idx[k] > 0) t *= value_power(k, idx[k]);
    parts.push_back(t);
    part_idx.emplace_back(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(G));
    rep.part_vertices.push_back(newton_polyhedron(t));
  }
  std::set<ExpVec> seen;
  std::vector<ExpVec> all;
  rep.parts_disjoint = true;
  for (const auto& P : rep.part_vertices)
    for (const auto& v : P.vertices) {
      if (!seen.insert(v).second) rep.parts_disjoint = false;
      all.push_back(v);
    }
  if (!rep.parts_disjoint) fail(ErrorKind::ShapeViolation, "adic term polyhedra share a vertex");
  FracSeries hx = r.evaluate(sys.xi);
  NewtonPolyhedron full = newton_polyhedron(hx);
  rep.hull_matches = full == extremize(all, d);
  if (!rep.hull_matches) fail(ErrorKind::ShapeViolation, "polyhedron of the sum is not the hull of the parts");

  auto witness_for = [&](const ExpVec& V) {
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const auto& vs = rep.part_vertices[p].vertices;
      if (std::find(vs.begin(), vs.end(), V) == vs.end()) continue;
      ExpVec m = V;
      for (std::size_t k = 0; k < G; ++k) m = m - Rat(part_idx[p][k]) * sys.inv.derived[k];
      return WitnessTerm{V, m, part_idx[p]};
    }
    fail(ErrorKind::ShapeViolation, "vertex " + to_string(V) + " not carried by any adic term");
  };

  if (keep.empty()) {
    rep.polyhedron = full;
    for (const auto& V : full.vertices) {
      WitnessTerm w = witness_for(V);
      FracSeries wx = monomial_witness(w.m, w.i, sys).evaluate(sys.xi);
      auto de = dominating_exponent(wx);
      if (!de || *de != V) fail(ErrorKind::ValuationMismatch, "witness misses vertex " + to_string(V));
      rep.witnesses.push_back(w);
    }
    return rep;
  }
  rep.polyhedron = project_polyhedron(full, keep);
  for (const auto& v : rep.polyhedron.vertices) {
    const ExpVec* lift = nullptr;
    for (const auto& V : full.vertices)
      if (project(V, keep) == v) {
        lift = &V;
        break;
      }
    if (!lift) fail(ErrorKind::ShapeViolation, "reduced vertex " + to_string(v) + " has no lift");
    WitnessTerm w = witness_for(*lift);
    FracSeries wx = monomial_witness(w.m, w.i, sys).evaluate(sys.xi);
    auto P = reduced_newton_polyhedron(wx, keep);
    if (P.vertices.size() != 1 || P.vertices.front() != v)
      fail(ErrorKind::ValuationMismatch, "witness misses reduced vertex " + to_string(v));
    w.vertex = v;
    rep.witnesses.push_back(w);
  }
  return rep;
}

}  // namespace qosing
