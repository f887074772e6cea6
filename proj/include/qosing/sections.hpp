#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semigroup.hpp"
#include "semiroot.hpp"

namespace qosing {

// Plane branch data: characteristic exponents, their lattice indices over Z and derived exponents.
struct PlaneBranch {
  std::vector<Rat> exponents;
  std::vector<Int> indices;
  std::vector<Rat> derived;
  Int degree = 1;
};

inline PlaneBranch plane_branch(const std::vector<Rat>& exponents) {
  PlaneBranch p;
  Int den = 1;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const Rat& a = exponents[i];
    if (a <= 0) fail(ErrorKind::PreconditionViolated, "characteristic exponent must be positive");
    if (i > 0 && a <= exponents[i - 1]) fail(ErrorKind::NotStrict, "characteristic exponents must increase");
    Int next = lcm_int(den, a.get_den());
    if (next == den) fail(ErrorKind::DegenerateExponent, to_string(a) + " does not enlarge the lattice");
    p.indices.push_back(Int(next / den));
    p.derived.push_back(i == 0 ? a : Rat(p.indices[i - 1]) * p.derived[i - 1] + a - exponents[i - 1]);
    p.exponents.push_back(a);
    den = next;
  }
  p.degree = den;
  return p;
}

// Characteristic exponents of a one-variable root: support points enlarging the denominator lattice.
inline PlaneBranch plane_branch_of_root(const FracSeries& r) {
  if (r.dim() != 1) fail(ErrorKind::DimensionMismatch, "plane root must be univariate");
  std::vector<Rat> exps;
  Int den = 1;
  for (const auto& u : r.support()) {
    if (lcm_int(den, u[0].get_den()) != den) {
      exps.push_back(u[0]);
      den = lcm_int(den, u[0].get_den());
    }
  }
  return plane_branch(exps);
}

inline Rat order_x(const FracSeries& s) {
  if (s.dim() != 1) fail(ErrorKind::DimensionMismatch, "order of a multivariate series");
  if (s.is_zero()) fail(ErrorKind::EmptySeries, "order of the zero series");
  return s.support().front()[0];
}

// Conjugates of a univariate root under the Galois group of its support lattice.
inline std::vector<FracSeries> plane_conjugates(const FracSeries& xi) {
  if (xi.dim() != 1) fail(ErrorKind::DimensionMismatch, "plane root must be univariate");
  Lattice L = lattice_sum(Lattice::standard(1), xi.support());
  return conjugates(xi, {L}, 0);
}

// Maximal order of a nonzero difference of conjugates; absent when every difference vanishes.
inline std::optional<Rat> coincidence_exponent(const std::vector<FracSeries>& xs, const std::vector<FracSeries>& ys) {
  std::optional<Rat> best;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      FracSeries diff = x - y;
      if (diff.is_zero()) continue;
      Rat v = order_x(diff);
      if (!best || v > *best) best = v;
    }
  return best;
}

inline std::optional<Rat> coincidence_exponent(const FracSeries& xi, const FracSeries& eta) {
  return coincidence_exponent(plane_conjugates(xi), plane_conjugates(eta));
}

// (f,g) from the coincidence exponent K, with A_0 = Abar_0 = 0 and A_{g+1} infinite.
inline Rat intersection_number(const PlaneBranch& f, const PlaneBranch& g, const Rat& K) {
  std::size_t k = 0;
  while (k < f.exponents.size() && !(K < f.exponents[k])) ++k;
  Rat abar = k == 0 ? Rat(0) : f.derived[k - 1];
  Rat a = k == 0 ? Rat(0) : f.exponents[k - 1];
  Int before = 1;
  for (std::size_t j = 0; j + 1 < k; ++j) before *= f.indices[j];
  Int upto = k == 0 ? Int(1) : Int(before * f.indices[k - 1]);
  Rat value = Rat(f.degree * g.degree) * (abar / Rat(before) + (K - a) / Rat(upto));
  if (!is_integer(value)) fail(ErrorKind::NonIntegral, "intersection number " + to_string(value) + " is not an integer");
  return value;
}

inline std::set<Rat> first_exponent_orbit(const Rat& a1) {
  if (a1 <= 1) fail(ErrorKind::PreconditionViolated, "first exponent must exceed 1");
  std::set<Rat> out{a1, Rat(1) / a1};
  for (Int m = 1; m <= floor_rat(a1); ++m) out.insert(Rat(1) / Rat(m));
  return out;
}

struct SectionComponent {
  Int degree = 1;
  std::vector<Rat> char_exponents;

  friend bool operator==(const SectionComponent& a, const SectionComponent& b) {
    return a.degree == b.degree && a.char_exponents == b.char_exponents;
  }
};

// Plane section transverse to the coordinate hyperplane X_i = 0 at a generic point.
// components[0] carries the canonical root; intersection pairs it with its maximal-contact partner.
struct SectionData {
  std::size_t coordinate = 0;
  std::vector<SectionComponent> components;
  std::optional<Rat> intersection;

  friend bool operator==(const SectionData& a, const SectionData& b) {
    return a.coordinate == b.coordinate && a.components == b.components && a.intersection == b.intersection;
  }
};

namespace detail {

inline Rat rat_pow(const Rat& base, const Int& e) {
  if (e < 0) fail(ErrorKind::PreconditionViolated, "negative power");
  unsigned long n = static_cast<unsigned long>(to_long(e));
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), n);
  return make_rat(num, den);
}

// X_j = s_j^N for j != i; the result is univariate in X_i.
inline FracSeries restrict_to_line(const FracSeries& r, std::size_t i, const std::vector<Rat>& s, const Int& N) {
  FracSeries out(1);
  for (const auto& [u, c] : r.terms()) {
    Rat scale = 1;
    for (std::size_t j = 0; j < u.dim(); ++j) {
      if (j == i) continue;
      Rat e = Rat(N) * u[j];
      if (!is_integer(e)) fail(ErrorKind::NonIntegral, "exponent outside the lattice of the root");
      scale *= rat_pow(s[j], e.get_num());
    }
    out.add_term(ExpVec{{u[i]}}, Cyclotomic(scale) * c);
  }
  return out;
}

inline FracSeries monodromy(const FracSeries& r) { return galois_act(r, ExpVec{{Rat(1)}}); }

}  // namespace detail

inline std::vector<Rat> generic_parameters(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rat> s;
  for (std::size_t j = 0; j < d; ++j) {
    long num = 2 + static_cast<long>(rng() % 89);
    long den = 1 + static_cast<long>(rng() % 13);
    s.push_back(make_rat(num, den));
  }
  return s;
}

inline SectionData simulate_section(const Branch& b, std::size_t i, std::uint64_t seed = 1) {
  const auto inv = derive(b);
  if (b.G() == 0) fail(ErrorKind::Smooth, "sections of a smooth branch");
  if (i >= b.dim) fail(ErrorKind::PreconditionViolated, "coordinate out of range");
  auto s = generic_parameters(b.dim, seed);
  auto roots = conjugates(canonical_root(b), inv.tower, b.G());
  std::vector<FracSeries> line;
  for (const auto& r : roots) line.push_back(detail::restrict_to_line(r, i, s, inv.degree));
  const ExpVec zero{{Rat(0)}};
  const Cyclotomic y0 = line.front().coefficient(zero);
  std::vector<FracSeries> local;
  for (const auto& r : line)
    if (r.coefficient(zero) == y0) {
      FracSeries t = r - FracSeries::constant(1, y0);
      if (std::find(local.begin(), local.end(), t) == local.end()) local.push_back(t);
    }
  // Components are the orbits of the local monodromy around X_i = 0.
  std::vector<std::vector<FracSeries>> comps;
  std::vector<bool> used(local.size(), false);
  for (std::size_t a = 0; a < local.size(); ++a) {
    if (used[a]) continue;
    std::vector<FracSeries> orbit;
    FracSeries cur = local[a];
    while (std::find(orbit.begin(), orbit.end(), cur) == orbit.end()) {
      auto it = std::find(local.begin(), local.end(), cur);
      if (it == local.end()) fail(ErrorKind::ShapeViolation, "monodromy leaves the local roots");
      used[static_cast<std::size_t>(it - local.begin())] = true;
      orbit.push_back(cur);
      cur = detail::monodromy(cur);
    }
    comps.push_back(std::move(orbit));
  }
  SectionData out;
  out.coordinate = i;
  for (const auto& orbit : comps) {
    PlaneBranch pb = plane_branch_of_root(orbit.front());
    if (pb.degree != static_cast<long>(orbit.size()))
      fail(ErrorKind::ShapeViolation, "section component degree disagrees with its exponents");
    out.components.push_back({pb.degree, pb.exponents});
  }
  for (std::size_t c = 1; c < comps.size(); ++c) {
    Rat total = 0;
    for (const auto& r : comps[0])
      for (const auto& q : comps[c]) total += order_x(r - q);
    if (!out.intersection || total > *out.intersection) out.intersection = total;
  }
  return out;
}

inline std::vector<SectionData> simulate_sections(const Branch& b, std::uint64_t seed = 1) {
  const auto inv = derive(b);
  std::vector<SectionData> out;
  for (std::size_t i = 0; i < inv.c_reduced; ++i) out.push_back(simulate_section(b, i, seed));
  return out;
}

struct AGRecovery {
  Rat value;
  std::vector<std::string> transcript;
};

// One coordinate of the last exponent from the prefix A_1^i..A_{G-1}^i, N_G and the section data.
inline AGRecovery recover_AG(const std::vector<Rat>& prefix, const Int& N_G, const SectionData& sec) {
  if (sec.components.empty()) fail(ErrorKind::AmbiguousRecovery, "section has no components");
  const SectionComponent& main = sec.components.front();
  AGRecovery out;
  const std::string tag = "coordinate " + std::to_string(sec.coordinate + 1) + ": ";
  bool integral_prefix = std::all_of(prefix.begin(), prefix.end(), [](const Rat& a) { return is_integer(a); });
  if (integral_prefix) {
    if (N_G % main.degree != 0) fail(ErrorKind::AmbiguousRecovery, tag + "component degree does not divide N_G");
    Int g = N_G / main.degree;
    if (g == 1) {
      if (main.char_exponents.empty()) fail(ErrorKind::AmbiguousRecovery, tag + "irreducible section is smooth");
      Rat a = main.char_exponents.front();
      Rat generic = a > 1 ? a : Rat(1) / a;
      std::vector<Rat> hits;
      for (const auto& x : first_exponent_orbit(generic))
        if (x.get_den() == N_G && x != Rat(1) / Rat(N_G)) hits.push_back(x);
      if (hits.size() != 1)
        fail(ErrorKind::AmbiguousRecovery, tag + "no unique exponent with denominator " + N_G.get_str());
      out.value = hits.front();
      out.transcript.push_back(tag + "irreducible section, exponent with denominator N_G is " + to_string(out.value));
    } else {
      if (!sec.intersection) fail(ErrorKind::AmbiguousRecovery, tag + "missing intersection number");
      Rat B = *sec.intersection * Rat(g * g) / Rat(N_G);
      out.value = B / Rat(N_G);
      out.transcript.push_back(tag + g.get_str() + " components, intersection " + to_string(*sec.intersection) +
                               " gives B = " + to_string(B));
    }
    return out;
  }
  std::vector<Rat> frac;
  Int den = 1;
  for (const auto& a : prefix)
    if (lcm_int(den, a.get_den()) != den) {
      frac.push_back(a);
      den = lcm_int(den, a.get_den());
    }
  PlaneBranch pre = plane_branch(frac);
  const auto& ce = main.char_exponents;
  if (ce.size() == frac.size() + 1 && std::equal(frac.begin(), frac.end(), ce.begin())) {
    out.value = ce.back();
    out.transcript.push_back(tag + "new characteristic exponent " + to_string(out.value));
    return out;
  }
  if (ce == frac) {
    if (!sec.intersection) fail(ErrorKind::AmbiguousRecovery, tag + "missing intersection number");
    const std::size_t h = frac.size() - 1;
    out.value = *sec.intersection / Rat(pre.degree) - Rat(pre.indices[h]) * pre.derived[h] + frac[h];
    out.transcript.push_back(tag + "intersection " + to_string(*sec.intersection) + " solves to " + to_string(out.value));
    return out;
  }
  fail(ErrorKind::AmbiguousRecovery, tag + "section exponents do not extend the known prefix");
}

struct RecoveryAux {
  std::optional<std::size_t> dim;
  std::optional<Int> N_G;
  std::vector<SectionData> sections;
};

struct RecoveryResult {
  Branch branch;
  std::vector<ExpVec> reduced_derived;  // Abar'_i read off the fragment
  std::vector<std::string> transcript;
};

namespace detail {

// A_i from Abar_i by inverting the derived-exponent recursion; indices[k] = N_{k+1}.
inline std::vector<ExpVec> invert_derived(const std::vector<ExpVec>& derived, const std::vector<Int>& indices) {
  std::vector<ExpVec> out;
  for (std::size_t k = 0; k < derived.size(); ++k)
    out.push_back(k == 0 ? derived[0] : derived[k] - Rat(indices[k - 1]) * derived[k - 1] + out[k - 1]);
  return out;
}

inline Branch finish_branch(const std::vector<ExpVec>& exps, std::size_t d) {
  Branch b = validate_and_sort(exps, d);
  for (std::size_t i = 0; i < d; ++i)
    if (b.permutation[i] != i) fail(ErrorKind::NotNormalized, "reconstructed exponents are not in normal order");
  if (!is_normalized(b)) fail(ErrorKind::NotNormalized, "reconstructed branch violates the normalization rule");
  return b;
}

}  // namespace detail

inline RecoveryResult recover_normalized_branch(const std::vector<ExpVec>& fragment, const ExpVec& bound,
                                                const RecoveryAux& aux = {}) {
  RecoveryResult res;
  auto gens = recover_generators(fragment, bound);
  res.transcript = gens.transcript;
  const std::size_t cp = bound.dim();
  if (gens.extras.empty()) fail(ErrorKind::AmbiguousRecovery, "no extra generators: the branch is smooth");
  res.reduced_derived = gens.extras;
  QOSemigroup sg = make_semigroup(cp, gens.extras);
  for (std::size_t k = 0; k < sg.caps.size(); ++k)
    res.transcript.push_back("N_" + std::to_string(k + 1) + " = " + sg.caps[k].get_str());

  if (!aux.N_G) {
    const std::size_t d = aux.dim.value_or(cp);
    if (d < cp) fail(ErrorKind::DimensionMismatch, "target dimension below the fragment rank");
    std::vector<ExpVec> exps;
    for (const auto& a : detail::invert_derived(gens.extras, sg.caps)) exps.push_back(pad(a, d));
    res.branch = detail::finish_branch(exps, d);
    res.transcript.push_back("exponents recovered from the derived generators");
    return res;
  }

  // One discarded pair of coordinates: the last exponent comes from the plane sections.
  const Int NG = *aux.N_G;
  const std::size_t d = aux.dim.value_or(cp + 2);
  if (d < cp + 2) fail(ErrorKind::DimensionMismatch, "target dimension too small for the discarded pair");
  if (aux.sections.size() != cp) fail(ErrorKind::PreconditionViolated, "need one section per reduced coordinate");
  const std::size_t g = gens.extras.size();
  std::vector<RecoveryResult> survivors;
  std::vector<std::string> rejected;
  for (std::size_t G : {g, g + 1}) {
    RecoveryResult cand;
    cand.reduced_derived = gens.extras;
    cand.transcript = res.transcript;
    cand.transcript.push_back("hypothesis G = " + std::to_string(G));
    try {
      std::vector<ExpVec> pre_derived(gens.extras.begin(), gens.extras.begin() + static_cast<std::ptrdiff_t>(G - 1));
      std::vector<ExpVec> prefix = detail::invert_derived(pre_derived, sg.caps);
      ExpVec last(cp);
      for (std::size_t i = 0; i < cp; ++i) {
        std::vector<Rat> col;
        for (const auto& a : prefix) col.push_back(a[i]);
        auto r = recover_AG(col, NG, aux.sections[i]);
        last[i] = r.value;
        for (auto& t : r.transcript) cand.transcript.push_back(std::move(t));
      }
      std::vector<ExpVec> exps;
      for (const auto& a : prefix) exps.push_back(pad(a, d));
      ExpVec tail(d - cp);
      tail[0] = tail[1] = Rat(1) / Rat(NG);
      exps.push_back(concat(last, tail));
      cand.branch = detail::finish_branch(exps, d);
      auto inv = derive(cand.branch);
      if (inv.epsilon != 1 || inv.indices.back() != NG) throw Error(ErrorKind::AmbiguousRecovery, "shape mismatch");
      auto regen = recover_generators(enumerate_up_to(gamma_reduced(cand.branch), bound), bound);
      if (regen.extras != gens.extras) throw Error(ErrorKind::AmbiguousRecovery, "generator mismatch");
      if (simulate_sections(cand.branch) != aux.sections) throw Error(ErrorKind::AmbiguousRecovery, "section mismatch");
      cand.transcript.push_back("hypothesis G = " + std::to_string(G) + " consistent");
      survivors.push_back(std::move(cand));
    } catch (const Error& e) {
      rejected.push_back("G = " + std::to_string(G) + " rejected (" + e.what() + ")");
    }
  }
  if (survivors.size() != 1)
    fail(ErrorKind::AmbiguousRecovery, std::to_string(survivors.size()) + " consistent hypotheses for G");
  res = std::move(survivors.front());
  for (auto& r : rejected) res.transcript.push_back(std::move(r));
  return res;
}

}  // namespace qosing
