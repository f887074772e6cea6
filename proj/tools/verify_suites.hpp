#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qosing/report.hpp"

namespace qosing::tools {

struct CheckList {
  Json checks = Json::array();
  std::vector<std::string> failures;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    if (!pass) failures.push_back(name);
  }
};

inline std::size_t count_capped_decompositions(const ExpVec& u, const QOSemigroup& sg) {
  const std::size_t G = sg.extras.size();
  std::vector<Int> i(G, Int(0));
  std::size_t count = 0;
  for (;;) {
    ExpVec rest = u;
    for (std::size_t k = 0; k < G; ++k) rest = rest - Rat(i[k]) * sg.extras[k];
    if (rest.is_nonneg() && rest.is_integral()) ++count;
    std::size_t k = 0;
    while (k < G && i[k] + 1 == sg.caps[k]) i[k++] = 0;
    if (k == G) break;
    ++i[k];
  }
  return count;
}

inline void semigroup_suite(const Branch& b, const ExpVec& bound, std::size_t max_size, CheckList& out, Json& info) {
  const auto inv = derive(b);
  const Lattice W0 = dual_lattice(inv.tower.front()), WG = dual_lattice(inv.tower.back());
  Int prod = 1;
  for (const auto& n : inv.indices) prod *= n;
  out.add("degree identity", prod == lattice_index(inv.tower.front(), inv.tower.back()) && prod == lattice_index(WG, W0),
          "N = " + prod.get_str());

  QOSemigroup sg = gamma_reduced(b);
  auto frag = enumerate_up_to(sg, bound, max_size);
  info["fragment_size"] = frag.size();
  std::set<ExpVec> fset(frag.begin(), frag.end());
  bool unique = true, greedy = true, member = true, negative = true;
  for (const auto& u : frag) {
    if (count_capped_decompositions(u, sg) != 1) unique = false;
    auto dec = unique_decompose(u, sg);
    if (recompose(dec, sg) != u || !dec.A.is_nonneg()) greedy = false;
    if (!membership(u, sg)) member = false;
    for (std::size_t i = 0; i < sg.rank; ++i) {
      ExpVec v = u - ExpVec::unit(sg.rank, i);
      if (v.is_nonneg() && membership(v, sg) != (fset.count(v) > 0)) negative = false;
    }
  }
  out.add("unique capped decomposition", unique);
  out.add("greedy decomposition", greedy);
  out.add("membership of fragment", member);
  out.add("membership of shifted points", negative);

  auto rec = recover_generators(frag, bound);
  std::vector<ExpVec> gens = rec.units;
  for (const auto& e : rec.extras) gens.push_back(e);
  auto closure = detail::closure_below(gens, bound);
  out.add("recovered generators span the fragment", std::set<ExpVec>(closure.begin(), closure.end()) == fset,
          std::to_string(rec.extras.size()) + " extra generators");

  // Monomial witnesses for every element of the full semigroup fragment.
  QOSemigroup full = gamma(b);
  auto ffrag = enumerate_up_to(full, default_bound(full), max_size);
  auto sys = build_semiroots(b);
  std::map<std::pair<std::size_t, long>, FracSeries> cache;
  bool witnessed = true;
  for (const auto& u : ffrag) {
    auto dec = unique_decompose(u, full);
    FracSeries t = FracSeries::monomial(dec.A);
    for (std::size_t k = 0; k < dec.i.size(); ++k) {
      long p = to_long(dec.i[k]);
      if (p == 0) continue;
      auto key = std::make_pair(k, p);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, sys.values[k].pow(static_cast<unsigned long>(p))).first;
      t *= it->second;
    }
    auto m = dominating_exponent(t);
    if (!m || *m != u) witnessed = false;
  }
  out.add("monomial witnesses", witnessed, std::to_string(ffrag.size()) + " elements");
}

inline Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<long>(k);
  return f;
}

inline void toric_suite(const Branch& b, CheckList& out) {
  const auto inv = derive(b);
  auto br = canonical_blowup(b);
  Int expected = 1;
  if (inv.s + 3 <= inv.c) expected = factorial(inv.c - inv.s);
  out.add("distinguished cone count", Int(static_cast<long>(br.distinguished.size())) == expected,
          std::to_string(br.distinguished.size()) + " cones");
  bool hrays = true, regular = true, certified = true;
  for (const auto& P : br.distinguished)
    if (h_ray_count(br, P) != br.c_prime) hrays = false;
  for (const auto& C : br.fan.max_cones)
    if (!is_regular(C)) regular = false;
  for (std::size_t p = 0; p < br.distinguished.size(); ++p)
    if (!phi_map(b, br, p).certificate.ok()) certified = false;
  out.add("h-rays per distinguished cone", hrays);
  out.add("regular fan", regular);
  out.add("monomial map certificate", certified);
}

inline void sections_suite(const Branch& b, std::uint64_t seed, CheckList& out, Json& info) {
  const auto inv = derive(b);
  QOSemigroup sg = gamma_reduced(b);
  ExpVec bound = default_bound(sg);
  RecoveryAux aux;
  aux.dim = b.dim;
  if (inv.epsilon) {
    aux.N_G = inv.indices.back();
    aux.sections = simulate_sections(b, seed);
  }
  if (!is_normalized(b)) {
    info["round_trip"] = "skipped: branch is not normalized";
  } else {
    try {
      auto rec = recover_normalized_branch(enumerate_up_to(sg, bound), bound, aux);
      out.add("round trip", rec.branch == b);
    } catch (const Error& e) {
      out.add("round trip", false, e.what());
    }
  }
  bool orbit = true;
  for (const auto& s : aux.sections)
    for (const auto& c : s.components)
      if (!c.char_exponents.empty()) {
        Rat a = c.char_exponents.front();
        auto set = first_exponent_orbit(a > 1 ? a : Rat(1) / a);
        if (!set.count(a)) orbit = false;
      }
  out.add("first exponent orbit", orbit);
}

}  // namespace qosing::tools
