#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "qosing/parse.hpp"
#include "qosing/semigroup.hpp"
#include "qosing/semiroot.hpp"

using namespace qosing;

namespace {

ExpVec V(std::initializer_list<Rat> xs) { return ExpVec{std::vector<Rat>(xs)}; }
Rat R(long p, long q = 1) { return make_rat(p, q); }
FracSeries S(const char* text, std::size_t d) { return parse_series(text, d); }
SeriesPoly P(const char* text, std::size_t d) { return parse_series_poly(text, d); }

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

// Integer exponents and integer coefficients, Y-degree at most max_deg.
SeriesPoly random_poly(oracle::Gen& gen, std::size_t d, long max_deg) {
  std::vector<FracSeries> c;
  const long deg = gen.integer(0, max_deg);
  for (long k = 0; k <= deg; ++k)
    c.push_back(gen.coin() ? gen.series(d, static_cast<std::size_t>(gen.integer(1, 3)), 5, 1) : FracSeries(d));
  c.back() = gen.series(d, 1, 3, 1);
  return SeriesPoly(d, c);
}

std::set<std::string> as_set(const std::vector<FracSeries>& v) {
  std::set<std::string> s;
  for (const auto& x : v) s.insert(format_series(x));
  return s;
}

const Branch& cusp() {
  static const Branch b = corpus::make(corpus::entries()[0]);
  return b;
}
const Branch& e4() {
  static const Branch b = corpus::make(corpus::entries()[1]);
  return b;
}

}  // namespace

TEST(Semiroot, CanonicalRootExamples) {
  EXPECT_EQ(canonical_root(cusp()), S("X^{3/2}", 1));
  EXPECT_EQ(canonical_root(e4()), S("X1^{3/2} + X1^{7/4}", 2));
  EXPECT_EQ(canonical_root(corpus::make(corpus::entries()[3])), S("X1^{3/2}*X2^{1/2}*X3^{1/2}", 3));
}

TEST(Semiroot, ConjugateExamples) {
  auto inv = derive(cusp());
  EXPECT_EQ(as_set(conjugates(S("X^{3/2}", 1), inv.tower, 1)), as_set({S("X^{3/2}", 1), S("-X^{3/2}", 1)}));
  EXPECT_EQ(conjugates(FracSeries(1), inv.tower, 0), std::vector<FracSeries>{FracSeries(1)});
  auto inv2 = derive(corpus::make(corpus::entries()[2]));
  EXPECT_EQ(as_set(conjugates(S("X1^{3/2}*X2^{1/2}", 2), inv2.tower, 1)),
            as_set({S("X1^{3/2}*X2^{1/2}", 2), S("-X1^{3/2}*X2^{1/2}", 2)}));
}

TEST(Semiroot, SemirootExamples) {
  auto sys = build_semiroots(cusp());
  EXPECT_EQ(sys.semiroots[0], P("Y", 1));
  EXPECT_EQ(sys.semiroots[1], P("Y^2 - X^3", 1));
  auto sys2 = build_semiroots(corpus::make(corpus::entries()[2]));
  EXPECT_EQ(sys2.semiroots[1], P("Y^2 - X1^3*X2", 2));

  auto s4 = build_semiroots(e4());
  EXPECT_EQ(s4.semiroots[1], P("Y^2 - X1^3", 2));
  EXPECT_EQ(s4.values[1], S("2*X1^{13/4} + X1^{7/2}", 2));
  EXPECT_EQ(semiroot_valuation(s4, 1), V({R(13, 4), 0}));
  EXPECT_FALSE(semiroot_valuation(s4, 2));
  // f_2 is monic of degree 4 and vanishes at the four roots i^{6k} X^{3/2} + i^{7k} X^{7/4}.
  const SeriesPoly& f2 = s4.semiroots[2];
  EXPECT_EQ(f2.degree(), 4);
  EXPECT_TRUE(f2.is_unitary());
  for (long k = 0; k < 4; ++k) {
    FracSeries root = FracSeries::monomial(V({R(3, 2), 0}), Cyclotomic::root_of_unity(4, 6 * k)) +
                      FracSeries::monomial(V({R(7, 4), 0}), Cyclotomic::root_of_unity(4, 7 * k));
    EXPECT_TRUE(f2.evaluate(root).is_zero()) << k;
  }
}

TEST(Semiroot, EuclidDivisionExamples) {
  auto [q, r] = euclid_div(P("Y^3", 1), P("Y^2 - X^3", 1));
  EXPECT_EQ(q, P("Y", 1));
  EXPECT_EQ(r, P("X^3*Y", 1));
  auto [q2, r2] = euclid_div(P("X*Y + 1", 1), P("Y^2 - X^3", 1));
  EXPECT_TRUE(q2.is_zero());
  EXPECT_EQ(r2, P("X*Y + 1", 1));
  auto [q3, r3] = euclid_div(P("Y^2 - X^3", 1), P("Y^2 - X^3", 1));
  EXPECT_EQ(q3, P("1", 1));
  EXPECT_TRUE(r3.is_zero());
}

TEST(Semiroot, AdicExpansionExamples) {
  auto sys = build_semiroots(cusp());
  auto e = adic_expand(P("Y^3", 1), sys);
  EXPECT_EQ(e.terms.size(), 2u);
  EXPECT_EQ(e.terms.at({1, 1}), S("1", 1));
  EXPECT_EQ(e.terms.at({1, 0}), S("X^3", 1));
  auto f = adic_expand(sys.semiroots[1], sys);
  EXPECT_EQ(f.terms.size(), 1u);
  EXPECT_EQ(f.terms.at({0, 1}), S("1", 1));
  auto s4 = build_semiroots(e4());
  auto c = adic_expand(P("X1^2", 2), s4);
  EXPECT_EQ(c.terms.size(), 1u);
  EXPECT_EQ(c.terms.at({0, 0, 0}), S("X1^2", 2));
}

TEST(Semiroot, EvaluationExamples) {
  auto sys = build_semiroots(cusp());
  EXPECT_EQ(evaluate(P("Y^3", 1), sys.xi), S("X^{9/2}", 1));
  EXPECT_TRUE(evaluate(sys.semiroots.back(), sys.xi).is_zero());
  auto s4 = build_semiroots(e4());
  EXPECT_EQ(evaluate(P("Y^2 - X1^3", 2), s4.xi), S("2*X1^{13/4} + X1^{7/2}", 2));
}

TEST(Semiroot, WitnessExamples) {
  auto sys = build_semiroots(cusp());
  auto w = semigroup_witness(P("Y^3", 1), sys);
  EXPECT_EQ(w.polyhedron.vertices, std::vector<ExpVec>{V({R(9, 2)})});
  ASSERT_EQ(w.witnesses.size(), 1u);
  EXPECT_EQ(w.witnesses[0].m, V({3}));
  EXPECT_EQ(w.witnesses[0].i, std::vector<long>{1});
  auto s4 = build_semiroots(e4());
  auto wm = semigroup_witness(P("X1^2", 2), s4);
  EXPECT_EQ(wm.polyhedron.vertices, std::vector<ExpVec>{V({2, 0})});
  EXPECT_EQ(wm.witnesses[0].m, V({2, 0}));
  EXPECT_EQ(wm.witnesses[0].i, (std::vector<long>{0, 0}));
  expect_error(ErrorKind::InIdeal, [&] { semigroup_witness(sys.semiroots.back(), sys); });
}

TEST(Semiroot, StructureOnCorpus) {
  for (const auto& b : corpus::branches()) {
    auto sys = build_semiroots(b);
    Int deg = 1;
    for (std::size_t k = 0; k <= b.G(); ++k) {
      EXPECT_EQ(sys.semiroots[k].degree(), to_long(deg));
      for (const auto& c : sys.semiroots[k].coeffs()) {
        EXPECT_TRUE(c.has_rational_coefficients());
        EXPECT_TRUE(c.has_integral_exponents());
      }
      if (k < b.G()) {
        EXPECT_EQ(dominating_exponent(sys.values[k]), sys.inv.derived[k]);
        deg *= sys.inv.indices[k];
      }
    }
    // Any transversal of the dual quotient gives the same conjugates.
    for (std::size_t k = 1; k <= b.G(); ++k) {
      Lattice W = dual_lattice(sys.inv.tower[k]);
      auto reps = coset_representatives(W);
      auto shifted = reps;
      for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] = shifted[j] + Rat(long(j % 3)) * W.basis()[j % b.dim];
      std::reverse(shifted.begin(), shifted.end());
      auto xi_k = root_truncation(b, k);
      EXPECT_EQ(as_set(conjugates_with(xi_k, shifted)), as_set(conjugates(xi_k, sys.inv.tower, k)));
    }
  }
}

TEST(Semiroot, RandomPolynomialsExpandAndWitness) {
  oracle::Gen gen(51);
  auto branches = corpus::branches();
  int trials = 0;
  for (int t = 0; t < 220; ++t) {
    const Branch& b = branches[static_cast<std::size_t>(t) % branches.size()];
    auto sys = build_semiroots(b);
    QOSemigroup full = gamma(b);
    SeriesPoly h = random_poly(gen, b.dim, to_long(sys.inv.degree) + 2);
    auto e = adic_expand(h, sys);
    EXPECT_EQ(reassemble(e, sys), h);
    WitnessReport w;
    try {
      w = semigroup_witness(h, sys);
    } catch (const Error& err) {
      ASSERT_EQ(err.kind(), ErrorKind::InIdeal);
      continue;
    }
    ++trials;
    EXPECT_TRUE(w.parts_disjoint);
    EXPECT_TRUE(w.hull_matches);
    for (const auto& v : w.polyhedron.vertices) EXPECT_TRUE(membership(v, full)) << to_string(v);
  }
  EXPECT_GE(trials, 200);
}

TEST(Semiroot, EverySmallSemigroupElementHasAWitness) {
  for (const auto& b : corpus::branches()) {
    if (b.dim > 3) continue;
    auto sys = build_semiroots(b);
    QOSemigroup sg = gamma(b);
    ExpVec bound(b.dim);
    for (auto& x : bound.c) x = 3;
    for (const auto& u : enumerate_up_to(sg, bound)) {
      auto dec = unique_decompose(u, sg);
      std::vector<long> idx;
      for (const auto& i : dec.i) idx.push_back(to_long(i));
      FracSeries value = monomial_witness(dec.A, idx, sys).evaluate(sys.xi);
      EXPECT_EQ(dominating_exponent(value), u) << to_string(u);
    }
  }
}
