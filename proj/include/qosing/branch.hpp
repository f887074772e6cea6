#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace qosing {

// Characteristic exponents A_1 < ... < A_G of a quasi-ordinary branch.
// permutation[i] is the input variable placed at position i by validate_and_sort.
struct Branch {
  std::size_t dim = 0;
  std::vector<ExpVec> exponents;
  std::vector<std::size_t> permutation;

  std::size_t G() const { return exponents.size(); }

  friend bool operator==(const Branch& a, const Branch& b) {
    return a.dim == b.dim && a.exponents == b.exponents;
  }
};

struct BranchInvariants {
  std::vector<ExpVec> derived;   // Abar_1..Abar_G
  std::vector<Int> indices;      // N_1..N_G
  Int degree = 1;                // N
  std::vector<Lattice> tower;    // M_0..M_G
  std::size_t c = 0;
  std::size_t s = 0;
  std::size_t c_reduced = 0;
  int epsilon = 0;
};

// Components indexed from 1 as in the geometric statement.
struct SingularLocus {
  std::vector<std::size_t> codim1;
  std::vector<std::pair<std::size_t, std::size_t>> codim2;
  std::optional<Int> local_model_exponent;
};

inline Branch validate_and_sort(std::vector<ExpVec> exps, std::size_t d) {
  for (const auto& a : exps) {
    if (a.dim() != d) fail(ErrorKind::DimensionMismatch, "exponent of wrong dimension");
    if (!a.is_nonneg()) fail(ErrorKind::PreconditionViolated, "negative exponent " + to_string(a));
  }
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (std::size_t j = i + 1; j < exps.size(); ++j) {
      if (exps[i] == exps[j]) fail(ErrorKind::NotStrict, "repeated exponent " + to_string(exps[i]));
      if (!leq(exps[i], exps[j]) && !leq(exps[j], exps[i]))
        fail(ErrorKind::NotTotallyOrdered, to_string(exps[i]) + " and " + to_string(exps[j]) + " are incomparable");
    }
  std::sort(exps.begin(), exps.end(), [](const ExpVec& a, const ExpVec& b) { return leq(a, b) && a != b; });
  // Coordinate rows (A_1^k, ..., A_G^k) in lex-nonincreasing order.
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  auto row = [&exps](std::size_t k) {
    std::vector<Rat> r;
    for (const auto& a : exps) r.push_back(a[k]);
    return r;
  };
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return row(y) < row(x); });
  Branch b;
  b.dim = d;
  b.permutation = perm;
  for (const auto& a : exps) {
    ExpVec p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = a[perm[i]];
    b.exponents.push_back(p);
  }
  return b;
}

inline Branch monomial_branch(const Int& n, const std::vector<Int>& B) {
  if (n < 2) fail(ErrorKind::PreconditionViolated, "degree must be at least 2");
  Int g = n;
  for (const auto& b : B) {
    if (b < 0) fail(ErrorKind::PreconditionViolated, "negative monomial exponent");
    g = gcd_int(g, b);
  }
  if (g != 1) fail(ErrorKind::Reducible, "gcd(N, B) = " + g.get_str());
  ExpVec a(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) a[i] = make_rat(B[i], n);
  if (a.is_integral()) fail(ErrorKind::Smooth, "B/N is integral");
  return validate_and_sort({a}, B.size());
}

inline BranchInvariants derive(const Branch& b) {
  BranchInvariants inv;
  const std::size_t d = b.dim, G = b.G();
  inv.tower.push_back(Lattice::standard(d));
  for (std::size_t i = 0; i < G; ++i) {
    const ExpVec& a = b.exponents[i];
    Lattice next = lattice_sum(inv.tower.back(), {a});
    Int n = lattice_index(inv.tower.back(), next);
    if (n < 2) fail(ErrorKind::DegenerateExponent, to_string(a) + " lies in the previous lattice");
    inv.indices.push_back(n);
    inv.degree *= n;
    inv.tower.push_back(next);
    if (i == 0) {
      inv.derived.push_back(a);
    } else {
      inv.derived.push_back(Rat(inv.indices[i - 1]) * inv.derived[i - 1] + a - b.exponents[i - 1]);
    }
  }
  if (G == 0) return inv;
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& a : b.exponents)
      if (a[k] != 0) inv.c = k + 1;
  const Rat last = Rat(1) / Rat(inv.indices.back());
  std::vector<bool> present(inv.c);
  for (std::size_t i = 0; i < inv.c; ++i) {
    bool earlier_zero = true;
    for (std::size_t k = 0; k + 1 < G; ++k)
      if (b.exponents[k][i] != 0) earlier_zero = false;
    present[i] = !(earlier_zero && b.exponents[G - 1][i] == last);
    if (present[i]) ++inv.s;
  }
  for (std::size_t i = 0; i < inv.c; ++i)
    if (present[i] != (i < inv.s))
      fail(ErrorKind::ShapeViolation, "singular components do not form a prefix of the coordinates");
  inv.epsilon = (inv.s + 2 == inv.c) ? 1 : 0;
  inv.c_reduced = inv.epsilon ? inv.c - 2 : inv.c;
  return inv;
}

inline SingularLocus singular_locus(const Branch& b, const BranchInvariants& inv) {
  if (b.G() == 0) fail(ErrorKind::Smooth, "smooth branch has no singular locus");
  SingularLocus L;
  for (std::size_t i = 1; i <= inv.s; ++i) L.codim1.push_back(i);
  for (std::size_t j = inv.s + 1; j <= inv.c; ++j)
    for (std::size_t l = j + 1; l <= inv.c; ++l) L.codim2.emplace_back(j, l);
  if (!L.codim2.empty()) L.local_model_exponent = inv.indices.back();
  return L;
}

inline SingularLocus singular_locus(const Branch& b) { return singular_locus(b, derive(b)); }

struct ReducedExponents {
  std::size_t c_reduced = 0;
  int epsilon = 0;
  std::vector<ExpVec> exponents;  // A'_i
  std::vector<ExpVec> derived;    // Abar'_i
};

inline ReducedExponents reduced_exponents(const Branch& b, const BranchInvariants& inv) {
  ReducedExponents r;
  r.c_reduced = inv.c_reduced;
  r.epsilon = inv.epsilon;
  const std::size_t G = b.G();
  for (std::size_t i = 0; i < G; ++i) {
    const ExpVec& a = b.exponents[i];
    for (std::size_t k = inv.c_reduced; k < b.dim; ++k) {
      Rat expected = 0;
      if (inv.epsilon && i + 1 == G && k < inv.c_reduced + 2) expected = Rat(1) / Rat(inv.indices.back());
      if (a[k] != expected)
        fail(ErrorKind::ShapeViolation, "discarded coordinate " + std::to_string(k + 1) + " of " + to_string(a));
    }
    r.exponents.push_back(truncate(a, inv.c_reduced));
    r.derived.push_back(truncate(inv.derived[i], inv.c_reduced));
  }
  return r;
}

inline ReducedExponents reduced_exponents(const Branch& b) { return reduced_exponents(b, derive(b)); }

inline bool is_normalized(const Branch& b) {
  if (b.G() == 0) return false;
  const ExpVec& a = b.exponents.front();
  bool second = b.dim >= 2 && a[1] != 0;
  return second || a[0] > 1;
}

}  // namespace qosing
