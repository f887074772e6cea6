#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace qosing {

// Exact rationals and integers. mpq_class keeps values canonical after arithmetic.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline Rat parse_rat(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) fail(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Int d(den);
  if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  return make_rat(Int(num), d);
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rat frac_part(const Rat& r) { return r - Rat(floor_rat(r)); }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline long to_long(const Int& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::PreconditionViolated, "integer too large");
  return z.get_si();
}

// Generator of the subgroup aZ + bZ of Q, for nonzero a, b.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  return make_rat(gcd_int(a.get_num(), b.get_num()), lcm_int(a.get_den(), b.get_den()));
}

// Generator of aZ intersected with bZ.
inline Rat rat_lcm(const Rat& a, const Rat& b) {
  return make_rat(lcm_int(a.get_num(), b.get_num()), gcd_int(a.get_den(), b.get_den()));
}

}  // namespace qosing
