#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "poly.hpp"

namespace qosing {

// Literal grammar (whitespace ignored):
//   poly   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := RAT | 'zeta(' INT ')' ['^' INT] | 'X' [INT] ['^' EXP] | 'Y' ['^' INT]
//   EXP    := INT | '{' RAT '}' | '(' RAT ')'
//   RAT    := INT ['/' INT]
// Variables are X1..Xd; a bare X means X1. Series literals may not mention Y.
namespace detail {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, std::size_t d) : d_(d) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  SeriesPoly parse() {
    SeriesPoly acc(d_);
    bool first = true;
    while (true) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = get() == '-';
      } else if (!first) {
        break;
      }
      SeriesPoly t = term();
      acc = negative ? acc - t : acc + t;
      first = false;
      if (pos_ >= s_.size()) break;
    }
    if (pos_ != s_.size()) error("unexpected character");
    return acc;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() {
    if (pos_ >= s_.size()) error("unexpected end of input");
    return s_[pos_++];
  }
  void expect(char ch) {
    if (get() != ch) error(std::string("expected '") + ch + "'");
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  std::string digits() {
    std::string out;
    while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(get());
    if (out.empty()) error("expected digits");
    return out;
  }

  Rat rat() {
    std::string num = digits();
    if (peek() == '/') {
      get();
      std::string den = digits();
      return parse_rat(num + "/" + den);
    }
    return parse_rat(num);
  }

  Rat exponent() {
    if (peek() == '{') {
      get();
      bool neg = peek() == '-' ? (get(), true) : false;
      Rat r = rat();
      expect('}');
      return neg ? Rat(-r) : r;
    }
    if (peek() == '(') {
      get();
      Rat r = rat();
      expect(')');
      return r;
    }
    return Rat(Int(digits()));
  }

  SeriesPoly term() {
    Cyclotomic coeff(1L);
    ExpVec e(d_);
    std::size_t ydeg = 0;
    do {
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coeff *= Cyclotomic(rat());
      } else if (ch == 'z') {
        for (char want : std::string("zeta(")) expect(want);
        long n = std::stol(digits());
        expect(')');
        long j = 1;
        if (peek() == '^') {
          get();
          j = std::stol(digits());
        }
        if (n <= 0) error("zeta order must be positive");
        coeff *= Cyclotomic::root_of_unity(static_cast<unsigned>(n), j);
      } else if (ch == 'X') {
        get();
        std::size_t idx = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) idx = std::stoul(digits());
        if (idx == 0 || idx > d_) error("variable index out of range");
        Rat p = 1;
        if (peek() == '^') {
          get();
          p = exponent();
        }
        if (p < 0) error("negative exponent");
        e[idx - 1] += p;
      } else if (ch == 'Y') {
        get();
        std::size_t k = 1;
        if (peek() == '^') {
          get();
          k = std::stoul(digits());
        }
        ydeg += k;
      } else {
        error("expected a factor");
      }
    } while (peek() == '*' && (get(), true));
    SeriesPoly y = SeriesPoly::y_power(d_, ydeg);
    return FracSeries::monomial(e, coeff) * y;
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::size_t d_;
};

inline std::string format_monomial(const ExpVec& e) {
  std::string s;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "X" + std::to_string(i + 1);
    if (e[i] != 1) s += is_integer(e[i]) ? "^" + to_string(e[i]) : "^{" + to_string(e[i]) + "}";
  }
  return s;
}

inline void append_series_terms(std::string& out, const FracSeries& s, const std::string& ypart) {
  for (const auto& [e, c] : s.terms()) {
    std::vector<std::pair<Rat, unsigned>> parts;
    if (c.is_rational()) {
      parts.emplace_back(c.rational(), 0);
    } else {
      parts = c.terms();
    }
    for (const auto& [r, k] : parts) {
      std::string factors;
      auto add = [&factors](const std::string& f) {
        if (f.empty()) return;
        if (!factors.empty()) factors += "*";
        factors += f;
      };
      if (k > 0) add("zeta(" + std::to_string(c.order()) + ")^" + std::to_string(k));
      add(format_monomial(e));
      add(ypart);
      Rat mag = abs(r);
      std::string body;
      if (factors.empty()) {
        body = to_string(mag);
      } else if (mag == 1) {
        body = factors;
      } else {
        body = to_string(mag) + "*" + factors;
      }
      if (out.empty()) {
        out = (r < 0 ? "-" : "") + body;
      } else {
        out += (r < 0 ? " - " : " + ") + body;
      }
    }
  }
}

}  // namespace detail

inline SeriesPoly parse_series_poly(std::string_view text, std::size_t d) {
  return detail::LiteralParser(text, d).parse();
}

inline FracSeries parse_series(std::string_view text, std::size_t d) {
  SeriesPoly p = parse_series_poly(text, d);
  if (p.degree() > 0) fail(ErrorKind::ParseError, "series literal mentions Y");
  return p.is_zero() ? FracSeries(d) : p.coeff(0);
}

inline std::string format_series(const FracSeries& s) {
  std::string out;
  detail::append_series_terms(out, s, "");
  return out.empty() ? "0" : out;
}

inline std::string format_poly(const SeriesPoly& p) {
  std::string out;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    std::string y = k == 0 ? "" : (k == 1 ? "Y" : "Y^" + std::to_string(k));
    detail::append_series_terms(out, p.coeffs()[k], y);
  }
  return out.empty() ? "0" : out;
}

}  // namespace qosing
