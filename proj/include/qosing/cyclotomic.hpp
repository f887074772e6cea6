#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "rational.hpp"

namespace qosing {

namespace detail {

using IntPoly = std::vector<Int>;  // coefficient of x^k at index k

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials with monic divisor.
inline IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  IntPoly q(num.size() - dd, Int(0));
  for (std::size_t k = num.size(); k-- > dd;) {
    Int c = num[k];
    if (c == 0) continue;
    q[k - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  return q;
}

inline const IntPoly& cyclotomic_polynomial(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, IntPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  // Divisors in increasing order: x^k - 1 over the product of the smaller divisors' polynomials.
  for (unsigned k = 1; k <= n; ++k) {
    if (n % k != 0 || cache.count(k)) continue;
    IntPoly p(k + 1, Int(0));
    p[0] = -1;
    p[k] = 1;
    for (unsigned m = 1; m < k; ++m)
      if (k % m == 0) p = divide_monic(p, cache.at(m));
    trim(p);
    cache.emplace(k, std::move(p));
  }
  return cache.at(n);
}

inline unsigned euler_phi(unsigned n) {
  unsigned r = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

// Reduce a rational polynomial modulo the monic integer polynomial phi.
inline std::vector<Rat> reduce_mod(std::vector<Rat> p, const IntPoly& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = p.size(); k-- > deg;) {
    Rat c = p[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) p[k - deg + j] -= c * Rat(phi[j]);
  }
  p.resize(deg, Rat(0));
  return p;
}

}  // namespace detail

// Element of Q(zeta_N) in the power basis of zeta_N modulo the N-th cyclotomic polynomial.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), c_{Rat(0)} {}
  Cyclotomic(const Rat& r) : order_(1), c_{r} {}  // NOLINT: rationals embed implicitly
  Cyclotomic(long r) : order_(1), c_{Rat(r)} {}   // NOLINT

  Cyclotomic(unsigned order, std::vector<Rat> coeffs) : order_(order), c_(std::move(coeffs)) {
    if (order_ == 0) fail(ErrorKind::PreconditionViolated, "cyclotomic order must be positive");
    const auto& phi = detail::cyclotomic_polynomial(order_);
    c_ = detail::reduce_mod(std::move(c_), phi);
    normalize();
  }

  static Cyclotomic root_of_unity(unsigned n, long j) {
    if (n == 0) fail(ErrorKind::PreconditionViolated, "root of unity of order zero");
    long e = ((j % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
    std::vector<Rat> p(static_cast<std::size_t>(e) + 1, Rat(0));
    p[static_cast<std::size_t>(e)] = 1;
    return Cyclotomic(n, std::move(p));
  }

  unsigned order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const { return order_ == 1 && c_[0] == 0; }
  bool is_rational() const { return order_ == 1; }
  const Rat& rational() const {
    if (!is_rational()) fail(ErrorKind::PreconditionViolated, "cyclotomic value is not rational");
    return c_[0];
  }

  // Representation in Q(zeta_m) for a multiple m of the order.
  std::vector<Rat> embedded(unsigned m) const {
    if (m % order_ != 0) fail(ErrorKind::PreconditionViolated, "embedding order must be a multiple");
    const unsigned step = m / order_;
    std::vector<Rat> p(step * (c_.size() - 1) + 1, Rat(0));
    for (std::size_t k = 0; k < c_.size(); ++k) p[k * step] = c_[k];
    return detail::reduce_mod(std::move(p), detail::cyclotomic_polynomial(m));
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) {
      std::vector<Rat> s(a.c_);
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += b.c_[k];
      return Cyclotomic(a.order_, std::move(s), Raw{});
    }
    unsigned m = std::lcm(a.order_, b.order_);
    auto x = a.embedded(m), y = b.embedded(m);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
    return Cyclotomic(m, std::move(x), Raw{});
  }

  Cyclotomic operator-() const {
    std::vector<Rat> s(c_);
    for (auto& x : s) x = -x;
    return Cyclotomic(order_, std::move(s), Raw{});
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == 1) return b.scaled(a.c_[0]);
    if (b.order_ == 1) return a.scaled(b.c_[0]);
    unsigned m = std::lcm(a.order_, b.order_);
    auto x = a.order_ == m ? a.c_ : a.embedded(m);
    auto y = b.order_ == m ? b.c_ : b.embedded(m);
    std::vector<Rat> p(x.size() + y.size() - 1, Rat(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) p[i + j] += x[i] * y[j];
    }
    return Cyclotomic(m, std::move(p));
  }

  Cyclotomic inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (order_ == 1) return Cyclotomic(Rat(1) / c_[0]);
    // Solve (this * s) = 1 through the multiplication matrix in the power basis.
    const std::size_t n = c_.size();
    RatMat mult(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rat> xj(j + 1, Rat(0));
      xj[j] = 1;
      Cyclotomic col = *this * Cyclotomic(order_, xj);
      auto e = col.order_ == order_ ? col.c_ : col.embedded(order_);
      for (std::size_t i = 0; i < n; ++i) mult[i][j] = e[i];
    }
    RatMat inv = invert(mult);
    std::vector<Rat> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = inv[i][0];
    return Cyclotomic(order_, std::move(s));
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  Cyclotomic pow(unsigned long e) const {
    Cyclotomic r(1L), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    unsigned m = std::lcm(a.order_, b.order_);
    return a.embedded(m) == b.embedded(m);
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Power-basis form "c0 + c1*zeta(N)^1 + ...", terms with zero coefficient omitted.
  std::vector<std::pair<Rat, unsigned>> terms() const {
    std::vector<std::pair<Rat, unsigned>> t;
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) t.emplace_back(c_[k], static_cast<unsigned>(k));
    return t;
  }

  std::string str() const {
    if (order_ == 1) return to_string(c_[0]);
    std::string s;
    for (const auto& [c, k] : terms()) {
      if (!s.empty()) s += " + ";
      s += to_string(c);
      if (k > 0) s += "*zeta(" + std::to_string(order_) + ")^" + std::to_string(k);
    }
    return "(" + s + ")";
  }

 private:
  struct Raw {};
  Cyclotomic(unsigned order, std::vector<Rat> coeffs, Raw) : order_(order), c_(std::move(coeffs)) { normalize(); }

  Cyclotomic scaled(const Rat& k) const {
    std::vector<Rat> s(c_);
    for (auto& x : s) x *= k;
    return Cyclotomic(order_, std::move(s), Raw{});
  }

  // Collapse to the rational representation when no irrational part survives.
  void normalize() {
    if (order_ == 1) return;
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return;
    Rat r = c_.empty() ? Rat(0) : c_[0];
    order_ = 1;
    c_ = {r};
  }

  unsigned order_;
  std::vector<Rat> c_;
};

}  // namespace qosing
