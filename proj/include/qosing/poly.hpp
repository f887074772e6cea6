#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "series.hpp"

namespace qosing {

// Polynomial in Y with finite fractional-series coefficients; c[k] multiplies Y^k.
class SeriesPoly {
 public:
  SeriesPoly() = default;
  explicit SeriesPoly(std::size_t d) : d_(d) {}
  SeriesPoly(std::size_t d, std::vector<FracSeries> c) : d_(d), c_(std::move(c)) { trim(); }

  static SeriesPoly constant(const FracSeries& s) { return SeriesPoly(s.dim(), {s}); }
  static SeriesPoly y_power(std::size_t d, std::size_t k) {
    std::vector<FracSeries> c(k + 1, FracSeries(d));
    c[k] = FracSeries::constant(d, Cyclotomic(1L));
    return SeriesPoly(d, std::move(c));
  }
  // Y - r
  static SeriesPoly linear(const FracSeries& r) {
    return SeriesPoly(r.dim(), {-r, FracSeries::constant(r.dim(), Cyclotomic(1L))});
  }

  std::size_t dim() const { return d_; }
  bool is_zero() const { return c_.empty(); }
  // Degree in Y; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<FracSeries>& coeffs() const { return c_; }
  FracSeries coeff(std::size_t k) const { return k < c_.size() ? c_[k] : FracSeries(d_); }

  bool is_unitary() const {
    return !c_.empty() && c_.back() == FracSeries::constant(d_, Cyclotomic(1L));
  }

  friend SeriesPoly operator+(const SeriesPoly& a, const SeriesPoly& b) {
    std::vector<FracSeries> c(std::max(a.c_.size(), b.c_.size()), FracSeries(a.d_));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return SeriesPoly(a.d_, std::move(c));
  }
  SeriesPoly operator-() const {
    std::vector<FracSeries> c;
    for (const auto& x : c_) c.push_back(-x);
    return SeriesPoly(d_, std::move(c));
  }
  friend SeriesPoly operator-(const SeriesPoly& a, const SeriesPoly& b) { return a + (-b); }

  friend SeriesPoly operator*(const SeriesPoly& a, const SeriesPoly& b) {
    if (a.is_zero() || b.is_zero()) return SeriesPoly(a.d_);
    std::vector<FracSeries> c(a.c_.size() + b.c_.size() - 1, FracSeries(a.d_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return SeriesPoly(a.d_, std::move(c));
  }
  friend SeriesPoly operator*(const FracSeries& s, const SeriesPoly& a) {
    std::vector<FracSeries> c;
    for (const auto& x : a.c_) c.push_back(s * x);
    return SeriesPoly(a.d_, std::move(c));
  }

  SeriesPoly pow(unsigned long e) const {
    SeriesPoly r = constant(FracSeries::constant(d_, Cyclotomic(1L))), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Horner evaluation at Y = x.
  FracSeries evaluate(const FracSeries& x) const {
    FracSeries acc(d_);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  friend bool operator==(const SeriesPoly& a, const SeriesPoly& b) { return a.d_ == b.d_ && a.c_ == b.c_; }
  friend bool operator!=(const SeriesPoly& a, const SeriesPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::size_t d_ = 0;
  std::vector<FracSeries> c_;
};

// Euclidean division h = q g + r with deg r < deg g, for unitary g.
inline std::pair<SeriesPoly, SeriesPoly> euclid_div(const SeriesPoly& h, const SeriesPoly& g) {
  if (!g.is_unitary()) fail(ErrorKind::PreconditionViolated, "divisor must be unitary in Y");
  const std::size_t d = h.dim();
  const long dg = g.degree();
  std::vector<FracSeries> r = h.coeffs();
  if (h.degree() < dg) return {SeriesPoly(d), h};
  std::vector<FracSeries> q(static_cast<std::size_t>(h.degree() - dg + 1), FracSeries(d));
  for (long k = h.degree(); k >= dg; --k) {
    FracSeries lead = r[static_cast<std::size_t>(k)];
    if (lead.is_zero()) continue;
    q[static_cast<std::size_t>(k - dg)] = lead;
    for (long j = 0; j <= dg; ++j)
      r[static_cast<std::size_t>(k - dg + j)] -= lead * g.coeff(static_cast<std::size_t>(j));
  }
  r.resize(static_cast<std::size_t>(dg), FracSeries(d));
  return {SeriesPoly(d, std::move(q)), SeriesPoly(d, std::move(r))};
}

}  // namespace qosing
