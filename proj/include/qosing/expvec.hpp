#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "rational.hpp"

namespace qosing {

// Exponent vector in Q^d. Ordered lexicographically so it can key maps.
struct ExpVec {
  std::vector<Rat> c;

  ExpVec() = default;
  explicit ExpVec(std::size_t d) : c(d, Rat(0)) {}
  explicit ExpVec(std::vector<Rat> v) : c(std::move(v)) {}
  ExpVec(std::initializer_list<Rat> v) : c(v) {}

  std::size_t dim() const { return c.size(); }
  Rat& operator[](std::size_t i) { return c[i]; }
  const Rat& operator[](std::size_t i) const { return c[i]; }

  static ExpVec unit(std::size_t d, std::size_t i) {
    ExpVec e(d);
    e[i] = 1;
    return e;
  }

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
  }
  bool is_integral() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return is_integer(x); });
  }
  bool is_nonneg() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x >= 0; });
  }

  friend bool operator==(const ExpVec& a, const ExpVec& b) { return a.c == b.c; }
  friend bool operator!=(const ExpVec& a, const ExpVec& b) { return !(a == b); }
  friend bool operator<(const ExpVec& a, const ExpVec& b) {
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
  }
};

inline void check_dim(const ExpVec& a, const ExpVec& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "exponent vectors of different dimension");
}

inline ExpVec operator+(const ExpVec& a, const ExpVec& b) {
  check_dim(a, b);
  ExpVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline ExpVec operator-(const ExpVec& a, const ExpVec& b) {
  check_dim(a, b);
  ExpVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline ExpVec operator*(const Rat& k, const ExpVec& a) {
  ExpVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = k * a[i];
  return r;
}

inline Rat dot(const ExpVec& a, const ExpVec& b) {
  check_dim(a, b);
  Rat s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

// Componentwise partial order.
inline bool leq(const ExpVec& a, const ExpVec& b) {
  check_dim(a, b);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline ExpVec componentwise_min(const ExpVec& a, const ExpVec& b) {
  check_dim(a, b);
  ExpVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

inline ExpVec componentwise_max(const ExpVec& a, const ExpVec& b) {
  check_dim(a, b);
  ExpVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline ExpVec project(const ExpVec& a, const std::vector<std::size_t>& keep) {
  ExpVec r(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= a.dim()) fail(ErrorKind::DimensionMismatch, "projection index out of range");
    r[i] = a[keep[i]];
  }
  return r;
}

inline ExpVec truncate(const ExpVec& a, std::size_t k) {
  if (k > a.dim()) fail(ErrorKind::DimensionMismatch, "truncation beyond dimension");
  return ExpVec(std::vector<Rat>(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(k)));
}

inline ExpVec pad(const ExpVec& a, std::size_t d) {
  if (d < a.dim()) fail(ErrorKind::DimensionMismatch, "padding below dimension");
  ExpVec r(d);
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i];
  return r;
}

inline ExpVec concat(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.dim(); ++i) r[a.dim() + i] = b[i];
  return r;
}

inline std::string to_string(const ExpVec& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i) s += ",";
    s += to_string(a[i]);
  }
  return s + ")";
}

}  // namespace qosing
