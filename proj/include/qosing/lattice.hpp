#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "expvec.hpp"

namespace qosing {

using IntMat = std::vector<std::vector<Int>>;
using RatMat = std::vector<std::vector<Rat>>;

// Inverse of a square rational matrix by Gauss-Jordan elimination.
inline RatMat invert(RatMat a) {
  const std::size_t n = a.size();
  RatMat inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) fail(ErrorKind::RankDeficient, "singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline Rat determinant(RatMat a) {
  const std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

inline std::size_t rank_of(RatMat a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[rank][col];
      for (std::size_t j = col; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Full-rank lattice in Q^d with basis rows H / den, H in lower-triangular Hermite form.
class Lattice {
 public:
  Lattice() = default;

  static Lattice standard(std::size_t d) {
    Lattice L;
    L.d_ = d;
    L.den_ = 1;
    L.h_.assign(d, std::vector<Int>(d, Int(0)));
    for (std::size_t i = 0; i < d; ++i) L.h_[i][i] = 1;
    return L;
  }

  static Lattice from_rows(const std::vector<ExpVec>& rows, std::size_t d);

  std::size_t dim() const { return d_; }
  const Int& denominator() const { return den_; }
  const IntMat& hermite() const { return h_; }

  std::vector<ExpVec> basis() const {
    std::vector<ExpVec> out;
    for (const auto& row : h_) {
      ExpVec v(d_);
      for (std::size_t j = 0; j < d_; ++j) v[j] = make_rat(row[j], den_);
      out.push_back(v);
    }
    return out;
  }

  RatMat basis_matrix() const {
    RatMat m;
    for (const auto& v : basis()) m.push_back(v.c);
    return m;
  }

  // Covolume |det(basis)|.
  Rat covolume() const {
    Rat det = 1;
    for (std::size_t i = 0; i < d_; ++i) det *= make_rat(h_[i][i], den_);
    return det;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.d_ == b.d_ && a.den_ == b.den_ && a.h_ == b.h_;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

 private:
  std::size_t d_ = 0;
  Int den_ = 1;
  IntMat h_;
};

namespace detail {

inline void hermite_reduce(IntMat rows, std::size_t d, IntMat& h) {
  h.assign(d, std::vector<Int>(d, Int(0)));
  std::vector<bool> used(rows.size(), false);
  for (std::size_t step = d; step-- > 0;) {
    const std::size_t col = step;
    // Euclid on the pool until a single row carries a nonzero entry in this column.
    for (;;) {
      std::size_t best = rows.size();
      std::size_t nonzero = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (used[r] || rows[r][col] == 0) continue;
        ++nonzero;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) fail(ErrorKind::RankDeficient, "generators do not span a full-rank lattice");
      if (nonzero == 1) {
        if (rows[best][col] < 0)
          for (auto& x : rows[best]) x = -x;
        h[col] = rows[best];
        used[best] = true;
        break;
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (used[r] || r == best || rows[r][col] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[best][col].get_mpz_t());
        for (std::size_t j = 0; j <= col; ++j) rows[r][j] -= q * rows[best][j];
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j-- > 0;) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h[i][j].get_mpz_t(), h[j][j].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k <= j; ++k) h[i][k] -= q * h[j][k];
    }
  }
}

}  // namespace detail

inline Lattice Lattice::from_rows(const std::vector<ExpVec>& rows, std::size_t d) {
  Int den = 1;
  for (const auto& r : rows) {
    if (r.dim() != d) fail(ErrorKind::DimensionMismatch, "generator of wrong dimension");
    for (const auto& x : r.c) den = lcm_int(den, x.get_den());
  }
  IntMat scaled;
  for (const auto& r : rows) {
    std::vector<Int> row(d);
    for (std::size_t j = 0; j < d; ++j) {
      Rat t = r[j] * Rat(den);
      row[j] = t.get_num();
    }
    scaled.push_back(std::move(row));
  }
  Lattice L;
  L.d_ = d;
  detail::hermite_reduce(std::move(scaled), d, L.h_);
  // Shrink the denominator to the least one clearing the basis.
  Int minimal = 1;
  for (const auto& row : L.h_)
    for (const auto& x : row) minimal = lcm_int(minimal, make_rat(x, den).get_den());
  for (auto& row : L.h_)
    for (auto& x : row) x = x * minimal / den;
  L.den_ = minimal;
  return L;
}

inline Lattice hnf(const std::vector<ExpVec>& rows) {
  if (rows.empty()) fail(ErrorKind::RankDeficient, "no generators");
  return Lattice::from_rows(rows, rows.front().dim());
}

inline Lattice hnf(const std::vector<ExpVec>& rows, std::size_t d) { return Lattice::from_rows(rows, d); }

inline Lattice lattice_sum(const Lattice& L, const std::vector<ExpVec>& extra) {
  auto rows = L.basis();
  rows.insert(rows.end(), extra.begin(), extra.end());
  return Lattice::from_rows(rows, L.dim());
}

inline bool lattice_member(const ExpVec& v, const Lattice& L) {
  if (v.dim() != L.dim()) fail(ErrorKind::DimensionMismatch, "vector and lattice dimensions differ");
  const std::size_t d = L.dim();
  std::vector<Int> w(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rat t = v[j] * Rat(L.denominator());
    if (!is_integer(t)) return false;
    w[j] = t.get_num();
  }
  const auto& h = L.hermite();
  for (std::size_t i = d; i-- > 0;) {
    if (w[i] % h[i][i] != 0) return false;
    Int x = w[i] / h[i][i];
    for (std::size_t j = 0; j <= i; ++j) w[j] -= x * h[i][j];
  }
  return true;
}

inline bool lattice_contains(const Lattice& sup, const Lattice& sub) {
  for (const auto& b : sub.basis())
    if (!lattice_member(b, sup)) return false;
  return true;
}

inline Int lattice_index(const Lattice& sub, const Lattice& sup) {
  if (sub.dim() != sup.dim()) fail(ErrorKind::DimensionMismatch, "lattices of different dimension");
  if (!lattice_contains(sup, sub)) fail(ErrorKind::NotASublattice, "first lattice is not contained in the second");
  Rat q = sub.covolume() / sup.covolume();
  if (!is_integer(q)) fail(ErrorKind::NotASublattice, "non-integral index");
  return q.get_num();
}

inline Lattice dual_lattice(const Lattice& L) {
  RatMat inv = invert(L.basis_matrix());
  const std::size_t d = L.dim();
  std::vector<ExpVec> rows;
  for (std::size_t j = 0; j < d; ++j) {
    ExpVec r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = inv[i][j];
    rows.push_back(r);
  }
  return Lattice::from_rows(rows, d);
}

inline Int min_multiple(const ExpVec& v, const Lattice& L) {
  Int k = lattice_index(L, lattice_sum(L, {v}));
  if (!lattice_member(Rat(k) * v, L)) fail(ErrorKind::NoMultiple, "index does not annihilate " + to_string(v));
  return k;
}

inline ExpVec smallest_edge_element(const Lattice& L, std::size_t axis) {
  if (axis >= L.dim()) fail(ErrorKind::DimensionMismatch, "axis out of range");
  RatMat inv = invert(L.basis_matrix());
  Rat c = 0;
  for (const auto& r : inv[axis]) {
    if (r == 0) continue;
    Rat step = abs(Rat(1) / r);
    c = (c == 0) ? step : rat_lcm(c, step);
  }
  ExpVec e(L.dim());
  e[axis] = c;
  return e;
}

}  // namespace qosing
