#pragma once

#include <cstddef>
#include <vector>

#include "lattice.hpp"

namespace qosing {

// Exact feasibility of { x >= 0 : A x = b } by phase-one simplex with Bland's rule.
inline bool exact_feasible(RatMat a, std::vector<Rat> b) {
  const std::size_t m = a.size();
  if (m == 0) return true;
  const std::size_t n = a[0].size();
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      for (auto& x : a[i]) x = -x;
      b[i] = -b[i];
    }
  }
  // Tableau columns: n originals, m artificials, then the right-hand side.
  const std::size_t cols = n + m;
  RatMat t(m, std::vector<Rat>(cols + 1, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = b[i];
    basis[i] = n + i;
  }
  // Reduced costs of the objective "minimize the sum of artificials".
  std::vector<Rat> cost(cols + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) cost[j] -= t[i][j];
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot occur in phase one
    Rat p = t[leave][enter];
    for (auto& x : t[leave]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rat f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return cost[cols] == 0;
}

// Is p in conv(points) + R_+^d ?
inline bool in_hull_plus_orthant(const ExpVec& p, const std::vector<ExpVec>& points) {
  if (points.empty()) return false;
  const std::size_t d = p.dim(), k = points.size();
  // Variables: lambda_1..lambda_k, slack_1..slack_d.
  RatMat a(d + 1, std::vector<Rat>(k + d, Rat(0)));
  std::vector<Rat> b(d + 1, Rat(0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = points[j][i];
    a[i][k + i] = 1;
    b[i] = p[i];
  }
  for (std::size_t j = 0; j < k; ++j) a[d][j] = 1;
  b[d] = 1;
  return exact_feasible(std::move(a), std::move(b));
}

// Is p in the cone spanned by the generators ?
inline bool in_cone(const ExpVec& p, const std::vector<ExpVec>& gens) {
  const std::size_t d = p.dim(), k = gens.size();
  if (k == 0) return p.is_zero();
  RatMat a(d, std::vector<Rat>(k, Rat(0)));
  std::vector<Rat> b(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = gens[j][i];
    b[i] = p[i];
  }
  return exact_feasible(std::move(a), std::move(b));
}

}  // namespace qosing
