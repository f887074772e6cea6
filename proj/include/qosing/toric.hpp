#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "branch.hpp"
#include "semigroup.hpp"
#include "series.hpp"

namespace qosing {

// Simplicial cone given by ordered primitive rays in the weight lattice.
struct ConeZ {
  Lattice lattice;
  std::vector<ExpVec> rays;
};

struct Fan {
  Lattice lattice;
  std::vector<ConeZ> max_cones;
};

inline bool same_ray_set(const std::vector<ExpVec>& a, const std::vector<ExpVec>& b) {
  return std::set<ExpVec>(a.begin(), a.end()) == std::set<ExpVec>(b.begin(), b.end());
}

inline bool contains_rays(const ConeZ& cone, const std::vector<ExpVec>& face) {
  for (const auto& r : face)
    if (std::find(cone.rays.begin(), cone.rays.end(), r) == cone.rays.end()) return false;
  return true;
}

// Coordinates of the rays in the lattice basis; nullopt if some ray is not a lattice vector.
inline std::optional<RatMat> lattice_coordinates(const ConeZ& cone) {
  RatMat inv = invert(cone.lattice.basis_matrix());
  const std::size_t d = cone.lattice.dim();
  RatMat out;
  for (const auto& r : cone.rays) {
    if (r.dim() != d) fail(ErrorKind::DimensionMismatch, "ray of wrong dimension");
    std::vector<Rat> x(d, Rat(0));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) x[j] += r[i] * inv[i][j];
    for (const auto& v : x)
      if (!is_integer(v)) return std::nullopt;
    out.push_back(x);
  }
  return out;
}

// Rays extend to a lattice basis iff the gcd of the maximal minors of their coordinate matrix is 1.
inline bool is_regular(const ConeZ& cone) {
  auto coords = lattice_coordinates(cone);
  if (!coords) return false;
  const std::size_t k = coords->size(), d = cone.lattice.dim();
  if (k == 0) return true;
  if (k > d) return false;
  Int g = 0;
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  for (;;) {
    RatMat minor(k, std::vector<Rat>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) minor[r][c] = (*coords)[r][cols[c]];
    g = gcd_int(g, determinant(minor).get_num());
    std::size_t i = k;
    while (i-- > 0 && cols[i] == d - k + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++cols[i];
    for (std::size_t j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return g == 1;
}

// Does the simplicial cone contain the point (rays linearly independent) ?
inline bool cone_contains(const ConeZ& cone, const ExpVec& p) { return in_cone(p, cone.rays); }

inline Fan fan_of_cone(const ConeZ& cone) { return Fan{cone.lattice, {cone}}; }

inline Fan star_subdivision(const Fan& fan, const std::vector<ExpVec>& face) {
  if (face.size() < 2) fail(ErrorKind::PreconditionViolated, "star subdivision needs a face of dimension at least 2");
  bool found = false;
  for (const auto& c : fan.max_cones)
    if (contains_rays(c, face)) found = true;
  if (!found) fail(ErrorKind::NotInFan, "face is not a cone of the fan");
  ExpVec v0(fan.lattice.dim());
  for (const auto& r : face) v0 = v0 + r;
  Fan out{fan.lattice, {}};
  for (const auto& c : fan.max_cones) {
    if (!contains_rays(c, face)) {
      out.max_cones.push_back(c);
      continue;
    }
    for (const auto& vj : face) {
      ConeZ child = c;
      *std::find(child.rays.begin(), child.rays.end(), vj) = v0;
      out.max_cones.push_back(child);
    }
  }
  return out;
}

struct NormalizationData {
  Lattice M_G;
  Lattice W_G;
  RatMat nu;  // row i: coordinates of e_i in the Hermite basis of M_G
};

inline NormalizationData normalization_data(const Branch& b) {
  auto inv = derive(b);
  NormalizationData n;
  n.M_G = inv.tower.back();
  n.W_G = dual_lattice(n.M_G);
  RatMat binv = invert(n.M_G.basis_matrix());
  n.nu = binv;  // e_i B^{-1} is row i of B^{-1}
  return n;
}

struct OrbifoldData {
  Lattice W_tilde;
  std::vector<Int> m;
};

inline OrbifoldData orbifold_data(const Lattice& W) {
  OrbifoldData o;
  std::vector<ExpVec> gens;
  for (std::size_t i = 0; i < W.dim(); ++i) {
    ExpVec e = smallest_edge_element(W, i);
    if (!is_integer(e[i])) fail(ErrorKind::NonIntegral, "weight lattice is not contained in Z^d");
    o.m.push_back(e[i].get_num());
    gens.push_back(e);
  }
  o.W_tilde = hnf(gens);
  return o;
}

struct BlowupResult {
  Fan fan;
  std::vector<ConeZ> distinguished;
  std::vector<std::vector<std::size_t>> labels;  // subdivision index sequences, 1-based
  std::vector<ExpVec> h_rays;
  std::size_t c_prime = 0;
  OrbifoldData orbifold;
};

inline std::size_t h_ray_count(const BlowupResult& br, const ConeZ& cone) {
  std::size_t n = 0;
  for (const auto& r : cone.rays)
    if (std::find(br.h_rays.begin(), br.h_rays.end(), r) != br.h_rays.end()) ++n;
  return n;
}

inline BlowupResult canonical_blowup(const Branch& b) {
  if (b.G() == 0) fail(ErrorKind::Smooth, "blow-up of a smooth branch");
  const auto inv = derive(b);
  const std::size_t d = b.dim, c = inv.c, s = inv.s;
  BlowupResult br;
  br.c_prime = inv.c_reduced;
  br.orbifold = orbifold_data(dual_lattice(inv.tower.back()));
  ConeZ sigma0{br.orbifold.W_tilde, {}};
  for (std::size_t i = 0; i < d; ++i) {
    ExpVec v(d);
    v[i] = Rat(br.orbifold.m[i]);
    sigma0.rays.push_back(v);
  }
  br.fan = fan_of_cone(sigma0);
  for (std::size_t i = 0; i < s; ++i) br.h_rays.push_back(sigma0.rays[i]);

  if (s == c || s + 2 == c) {
    br.distinguished.push_back(sigma0);
    br.labels.push_back({});
    return br;
  }
  if (s + 1 == c) {
    std::vector<ExpVec> face(sigma0.rays.begin(), sigma0.rays.begin() + static_cast<std::ptrdiff_t>(c));
    br.fan = star_subdivision(br.fan, face);
    ExpVec v0(d);
    for (const auto& r : face) v0 = v0 + r;
    br.h_rays.push_back(v0);
    ConeZ p = sigma0;
    p.rays[c - 1] = v0;
    br.distinguished.push_back(p);
    br.labels.push_back({c});
    return br;
  }
  // Iterated star subdivisions of the faces on slots s+1..c with pairwise distinct indices.
  struct Node {
    std::vector<std::size_t> seq;
    ConeZ cone;
  };
  std::vector<Node> frontier{{{}, sigma0}};
  for (std::size_t step = 0; step < c - s; ++step) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      std::vector<ExpVec> face(node.cone.rays.begin() + static_cast<std::ptrdiff_t>(s),
                               node.cone.rays.begin() + static_cast<std::ptrdiff_t>(c));
      br.fan = star_subdivision(br.fan, face);
      ExpVec v0(d);
      for (const auto& r : face) v0 = v0 + r;
      if (std::find(br.h_rays.begin(), br.h_rays.end(), v0) == br.h_rays.end()) br.h_rays.push_back(v0);
      for (std::size_t j = s; j < c; ++j) {
        if (std::find(node.seq.begin(), node.seq.end(), j + 1) != node.seq.end()) continue;
        Node child = node;
        child.cone.rays[j] = v0;
        child.seq.push_back(j + 1);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  for (auto& node : frontier) {
    br.distinguished.push_back(node.cone);
    br.labels.push_back(node.seq);
  }
  return br;
}

// Exponent-level map u -> matrix * u.
struct MonomialMap {
  RatMat matrix;

  ExpVec apply(const ExpVec& u) const {
    ExpVec out(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      if (matrix[i].size() != u.dim()) fail(ErrorKind::DimensionMismatch, "map and exponent dimensions differ");
      for (std::size_t j = 0; j < u.dim(); ++j) out[i] += matrix[i][j] * u[j];
    }
    return out;
  }

  bool nonnegative() const {
    for (const auto& row : matrix)
      for (const auto& x : row)
        if (x < 0) return false;
    return true;
  }

  FracSeries pushforward(const FracSeries& eta) const {
    FracSeries out(matrix.size());
    for (const auto& [u, c] : eta.terms()) out.add_term(apply(u), c);
    return out;
  }
};

inline bool vertex_transfer_check(const MonomialMap& map, const FracSeries& eta) {
  if (!map.nonnegative()) fail(ErrorKind::PreconditionViolated, "map does not respect the orthants");
  FracSeries pushed = map.pushforward(eta);
  if (pushed.is_zero()) return true;
  std::set<ExpVec> images;
  for (const auto& v : newton_polyhedron(eta).vertices) images.insert(map.apply(v));
  for (const auto& v : newton_polyhedron(pushed).vertices)
    if (!images.count(v)) return false;
  return true;
}

struct PhiCertificate {
  std::size_t fragment_size = 0;
  bool images_integral = false;
  bool injective = false;
  bool image_equals_pushforward = false;
  bool ok() const { return images_integral && injective && image_equals_pushforward; }
};

struct PhiResult {
  std::size_t cone_index = 0;
  MonomialMap orbifold;  // exponents X -> U~
  MonomialMap full;      // exponents X -> chart coordinates at the distinguished cone
  MonomialMap reduced;   // restriction to the first c' coordinates
  std::vector<ExpVec> generators;        // units then extras of the reduced semigroup
  std::vector<ExpVec> generator_images;
  ExpVec bound;
  PhiCertificate certificate;
};

inline PhiResult phi_map(const Branch& b, const BlowupResult& br, std::size_t cone_index,
                         std::optional<ExpVec> bound = std::nullopt) {
  if (cone_index >= br.distinguished.size()) fail(ErrorKind::PreconditionViolated, "no such distinguished cone");
  const std::size_t d = b.dim, cp = br.c_prime;
  PhiResult res;
  res.cone_index = cone_index;
  res.orbifold.matrix.assign(d, std::vector<Rat>(d, Rat(0)));
  for (std::size_t i = 0; i < d; ++i) res.orbifold.matrix[i][i] = Rat(br.orbifold.m[i]);
  // Rows: the rays of the distinguished cone, components of the total transform first.
  const ConeZ& P = br.distinguished[cone_index];
  std::vector<ExpVec> rows;
  for (const auto& r : P.rays)
    if (std::find(br.h_rays.begin(), br.h_rays.end(), r) != br.h_rays.end()) rows.push_back(r);
  if (rows.size() != cp) fail(ErrorKind::ShapeViolation, "distinguished cone does not carry c' components");
  for (const auto& r : P.rays)
    if (std::find(br.h_rays.begin(), br.h_rays.end(), r) == br.h_rays.end()) rows.push_back(r);
  for (const auto& r : rows) res.full.matrix.push_back(r.c);
  for (std::size_t i = 0; i < cp; ++i) {
    for (std::size_t j = cp; j < d; ++j)
      if (rows[i][j] != 0) fail(ErrorKind::ShapeViolation, "reduced map depends on discarded coordinates");
    res.reduced.matrix.push_back(std::vector<Rat>(rows[i].c.begin(), rows[i].c.begin() + static_cast<std::ptrdiff_t>(cp)));
  }
  QOSemigroup sg = gamma_reduced(b);
  for (std::size_t i = 0; i < cp; ++i) res.generators.push_back(ExpVec::unit(cp, i));
  for (const auto& e : sg.extras) res.generators.push_back(e);
  res.certificate.images_integral = true;
  for (const auto& g : res.generators) {
    ExpVec im = res.reduced.apply(g);
    if (!im.is_integral() || !im.is_nonneg()) res.certificate.images_integral = false;
    res.generator_images.push_back(im);
  }
  res.bound = bound ? *bound : default_bound(sg);
  auto frag = enumerate_up_to(sg, res.bound);
  res.certificate.fragment_size = frag.size();
  std::set<ExpVec> pushed;
  for (const auto& u : frag) {
    ExpVec im = res.reduced.apply(u);
    if (!im.is_integral() || !im.is_nonneg()) res.certificate.images_integral = false;
    pushed.insert(im);
  }
  res.certificate.injective = pushed.size() == frag.size() && determinant(res.reduced.matrix) != 0;
  // Semigroup generated by the images, restricted to preimages below the bound.
  if (res.certificate.injective) {
    RatMat inv = invert(res.reduced.matrix);
    MonomialMap back{inv};
    std::set<ExpVec> image{ExpVec(cp)};
    std::vector<ExpVec> todo{ExpVec(cp)};
    std::vector<ExpVec> gens(res.generator_images.begin(), res.generator_images.end());
    while (!todo.empty()) {
      ExpVec y = todo.back();
      todo.pop_back();
      for (const auto& g : gens) {
        ExpVec z = y + g;
        if (leq(back.apply(z), res.bound) && image.insert(z).second) todo.push_back(z);
      }
    }
    res.certificate.image_equals_pushforward = image == pushed;
  }
  return res;
}

}  // namespace qosing
