#pragma once

#include "toric/arith.hpp"

#include <optional>

namespace toric {

// Integral symmetric bilinear form on Z^rank. anticanonical holds the
// coordinates of -K when the lattice models a surface.
struct IntersectionLattice {
  int rank = 0;
  std::vector<Vec> gram;
  std::optional<Vec> anticanonical;

  IntersectionLattice() = default;
  IntersectionLattice(std::vector<Vec> g, std::optional<Vec> antik = std::nullopt)
      : rank(static_cast<int>(g.size())), gram(std::move(g)), anticanonical(std::move(antik)) {
    for (int i = 0; i < rank; ++i) {
      if (static_cast<int>(gram[i].size()) != rank)
        throw Error("shape", "gram matrix is not square");
      for (int j = 0; j < i; ++j)
        if (gram[i][j] != gram[j][i])
          throw Error("shape", "gram matrix is not symmetric");
    }
    if (anticanonical && static_cast<int>(anticanonical->size()) != rank)
      throw Error("shape", "anticanonical has wrong length");
  }

  i64 form(const Vec &x, const Vec &y) const {
    i64 s = 0;
    for (int i = 0; i < rank; ++i) {
      if (x[i] == 0)
        continue;
      i64 row = 0;
      for (int j = 0; j < rank; ++j)
        row += gram[i][j] * y[j];
      s += x[i] * row;
    }
    return s;
  }

  const Vec &antik() const {
    if (!anticanonical)
      throw Error("unsupported-lattice", "lattice has no anticanonical class");
    return *anticanonical;
  }

  // 1 + (D^2 + (-K).D)/2
  i64 euler(const Vec &d) const {
    i64 twice = form(d, d) + form(antik(), d);
    if (twice % 2 != 0)
      throw Error("unsupported-lattice", "Riemann-Roch value is not integral");
    return 1 + twice / 2;
  }

  bool operator==(const IntersectionLattice &o) const {
    return gram == o.gram && anticanonical == o.anticanonical;
  }
};

struct DivisorClass {
  Vec coords;
  const IntersectionLattice *owner = nullptr;

  DivisorClass operator+(const DivisorClass &o) const { return {add(coords, o.coords), owner}; }
  DivisorClass operator-(const DivisorClass &o) const { return {sub(coords, o.coords), owner}; }
  DivisorClass operator-() const { return {neg(coords), owner}; }
  bool operator==(const DivisorClass &o) const { return coords == o.coords && owner == o.owner; }
};

inline DivisorClass make_class(const IntersectionLattice &L, Vec coords) {
  if (static_cast<int>(coords.size()) != L.rank)
    throw Error("shape", "coordinate vector has wrong length");
  return {std::move(coords), &L};
}

inline i64 intersect(const DivisorClass &d, const DivisorClass &e) {
  if (d.owner != e.owner || d.owner == nullptr)
    throw Error("distinct-lattice", "classes live in different lattices");
  return d.owner->form(d.coords, e.coords);
}

inline i64 euler_char(const DivisorClass &d) { return d.owner->euler(d.coords); }

inline bool is_numerically_left_orthogonal(const DivisorClass &d) {
  return d.owner->euler(neg(d.coords)) == 0;
}

// s(E.D)E + D, defined when E^2 * s = -2.
inline DivisorClass reflect(const DivisorClass &e, i64 s, const DivisorClass &d) {
  if (intersect(e, e) * s != -2)
    throw Error("invalid-reflection", "need E^2 * s = -2");
  DivisorClass r = d;
  axpy(s * intersect(e, d), e.coords, r.coords);
  return r;
}

// chi(-D) = 0 and -K.D = i; membership forces D^2 = i - 2.
inline bool in_root_set(const DivisorClass &d, i64 i) {
  const IntersectionLattice &L = *d.owner;
  if (L.euler(neg(d.coords)) != 0 || L.form(L.antik(), d.coords) != i)
    return false;
  if (L.form(d.coords, d.coords) != i - 2)
    throw Error("internal", "root-set member with unexpected square");
  return true;
}

// ---------------------------------------------------------------------------
// Minimal-model coordinates: [H, R_1..R_t] on a plane model or
// [P, Q, R_1..R_t] on a Hirzebruch model F_a.

enum class Model { Plane, Hirzebruch };

struct ModelShape {
  Model model = Model::Plane;
  i64 a = 0;
  int t = 0;

  int head() const { return model == Model::Plane ? 1 : 2; }
  int rank() const { return head() + t; }
  bool operator==(const ModelShape &) const = default;
};

inline IntersectionLattice model_lattice(const ModelShape &s) {
  int r = s.rank();
  std::vector<Vec> g(r, Vec(r, 0));
  Vec k(r, 0);
  if (s.model == Model::Plane) {
    g[0][0] = 1;
    k[0] = 3;
  } else {
    g[0][0] = 0;
    g[1][1] = s.a;
    g[0][1] = g[1][0] = 1;
    k[0] = 2 - s.a;
    k[1] = 2;
  }
  for (int i = s.head(); i < r; ++i) {
    g[i][i] = -1;
    k[i] = -1;
  }
  return IntersectionLattice(std::move(g), std::move(k));
}

// The closed Euler formulas; sign = +1 gives chi(D), sign = -1 gives chi(-D).
inline i64 euler_char_closed_form(const Vec &c, const ModelShape &s, int sign) {
  if (static_cast<int>(c.size()) != s.rank())
    throw Error("shape", "coordinates do not match the basis");
  i64 r = 0;
  int h = s.head();
  if (s.model == Model::Plane) {
    i64 beta = c[0];
    r = sign > 0 ? binom2(beta + 2) : binom2(beta - 1);
  } else {
    i64 alpha = c[0], beta = c[1];
    r = sign > 0 ? (alpha + 1) * (beta + 1) + s.a * binom2(beta + 1)
                 : (alpha - 1) * (beta - 1) + s.a * binom2(beta);
  }
  for (int i = h; i < s.rank(); ++i)
    r -= sign > 0 ? binom2(c[i]) : binom2(c[i] + 1);
  return r;
}

// Forget R_{i+1}..R_t (blow-up order).
inline Vec project(const Vec &c, const ModelShape &s, int i) {
  if (i < 0 || i > s.t)
    throw Error("shape", "projection index out of range");
  Vec r = c;
  for (int k = s.head() + i; k < s.rank(); ++k)
    r[k] = 0;
  return r;
}

// Truncations of the rank-7 del Pezzo lattice (plane blown up t <= 7 times).
inline IntersectionLattice del_pezzo_lattice(int t) {
  return model_lattice({Model::Plane, 0, t});
}

} // namespace toric
