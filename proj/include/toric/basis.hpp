#pragma once

#include "toric/surface.hpp"

#include <cctype>

namespace toric {

// Coordinates H,R_1..R_t or P,Q,R_1..R_t attached to a contraction sequence.
// R_k are numbered in blow-up order: R_1 is the last ray contracted.
struct MinimalModelBasis {
  Surface x;
  ModelShape shape;
  std::vector<int> contraction; // rays of x in contraction order
  std::vector<int> alive0;      // rays of x surviving on the minimal model
  Surface x0;
  std::vector<Vec> elems;       // d-vectors on x of H | P,Q then R_1..R_t
  std::vector<Vec> elem_c;      // pinned c-representatives of elems
  std::vector<int> ray_of_R;    // ray of x created by blow-up k
  std::vector<std::array<int, 2>> cone_of_R; // its neighbours at creation time
  BlowupTree tree;
  std::vector<int> label;       // printed index of R_k (default k+1)

  int t() const { return shape.t; }
  int head() const { return shape.head(); }

  Vec to_d(const Vec &coords) const {
    if (static_cast<int>(coords.size()) != shape.rank())
      throw Error("shape", "coordinates do not match the basis");
    Vec d(x.n(), 0);
    for (int k = 0; k < shape.rank(); ++k)
      if (coords[k] != 0)
        axpy(coords[k], elems[k], d);
    return d;
  }

  Vec to_coords(const Vec &d) const {
    Vec c(shape.rank(), 0);
    int h = head();
    if (shape.model == Model::Plane) {
      c[0] = dot(d, elem_c[0]);
    } else {
      i64 beta = dot(d, elem_c[0]);
      c[1] = beta;
      c[0] = dot(d, elem_c[1]) - shape.a * beta;
    }
    for (int k = 0; k < t(); ++k)
      c[h + k] = -dot(d, elem_c[h + k]);
    if (to_d(c) != d)
      throw Error("not-a-class", "d-vector is not in the span of the basis");
    return c;
  }

  // (D)_i as a class on x (pullback of the projection).
  Vec project_d(const Vec &d, int i) const { return to_d(project(to_coords(d), shape, i)); }

  // rays of x alive on X_i (i = 0..t)
  std::vector<int> alive(int i) const {
    std::vector<int> r = alive0;
    for (int k = 0; k < i; ++k)
      r.push_back(ray_of_R[k]);
    std::sort(r.begin(), r.end());
    return r;
  }

  int index_of_label(int lab) const {
    for (int k = 0; k < t(); ++k)
      if (label[k] == lab)
        return k;
    throw Error("parse", "no exceptional class R" + std::to_string(lab));
  }
};

// P and Q on a four-ray fan; q_ray (index on the four-ray fan) picks Q when a = 0.
namespace detail {
inline std::array<int, 2> hirzebruch_pq(const Surface &f, int q_local) {
  i64 a = 0;
  for (i64 v : f.a)
    a = std::max(a, v < 0 ? -v : v);
  int q = -1;
  if (a == 0) {
    q = q_local >= 0 ? q_local : 1;
  } else {
    for (int i = 0; i < 4; ++i)
      if (f.a[i] == a)
        q = i;
  }
  int p = f.next(q);
  return {p, q};
}
} // namespace detail

inline MinimalModelBasis make_basis(const Surface &x, const std::vector<int> &order, int q_ray = -1) {
  MinimalModelBasis b;
  b.x = x;
  b.contraction = order;
  Contracted c{x, {}};
  for (int i = 0; i < x.n(); ++i)
    c.ids.push_back(i);
  std::vector<std::array<int, 2>> nb;
  for (int id : order) {
    auto it = std::find(c.ids.begin(), c.ids.end(), id);
    if (it == c.ids.end())
      throw Error("index", "ray contracted twice");
    int k = static_cast<int>(it - c.ids.begin());
    nb.push_back({c.ids[c.surface.prev(k)], c.ids[c.surface.next(k)]});
    c.surface = blow_down(c.surface, k);
    c.ids.erase(it);
  }
  if (c.surface.n() > 4)
    throw Error("not-minimal", "contraction sequence stops above a minimal model");
  b.x0 = c.surface;
  b.alive0 = c.ids;
  int t = static_cast<int>(order.size());
  b.shape.t = t;
  auto embed = [&](const Vec &d0) {
    Vec d(x.n(), 0);
    for (std::size_t k = 0; k < c.ids.size(); ++k)
      d[c.ids[k]] = d0[k];
    return d;
  };
  if (c.surface.n() == 3) {
    b.shape.model = Model::Plane;
    b.elems.push_back(embed(Vec{1, 1, 1}));
  } else {
    b.shape.model = Model::Hirzebruch;
    int ql = -1;
    if (q_ray >= 0) {
      auto it = std::find(c.ids.begin(), c.ids.end(), q_ray);
      if (it == c.ids.end())
        throw Error("index", "Q ray is contracted");
      ql = static_cast<int>(it - c.ids.begin());
    }
    auto pq = detail::hirzebruch_pq(c.surface, ql);
    b.shape.a = c.surface.a[pq[1]];
    if (b.shape.a < 0)
      throw Error("internal", "negative Hirzebruch parameter");
    b.elems.push_back(embed(invariant_divisor(c.surface, pq[0])));
    b.elems.push_back(embed(invariant_divisor(c.surface, pq[1])));
  }
  // R_k: blow-up k undoes contraction t-1-k
  for (int k = 0; k < t; ++k) {
    int j = t - 1 - k;
    int r = order[j];
    Vec d(x.n(), 0);
    d[r] = -1;
    d[nb[j][0]] += 1;
    d[nb[j][1]] += 1;
    b.elems.push_back(d);
    b.ray_of_R.push_back(r);
    b.cone_of_R.push_back(nb[j]);
    b.label.push_back(k + 1);
  }
  std::vector<std::vector<int>> cover(t);
  for (int k = 0; k < t; ++k)
    for (int i = 0; i < k; ++i)
      if (b.cone_of_R[k][0] == b.ray_of_R[i] || b.cone_of_R[k][1] == b.ray_of_R[i])
        cover[k].push_back(i);
  b.tree = tree_from_cover(std::move(cover));
  for (auto &e : b.elems)
    b.elem_c.push_back(c_representative(x, e));
  return b;
}

// A basis for a blow-up history: replay it and contract in reverse.
inline MinimalModelBasis make_basis(const BlowupHistory &h, int q_ray = -1) {
  Replay r = replay(h);
  std::vector<int> order(r.created.rbegin(), r.created.rend());
  int q = -1;
  if (q_ray >= 0) {
    // q_ray is an index on the base; find it on the final surface
    Surface s = h.base;
    std::vector<int> ids;
    for (int i = 0; i < s.n(); ++i)
      ids.push_back(i);
    for (int st : h.steps) {
      ids.insert(ids.begin() + st + 1, -1);
    }
    q = static_cast<int>(std::find(ids.begin(), ids.end(), q_ray) - ids.begin());
  }
  return make_basis(r.surface, order, q);
}

// Basis determined by a set of rays to contract: any valid order; R labels follow
// the left-to-right position of the rays.
inline MinimalModelBasis basis_from_marked(const Surface &x, std::vector<int> marked,
                                           int q_ray = -1) {
  std::sort(marked.begin(), marked.end());
  std::vector<int> order;
  std::vector<bool> used(x.n(), false);
  Contracted c{x, {}};
  for (int i = 0; i < x.n(); ++i)
    c.ids.push_back(i);
  for (std::size_t step = 0; step < marked.size(); ++step) {
    int pick = -1;
    for (int k = 0; k < c.surface.n() && pick < 0; ++k)
      if (c.surface.a[k] == -1 &&
          std::binary_search(marked.begin(), marked.end(), c.ids[k]))
        pick = k;
    if (pick < 0)
      throw Error("not-contractible", "marked rays cannot be contracted in any order");
    order.push_back(c.ids[pick]);
    c.surface = blow_down(c.surface, pick);
    c.ids.erase(c.ids.begin() + pick);
  }
  MinimalModelBasis b = make_basis(x, order, q_ray);
  for (int k = 0; k < b.t(); ++k)
    b.label[k] = 1 + static_cast<int>(std::lower_bound(marked.begin(), marked.end(), b.ray_of_R[k]) -
                                      marked.begin());
  return b;
}

// ---------------------------------------------------------------------------
// Symbols such as 3H-2R1-R2, P+Q-R3, -(a+s) forms must be expanded by the caller.

inline Vec parse_symbols(const MinimalModelBasis &b, const std::string &text) {
  Vec c(b.shape.rank(), 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip();
  if (i == text.size())
    throw Error("parse", "empty divisor expression");
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    i64 coef = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        coef = coef * 10 + (text[i++] - '0');
    }
    skip();
    if (i >= text.size())
      throw Error("parse", "dangling coefficient in '" + text + "'");
    char sym = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i++])));
    int slot = -1;
    if (sym == 'H' && b.shape.model == Model::Plane)
      slot = 0;
    else if (sym == 'P' && b.shape.model == Model::Hirzebruch)
      slot = 0;
    else if (sym == 'Q' && b.shape.model == Model::Hirzebruch)
      slot = 1;
    else if (sym == 'R') {
      int lab = 0;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error("parse", "R needs an index");
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        lab = lab * 10 + (text[i++] - '0');
      slot = b.head() + b.index_of_label(lab);
    } else {
      throw Error("parse", std::string("unexpected symbol '") + sym + "' in '" + text + "'");
    }
    c[slot] += sign * coef;
    skip();
  }
  return c;
}

// Coordinates written with R entries in label order, converted to blow-up order.
inline Vec coords_from_labels(const MinimalModelBasis &b, const Vec &by_label) {
  Vec c(b.shape.rank(), 0);
  int h = b.head();
  std::copy(by_label.begin(), by_label.begin() + h, c.begin());
  for (int lab = 1; lab <= b.t(); ++lab)
    c[h + b.index_of_label(lab)] = by_label[h + lab - 1];
  return c;
}

inline Vec parse_divisor(const MinimalModelBasis &b, const std::string &text) {
  return b.to_d(parse_symbols(b, text));
}

inline std::string format_coords(const MinimalModelBasis &b, const Vec &c) {
  std::string s;
  auto term = [&](i64 k, const std::string &name) {
    if (k == 0)
      return;
    if (k < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    i64 m = k < 0 ? -k : k;
    if (m != 1)
      s += std::to_string(m);
    s += name;
  };
  if (b.shape.model == Model::Plane) {
    term(c[0], "H");
  } else {
    term(c[0], "P");
    term(c[1], "Q");
  }
  // print R terms by label
  std::vector<std::pair<int, i64>> rs;
  for (int k = 0; k < b.t(); ++k)
    rs.push_back({b.label[k], c[b.head() + k]});
  std::sort(rs.begin(), rs.end());
  for (auto &[lab, v] : rs)
    term(v, "R" + std::to_string(lab));
  return s.empty() ? "0" : s;
}

inline std::string format_divisor(const MinimalModelBasis &b, const Vec &d) {
  return format_coords(b, b.to_coords(d));
}

} // namespace toric
