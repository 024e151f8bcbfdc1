#pragma once

#include "toric/cohomology.hpp"

#include <unordered_set>

namespace toric {

// A_1..A_n as d-vectors on a surface (anchored) or as coordinates in an
// abstract lattice (abstract flavor allowed).
struct ToricSystem {
  std::vector<Vec> classes;
  bool anchored = true;

  int n() const { return static_cast<int>(classes.size()); }
  const Vec &operator[](int i) const { return classes[((i % n()) + n()) % n()]; }
  bool operator==(const ToricSystem &) const = default;
};

// Sum of A_start .. A_{start+len-1}, cyclic.
inline Vec interval_sum(const ToricSystem &s, int start, int len) {
  Vec v(s.classes[0].size(), 0);
  for (int k = 0; k < len; ++k)
    v = add(v, s[start + k]);
  return v;
}

// ---------------------------------------------------------------------------
// The two kinds of owner share this small interface.

struct SurfaceForm {
  const Surface &x;
  int ambient() const { return x.n(); }
  i64 prod(const Vec &a, const Vec &b) const { return intersect(x, a, b); }
  Vec antik() const { return anticanonical(x); }
  i64 euler(const Vec &a) const { return euler_char(x, a); }
};

struct LatticeForm {
  const IntersectionLattice &L;
  int ambient() const { return L.rank; }
  i64 prod(const Vec &a, const Vec &b) const { return L.form(a, b); }
  Vec antik() const { return L.antik(); }
  i64 euler(const Vec &a) const { return L.euler(a); }
};

struct Validation {
  bool ok = true;
  std::vector<std::string> violations;
};

template <class Form>
inline Validation validate_with(const Form &f, const ToricSystem &s, int rank) {
  Validation v;
  int n = s.n();
  auto fail = [&](std::string m) {
    v.ok = false;
    v.violations.push_back(std::move(m));
  };
  if (n != rank + 2)
    fail("length " + std::to_string(n) + " does not equal rank + 2 = " + std::to_string(rank + 2));
  for (auto &c : s.classes)
    if (static_cast<int>(c.size()) != f.ambient()) {
      fail("class has wrong length");
      return v;
    }
  if (n < 3) {
    fail("need at least three classes");
    return v;
  }
  i64 squares = 0;
  for (int i = 0; i < n; ++i) {
    squares += f.prod(s[i], s[i]);
    for (int j = i + 1; j < n; ++j) {
      i64 want = (j == i + 1 || (i == 0 && j == n - 1)) ? 1 : 0;
      i64 got = f.prod(s[i], s[j]);
      if (got != want)
        fail("A" + std::to_string(i + 1) + ".A" + std::to_string(j + 1) + " = " + std::to_string(got) +
             ", expected " + std::to_string(want));
    }
  }
  if (squares != 12 - 3 * n)
    fail("sum of squares " + std::to_string(squares) + " != 12 - 3n");
  if (s.anchored && interval_sum(s, 0, n) != f.antik())
    fail("classes do not sum to -K");
  return v;
}

inline Validation validate(const Surface &x, const ToricSystem &s) {
  for (auto &c : s.classes)
    if (!is_class(x, c))
      return {false, {"entry is not a divisor class: " + to_string(c)}};
  return validate_with(SurfaceForm{x}, s, x.n() - 2);
}

inline Validation validate(const IntersectionLattice &L, const ToricSystem &s) {
  if (s.anchored && !L.anticanonical)
    return {false, {"anchored system needs an anticanonical class"}};
  return validate_with(LatticeForm{L}, s, L.rank);
}

inline ToricSystem invariant_system(const Surface &x) {
  ToricSystem s;
  for (int i = 0; i < x.n(); ++i)
    s.classes.push_back(invariant_divisor(x, i));
  return s;
}

// A_i = E_{i+1} - E_i, A_n = -K - sum.
inline ToricSystem from_exceptional_sequence(const Vec &antik, const std::vector<Vec> &e, int rank) {
  int n = static_cast<int>(e.size());
  if (n != rank + 2)
    throw Error("arity", "sequence length must be rank + 2");
  ToricSystem s;
  Vec sum(antik.size(), 0);
  for (int i = 0; i + 1 < n; ++i) {
    s.classes.push_back(sub(e[i + 1], e[i]));
    sum = add(sum, s.classes.back());
  }
  s.classes.push_back(sub(antik, sum));
  return s;
}

inline ToricSystem from_exceptional_sequence(const Surface &x, const std::vector<Vec> &e) {
  return from_exceptional_sequence(anticanonical(x), e, x.n() - 2);
}

// ---------------------------------------------------------------------------
// Gale duality.

namespace detail {

// Rows of the returned 2 x n matrix span the left kernel of m (n x r), provided
// the image of m is saturated of rank r.
inline std::array<Vec, 2> left_kernel_pair(std::vector<Vec> m) {
  int n = static_cast<int>(m.size());
  int r = n ? static_cast<int>(m[0].size()) : 0;
  std::vector<Vec> u(n, Vec(n, 0));
  for (int i = 0; i < n; ++i)
    u[i][i] = 1;
  auto rowop = [&](int dst, int src, i64 k) { // row_dst -= k row_src
    for (int j = 0; j < r; ++j)
      m[dst][j] -= k * m[src][j];
    for (int j = 0; j < n; ++j)
      u[dst][j] -= k * u[src][j];
  };
  auto swap_rows = [&](int a, int b) {
    std::swap(m[a], m[b]);
    std::swap(u[a], u[b]);
  };
  int row = 0;
  for (int col = 0; col < r; ++col) {
    for (;;) {
      int piv = -1;
      for (int i = row; i < n; ++i)
        if (m[i][col] != 0 && (piv < 0 || std::abs(m[i][col]) < std::abs(m[piv][col])))
          piv = i;
      if (piv < 0)
        throw Error("not-a-toric-system", "pairing matrix is degenerate");
      swap_rows(row, piv);
      bool done = true;
      for (int i = row + 1; i < n; ++i)
        if (m[i][col] != 0) {
          rowop(i, row, m[i][col] / m[row][col]);
          if (m[i][col] != 0)
            done = false;
        }
      if (done)
        break;
    }
    if (std::abs(m[row][col]) != 1)
      throw Error("not-a-toric-system", "cokernel has torsion");
    ++row;
  }
  if (n - row != 2)
    throw Error("not-a-toric-system", "cokernel is not of rank two");
  return {u[n - 2], u[n - 1]};
}

template <class Form>
inline Surface gale_dual_with(const Form &f, const ToricSystem &s, const std::vector<Vec> &basis) {
  int n = s.n();
  std::vector<Vec> m(n, Vec(basis.size()));
  for (int i = 0; i < n; ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      m[i][j] = f.prod(s[i], basis[j]);
  auto [r0, r1] = left_kernel_pair(m);
  std::vector<Vec2> l(n);
  for (int i = 0; i < n; ++i)
    l[i] = {r0[i], r1[i]};
  i64 det = det2(l[0], l[1]);
  if (det != 1 && det != -1)
    throw Error("not-a-toric-system", "first two rays do not form a basis");
  // change coordinates so that l_1 = (1,0), l_2 = (0,1)
  Vec2 a = l[0], b = l[1];
  std::vector<Vec2> out(n);
  for (int i = 0; i < n; ++i) {
    // solve x*a + y*b = l_i
    i64 x = (l[i][0] * b[1] - l[i][1] * b[0]) / det;
    i64 y = (a[0] * l[i][1] - a[1] * l[i][0]) / det;
    out[i] = {x, y};
  }
  Surface y;
  try {
    y = from_rays(out);
  } catch (const Error &e) {
    throw Error("not-a-toric-system", e.what());
  }
  for (int i = 0; i < n; ++i)
    if (y.a[i] != f.prod(s[i], s[i]))
      throw Error("not-a-toric-system", "self-intersections do not match");
  return y;
}

} // namespace detail

inline Surface gale_dual(const Surface &x, const ToricSystem &s) {
  if (!validate(x, s).ok && !validate(x, ToricSystem{s.classes, false}).ok)
    throw Error("not-a-toric-system", "system fails the pairing axioms");
  std::vector<Vec> basis;
  for (int j = 2; j < x.n(); ++j)
    basis.push_back(invariant_divisor(x, j));
  return detail::gale_dual_with(SurfaceForm{x}, s, basis);
}

inline Surface gale_dual(const IntersectionLattice &L, const ToricSystem &s) {
  if (!validate(L, ToricSystem{s.classes, false}).ok)
    throw Error("not-a-toric-system", "system fails the pairing axioms");
  std::vector<Vec> basis;
  for (int j = 0; j < L.rank; ++j) {
    Vec e(L.rank, 0);
    e[j] = 1;
    basis.push_back(e);
  }
  return detail::gale_dual_with(LatticeForm{L}, s, basis);
}

// ---------------------------------------------------------------------------
// Blow-down of a system at an entry of square -1. On a surface the entry must
// be the class of a -1-ray r; the result lives on the contraction of r.

inline ToricSystem blow_down_classes(const ToricSystem &s, int i) {
  int n = s.n();
  ToricSystem out{{}, s.anchored};
  for (int k = 0; k < n; ++k) {
    if (k == i)
      continue;
    Vec v = s.classes[k];
    if (k == (i + n - 1) % n || k == (i + 1) % n)
      v = add(v, s.classes[i]);
    out.classes.push_back(v);
  }
  return out;
}

struct SurfaceSystem {
  Surface surface;
  ToricSystem system;
};

inline SurfaceSystem blow_down_system(const Surface &x, const ToricSystem &s, int i, int ray) {
  if (x.a[ray] != -1 || s.classes[i] != invariant_divisor(x, ray))
    throw Error("not-contractible", "entry is not the class of a -1-ray");
  ToricSystem t = blow_down_classes(s, i);
  for (auto &c : t.classes) {
    if (c[ray] != 0)
      throw Error("internal", "blown-down class is not orthogonal to the exceptional curve");
    c.erase(c.begin() + ray);
  }
  return {blow_down(x, ray), t};
}

// Any -1-ray matching entry i.
inline std::optional<int> matching_ray(const Surface &x, const Vec &d) {
  for (int r = 0; r < x.n(); ++r)
    if (x.a[r] == -1 && d[r] == -1 && d == invariant_divisor(x, r))
      return r;
  return std::nullopt;
}

inline ToricSystem blow_down_system(const IntersectionLattice &L, const ToricSystem &s, int i) {
  if (L.form(s.classes[i], s.classes[i]) != -1)
    throw Error("not-contractible", "entry does not have square -1");
  return blow_down_classes(s, i);
}

// ---------------------------------------------------------------------------
// Exceptionality.

enum class Strength { Exceptional, Strong, CyclicStrong };

// Every interval inside [n-1] (or every proper cyclic interval) satisfies the predicate.
inline bool is_exceptional_kind(const CohomologyCache &cc, const ToricSystem &s, Strength k) {
  int n = s.n();
  if (k == Strength::CyclicStrong) {
    for (int st = 0; st < n; ++st) {
      Vec v(s.classes[0].size(), 0);
      for (int len = 1; len < n; ++len) {
        v = add(v, s[st + len - 1]);
        if (!is_strongly_left_orthogonal(cc, v))
          return false;
      }
    }
    return true;
  }
  for (int st = 0; st + 1 < n; ++st) {
    Vec v(s.classes[0].size(), 0);
    for (int e = st; e + 1 < n; ++e) {
      v = add(v, s.classes[e]);
      bool ok = k == Strength::Exceptional ? is_left_orthogonal(cc, v) : is_strongly_left_orthogonal(cc, v);
      if (!ok)
        return false;
    }
  }
  return true;
}

inline void require_valid(const Surface &x, const ToricSystem &s) {
  auto v = validate(x, s);
  if (!v.ok)
    throw Error("invalid-system", v.violations.front());
}

inline bool is_exceptional(const CohomologyCache &cc, const ToricSystem &s) {
  require_valid(cc.surface(), s);
  return is_exceptional_kind(cc, s, Strength::Exceptional);
}
inline bool is_strongly_exceptional(const CohomologyCache &cc, const ToricSystem &s) {
  require_valid(cc.surface(), s);
  return is_exceptional_kind(cc, s, Strength::Strong);
}
inline bool is_cyclic_strongly_exceptional(const CohomologyCache &cc, const ToricSystem &s) {
  require_valid(cc.surface(), s);
  return is_exceptional_kind(cc, s, Strength::CyclicStrong);
}
inline bool is_exceptional(const Surface &x, const ToricSystem &s) {
  CohomologyCache cc(x);
  return is_exceptional(cc, s);
}
inline bool is_strongly_exceptional(const Surface &x, const ToricSystem &s) {
  CohomologyCache cc(x);
  return is_strongly_exceptional(cc, s);
}
inline bool is_cyclic_strongly_exceptional(const Surface &x, const ToricSystem &s) {
  CohomologyCache cc(x);
  return is_cyclic_strongly_exceptional(cc, s);
}

// Axioms plus chi(A_I) >= 0 and chi(-A_I) = 0 on every proper cyclic interval.
inline bool numeric_cyclic_strong_check(const IntersectionLattice &L, const ToricSystem &s) {
  if (!validate(L, s).ok)
    return false;
  int n = s.n();
  for (int st = 0; st < n; ++st) {
    Vec v(L.rank, 0);
    for (int len = 1; len < n; ++len) {
      v = add(v, s[st + len - 1]);
      if (L.euler(v) < 0 || L.euler(neg(v)) != 0)
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reordering moves.

// A_{i-1} + A_i, -A_i, A_{i+1} + A_i (cyclic neighbours).
inline ToricSystem elementary_move(const ToricSystem &s, int i) {
  int n = s.n();
  ToricSystem t = s;
  int p = (i + n - 1) % n, q = (i + 1) % n;
  t.classes[p] = add(s.classes[p], s.classes[i]);
  t.classes[q] = add(s.classes[q], s.classes[i]);
  t.classes[i] = neg(s.classes[i]);
  return t;
}

inline ToricSystem rotate(const ToricSystem &s, int k) {
  ToricSystem t = s;
  for (int i = 0; i < s.n(); ++i)
    t.classes[i] = s[i + k];
  return t;
}

// A_{n-1}, ..., A_1, A_n
inline ToricSystem reverse_strong(const ToricSystem &s) {
  ToricSystem t = s;
  int n = s.n();
  for (int i = 0; i + 1 < n; ++i)
    t.classes[i] = s.classes[n - 2 - i];
  return t;
}

// A_n, ..., A_1
inline ToricSystem reverse_cyclic(const ToricSystem &s) {
  ToricSystem t = s;
  std::reverse(t.classes.begin(), t.classes.end());
  return t;
}

namespace detail {

inline bool normal_entry(const CohomologyCache &cc, const MinimalModelBasis &b, const Vec &d) {
  Vec d0 = b.project_d(d, 0);
  return is_zero(d0) || is_pre_left_orthogonal(cc, b, d0, true);
}

inline int first_bad(const CohomologyCache &cc, const MinimalModelBasis &b, const ToricSystem &s, int limit) {
  for (int l = 0; l < limit; ++l)
    if (!normal_entry(cc, b, s.classes[l]))
      return l;
  return -1;
}

// The move-left procedure on positions 0..n-2.
inline std::optional<ToricSystem> normal_form_linear(const CohomologyCache &cc, const MinimalModelBasis &b,
                                                     ToricSystem s, int limit) {
  int n = s.n();
  for (int guard = 0; guard < 4 * n * n; ++guard) {
    int l = first_bad(cc, b, s, limit);
    if (l < 0)
      return s;
    int i = l;
    for (;;) {
      if (cc.get(s.classes[i]).chi != 0)
        return std::nullopt;
      s = elementary_move(s, i);
      if (i == 0)
        break;
      if (normal_entry(cc, b, s.classes[i - 1]))
        break;
      --i;
    }
  }
  return std::nullopt;
}

} // namespace detail

inline bool is_normal_form(const CohomologyCache &cc, const MinimalModelBasis &b, const ToricSystem &s,
                           bool cyclic) {
  return detail::first_bad(cc, b, s, cyclic ? s.n() : s.n() - 1) < 0;
}

// Reorder a (cyclic) strongly exceptional system into normal form with respect to b.
inline ToricSystem normal_form(const CohomologyCache &cc, const MinimalModelBasis &b, const ToricSystem &s,
                               bool cyclic = false) {
  if (!(cyclic ? is_cyclic_strongly_exceptional(cc, s) : is_strongly_exceptional(cc, s)))
    throw Error("precondition", "system is not strongly exceptional");
  int n = s.n();
  if (!cyclic) {
    auto r = detail::normal_form_linear(cc, b, s, n - 1);
    if (r && is_strongly_exceptional(cc, *r))
      return *r;
    throw Error("internal", "normal form procedure did not terminate");
  }
  for (int k = 0; k < n; ++k) {
    auto r = detail::normal_form_linear(cc, b, rotate(s, k), n - 1);
    if (r && is_normal_form(cc, b, *r, true) && is_cyclic_strongly_exceptional(cc, *r))
      return *r;
  }
  throw Error("internal", "no rotation reaches a cyclic normal form");
}

// ---------------------------------------------------------------------------
// Admissibility: no cyclic interval sum R_i - sum_S R_j with R_i >= R_j for some j in S.

inline bool is_vertical_violation(const MinimalModelBasis &b, const Vec &c) {
  int h = b.head();
  for (int k = 0; k < h; ++k)
    if (c[k] != 0)
      return false;
  int top = -1;
  for (int k = 0; k < b.t(); ++k) {
    i64 g = c[h + k];
    if (g == 1) {
      if (top >= 0)
        return false;
      top = k;
    } else if (g != 0 && g != -1) {
      return false;
    }
  }
  if (top < 0)
    return false;
  for (int k = 0; k < b.t(); ++k)
    if (c[h + k] == -1 && b.tree.geq[top][k])
      return true;
  return false;
}

inline bool is_admissible(const MinimalModelBasis &b, const ToricSystem &s) {
  int n = s.n();
  std::vector<Vec> coords;
  for (auto &d : s.classes)
    coords.push_back(b.to_coords(d));
  for (int st = 0; st < n; ++st) {
    Vec v(b.shape.rank(), 0);
    for (int len = 1; len < n; ++len) {
      v = add(v, coords[(st + len - 1) % n]);
      if (is_vertical_violation(b, v))
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// De-augmentation.

struct DeAugmentation {
  Surface surface;
  ToricSystem system;
  int slot = 0;       // position of the removed entry
  int ray = 0;        // contracted ray on the larger surface
};

// One step: an entry equal to a -1 prime divisor R; neighbours are A_s - R, A_{s+1} - R.
inline std::optional<DeAugmentation> de_augment(const Surface &x, const ToricSystem &s) {
  if (x.n() <= 3)
    return std::nullopt;
  for (int i = 0; i < s.n(); ++i)
    if (auto r = matching_ray(x, s.classes[i])) {
      auto bd = blow_down_system(x, s, i, *r);
      return DeAugmentation{bd.surface, bd.system, i, *r};
    }
  return std::nullopt;
}

struct ChainStep {
  enum Kind { Reorder, Remove } kind;
  int index;    // entry moved or removed
  int ray = -1; // original id of the contracted ray
};

struct DeAugmentChain {
  bool found = false;
  std::vector<ChainStep> steps;
  Surface base;
  ToricSystem standard;
  std::size_t nodes = 0;
};

namespace detail {

inline bool is_standard_terminal(const Surface &x, const ToricSystem &s) {
  if (x.n() == 3)
    return std::all_of(s.classes.begin(), s.classes.end(), [](const Vec &v) { return v == Vec{1, 1, 1}; });
  if (x.n() != 4)
    return false;
  CohomologyCache cc(x);
  return is_exceptional_kind(cc, s, Strength::Exceptional);
}

struct StateHash {
  std::size_t operator()(const std::pair<std::vector<int>, std::vector<Vec>> &k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](i64 v) { h = (h ^ static_cast<std::size_t>(v + 0x9e3779b9)) * 1099511628211ull; };
    for (int i : k.first)
      mix(i);
    for (auto &v : k.second)
      for (i64 e : v)
        mix(e);
    return h;
  }
};

} // namespace detail

// Search for reorderings and removals reaching a standard system on P2 or F_a.
// Reorder moves are the exchanges allowed for entries with vanishing cohomology.
inline DeAugmentChain de_augment_chain(const Surface &x, const ToricSystem &s, std::size_t node_cap = 200000) {
  DeAugmentChain out;
  std::unordered_set<std::pair<std::vector<int>, std::vector<Vec>>, detail::StateHash> seen;
  std::vector<ChainStep> path;
  std::vector<int> ids0(x.n());
  std::iota(ids0.begin(), ids0.end(), 0);
  std::function<bool(const Surface &, const ToricSystem &, const std::vector<int> &)> rec =
      [&](const Surface &y, const ToricSystem &t, const std::vector<int> &ids) -> bool {
    if (++out.nodes > node_cap)
      return false;
    if (!seen.insert({ids, t.classes}).second)
      return false;
    if (y.n() <= 4 && detail::is_standard_terminal(y, t)) {
      out.found = true;
      out.steps = path;
      out.base = y;
      out.standard = t;
      return true;
    }
    if (y.n() > 3)
      for (int i = 0; i < t.n(); ++i)
        if (auto r = matching_ray(y, t.classes[i])) {
          auto bd = blow_down_system(y, t, i, *r);
          std::vector<int> nid = ids;
          nid.erase(nid.begin() + *r);
          path.push_back({ChainStep::Remove, i, ids[*r]});
          if (rec(bd.surface, bd.system, nid))
            return true;
          path.pop_back();
        }
    CohomologyCache cc(y);
    for (int i = 0; i < t.n(); ++i) {
      const Vec &a = t.classes[i];
      if (cc.get(a).chi != 0 || !is_left_orthogonal(cc, a) || !is_left_orthogonal(cc, neg(a)))
        continue;
      path.push_back({ChainStep::Reorder, i});
      if (rec(y, elementary_move(t, i), ids))
        return true;
      path.pop_back();
    }
    return false;
  };
  rec(x, s, ids0);
  return out;
}

} // namespace toric
