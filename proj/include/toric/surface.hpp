#pragma once

#include "toric/arith.hpp"
#include "toric/pic_lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace toric {

struct Surface {
  std::vector<Vec2> rays;
  Vec a;

  int n() const { return static_cast<int>(rays.size()); }
  int next(int i) const { return (i + 1) % n(); }
  int prev(int i) const { return (i + n() - 1) % n(); }
  bool operator==(const Surface &) const = default;
};

namespace detail {

// Number of consecutive cones (l_i, l_{i+1}] containing the direction (1,0).
inline int winding(const std::vector<Vec2> &r) {
  const Vec2 u{1, 0};
  int w = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Vec2 &p = r[i], &q = r[(i + 1) % r.size()];
    if (det2(p, u) > 0 && det2(u, q) >= 0)
      ++w;
  }
  return w;
}

} // namespace detail

inline Surface from_rays(std::vector<Vec2> rays) {
  int n = static_cast<int>(rays.size());
  if (n < 3)
    throw Error("invalid-fan", "need at least three rays");
  for (auto &l : rays)
    if (gcd_abs(l[0], l[1]) != 1)
      throw Error("invalid-fan", "ray is not primitive");
  for (int i = 0; i < n; ++i)
    if (det2(rays[i], rays[(i + 1) % n]) != 1)
      throw Error("invalid-fan", "consecutive rays do not form a positive basis");
  if (detail::winding(rays) != 1)
    throw Error("invalid-fan", "ray cycle does not wind exactly once");
  Surface s;
  s.a.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 &l = rays[i], &lp = rays[(i + n - 1) % n], &ln = rays[(i + 1) % n];
    Vec2 sum{lp[0] + ln[0], lp[1] + ln[1]};
    s.a[i] = l[0] != 0 ? -sum[0] / l[0] : -sum[1] / l[1];
  }
  s.rays = std::move(rays);
  if (total(s.a) != 12 - 3 * n)
    throw Error("invalid-fan", "self-intersections violate the sum rule");
  return s;
}

inline Surface from_a_sequence(const Vec &a) {
  int n = static_cast<int>(a.size());
  if (n < 3)
    throw Error("invalid-fan", "need at least three rays");
  if (total(a) != 12 - 3 * n)
    throw Error("invalid-fan", "sum of self-intersections must be 12 - 3n");
  std::vector<Vec2> r(n);
  r[0] = {1, 0};
  r[1] = {0, 1};
  for (int i = 1; i + 1 < n; ++i)
    r[i + 1] = {-r[i - 1][0] - a[i] * r[i][0], -r[i - 1][1] - a[i] * r[i][1]};
  Vec2 c0{-r[n - 2][0] - a[n - 1] * r[n - 1][0], -r[n - 2][1] - a[n - 1] * r[n - 1][1]};
  Vec2 c1{-r[n - 1][0] - a[0] * r[0][0], -r[n - 1][1] - a[0] * r[0][1]};
  if (c0 != r[0] || c1 != r[1])
    throw Error("invalid-fan", "ray recurrence does not close up");
  if (detail::winding(r) != 1)
    throw Error("invalid-fan", "ray cycle does not wind exactly once");
  Surface s;
  s.rays = std::move(r);
  s.a = a;
  return s;
}

// Subdivide the cone (l_i, l_{i+1}); the new ray sits at index i+1.
inline Surface blow_up(const Surface &x, int i) {
  int n = x.n();
  if (i < 0 || i >= n)
    throw Error("index", "cone index out of range");
  int j = x.next(i);
  Surface s = x;
  Vec2 r{x.rays[i][0] + x.rays[j][0], x.rays[i][1] + x.rays[j][1]};
  s.a[i] -= 1;
  s.a[j] -= 1;
  s.rays.insert(s.rays.begin() + i + 1, r);
  s.a.insert(s.a.begin() + i + 1, -1);
  return s;
}

inline Surface blow_down(const Surface &x, int i) {
  if (i < 0 || i >= x.n())
    throw Error("index", "ray index out of range");
  if (x.a[i] != -1)
    throw Error("not-contractible", "ray " + std::to_string(i) + " has self-intersection " +
                                        std::to_string(x.a[i]));
  if (x.n() <= 3)
    throw Error("not-contractible", "cannot contract a three-ray fan");
  Surface s = x;
  s.a[x.prev(i)] += 1;
  s.a[x.next(i)] += 1;
  s.rays.erase(s.rays.begin() + i);
  s.a.erase(s.a.begin() + i);
  return s;
}

// Lexicographic minimum over rotations and reflections of the a-sequence.
inline Vec canonical_form(const Vec &a) {
  int n = static_cast<int>(a.size());
  Vec best = a, cur(n);
  for (int dir = 0; dir < 2; ++dir)
    for (int s = 0; s < n; ++s) {
      for (int k = 0; k < n; ++k)
        cur[k] = dir == 0 ? a[(s + k) % n] : a[((s - k) % n + n) % n];
      if (cur < best)
        best = cur;
    }
  return best;
}

inline Vec canonical_form(const Surface &x) { return canonical_form(x.a); }

inline bool isomorphic(const Surface &x, const Surface &y) {
  return x.n() == y.n() && canonical_form(x) == canonical_form(y);
}

// All canonical a-sequences of length n with entries in [a_min, a_max].
inline std::vector<Vec> enumerate_surfaces(int n, i64 a_min, i64 a_max) {
  if (a_min > a_max)
    throw Error("bounds", "a_min > a_max");
  std::vector<Vec> out;
  if (n < 3)
    return out;
  const i64 target = 12 - 3 * n;
  const Vec2 u{1, 0};
  Vec a(n);
  std::vector<Vec2> r(n + 1);
  r[0] = {1, 0};
  r[1] = {0, 1};
  // a[i] for i >= 1 produces r[i+1]; a[0] is forced by the sum and closes the cycle.
  // The cone (l_0, l_1] never contains (1,0).
  std::function<void(int, i64, int)> rec = [&](int i, i64 sum, int cross) {
    if (i == n) {
      i64 v = target - sum;
      if (v < a_min || v > a_max || r[n] != r[0])
        return;
      Vec2 c1{-r[n - 1][0] - v * r[0][0], -r[n - 1][1] - v * r[0][1]};
      if (c1 != r[1])
        return;
      if (det2(r[n - 1], u) > 0 && det2(u, r[0]) >= 0)
        ++cross;
      if (cross != 1)
        return;
      a[0] = v;
      if (canonical_form(a) == a)
        out.push_back(a);
      return;
    }
    i64 rest = n - i; // positions i+1..n-1 and a[0]
    for (i64 v = a_min; v <= a_max; ++v) {
      i64 s = sum + v;
      if (s + rest * a_min > target || s + rest * a_max < target)
        continue;
      a[i] = v;
      r[i + 1] = {-r[i - 1][0] - v * r[i][0], -r[i - 1][1] - v * r[i][1]};
      int c = cross;
      if (i + 1 < n && det2(r[i], u) > 0 && det2(u, r[i + 1]) >= 0)
        ++c;
      if (c > 1)
        continue;
      rec(i + 1, s, c);
    }
  };
  rec(1, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Divisor classes on a surface are stored as d-vectors d_i = D.D_i.

inline Vec invariant_divisor(const Surface &x, int i) {
  Vec d(x.n(), 0);
  d[i] = x.a[i];
  d[x.prev(i)] += 1;
  d[x.next(i)] += 1;
  return d;
}

inline Vec anticanonical(const Surface &x) {
  Vec d(x.n());
  for (int i = 0; i < x.n(); ++i)
    d[i] = x.a[i] + 2;
  return d;
}

// d_i = c_{i-1} + a_i c_i + c_{i+1}
inline Vec d_from_c(const Surface &x, const Vec &c) {
  int n = x.n();
  Vec d(n);
  for (int i = 0; i < n; ++i)
    d[i] = c[x.prev(i)] + x.a[i] * c[i] + c[x.next(i)];
  return d;
}

inline bool is_class(const Surface &x, const Vec &d) {
  if (static_cast<int>(d.size()) != x.n())
    return false;
  i64 sx = 0, sy = 0;
  for (int i = 0; i < x.n(); ++i) {
    sx += d[i] * x.rays[i][0];
    sy += d[i] * x.rays[i][1];
  }
  return sx == 0 && sy == 0;
}

// The torus-invariant representative with c_pin = c_{pin+1} = 0.
inline Vec c_representative(const Surface &x, const Vec &d, int pin = 0) {
  int n = x.n();
  if (static_cast<int>(d.size()) != n)
    throw Error("shape", "d-vector has wrong length");
  Vec c(n, 0);
  int i0 = pin % n, i1 = x.next(i0);
  i64 cm = 0, cc = 0; // c at i0, i1
  int cur = i1;
  for (int k = 0; k < n - 2; ++k) {
    int nx = x.next(cur);
    i64 v = d[cur] - cm - x.a[cur] * cc;
    c[nx] = v;
    cm = cc;
    cc = v;
    cur = nx;
  }
  if (d_from_c(x, c) != d)
    throw Error("not-a-class", "d-vector does not satisfy sum d_i l_i = 0");
  return c;
}

inline i64 intersect(const Surface &x, const Vec &d, const Vec &e) {
  return dot(d, c_representative(x, e));
}

inline i64 self_intersection(const Surface &x, const Vec &d) { return intersect(x, d, d); }

// chi(D) = 1 + (D^2 + (-K).D)/2 with (-K).D = sum d_i.
inline i64 euler_char(const Surface &x, const Vec &d) {
  i64 twice = self_intersection(x, d) + total(d);
  return 1 + twice / 2;
}

inline bool is_nef(const Surface &, const Vec &d) {
  return std::all_of(d.begin(), d.end(), [](i64 v) { return v >= 0; });
}

enum class AnticanonicalStatus { Ample, Nef, NotNef };

inline AnticanonicalStatus anticanonical_status(const Surface &x) {
  i64 m = *std::min_element(x.a.begin(), x.a.end());
  if (m >= -1)
    return AnticanonicalStatus::Ample;
  if (m >= -2)
    return AnticanonicalStatus::Nef;
  return AnticanonicalStatus::NotNef;
}

inline const char *to_string(AnticanonicalStatus s) {
  switch (s) {
  case AnticanonicalStatus::Ample:
    return "ample";
  case AnticanonicalStatus::Nef:
    return "nef";
  default:
    return "not-nef";
  }
}

// Picard lattice in the coordinates c_2..c_{n-1} of the representative pinned at (0,1).
inline IntersectionLattice surface_lattice(const Surface &x) {
  int n = x.n(), r = n - 2;
  std::vector<Vec> g(r, Vec(r, 0));
  for (int i = 0; i < r; ++i) {
    Vec di = invariant_divisor(x, i + 2);
    for (int j = 0; j < r; ++j)
      g[i][j] = di[j + 2];
  }
  Vec ck = c_representative(x, anticanonical(x));
  Vec k(ck.begin() + 2, ck.end());
  return IntersectionLattice(std::move(g), k);
}

inline Vec lattice_coords(const Surface &x, const Vec &d) {
  Vec c = c_representative(x, d);
  return Vec(c.begin() + 2, c.end());
}

inline Vec d_from_lattice_coords(const Surface &x, const Vec &coords) {
  Vec c(x.n(), 0);
  std::copy(coords.begin(), coords.end(), c.begin() + 2);
  return d_from_c(x, c);
}

// ---------------------------------------------------------------------------
// Contractions. Rays keep their index in the original surface ("ids").

struct Contracted {
  Surface surface;
  std::vector<int> ids; // ids[k] = original index of ray k
};

inline Contracted contract(const Surface &x, const std::vector<int> &order) {
  Contracted c{x, {}};
  for (int i = 0; i < x.n(); ++i)
    c.ids.push_back(i);
  for (int id : order) {
    auto it = std::find(c.ids.begin(), c.ids.end(), id);
    if (it == c.ids.end())
      throw Error("index", "ray " + std::to_string(id) + " already contracted");
    int k = static_cast<int>(it - c.ids.begin());
    c.surface = blow_down(c.surface, k);
    c.ids.erase(it);
  }
  return c;
}

namespace detail {

inline bool non_adjacent(const Surface &x, const std::vector<int> &set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[j] == x.next(set[i]) || set[i] == x.next(set[j]))
        return false;
  return true;
}

// Subsets of the -1 rays of x with given size (or any size when size < 0),
// pairwise non-adjacent.
inline void round_subsets(const Surface &x, int size,
                          const std::function<bool(const std::vector<int> &)> &f) {
  std::vector<int> minus;
  for (int i = 0; i < x.n(); ++i)
    if (x.a[i] == -1)
      minus.push_back(i);
  std::vector<int> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == minus.size()) {
      if ((size < 0 || static_cast<int>(cur.size()) == size) && detail::non_adjacent(x, cur))
        return f(cur);
      return false;
    }
    if (size >= 0 && static_cast<int>(cur.size()) > size)
      return false;
    int r = minus[k];
    bool clash = !cur.empty() && (cur.back() == x.prev(r) || (cur.front() == x.next(r)));
    if (!clash) {
      cur.push_back(r);
      if (rec(k + 1))
        return true;
      cur.pop_back();
    }
    return rec(k + 1);
  };
  rec(0);
}

} // namespace detail

struct TwoStepWitness {
  std::vector<int> first;  // contracted first (created by the second blow-up round)
  std::vector<int> second; // contracted afterwards
};

// Two simultaneous contraction rounds down to four rays.
inline std::optional<TwoStepWitness> two_step_blowdown(const Surface &x) {
  if (x.n() == 3)
    throw Error("plane-special", "the projective plane is handled separately");
  if (x.n() == 4)
    return TwoStepWitness{};
  std::optional<TwoStepWitness> w;
  detail::round_subsets(x, -1, [&](const std::vector<int> &s1) {
    Contracted c = contract(x, s1);
    int need = c.surface.n() - 4;
    if (need < 0)
      return false;
    if (need == 0) {
      w = TwoStepWitness{{}, s1};
      return true;
    }
    bool ok = false;
    detail::round_subsets(c.surface, need, [&](const std::vector<int> &s2) {
      TwoStepWitness t{s1, {}};
      for (int k : s2)
        t.second.push_back(c.ids[k]);
      w = t;
      ok = true;
      return true;
    });
    return ok;
  });
  return w;
}

// All maximal contraction sequences ending at the plane or a Hirzebruch surface.
// Commuting reorderings are identified: one sequence per contracted set, and an
// F_1 endpoint is reported both as such and continued to the plane.
inline std::vector<std::vector<int>> minimal_model_program(const Surface &x, bool only_one = false) {
  std::vector<std::vector<int>> out;
  std::set<std::vector<bool>> seen;
  std::vector<int> seq;
  std::function<bool(const Contracted &)> rec = [&](const Contracted &c) -> bool {
    std::vector<bool> mask(x.n(), false);
    for (int id : seq)
      mask[id] = true;
    if (!seen.insert(mask).second)
      return false;
    if (c.surface.n() <= 4) {
      out.push_back(seq);
      if (only_one)
        return true;
    }
    if (c.surface.n() == 3)
      return false;
    for (int k = 0; k < c.surface.n(); ++k) {
      if (c.surface.a[k] != -1)
        continue;
      Contracted d{blow_down(c.surface, k), c.ids};
      seq.push_back(c.ids[k]);
      d.ids.erase(d.ids.begin() + k);
      if (rec(d))
        return true;
      seq.pop_back();
    }
    return false;
  };
  Contracted c0{x, {}};
  for (int i = 0; i < x.n(); ++i)
    c0.ids.push_back(i);
  rec(c0);
  return out;
}

// ---------------------------------------------------------------------------
// Blow-up histories and the order on exceptional classes.

struct BlowupHistory {
  Surface base;
  std::vector<int> steps; // cone index on the current surface at each step
};

struct Replay {
  Surface surface;
  std::vector<int> created; // created[k] = final index of the ray made by step k
  std::vector<std::array<int, 2>> cone; // final indices of the boundary rays of step k
};

inline Replay replay(const BlowupHistory &h) {
  Surface s = h.base;
  std::vector<int> ids; // ids[pos] = stable id; base rays get -1 - index
  for (int i = 0; i < s.n(); ++i)
    ids.push_back(-1 - i);
  std::vector<std::array<int, 2>> bounds;
  for (std::size_t k = 0; k < h.steps.size(); ++k) {
    int i = h.steps[k];
    if (i < 0 || i >= s.n())
      throw Error("index", "history step out of range");
    int j = s.next(i);
    bounds.push_back({ids[i], ids[j]});
    s = blow_up(s, i);
    ids.insert(ids.begin() + i + 1, static_cast<int>(k));
  }
  Replay r{s, std::vector<int>(h.steps.size()), {}};
  auto pos = [&](int id) { return static_cast<int>(std::find(ids.begin(), ids.end(), id) - ids.begin()); };
  for (std::size_t k = 0; k < h.steps.size(); ++k) {
    r.created[k] = pos(static_cast<int>(k));
    r.cone.push_back({pos(bounds[k][0]), pos(bounds[k][1])});
  }
  return r;
}

// geq[j][i] holds R_j >= R_i; cover[j] lists the i covered by j.
struct BlowupTree {
  std::vector<std::vector<int>> cover;
  std::vector<std::vector<bool>> geq;

  int size() const { return static_cast<int>(geq.size()); }
  bool comparable(int i, int j) const { return geq[i][j] || geq[j][i]; }
};

inline BlowupTree tree_from_cover(std::vector<std::vector<int>> cover) {
  int t = static_cast<int>(cover.size());
  BlowupTree b{std::move(cover), std::vector<std::vector<bool>>(t, std::vector<bool>(t, false))};
  for (int j = 0; j < t; ++j) {
    b.geq[j][j] = true;
    for (int i : b.cover[j])
      b.geq[j][i] = true;
  }
  for (int k = 0; k < t; ++k)
    for (int i = 0; i < t; ++i)
      if (b.geq[i][k])
        for (int j = 0; j < t; ++j)
          if (b.geq[k][j])
            b.geq[i][j] = true;
  return b;
}

inline BlowupTree partial_order(const BlowupHistory &h) {
  Replay r = replay(h);
  int t = static_cast<int>(h.steps.size());
  std::vector<std::vector<int>> cover(t);
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < j; ++i)
      if (r.cone[j][0] == r.created[i] || r.cone[j][1] == r.created[i])
        cover[j].push_back(i);
  return tree_from_cover(std::move(cover));
}

inline std::string a_string(const Vec &a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(a[i]);
  }
  return s;
}

} // namespace toric
