#pragma once

#include "toric/basis.hpp"

#include <limits>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

namespace toric {

// ---------------------------------------------------------------------------
// Lattice points of {m : <l_i, m> >= -c_i - shift}. shift = -1 gives the
// strict chamber used for interiors.

namespace detail {

struct Column {
  i64 x, lo, hi;
};

template <class F>
inline void scan_chamber(const Surface &s, const Vec &c, i64 shift, F &&f) {
  int n = s.n();
  const auto &l = s.rays;
  bool any = false;
  i64 xmin = 0, xmax = 0;
  // rational vertices of every feasible pair intersection bound the x-range
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      i64 det = det2(l[i], l[j]);
      if (det == 0)
        continue;
      i64 bi = -c[i] - shift, bj = -c[j] - shift;
      // l_i.m = bi, l_j.m = bj  =>  m = (bi*l_j[1] - bj*l_i[1], bj*l_i[0] - bi*l_j[0]) / det
      i64 nx = bi * l[j][1] - bj * l[i][1];
      i64 ny = bj * l[i][0] - bi * l[j][0];
      if (det < 0) {
        nx = -nx;
        ny = -ny;
        det = -det;
      }
      bool ok = true;
      for (int k = 0; k < n && ok; ++k)
        ok = l[k][0] * nx + l[k][1] * ny >= (-c[k] - shift) * det;
      if (!ok)
        continue;
      i64 lo = floor_div(nx, det), hi = ceil_div(nx, det);
      if (!any) {
        xmin = lo;
        xmax = hi;
        any = true;
      } else {
        xmin = std::min(xmin, lo);
        xmax = std::max(xmax, hi);
      }
    }
  if (!any)
    return;
  for (i64 x = xmin; x <= xmax; ++x) {
    i64 lo = std::numeric_limits<i64>::min(), hi = std::numeric_limits<i64>::max();
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      i64 rhs = -c[k] - shift - l[k][0] * x; // l_k[1] * y >= rhs
      if (l[k][1] > 0)
        lo = std::max(lo, ceil_div(rhs, l[k][1]));
      else if (l[k][1] < 0)
        hi = std::min(hi, floor_div(rhs, l[k][1]));
      else
        ok = rhs <= 0;
    }
    if (ok && lo <= hi)
      f(Column{x, lo, hi});
  }
}

} // namespace detail

inline i64 count_chamber(const Surface &s, const Vec &c, i64 shift = 0) {
  i64 total = 0;
  detail::scan_chamber(s, c, shift, [&](const detail::Column &col) { total += col.hi - col.lo + 1; });
  return total;
}

inline std::vector<Vec2> chamber_points(const Surface &s, const Vec &c, i64 shift = 0) {
  std::vector<Vec2> pts;
  detail::scan_chamber(s, c, shift, [&](const detail::Column &col) {
    for (i64 y = col.lo; y <= col.hi; ++y)
      pts.push_back({col.x, y});
  });
  return pts;
}

// Same as chamber_points but restricted to a subset of rays.
inline std::vector<Vec2> chamber_points(const Surface &s, const Vec &c, const std::vector<int> &rays,
                                        i64 shift) {
  Surface sub;
  Vec cs;
  for (int i : rays) {
    sub.rays.push_back(s.rays[i]);
    cs.push_back(c[i]);
  }
  return chamber_points(sub, cs, shift);
}

// ---------------------------------------------------------------------------

struct Cohomology {
  i64 h0 = 0, h1 = 0, h2 = 0, chi = 0;
  bool operator==(const Cohomology &) const = default;
};

struct CohomologyReport {
  Cohomology h;
  Vec c;                        // representative used for G_D
  std::vector<Vec2> sections;   // G_D
  std::vector<Vec2> interior;   // G_D°, counts h^2(-D)
};

inline Cohomology cohomology_numbers(const Surface &x, const Vec &d) {
  Vec c = c_representative(x, d);
  Cohomology r;
  r.chi = euler_char(x, d);
  r.h0 = count_chamber(x, c);
  Vec ck(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    ck[i] = -c[i] - 1; // K - D
  r.h2 = count_chamber(x, ck);
  r.h1 = r.h0 + r.h2 - r.chi;
  if (r.h1 < 0)
    throw Error("internal", "negative h1 for " + to_string(d));
  return r;
}

inline CohomologyReport cohomology(const Surface &x, const Vec &d) {
  CohomologyReport r;
  r.h = cohomology_numbers(x, d);
  r.c = c_representative(x, d);
  r.sections = chamber_points(x, r.c);
  r.interior = chamber_points(x, r.c, -1);
  return r;
}

// Memo of cohomology numbers keyed by d-vector; safe for concurrent use.
class CohomologyCache {
public:
  explicit CohomologyCache(Surface x) : x_(std::move(x)) {}

  const Surface &surface() const { return x_; }

  Cohomology get(const Vec &d) const {
    {
      std::shared_lock lk(mu_);
      auto it = map_.find(d);
      if (it != map_.end())
        return it->second;
    }
    Cohomology h = cohomology_numbers(x_, d);
    std::unique_lock lk(mu_);
    map_.emplace(d, h);
    return h;
  }

  std::size_t size() const {
    std::shared_lock lk(mu_);
    return map_.size();
  }

private:
  struct Hash {
    std::size_t operator()(const Vec &v) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (i64 e : v)
        h = (h ^ static_cast<std::size_t>(e + 0x9e3779b9)) * 1099511628211ull;
      return h;
    }
  };
  Surface x_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Vec, Cohomology, Hash> map_;
};

// h^i(-D) = 0 for all i.
inline bool is_left_orthogonal(const CohomologyCache &cc, const Vec &d) {
  Cohomology m = cc.get(neg(d));
  return m.chi == 0 && m.h0 == 0 && m.h1 == 0 && m.h2 == 0;
}

// Left-orthogonal and h^1(D) = h^2(D) = 0.
inline bool is_strongly_left_orthogonal(const CohomologyCache &cc, const Vec &d) {
  if (!is_left_orthogonal(cc, d))
    return false;
  Cohomology p = cc.get(d);
  return p.h1 == 0 && p.h2 == 0;
}

inline bool is_left_orthogonal(const Surface &x, const Vec &d) {
  CohomologyCache cc(x);
  return is_left_orthogonal(cc, d);
}

inline bool is_strongly_left_orthogonal(const Surface &x, const Vec &d) {
  CohomologyCache cc(x);
  return is_strongly_left_orthogonal(cc, d);
}

// h^0((-D)_0) = h^1(-D) = 0; strong adds h^1(D) = 0.
inline bool is_pre_left_orthogonal(const CohomologyCache &cc, const MinimalModelBasis &b, const Vec &d,
                                   bool strong = false) {
  Vec d0 = b.project_d(d, 0);
  if (is_zero(d0))
    throw Error("degenerate-projection", "(D)_0 = 0");
  if (cc.get(neg(d0)).h0 != 0)
    return false;
  if (cc.get(neg(d)).h1 != 0)
    return false;
  return !strong || cc.get(d).h1 == 0;
}

inline bool is_pre_left_orthogonal(const MinimalModelBasis &b, const Vec &d, bool strong = false) {
  CohomologyCache cc(b.x);
  return is_pre_left_orthogonal(cc, b, d, strong);
}

// Every cyclic interval sum of the d-vector is >= -1.
inline bool degree_bound_check(const Vec &d) {
  int n = static_cast<int>(d.size());
  for (int s = 0; s < n; ++s) {
    i64 sum = 0;
    for (int len = 1; len < n; ++len) {
      sum += d[(s + len - 1) % n];
      if (sum < -1)
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Triangles cut out by one blow-up step.

struct TriangleCounts {
  i64 total = 0, plus = 0, minus = 0;
  bool operator==(const TriangleCounts &) const = default;
};

inline TriangleCounts triangle_counts(i64 gamma) {
  if (gamma > 0)
    throw Error("out-of-domain", "triangles need gamma <= 0");
  return {binom2(gamma - 1), binom2(gamma + 1), binom2(gamma)};
}

enum class Triangle { Full, Minus, Plus };

// Points of T, T^- or T^+ for the cone (p, q) with l_r = l_p + l_q.
inline std::vector<Vec2> triangle_points(const Vec2 &lp, const Vec2 &lq, i64 cp, i64 cq, i64 cr,
                                         Triangle kind) {
  if (det2(lp, lq) != 1)
    throw Error("not-applicable", "triangle needs a positive basis");
  // m = m0 + x*mp + y*mq where mp, mq is the dual basis
  Vec2 mp{lq[1], -lq[0]}, mq{-lp[1], lp[0]};
  Vec2 m0{-cp * mp[0] - cq * mq[0], -cp * mp[1] - cq * mq[1]};
  i64 g = cp + cq - cr; // l_r(m) <= -c_r  <=>  x + y <= g
  std::vector<Vec2> pts;
  i64 lo = kind == Triangle::Plus ? 1 : 0;
  i64 top = kind == Triangle::Minus ? g - 1 : g;
  for (i64 x = lo; x <= top; ++x)
    for (i64 y = lo; x + y <= top; ++y)
      pts.push_back({m0[0] + x * mp[0] + y * mq[0], m0[1] + x * mp[1] + y * mq[1]});
  return pts;
}

inline std::vector<Vec2> triangle_points(i64 gamma, Triangle kind) {
  return triangle_points({1, 0}, {0, 1}, 0, 0, gamma, kind);
}

// Representative c on X of D built from (D)_0 on X_0 by c_r = c_p + c_q + gamma_k.
inline Vec layered_representative(const MinimalModelBasis &b, const Vec &d) {
  Vec coords = b.to_coords(d);
  Vec d0 = b.to_d(project(coords, b.shape, 0));
  Vec c0 = c_representative(b.x, d0);
  Vec c(b.x.n(), 0);
  for (int i : b.alive0)
    c[i] = c0[i];
  for (int k = 0; k < b.t(); ++k) {
    auto [p, q] = b.cone_of_R[k];
    c[b.ray_of_R[k]] = c[p] + c[q] + coords[b.head() + k];
  }
  if (d_from_c(b.x, c) != d)
    throw Error("internal", "layered representative does not reproduce D");
  return c;
}

struct TilingResult {
  bool minus_tiles = false; // G_(D)0 \ G_D is the disjoint union of the T^-
  bool plus_tiles = false;  // G°_(D)0 is the disjoint union of the T^+
  std::vector<Vec> gammas;
};

// Literal multiset comparison of the two tilings; requires all gamma_k <= 0.
inline TilingResult tiling(const MinimalModelBasis &b, const Vec &d) {
  Vec coords = b.to_coords(d);
  for (int k = 0; k < b.t(); ++k)
    if (coords[b.head() + k] > 0)
      throw Error("not-applicable", "tiling needs gamma_k <= 0");
  Vec c = layered_representative(b, d);
  auto g0 = chamber_points(b.x, c, b.alive0, 0);
  auto g0i = chamber_points(b.x, c, b.alive0, -1);
  auto gd = chamber_points(b.x, c, b.alive(b.t()), 0);
  std::vector<Vec2> minus, plus;
  for (int k = 0; k < b.t(); ++k) {
    auto [p, q] = b.cone_of_R[k];
    int r = b.ray_of_R[k];
    auto tm = triangle_points(b.x.rays[p], b.x.rays[q], c[p], c[q], c[r], Triangle::Minus);
    auto tp = triangle_points(b.x.rays[p], b.x.rays[q], c[p], c[q], c[r], Triangle::Plus);
    minus.insert(minus.end(), tm.begin(), tm.end());
    plus.insert(plus.end(), tp.begin(), tp.end());
  }
  std::sort(g0.begin(), g0.end());
  std::sort(gd.begin(), gd.end());
  std::vector<Vec2> diff;
  std::set_difference(g0.begin(), g0.end(), gd.begin(), gd.end(), std::back_inserter(diff));
  std::sort(minus.begin(), minus.end());
  std::sort(plus.begin(), plus.end());
  std::sort(g0i.begin(), g0i.end());
  TilingResult out;
  out.minus_tiles = diff == minus;
  out.plus_tiles = g0i == plus;
  return out;
}

// Left-orthogonality read off the tilings of a pre-left-orthogonal D with all
// gamma_k <= 0: LO iff the T^+ tile G°_(D)0; strongly LO iff in addition the
// T^- tile G_(D)0 \ G_D and (D)_0 is strongly pre-left-orthogonal on X_0.
inline bool tiling_check(const CohomologyCache &cc, const MinimalModelBasis &b, const Vec &d, bool strong) {
  if (!is_pre_left_orthogonal(cc, b, d))
    throw Error("not-applicable", "tiling check needs a pre-left-orthogonal divisor");
  TilingResult t = tiling(b, d);
  if (!strong)
    return t.plus_tiles;
  return t.plus_tiles && t.minus_tiles && is_pre_left_orthogonal(cc, b, b.project_d(d, 0), true);
}

inline bool tiling_check(const MinimalModelBasis &b, const Vec &d, bool strong) {
  CohomologyCache cc(b.x);
  return tiling_check(cc, b, d, strong);
}

// One step of the cut-out test: does step k keep T^+ inside G°_(D)_{k-1} and T^- inside G_(D)_{k-1}?
struct CutoutResult {
  bool plus_inside = false, minus_inside = false;
};

inline CutoutResult cutout_check(const MinimalModelBasis &b, const Vec &d, int k) {
  if (k < 0 || k >= b.t())
    throw Error("index", "blow-up step out of range");
  Vec coords = b.to_coords(d);
  if (coords[b.head() + k] > 0)
    throw Error("not-applicable", "cut-out needs gamma_k <= 0");
  Vec c = layered_representative(b, d);
  auto rays = b.alive(k);
  auto g = chamber_points(b.x, c, rays, 0);
  auto gi = chamber_points(b.x, c, rays, -1);
  std::sort(g.begin(), g.end());
  std::sort(gi.begin(), gi.end());
  auto [p, q] = b.cone_of_R[k];
  int r = b.ray_of_R[k];
  auto tm = triangle_points(b.x.rays[p], b.x.rays[q], c[p], c[q], c[r], Triangle::Minus);
  auto tp = triangle_points(b.x.rays[p], b.x.rays[q], c[p], c[q], c[r], Triangle::Plus);
  auto inside = [](const std::vector<Vec2> &t, const std::vector<Vec2> &s) {
    return std::all_of(t.begin(), t.end(),
                       [&](const Vec2 &m) { return std::binary_search(s.begin(), s.end(), m); });
  };
  return {inside(tp, gi), inside(tm, g)};
}

// ---------------------------------------------------------------------------
// Straightening.

inline bool is_minus_one_prime(const Surface &x, const Vec &d) {
  for (int i = 0; i < x.n(); ++i)
    if (x.a[i] == -1 && d == invariant_divisor(x, i))
      return true;
  return false;
}

inline bool is_straightened(const Surface &x, const Vec &d) {
  if (is_minus_one_prime(x, d) || !is_strongly_left_orthogonal(x, d))
    return false;
  for (int i = 0; i < x.n(); ++i)
    if (x.a[i] == -1 && d[i] < 2)
      return false;
  return true;
}

struct Straightening {
  Surface surface;
  Vec divisor;
  bool negated = false;
  std::vector<int> contracted; // original ray ids in contraction order
};

// Contract -1-rays with d_i = 1, then d_i = 0, lowest index first, while keeping strong LO.
inline Straightening straighten(const Surface &x, const Vec &d) {
  if (!is_strongly_left_orthogonal(x, d))
    throw Error("precondition", "divisor is not strongly left-orthogonal");
  if (is_minus_one_prime(x, d))
    throw Error("precondition", "divisor is a -1 prime divisor");
  Straightening st{x, d, false, {}};
  if (cohomology_numbers(x, d).h0 == 0) {
    st.divisor = neg(d);
    st.negated = true;
  }
  std::vector<int> ids(x.n());
  std::iota(ids.begin(), ids.end(), 0);
  for (;;) {
    const Surface &s = st.surface;
    int pick = -1;
    if (s.n() > 3)
      for (i64 want : {1, 0})
        for (int i = 0; i < s.n() && pick < 0; ++i)
          if (s.a[i] == -1 && st.divisor[i] == want)
            pick = i;
    if (pick < 0)
      break;
    Vec nd = st.divisor;
    nd[s.prev(pick)] += nd[pick];
    nd[s.next(pick)] += nd[pick];
    nd.erase(nd.begin() + pick);
    Surface ns = blow_down(s, pick);
    if (!is_strongly_left_orthogonal(ns, nd))
      throw Error("internal", "straightening step lost strong left-orthogonality");
    st.contracted.push_back(ids[pick]);
    ids.erase(ids.begin() + pick);
    st.surface = std::move(ns);
    st.divisor = std::move(nd);
  }
  return st;
}

} // namespace toric
