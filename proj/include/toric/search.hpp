#pragma once

#include "toric/augment.hpp"

#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace toric {

struct SearchBounds {
  i64 d_floor = -1;
  std::optional<Vec> d_ceiling; // default a_i + 3 per ray
  i64 slack = 0;
  i64 s_lo = -1, s_hi = 5;

  Vec ceilings(const Surface &x) const {
    Vec c(x.n());
    for (int i = 0; i < x.n(); ++i) {
      i64 v = d_ceiling ? (*d_ceiling)[i] : x.a[i] + 3;
      c[i] = std::max(d_floor, v + slack);
    }
    return c;
  }
};

inline SearchBounds uniform_bounds(const Surface &x, i64 lo, i64 hi) {
  SearchBounds b;
  b.d_floor = lo;
  b.d_ceiling = Vec(x.n(), hi);
  return b;
}

// Every class with d-vector in the box, as d-vectors in lexicographic order of d_1..d_{n-2}.
template <class F>
inline void for_each_class_in_box(const Surface &x, i64 lo, const Vec &hi, F &&f) {
  int n = x.n();
  Vec c(n, 0), d(n, 0);
  // c_0 = c_1 = 0 and d_k = c_{k-1} + a_k c_k + c_{k+1} determine c_{k+1} from d_k
  std::function<void(int)> rec = [&](int k) {
    if (k == n - 1) {
      d[0] = c[n - 1] + x.a[0] * c[0] + c[1];
      d[n - 1] = c[n - 2] + x.a[n - 1] * c[n - 1] + c[0];
      if (d[0] < lo || d[0] > hi[0] || d[n - 1] < lo || d[n - 1] > hi[n - 1])
        return;
      f(static_cast<const Vec &>(d), static_cast<const Vec &>(c));
      return;
    }
    for (i64 v = lo; v <= hi[k]; ++v) {
      d[k] = v;
      c[k + 1] = v - c[k - 1] - x.a[k] * c[k];
      rec(k + 1);
    }
  };
  rec(1);
}

inline i64 euler_from_dc(const Vec &d, const Vec &c) {
  i64 sq = dot(c, d);
  return 1 + (sq + total(d)) / 2;
}

// chi(-D) = 1 + (D^2 - sum d) / 2
inline i64 euler_neg_from_dc(const Vec &d, const Vec &c) {
  i64 sq = dot(c, d);
  return 1 + (sq - total(d)) / 2;
}

// Strongly left-orthogonal classes in the box, grouped by chi.
inline std::map<i64, std::vector<Vec>> classify_strongly_LO(const CohomologyCache &cc, i64 chi_max,
                                                            const SearchBounds &b) {
  const Surface &x = cc.surface();
  std::map<i64, std::vector<Vec>> out;
  for_each_class_in_box(x, b.d_floor, b.ceilings(x), [&](const Vec &d, const Vec &c) {
    if (euler_neg_from_dc(d, c) != 0)
      return;
    i64 chi = euler_from_dc(d, c);
    if (chi < 0 || chi > chi_max || !degree_bound_check(d))
      return;
    if (is_strongly_left_orthogonal(cc, d))
      out[chi].push_back(d);
  });
  for (auto &[k, v] : out)
    std::sort(v.begin(), v.end());
  return out;
}

inline std::vector<Vec> strongly_LO_candidates(const CohomologyCache &cc, const SearchBounds &b) {
  std::vector<Vec> out;
  for (auto &[k, v] : classify_strongly_LO(cc, std::numeric_limits<i64>::max(), b))
    out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Vec> classify_straightened(const CohomologyCache &cc, const SearchBounds &b) {
  std::vector<Vec> out;
  for (auto &d : strongly_LO_candidates(cc, b))
    if (is_straightened(cc.surface(), d))
      out.push_back(d);
  return out;
}

// A lattice point of the section polytope on two of its bounding lines.
inline std::optional<Vec2> augmentation_corner(const Surface &x, const Vec &d) {
  Vec c = c_representative(x, d);
  for (auto &m : chamber_points(x, c)) {
    int tight = 0;
    for (int i = 0; i < x.n(); ++i)
      if (x.rays[i][0] * m[0] + x.rays[i][1] * m[1] == -c[i])
        ++tight;
    if (tight >= 2)
      return m;
  }
  return std::nullopt;
}

inline bool has_augmentation_corner(const Surface &x, const Vec &d) { return augmentation_corner(x, d).has_value(); }

// ---------------------------------------------------------------------------
// Canonical representatives under the symmetries preserving each property.

inline ToricSystem canonical_strong(const ToricSystem &s) {
  ToricSystem r = reverse_strong(s);
  return r.classes < s.classes ? r : s;
}

inline ToricSystem canonical_cyclic(const ToricSystem &s) {
  ToricSystem best = s;
  for (const ToricSystem &base : {s, reverse_cyclic(s)})
    for (int k = 0; k < s.n(); ++k) {
      ToricSystem r = rotate(base, k);
      if (r.classes < best.classes)
        best = r;
    }
  return best;
}

struct SearchResult {
  std::vector<ToricSystem> hits;
  std::size_t candidates = 0;
  std::size_t nodes = 0;
};

// Sequences A_1..A_{n-1} of strongly left-orthogonal classes from the box whose interval
// sums are strongly left-orthogonal; A_n = -K - sum. Complete only within the box.
inline SearchResult search_strongly_exceptional(const CohomologyCache &cc, const SearchBounds &b, bool cyclic,
                                                int jobs = 1) {
  const Surface &x = cc.surface();
  int n = x.n();
  SearchResult res;
  std::vector<Vec> cand = strongly_LO_candidates(cc, b);
  res.candidates = cand.size();
  int m = static_cast<int>(cand.size());
  std::vector<std::vector<int>> next(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (intersect(x, cand[i], cand[j]) == 1)
        next[i].push_back(j);
  Vec antik = anticanonical(x);
  std::vector<std::vector<ToricSystem>> per_root(m);
  std::atomic<int> cursor{0};
  std::atomic<std::size_t> nodes{0};
  auto worker = [&] {
    for (;;) {
      int root = cursor.fetch_add(1);
      if (root >= m)
        return;
      std::vector<int> seq{root};
      std::vector<Vec> suffix; // suffix[k] = sum of seq[k..]
      std::size_t local = 0;
      std::function<void()> rec = [&] {
        ++local;
        int len = static_cast<int>(seq.size());
        if (len == n - 1) {
          ToricSystem s;
          Vec sum(n, 0);
          for (int id : seq) {
            s.classes.push_back(cand[id]);
            sum = add(sum, cand[id]);
          }
          s.classes.push_back(sub(antik, sum));
          if (!validate(x, s).ok)
            return;
          if (cyclic && !is_exceptional_kind(cc, s, Strength::CyclicStrong))
            return;
          per_root[root].push_back(cyclic ? canonical_cyclic(s) : canonical_strong(s));
          return;
        }
        const Vec &last = cand[seq.back()];
        for (int j : next[seq.back()]) {
          const Vec &v = cand[j];
          bool ok = true;
          for (int k = 0; k + 1 < len && ok; ++k)
            ok = intersect(x, cand[seq[k]], v) == 0;
          if (!ok)
            continue;
          // every interval ending at the new entry
          Vec sum = v;
          for (int k = len - 1; k >= 0 && ok; --k) {
            sum = add(sum, cand[seq[k]]);
            ok = degree_bound_check(sum) && is_strongly_left_orthogonal(cc, sum);
          }
          if (!ok)
            continue;
          (void)last;
          seq.push_back(j);
          rec();
          seq.pop_back();
        }
      };
      rec();
      nodes += local;
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }
  for (auto &v : per_root)
    res.hits.insert(res.hits.end(), v.begin(), v.end());
  std::sort(res.hits.begin(), res.hits.end(), [](const ToricSystem &p, const ToricSystem &q) {
    return p.classes < q.classes;
  });
  res.hits.erase(std::unique(res.hits.begin(), res.hits.end()), res.hits.end());
  res.nodes = nodes;
  return res;
}

inline SearchResult search_strongly_exceptional(const Surface &x, const SearchBounds &b, bool cyclic, int jobs = 1) {
  CohomologyCache cc(x);
  return search_strongly_exceptional(cc, b, cyclic, jobs);
}

// ---------------------------------------------------------------------------
// Four-term systems on F_a, in [P, Q] coordinates.

// Closed-form lists of (strongly) left-orthogonal classes.
inline bool hirzebruch_lo_closed(i64 a, i64 alpha, i64 beta) {
  if (a == 0)
    return alpha == 1 || beta == 1;
  return (alpha == 1 && beta == 0) || beta == 1 || (alpha == 1 - a && beta == 2);
}

inline bool hirzebruch_slo_closed(i64 a, i64 alpha, i64 beta) {
  if (!hirzebruch_lo_closed(a, alpha, beta))
    return false;
  if (a == 0)
    return (alpha == 1 && beta >= -1) || (beta == 1 && alpha >= -1);
  if (alpha == 1 && beta == 0)
    return true;
  if (beta == 1)
    return alpha >= -1;
  return a <= 2;
}

struct HirzebruchSystem {
  std::vector<Vec> coords;
  int type = 0;     // 1 or 2: the family it is a rotation of
  i64 s = 0;        // family parameter
  int rotation = 0; // coords[i] = family[(i + rotation) % 4]
  bool exceptional = false, strong = false, cyclic = false;
};

// The family members as written, for matching.
inline std::vector<Vec> hirzebruch_family(i64 a, int type, i64 s) {
  if (type == 1)
    return {{1, 0}, {s, 1}, {1, 0}, {-(a + s), 1}};
  Vec h{-a / 2, 1};
  return {h, add(Vec{1, 0}, scale(s, h)), h, sub(Vec{1, 0}, scale(s, h))};
}

// Every valid 4-term system with |coefficients| <= bound, matched against the two families.
inline std::vector<HirzebruchSystem> hirzebruch_brute_force(i64 a, i64 bound) {
  ModelShape m{Model::Hirzebruch, a, 0};
  IntersectionLattice L = model_lattice(m);
  std::vector<Vec> cls;
  for (i64 al = -bound; al <= bound; ++al)
    for (i64 be = -bound; be <= bound; ++be)
      cls.push_back({al, be});
  Vec antik = L.antik();
  std::vector<HirzebruchSystem> out;
  for (auto &a1 : cls)
    for (auto &a2 : cls) {
      if (L.form(a1, a2) != 1)
        continue;
      for (auto &a3 : cls) {
        if (L.form(a2, a3) != 1 || L.form(a1, a3) != 0)
          continue;
        Vec a4 = sub(antik, add(add(a1, a2), a3));
        if (std::abs(a4[0]) > bound || std::abs(a4[1]) > bound)
          continue;
        ToricSystem sys{{a1, a2, a3, a4}};
        if (!validate(L, sys).ok)
          continue;
        HirzebruchSystem h{sys.classes};
        for (int type = 1; type <= 2 && !h.type; ++type) {
          if (type == 2 && a % 2 != 0)
            break;
          for (int r = 0; r < 4 && !h.type; ++r) {
            // the second family entry is sP + Q or P + s(-a/2 P + Q)
            const Vec &x = sys.classes[(1 + 4 - r) % 4];
            i64 s = type == 1 ? x[0] : x[1];
            auto fam = hirzebruch_family(a, type, s);
            bool eq = true;
            for (int i = 0; i < 4; ++i)
              eq = eq && sys.classes[i] == fam[(i + r) % 4];
            if (eq) {
              h.type = type;
              h.s = s;
              h.rotation = r;
            }
          }
        }
        out.push_back(h);
      }
    }
  std::sort(out.begin(), out.end(), [](const HirzebruchSystem &p, const HirzebruchSystem &q) {
    return p.coords < q.coords;
  });
  return out;
}

} // namespace toric
