#pragma once

#include "toric/search.hpp"

#include <sstream>

namespace toric {

struct NamedSurface {
  std::string name;
  Vec a;
};

// Smooth complete toric surfaces with nef anticanonical class.
inline const std::vector<NamedSurface> &nef_surfaces() {
  static const std::vector<NamedSurface> t = {
      {"P2", {1, 1, 1}},
      {"P1xP1", {0, 0, 0, 0}},
      {"F1", {0, 1, 0, -1}},
      {"F2", {0, 2, 0, -2}},
      {"5a", {0, 0, -1, -1, -1}},
      {"5b", {0, -2, -1, -1, 1}},
      {"6a", {-1, -1, -1, -1, -1, -1}},
      {"6b", {-1, -1, -2, -1, -1, 0}},
      {"6c", {0, 0, -2, -1, -2, -1}},
      {"6d", {0, 1, -2, -1, -2, -2}},
      {"7a", {-1, -1, -2, -1, -2, -1, -1}},
      {"7b", {-1, -1, 0, -2, -1, -2, -2}},
      {"8a", {-1, -2, -1, -2, -1, -2, -1, -2}},
      {"8b", {-1, -2, -2, -1, -2, -1, -1, -2}},
      {"8c", {-1, -2, -2, -2, -1, -2, 0, -2}},
      {"9", {-1, -2, -2, -1, -2, -2, -1, -2, -2}},
  };
  return t;
}

inline std::optional<std::string> nef_surface_name(const Surface &x) {
  Vec c = canonical_form(x);
  for (auto &s : nef_surfaces())
    if (canonical_form(s.a) == c)
      return s.name;
  return std::nullopt;
}

// A surface in a fixed ray order, the rays contracted to reach the minimal model, and
// optionally the ray whose class is Q. R labels follow the left-to-right order of marks.
struct MarkedSurface {
  std::string name;
  Vec a;
  std::vector<int> marks;
  int q_ray = -1;

  Surface surface() const { return from_a_sequence(a); }
  MinimalModelBasis basis() const { return basis_from_marked(surface(), marks, q_ray); }
};

struct SystemFixture {
  MarkedSurface where;
  std::vector<std::string> classes;
};

inline const std::vector<SystemFixture> &cyclic_fixtures() {
  static const std::vector<SystemFixture> t = {
      {{"5b", {-1, -2, 0, 1, -1}, {0, 1}}, {"H-R1", "R1", "H-R1-R2", "R2", "H-R2"}},
      {{"6b", {-1, -2, -1, -1, 0, -1}, {0, 1, 3}}, {"H-R1-R3", "R1", "H-R1-R2", "R2", "H-R2-R3", "R3"}},
      {{"6c", {-1, -2, 0, 0, -1, -2}, {0, 1, 4}}, {"H-R1-R3", "R1", "H-R1-R2", "R2", "H-R2-R3", "R3"}},
      {{"6d", {-1, -2, -2, 0, 1, -2}, {0, 1}}, {"P-R1", "R1", "Q-R1-R2", "R2", "P-R2", "Q-P"}},
      {{"7a", {-1, -1, -1, -1, -2, -1, -2}, {0, 3, 4, 6}},
       {"H-R1-R2", "R2", "R1-R2", "H-R1-R3-R4", "R4", "R3-R4", "H-R3"}},
      {{"7b", {-1, -2, 0, -1, -1, -2, -2}, {0, 1, 4, 5}},
       {"H-R1-R3", "R3", "R1-R3", "H-R1-R2-R4", "R4", "R2-R4", "H-R2"}},
      {{"8a", {-1, -2, -1, -2, -1, -2, -1, -2}, {0, 2, 4, 6}},
       {"P-R1-R4", "R1", "Q-R1-R2", "R2", "P-R2-R3", "R3", "Q-R3-R4", "R4"}},
      {{"8b", {-1, -2, -1, -1, -2, -1, -2, -2}, {0, 2, 4, 5, 7}},
       {"H-R1-R2-R4", "R4", "R2-R4", "R1-R2", "H-R1-R3", "R3-R5", "R5", "H-R3-R5"}},
      {{"8c", {-1, -2, -2, -2, -1, -2, 0, -2}, {0, 1, 3, 4}, 6},
       {"P-R1-R4", "R4", "R1-R4", "P+Q-R1-R3", "R3-R2", "R2", "P-R2-R3", "-P+Q"}},
      {{"9", {-1, -2, -2, -1, -2, -2, -1, -2, -2}, {0, 1, 3, 4, 6, 7}},
       {"H-R1-R4-R5", "R4", "R1-R4", "H-R1-R3-R6", "R6", "R3-R6", "H-R2-R3-R5", "R2", "R5-R2"}},
  };
  return t;
}

// Printed rows that fail the cyclic check, with the nearest verified system on the same basis.
inline const std::map<std::string, std::vector<std::string>> &cyclic_corrections() {
  static const std::map<std::string, std::vector<std::string>> t = {
      {"7b", {"H-R1-R3", "R3", "R1-R3", "H-R1-R4", "R4-R2", "R2", "H-R2-R4"}},
      {"8c", {"R1-R4", "R4", "P-R1-R4", "Q-R3", "R3-R2", "R2", "P-R2-R3", "Q-R1"}},
  };
  return t;
}

struct BuiltSystem {
  std::string name;
  Surface surface;
  ToricSystem system;
  std::optional<MinimalModelBasis> basis;
};

inline BuiltSystem build(const SystemFixture &f) {
  MinimalModelBasis b = f.where.basis();
  ToricSystem s;
  for (auto &c : f.classes)
    s.classes.push_back(parse_divisor(b, c));
  return {f.where.name, b.x, s, b};
}

// The truncated six-point system placed on a toric surface: any set of t rays contracting
// to the plane through pairwise incomparable blow-ups.
inline std::optional<BuiltSystem> del_pezzo_on(const std::string &name, const Surface &x) {
  int t = x.n() - 3;
  ToricSystem coords = del_pezzo_coords(t);
  std::vector<int> pick;
  std::optional<BuiltSystem> found;
  std::function<void(int)> rec = [&](int from) {
    if (found)
      return;
    if (static_cast<int>(pick.size()) == t) {
      MinimalModelBasis b;
      try {
        b = basis_from_marked(x, pick);
      } catch (const Error &) {
        return;
      }
      if (b.shape.model != Model::Plane)
        return;
      ToricSystem s;
      for (auto &c : coords.classes) {
        Vec cc(b.shape.rank(), 0);
        cc[0] = c[0];
        for (int k = 0; k < t; ++k)
          cc[1 + b.index_of_label(k + 1)] = c[1 + k];
        s.classes.push_back(b.to_d(cc));
      }
      if (validate(x, s).ok && is_cyclic_strongly_exceptional(x, s))
        found = BuiltSystem{name, x, s, b};
      return;
    }
    for (int i = from; i < x.n(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return found;
}

// The listed cyclic systems (corrected where the printed row fails) plus the two remaining
// toric del Pezzos and the minimal models.
inline std::vector<BuiltSystem> table2_systems(bool corrected = true) {
  std::vector<BuiltSystem> out;
  for (auto f : cyclic_fixtures()) {
    auto it = cyclic_corrections().find(f.where.name);
    if (corrected && it != cyclic_corrections().end())
      f.classes = it->second;
    out.push_back(build(f));
  }
  for (auto &[name, a] : std::vector<NamedSurface>{{"5a", {0, 0, -1, -1, -1}}, {"6a", {-1, -1, -1, -1, -1, -1}}})
    if (auto b = del_pezzo_on(name, from_a_sequence(a)))
      out.push_back(*b);
    else
      throw Error("internal", "no placement of the truncated del Pezzo system on " + name);
  out.push_back({"P2", plane(), ToricSystem{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}, std::nullopt});
  for (i64 a = 0; a <= 2; ++a) {
    Surface f = hirzebruch(a);
    MinimalModelBasis b = make_basis(f, {});
    // type (i) with s = -1 is cyclic for a <= 2
    out.push_back({a == 0 ? "P1xP1" : "F" + std::to_string(a), f,
                   pull_back(b, {{1, 0}, {-1, 1}, {1, 0}, {-(a - 1), 1}}), b});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Straightened divisors.

struct StraightenedRow {
  MarkedSurface where;
  std::vector<std::string> divisors;
};

inline const std::vector<StraightenedRow> &straightened_fixtures() {
  static const std::vector<StraightenedRow> t = {
      {{"6d", {-1, -2, -2, 0, 1, -2}, {0, 1, 2}}, {"3H-2R1-R2-R3"}},
      {{"8a", {-1, -2, -1, -2, -1, -2, -1, -2}, {0, 2, 4, 5, 7}}, {"4H-2R1-2R2-2R3-R4-R5"}},
      {{"8c", {-1, -2, -2, -2, -1, -2, 0, -2}, {0, 1, 2, 4, 5}}, {"4H-2R1-2R2-2R4-R3-R5"}},
      {{"9", {-1, -2, -2, -1, -2, -2, -1, -2, -2}, {0, 1, 3, 4, 6, 7}}, {"4H-2R1-2R3-2R5-R2-R4-R6"}},
  };
  return t;
}

// Listed straightened classes on P2 and F_a, in [H] or [P, Q] coordinates.
inline std::vector<Vec> listed_straightened_minimal(const ModelShape &m, i64 s_lo, i64 s_hi) {
  if (m.model == Model::Plane)
    return {{1}, {2}};
  std::vector<Vec> out;
  i64 a = m.a;
  if (a == 0) {
    for (i64 s = std::max<i64>(s_lo, -1); s <= s_hi; ++s) {
      out.push_back({1, s});
      out.push_back({s, 1});
    }
  } else {
    out.push_back({1, 0});
    i64 from = a == 1 ? 1 : -1;
    for (i64 s = std::max(s_lo, from); s <= s_hi; ++s)
      out.push_back({s, 1});
    if (a == 2)
      out.push_back({-1, 2});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Strongly left-orthogonal classes of small Euler characteristic on 8a, 8c, 9,
// expanded from the family descriptions in [H, R_1..R_t] coordinates.

struct ChiList {
  std::string name;
  int surface_row; // index into straightened_fixtures
  i64 chi_max;
  std::map<i64, std::vector<Vec>> by_chi;
};

namespace detail {

struct Builder {
  int t;
  std::map<i64, std::set<Vec>> lists;
  Vec cls(i64 h, std::initializer_list<std::pair<int, i64>> r) const {
    Vec c(t + 1, 0);
    c[0] = h;
    for (auto [i, k] : r)
      c[i] += k;
    return c;
  }
  Vec minus_all(i64 h, i64 coef, const std::set<int> &skip) const {
    Vec c(t + 1, 0);
    c[0] = h;
    for (int i = 1; i <= t; ++i)
      if (!skip.count(i))
        c[i] = -coef;
    return c;
  }
  void add(i64 chi, const Vec &c) { lists[chi].insert(c); }
  void add_pm(i64 chi, const Vec &c) {
    add(chi, c);
    add(chi, neg(c));
  }
  std::vector<int> idx() const {
    std::vector<int> v(t);
    std::iota(v.begin(), v.end(), 1);
    return v;
  }
};

inline bool is_pair(int i, int j, std::initializer_list<std::pair<int, int>> bad) {
  for (auto [p, q] : bad)
    if ((i == p && j == q) || (i == q && j == p))
      return true;
  return false;
}

inline bool is_triple(std::set<int> s, std::initializer_list<std::set<int>> bad) {
  for (auto &b : bad)
    if (s == b)
      return true;
  return false;
}

// shared families for chi = 1..4 on five points
inline void five_point_common(Builder &b) {
  auto I = b.idx();
  for (int i : I) {
    b.add(1, b.cls(0, {{i, 1}}));
    b.add(2, b.cls(1, {{i, -1}}));
    b.add(2, b.minus_all(2, 1, {i}));
  }
  for (int i : I)
    for (int j : I)
      if (i < j) {
        b.add(1, b.cls(1, {{i, -1}, {j, -1}}));
        b.add(4, b.cls(2, {{i, -1}, {j, -1}}));
      }
  b.add(1, b.minus_all(2, 1, {}));
  b.add(3, b.cls(1, {}));
  for (int i : I)
    for (int j : I)
      for (int k : I)
        if (i < j && j < k)
          b.add(3, b.cls(2, {{i, -1}, {j, -1}, {k, -1}}));
  for (int i : I) {
    Vec c = b.minus_all(3, 1, {i});
    c[i] = -2;
    b.add(3, c);
  }
}

} // namespace detail

inline ChiList table4_8a() {
  detail::Builder b{5, {}};
  auto I = b.idx();
  for (int i : I)
    for (int j : I)
      if (i != j && !detail::is_pair(i, j, {{1, 5}, {3, 4}}))
        b.add(0, b.cls(0, {{i, 1}, {j, -1}}));
  for (int i : I)
    for (int j : I)
      for (int k : I)
        if (i < j && j < k && !detail::is_triple({i, j, k}, {{1, 2, 5}, {2, 3, 4}}))
          b.add_pm(0, b.cls(1, {{i, -1}, {j, -1}, {k, -1}}));
  detail::five_point_common(b);
  for (int i : I)
    for (int k : I)
      if (i != k && !(i == 1 && k == 5) && !(i == 3 && k == 4)) {
        Vec c = b.minus_all(3, 1, {i, k});
        c[i] = -2;
        b.add(4, c);
      }
  for (int l : I)
    for (int m : I)
      if (l < m) {
        Vec c = b.minus_all(4, 2, {l, m});
        c[l] = c[m] = -1;
        b.add(4, c);
      }
  for (int i : {1, 4, 5})
    for (int m : I)
      if (m != i) {
        Vec c = b.minus_all(5, 2, {i, m});
        c[i] = -3;
        c[m] = -1;
        b.add(4, c);
      }
  ChiList out{"8a", 1, 4, {}};
  for (auto &[k, v] : b.lists)
    out.by_chi[k] = {v.begin(), v.end()};
  return out;
}

inline ChiList table5_8c() {
  detail::Builder b{5, {}};
  auto I = b.idx();
  for (int i : {1, 2, 3})
    for (int j : {4, 5})
      b.add_pm(0, b.cls(0, {{i, 1}, {j, -1}}));
  for (int i : {1, 2, 3})
    for (int j : {1, 2, 3})
      for (int k : {4, 5})
        if (i < j)
          b.add_pm(0, b.cls(1, {{i, -1}, {j, -1}, {k, -1}}));
  detail::five_point_common(b);
  for (int i : I)
    for (int k : I)
      if (i != k &&
          !((i == 4 && k == 5) || (i == 2 && k == 3) || (i == 1 && k == 3) || (i == 1 && k == 2))) {
        Vec c = b.minus_all(3, 1, {i, k});
        c[i] = -2;
        b.add(4, c);
      }
  for (int i : {1, 2, 3})
    for (int j : {1, 2, 3})
      for (int k : {4, 5})
        if (i < j) {
          Vec c = b.minus_all(4, 1, {});
          c[i] = c[j] = c[k] = -2;
          b.add(4, c);
        }
  for (int i : {4, 5})
    for (int m : I)
      if (m != i) {
        Vec c = b.minus_all(5, 2, {i, m});
        c[i] = -3;
        c[m] = -1;
        b.add(4, c);
      }
  ChiList out{"8c", 2, 4, {}};
  for (auto &[k, v] : b.lists)
    out.by_chi[k] = {v.begin(), v.end()};
  return out;
}

inline ChiList table6_9() {
  detail::Builder b{6, {}};
  auto I = b.idx();
  auto triple_ok = [](std::set<int> s) {
    auto minus = [&](std::set<int> p) {
      std::set<int> r;
      for (int v : s)
        if (!p.count(v))
          r.insert(v);
      return r;
    };
    auto a = minus({1, 2}), c = minus({3, 4}), e = minus({5, 6});
    return a != std::set<int>{5} && a != std::set<int>{6} && c != std::set<int>{1} && c != std::set<int>{2} &&
           e != std::set<int>{3} && e != std::set<int>{4};
  };
  for (int i : I)
    for (int j : I)
      if (i != j && !detail::is_pair(i, j, {{1, 2}, {3, 4}, {5, 6}}))
        b.add(0, b.cls(0, {{i, 1}, {j, -1}}));
  for (int i : I)
    for (int j : I)
      for (int k : I)
        if (i < j && j < k && triple_ok({i, j, k}))
          b.add_pm(0, b.cls(1, {{i, -1}, {j, -1}, {k, -1}}));
  b.add(0, b.minus_all(2, 1, {}));
  for (int i : I) {
    b.add(1, b.cls(0, {{i, 1}}));
    b.add(1, b.minus_all(2, 1, {i}));
    b.add(2, b.cls(1, {{i, -1}}));
    Vec c = b.minus_all(3, 1, {i});
    c[i] = -2;
    b.add(2, c);
  }
  for (int i : I)
    for (int j : I)
      if (i < j) {
        b.add(1, b.cls(1, {{i, -1}, {j, -1}}));
        b.add(2, b.minus_all(2, 1, {i, j}));
      }
  b.add(3, b.cls(1, {}));
  for (int i : I)
    for (int j : I)
      for (int k : I)
        if (i < j && j < k) {
          b.add(3, b.cls(2, {{i, -1}, {j, -1}, {k, -1}}));
          if (triple_ok({i, j, k})) {
            Vec c = b.minus_all(4, 1, {});
            c[i] = c[j] = c[k] = -2;
            b.add(3, c);
          }
        }
  for (int i : I)
    for (int j : I)
      if (i != j && !(i % 2 == 1 && j == i + 1)) {
        Vec c = b.minus_all(3, 1, {i, j});
        c[i] = -2;
        b.add(3, c);
      }
  b.add(3, b.minus_all(5, 2, {}));
  ChiList out{"9", 3, 3, {}};
  for (auto &[k, v] : b.lists)
    out.by_chi[k] = {v.begin(), v.end()};
  return out;
}

// ---------------------------------------------------------------------------
// The two-round blow-up of the counterexample surface: F1 on l1, l2, l3, l6 with
// l3 = l2 + l6, then l7 = l1 + l6, l8 = l1 + l7, l4 = l3 + l6, l5 = l4 + l6.

inline const Vec &counterexample_a() {
  static const Vec a = {-2, -2, -1, -3, -2, 0, 1};
  return a;
}

inline MinimalModelBasis counterexample_blowup_basis() {
  Surface x = from_rays({{0, -1}, {1, 0}, {0, 1}, {-1, 2}, {-2, 3}, {-1, 1}, {-1, 0}, {-1, -1}});
  MinimalModelBasis b = basis_from_marked(x, {3, 4, 6, 7});
  // R1..R4 in the order l7, l8, l4, l5 were added
  const std::map<int, int> label_of_ray = {{6, 1}, {7, 2}, {3, 3}, {4, 4}};
  for (int k = 0; k < b.t(); ++k)
    b.label[k] = label_of_ray.at(b.ray_of_R[k]);
  return b;
}

inline ToricSystem counterexample_blowup_system(const MinimalModelBasis &b, i64 s) {
  std::vector<std::string> cls = {"R1", "R3-R1", "P-R3", std::to_string(s) + "P+Q", "P-R2", "R2-R4", "R4",
                                  std::to_string(-(s + 1)) + "P+Q-R1-R2-R3-R4"};
  ToricSystem sys;
  for (auto &c : cls)
    sys.classes.push_back(parse_divisor(b, c));
  return sys;
}

} // namespace toric
