#pragma once

#include "toric/systems.hpp"

#include <random>

namespace toric {

inline Surface plane() { return from_rays({{1, 0}, {0, 1}, {-1, -1}}); }
inline Surface hirzebruch(i64 a) { return from_rays({{1, 0}, {0, 1}, {-1, a}, {0, -1}}); }

// ---------------------------------------------------------------------------
// Standard systems on the minimal model, written in basis coordinates.

struct StandardSystem {
  enum Type { Plane, TypeI, TypeII } type;
  i64 s = 0;
  std::vector<Vec> coords;
  bool exceptional = false;
  bool strong = false;
  bool cyclic = false;
};

// Labels follow the closed classification of 4-term systems on F_a.
inline std::vector<StandardSystem> standard_systems(const ModelShape &m, i64 s_lo, i64 s_hi) {
  std::vector<StandardSystem> out;
  if (m.model == Model::Plane) {
    out.push_back({StandardSystem::Plane, 0, {{1}, {1}, {1}}, true, true, true});
    return out;
  }
  i64 a = m.a;
  Vec P{1, 0};
  for (i64 s = s_lo; s <= s_hi; ++s) {
    StandardSystem st{StandardSystem::TypeI, s, {P, {s, 1}, P, {-(a + s), 1}}};
    st.exceptional = true;
    st.strong = s >= -1;
    st.cyclic = s >= -1 && a + s <= 1;
    out.push_back(st);
  }
  if (a % 2 == 0) {
    Vec h{-a / 2, 1};
    for (i64 s = s_lo; s <= s_hi; ++s) {
      StandardSystem st{StandardSystem::TypeII, s, {h, add(P, scale(s, h)), h, sub(P, scale(s, h))}};
      // s = 0 is a rotation of type (i) with parameter -a/2; a = 0 is type (i) with P, Q exchanged
      if (a == 0) {
        st.exceptional = true;
        st.strong = s >= -1;
        st.cyclic = s >= -1 && s <= 1;
      } else if (s == 0) {
        st.exceptional = true;
        st.strong = -a / 2 >= -1;
        st.cyclic = st.strong && a / 2 <= 1;
      }
      out.push_back(st);
    }
  }
  return out;
}

// Pull a standard system back along a basis.
inline ToricSystem pull_back(const MinimalModelBasis &b, const std::vector<Vec> &head_coords) {
  ToricSystem s;
  for (auto &h : head_coords) {
    Vec c(b.shape.rank(), 0);
    std::copy(h.begin(), h.end(), c.begin());
    s.classes.push_back(b.to_d(c));
  }
  return s;
}

inline std::vector<ToricSystem> standard_systems(const Surface &x0, i64 s_lo = -1, i64 s_hi = 5) {
  MinimalModelBasis b = make_basis(x0, {});
  std::vector<ToricSystem> out;
  for (auto &st : standard_systems(b.shape, s_lo, s_hi))
    out.push_back(pull_back(b, st.coords));
  return out;
}

// ---------------------------------------------------------------------------
// Augmentation: A_slot - R, R, A_{slot+1} - R (cyclic).

inline ToricSystem augment(const ToricSystem &s, int slot, const Vec &r) {
  int n = s.n();
  if (slot < 0 || slot >= n)
    throw Error("index", "augmentation slot out of range");
  ToricSystem t = s;
  int nxt = (slot + 1) % n;
  t.classes[slot] = sub(t.classes[slot], r);
  t.classes[nxt] = sub(t.classes[nxt], r);
  t.classes.insert(t.classes.begin() + slot + 1, r);
  return t;
}

// Remove entry i = R and add it back to both neighbours.
inline ToricSystem de_augment_classes(const ToricSystem &s, int i) { return blow_down_classes(s, i); }

struct Augmentation {
  ToricSystem system;         // on the blown-up surface, as d-vectors
  std::vector<int> order;     // exceptional indices k in insertion order
  std::vector<int> slots;     // slots used at each insertion
  int standard = 0;           // index into the standard list
  bool admissible = false;
};

// Every standard augmentation of the exceptional standard systems on the model of b,
// over all insertion orders and slots. Returning false from f stops the stream.
template <class F>
inline void all_standard_augmentations(const MinimalModelBasis &b, i64 s_lo, i64 s_hi, F &&f,
                                       bool admissible_only = false) {
  auto stds = standard_systems(b.shape, s_lo, s_hi);
  int t = b.t();
  int h = b.head();
  std::vector<Vec> rd(t);
  for (int k = 0; k < t; ++k) {
    Vec c(b.shape.rank(), 0);
    c[h + k] = 1;
    rd[k] = b.to_d(c);
  }
  bool stop = false;
  for (std::size_t si = 0; si < stds.size() && !stop; ++si) {
    if (!stds[si].exceptional)
      continue;
    ToricSystem base = pull_back(b, stds[si].coords);
    std::vector<int> perm(t);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Augmentation cur{base, perm, {}, static_cast<int>(si)};
      std::function<void(int)> rec = [&](int depth) {
        if (stop)
          return;
        if (depth == t) {
          cur.admissible = is_admissible(b, cur.system);
          if (!admissible_only || cur.admissible)
            if (!f(static_cast<const Augmentation &>(cur)))
              stop = true;
          return;
        }
        ToricSystem keep = cur.system;
        for (int slot = 0; slot < keep.n() && !stop; ++slot) {
          cur.system = augment(keep, slot, rd[perm[depth]]);
          cur.slots.push_back(slot);
          rec(depth + 1);
          cur.slots.pop_back();
        }
        cur.system = keep;
      };
      rec(0);
    } while (!stop && std::next_permutation(perm.begin(), perm.end()));
  }
}

// ---------------------------------------------------------------------------
// Two-round blow-ups and the explicit strongly exceptional systems on them.

struct TwoRound {
  BlowupHistory history;
  int first = 0; // number of blow-ups in round one
};

// Simultaneous blow-up of the given cones (indices on the current surface).
inline void blow_up_round(BlowupHistory &h, Surface &cur, std::vector<int> cones) {
  std::sort(cones.begin(), cones.end(), std::greater<>());
  // record steps in increasing order of creation: higher cones first keeps indices valid
  for (int c : cones) {
    h.steps.push_back(c);
    cur = blow_up(cur, c);
  }
}

inline TwoRound two_round(const Surface &base, const std::vector<int> &round1, const std::vector<int> &round2) {
  TwoRound tr{{base, {}}, static_cast<int>(round1.size())};
  Surface cur = base;
  blow_up_round(tr.history, cur, round1);
  blow_up_round(tr.history, cur, round2);
  return tr;
}

inline TwoRound random_two_round(std::mt19937_64 &rng, int max_rank) {
  std::uniform_int_distribution<int> pick(0, 4);
  int kind = pick(rng);
  Surface base = kind == 4 ? plane() : hirzebruch(kind);
  int room = max_rank - (base.n() - 2);
  auto subset = [&](int n, int cap) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<int> sz(0, std::max(0, std::min(n, cap)));
    all.resize(sz(rng));
    return all;
  };
  auto r1 = subset(base.n(), room);
  auto r2 = subset(base.n() + static_cast<int>(r1.size()), room - static_cast<int>(r1.size()));
  return two_round(base, r1, r2);
}

inline bool is_plane_base(const TwoRound &tr) { return tr.history.base.n() == 3; }

namespace detail {

// R_last, R_{..} - R_last, ..., top - R_first   (or top alone)
inline std::vector<Vec> climb(const Vec &top, const std::vector<Vec> &r) {
  std::vector<Vec> out;
  if (r.empty())
    return {top};
  out.push_back(r.back());
  for (int i = static_cast<int>(r.size()) - 1; i > 0; --i)
    out.push_back(sub(r[i - 1], r[i]));
  out.push_back(sub(top, r.front()));
  return out;
}

inline std::vector<Vec> exceptional_d(const MinimalModelBasis &b) {
  std::vector<Vec> rd;
  for (int k = 0; k < b.t(); ++k) {
    Vec c(b.shape.rank(), 0);
    c[b.head() + k] = 1;
    rd.push_back(b.to_d(c));
  }
  return rd;
}

} // namespace detail

struct GeneratedSystem {
  Surface surface;
  MinimalModelBasis basis;
  ToricSystem system;
};

// R_s, ..., top - R_1, middle, top - R_{s+1}, ..., R_t, last
inline GeneratedSystem two_round_system(const TwoRound &tr, i64 n_param = 0) {
  MinimalModelBasis b = make_basis(tr.history);
  int t = b.t(), s = tr.first;
  if (s < 0 || s > t)
    throw Error("not-two-round", "partition does not split the blow-ups");
  // blow-ups inside each round must commute: no cover relation within a round
  for (int k = 0; k < t; ++k)
    for (int i : b.tree.cover[k])
      if ((i < s) == (k < s))
        throw Error("not-two-round", "blow-ups inside a round do not commute");
  auto rd = detail::exceptional_d(b);
  std::vector<Vec> r1(rd.begin(), rd.begin() + s), r2(rd.begin() + s, rd.end());
  Vec sum_r(b.x.n(), 0);
  for (auto &v : rd)
    sum_r = add(sum_r, v);
  Vec top, middle, last;
  int h = b.head();
  auto head = [&](Vec hc) {
    Vec c(b.shape.rank(), 0);
    std::copy(hc.begin(), hc.end(), c.begin());
    return b.to_d(c);
  };
  if (b.shape.model == Model::Plane) {
    top = head({1});
    middle = {};
    last = sub(top, sum_r);
  } else {
    if (n_param < -1)
      throw Error("out-of-range", "middle parameter must be at least -1");
    top = head({1, 0});
    middle = head({n_param, 1});
    last = sub(head({-(b.shape.a + n_param), 1}), sum_r);
  }
  (void)h;
  ToricSystem sys;
  for (auto &v : detail::climb(top, r1))
    sys.classes.push_back(v);
  if (!middle.empty())
    sys.classes.push_back(middle);
  auto second = detail::climb(top, r2);
  std::reverse(second.begin(), second.end());
  for (auto &v : second)
    sys.classes.push_back(v);
  sys.classes.push_back(last);
  return {b.x, b, sys};
}

// ---------------------------------------------------------------------------
// The 9-term system on the plane blown up in six points, truncated by
// deleting R_k for k > t and dropping entries that become zero.

inline ToricSystem del_pezzo_coords(int t) {
  if (t < 0 || t > 6)
    throw Error("out-of-range", "cyclic strongly exceptional systems need rank at most 7");
  auto cls = [](std::initializer_list<int> r, int hcoef) {
    Vec c(7, 0);
    c[0] = hcoef;
    for (int k : r)
      c[std::abs(k)] += k > 0 ? 1 : -1;
    return c;
  };
  std::vector<Vec> full = {cls({-1, -2, -5}, 1), cls({2}, 0),          cls({1, -2}, 0),
                           cls({-1, -3, -4}, 1), cls({4}, 0),          cls({3, -4}, 0),
                           cls({-3, -5, -6}, 1), cls({6}, 0),          cls({5, -6}, 0)};
  ToricSystem s{{}, true};
  for (auto &c : full) {
    Vec r(c.begin(), c.begin() + 1 + t);
    if (!is_zero(r))
      s.classes.push_back(r);
  }
  return s;
}

struct LatticeSystem {
  IntersectionLattice lattice;
  ToricSystem system;
};

inline LatticeSystem del_pezzo_system(int rank) {
  if (rank > 7)
    throw Error("out-of-range", "cyclic strongly exceptional systems need rank at most 7");
  if (rank < 1)
    throw Error("out-of-range", "rank must be positive");
  return {del_pezzo_lattice(rank - 1), del_pezzo_coords(rank - 1)};
}

} // namespace toric
