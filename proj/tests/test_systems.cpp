#include "toric/tables.hpp"

#include <doctest.h>

#include <random>

using namespace toric;

namespace {

ToricSystem parse_system(const MinimalModelBasis &b, std::initializer_list<const char *> cls) {
  ToricSystem s;
  for (auto c : cls)
    s.classes.push_back(parse_divisor(b, c));
  return s;
}

} // namespace

TEST_CASE("invariant systems and exceptional sequences") {
  for (auto &ns : nef_surfaces()) {
    Surface x = from_a_sequence(ns.a);
    ToricSystem s = invariant_system(x);
    CHECK(validate(x, s).ok);
    CHECK(isomorphic(gale_dual(x, s), x));
  }
  Surface p = plane();
  ToricSystem hhh = from_exceptional_sequence(p, {Vec{0, 0, 0}, Vec{1, 1, 1}, Vec{2, 2, 2}});
  CHECK(hhh.classes == std::vector<Vec>(3, Vec{1, 1, 1}));
  CHECK(validate(p, hhh).ok);
  CHECK(gale_dual(p, hhh) == p);
  CHECK(is_cyclic_strongly_exceptional(p, hhh));
  CHECK_THROWS_AS(from_exceptional_sequence(p, {Vec{0, 0, 0}}), Error);
}

TEST_CASE("validation reports violations") {
  Surface p = plane();
  auto v = validate(p, ToricSystem{{{1, 1, 1}, {1, 1, 1}, {2, 2, 2}}});
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.violations.empty());
  CHECK_FALSE(validate(p, ToricSystem{{{1, 0, 0}, {1, 1, 1}, {1, 1, 1}}}).ok);
  CHECK_FALSE(validate(p, ToricSystem{{{1, 1, 1}, {1, 1, 1}}}).ok);
  IntersectionLattice L = model_lattice({Model::Plane, 0, 0});
  CHECK(validate(L, ToricSystem{{{1}, {1}, {1}}}).ok);
  CHECK_FALSE(validate(model_lattice({Model::Plane, 0, 0}), ToricSystem{{{1}, {1}, {-2}}}).ok);
  CHECK_THROWS_AS(gale_dual(p, ToricSystem{{{1, 1, 1}, {1, 1, 1}, {2, 2, 2}}}), Error);
}

TEST_CASE("Gale duals of the four-term families") {
  for (i64 a = 0; a <= 3; ++a)
    for (i64 s = -3; s <= 3; ++s) {
      auto b = make_basis(hirzebruch(a), {});
      ToricSystem sys = pull_back(b, hirzebruch_family(a, 1, s));
      REQUIRE(validate(b.x, sys).ok);
      i64 k = a + 2 * s;
      CHECK(canonical_form(gale_dual(b.x, sys)) == canonical_form(hirzebruch(k < 0 ? -k : k)));
      IntersectionLattice L = model_lattice(b.shape);
      CHECK(canonical_form(gale_dual(L, ToricSystem{hirzebruch_family(a, 1, s)})) ==
            canonical_form(hirzebruch(k < 0 ? -k : k)));
    }
}

TEST_CASE("blow-down commutes with the Gale dual") {
  int checked = 0;
  for (auto &bs : table2_systems(true)) {
    const ToricSystem &s = bs.system;
    Surface y = gale_dual(bs.surface, s);
    for (int i = 0; i < s.n(); ++i) {
      auto r = matching_ray(bs.surface, s.classes[i]);
      if (!r)
        continue;
      auto down = blow_down_system(bs.surface, s, i, *r);
      CHECK(validate(down.surface, down.system).ok);
      CHECK(y.a[i] == -1);
      CHECK(isomorphic(gale_dual(down.surface, down.system), blow_down(y, i)));
      ++checked;
    }
  }
  CHECK(checked > 10);
  // in an abstract lattice the F1 system blows down to the plane system
  auto dp = del_pezzo_system(2);
  REQUIRE(dp.system.n() == 4);
  auto down = blow_down_system(dp.lattice, dp.system, 1);
  CHECK(down.classes == std::vector<Vec>(3, Vec{1, 0}));
  CHECK_THROWS_AS(blow_down_system(dp.lattice, dp.system, 0), Error);
  CHECK_THROWS_AS(blow_down_system(plane(), ToricSystem{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}, 0, 0), Error);
}

TEST_CASE("exceptionality labels of the four-term families") {
  for (i64 a = 0; a <= 3; ++a) {
    ModelShape m{Model::Hirzebruch, a, 0};
    auto b = make_basis(hirzebruch(a), {});
    CohomologyCache cc(b.x);
    for (auto &st : standard_systems(m, -2, 4)) {
      CAPTURE(a);
      CAPTURE(st.s);
      CAPTURE(static_cast<int>(st.type));
      ToricSystem sys = pull_back(b, st.coords);
      REQUIRE(validate(b.x, sys).ok);
      CHECK(is_exceptional(cc, sys) == st.exceptional);
      CHECK(is_strongly_exceptional(cc, sys) == st.strong);
      CHECK(is_cyclic_strongly_exceptional(cc, sys) == st.cyclic);
    }
  }
}

TEST_CASE("cyclic strongly exceptional systems") {
  auto five_b = build(cyclic_fixtures()[0]);
  CHECK(five_b.name == "5b");
  CHECK(validate(five_b.surface, five_b.system).ok);
  CHECK(is_cyclic_strongly_exceptional(five_b.surface, five_b.system));
  CHECK(nef_surface_name(gale_dual(five_b.surface, five_b.system)) == "5a");
  for (int r = 1; r <= 7; ++r) {
    auto dp = del_pezzo_system(r);
    CHECK(validate(dp.lattice, dp.system).ok);
    CHECK(numeric_cyclic_strong_check(dp.lattice, dp.system));
  }
  // the rotations and the reversal preserve cyclic strong exceptionality
  CohomologyCache cc(five_b.surface);
  for (int k = 0; k < five_b.system.n(); ++k) {
    CHECK(is_cyclic_strongly_exceptional(cc, rotate(five_b.system, k)));
    CHECK(is_cyclic_strongly_exceptional(cc, reverse_cyclic(rotate(five_b.system, k))));
  }
  CHECK(is_strongly_exceptional(cc, reverse_strong(five_b.system)));
}

TEST_CASE("elementary moves at square -2 entries preserve the axioms") {
  std::mt19937_64 rng(5);
  int moved = 0;
  for (auto &bs : table2_systems(true)) {
    ToricSystem s = bs.system;
    for (int t = 0; t < 10; ++t) {
      std::vector<int> ok;
      for (int i = 0; i < s.n(); ++i) {
        bool minus_two = self_intersection(bs.surface, s.classes[i]) == -2;
        CHECK((euler_char(bs.surface, s.classes[i]) == 0) == minus_two);
        if (minus_two)
          ok.push_back(i);
        else
          CHECK_FALSE(validate(bs.surface, elementary_move(s, i)).ok);
      }
      if (ok.empty())
        break;
      int i = ok[rng() % ok.size()];
      ToricSystem m = elementary_move(s, i);
      CHECK(validate(bs.surface, m).ok);
      CHECK(elementary_move(m, i) == s);
      s = m;
      ++moved;
    }
  }
  CHECK(moved > 20);
}

TEST_CASE("normal form on 8a") {
  auto b = straightened_fixtures()[1].where.basis();
  CohomologyCache cc(b.x);
  ToricSystem s = parse_system(b, {"-R2+R4", "-R4+R5", "H-R3-R5", "-R1+R3", "2H-R2-R3-R4-R5", "-H+R2+R4+R5",
                                   "2H-R1-R2-R3-R4-R5", "-H+R1+R2+R3"});
  REQUIRE(validate(b.x, s).ok);
  REQUIRE(is_strongly_exceptional(cc, s));
  CHECK_FALSE(is_normal_form(cc, b, s, false));
  ToricSystem nf = normal_form(cc, b, s, false);
  CHECK(is_normal_form(cc, b, nf, false));
  CHECK(is_strongly_exceptional(cc, nf));
  CHECK(validate(b.x, nf).ok);
  CHECK(nf.classes.back() == parse_divisor(b, "-H+R1+R2+R3"));
  CHECK(interval_sum(nf, 0, 7) == parse_divisor(b, "4H-2R1-2R2-2R3-R4-R5"));
  // inverting the last entry leaves 2H - R4 - R5, whose part on the plane is 2H
  ToricSystem inv = elementary_move(nf, 7);
  CHECK(validate(b.x, inv).ok);
  Vec head = interval_sum(inv, 0, 7);
  CHECK(head == parse_divisor(b, "2H-R4-R5"));
  CHECK(b.project_d(head, 0) == parse_divisor(b, "2H"));
  CHECK(normal_form(cc, b, nf, false) == nf);
  CHECK_THROWS_AS(normal_form(cc, b, ToricSystem{invariant_system(b.x)}, false), Error);
}

TEST_CASE("admissible augmentations are the exceptional ones") {
  for (auto &h : {BlowupHistory{plane(), {0, 1}}, BlowupHistory{plane(), {0, 0, 3}}, BlowupHistory{hirzebruch(1), {0, 1}}}) {
    auto b = make_basis(h);
    CohomologyCache cc(b.x);
    int total = 0, admissible = 0;
    all_standard_augmentations(b, -1, 1, [&](const Augmentation &aug) {
      ++total;
      admissible += aug.admissible;
      CHECK(validate(b.x, aug.system).ok);
      CHECK(aug.admissible == is_exceptional(cc, aug.system));
      return true;
    });
    CHECK(total > admissible);
    CHECK(admissible > 0);
  }
  // R2 sits over R1: an entry R2 - R1 is a vertical violation, R1 - R2 is not
  auto b = make_basis(BlowupHistory{plane(), {0, 1}});
  REQUIRE(b.tree.geq[1][0]);
  CHECK(is_vertical_violation(b, Vec{0, -1, 1}));
  CHECK_FALSE(is_vertical_violation(b, Vec{0, 1, -1}));
  CHECK_FALSE(is_vertical_violation(b, Vec{1, 1, -1}));
}

TEST_CASE("de-augmentation") {
  auto b = make_basis(BlowupHistory{plane(), {0}});
  ToricSystem s = augment(pull_back(b, {{1}, {1}, {1}}), 0, b.to_d({0, 1}));
  auto one = de_augment(b.x, s);
  REQUIRE(one.has_value());
  CHECK(one->surface == plane());
  CHECK(one->system.classes == std::vector<Vec>(3, Vec{1, 1, 1}));
  CHECK_FALSE(de_augment(plane(), ToricSystem{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}).has_value());
  for (auto &bs : table2_systems(true)) {
    CAPTURE(bs.name);
    auto chain = de_augment_chain(bs.surface, bs.system);
    REQUIRE(chain.found);
    CHECK(chain.base.n() <= 4);
    CHECK(validate(chain.base, chain.standard).ok);
    CHECK(is_exceptional(chain.base, chain.standard));
    int removed = 0;
    for (auto &st : chain.steps)
      removed += st.kind == ChainStep::Remove;
    CHECK(removed == bs.surface.n() - chain.base.n());
  }
}
