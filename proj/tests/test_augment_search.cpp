#include "toric/tables.hpp"

#include <doctest.h>

#include <random>

using namespace toric;

TEST_CASE("standard systems on the minimal models") {
  auto p = standard_systems(ModelShape{Model::Plane, 0, 0}, -1, 5);
  REQUIRE(p.size() == 1);
  CHECK(p[0].coords == std::vector<Vec>(3, Vec{1}));
  CHECK(standard_systems(plane()).front().classes == std::vector<Vec>(3, Vec{1, 1, 1}));

  auto f0 = standard_systems(ModelShape{Model::Hirzebruch, 0, 0}, -2, 3);
  for (auto &st : f0)
    if (st.type == StandardSystem::TypeII)
      for (auto &ti : f0)
        if (ti.type == StandardSystem::TypeI && ti.s == st.s)
          for (int i = 0; i < 4; ++i) {
            CHECK(st.coords[i] == Vec{ti.coords[i][1], ti.coords[i][0]});
            CHECK(st.strong == ti.strong);
            CHECK(st.cyclic == ti.cyclic);
          }
  for (auto &st : standard_systems(ModelShape{Model::Hirzebruch, 2, 0}, -1, 2))
    if (st.type == StandardSystem::TypeII)
      CHECK(st.cyclic == (st.s == 0));
  CHECK(standard_systems(ModelShape{Model::Hirzebruch, 3, 0}, -1, 2).size() == 4);
  for (i64 a = 0; a <= 3; ++a)
    for (auto &s : standard_systems(hirzebruch(a)))
      CHECK(validate(hirzebruch(a), s).ok);
}

TEST_CASE("augmentation and its inverse") {
  auto b = make_basis(BlowupHistory{plane(), {0}});
  ToricSystem s = pull_back(b, {{1}, {1}, {1}});
  Vec r1 = b.to_d({0, 1});
  ToricSystem t = augment(s, 0, r1);
  std::vector<Vec> want = {b.to_d({1, -1}), r1, b.to_d({1, -1}), b.to_d({1, 0})};
  CHECK(t.classes == want);
  CHECK(validate(b.x, t).ok);
  CHECK(is_cyclic_strongly_exceptional(b.x, t));
  CHECK(de_augment_classes(t, 1) == s);
  CHECK_THROWS_AS(augment(s, 3, r1), Error);

  auto b2 = make_basis(BlowupHistory{plane(), {0, 1}});
  CohomologyCache cc(b2.x);
  ToricSystem base = pull_back(b2, {{1}, {1}, {1}});
  int strong = 0;
  for (int s1 = 0; s1 < 3; ++s1)
    for (int s2 = 0; s2 < 4; ++s2) {
      ToricSystem u = augment(augment(base, s1, b2.to_d({0, 1, 0})), s2, b2.to_d({0, 0, 1}));
      CHECK(validate(b2.x, u).ok);
      CHECK(de_augment_classes(de_augment_classes(u, s2 + 1), s1 + 1) == base);
      strong += is_strongly_exceptional(cc, u);
    }
  CHECK(strong > 0);
}

TEST_CASE("the blown-up counterexample carries a strongly exceptional family") {
  auto b = counterexample_blowup_basis();
  CHECK(canonical_form(b.x) == canonical_form(Vec{-2, -2, -1, -3, -2, -1, -1, 0}));
  CHECK(b.shape == ModelShape{Model::Hirzebruch, 1, 4});
  CohomologyCache cc(b.x);
  for (i64 s = -1; s <= 3; ++s) {
    CAPTURE(s);
    ToricSystem sys = counterexample_blowup_system(b, s);
    CHECK(validate(b.x, sys).ok);
    CHECK(is_strongly_exceptional(cc, sys));
  }
  CHECK(two_step_blowdown(b.x).has_value());
}

TEST_CASE("two-round generators") {
  {
    TwoRound tr = two_round(hirzebruch(1), {}, {0, 2});
    auto g = two_round_system(tr);
    CHECK(validate(g.surface, g.system).ok);
    CHECK(is_strongly_exceptional(g.surface, g.system));
  }
  {
    TwoRound tr = two_round(plane(), {0, 1, 2}, {0, 2, 4});
    auto g = two_round_system(tr);
    CHECK(g.surface.n() == 9);
    CHECK(validate(g.surface, g.system).ok);
    CHECK(is_strongly_exceptional(g.surface, g.system));
  }
  for (i64 np = -1; np <= 2; ++np) {
    TwoRound tr = two_round(hirzebruch(2), {1, 3}, {0, 4});
    auto g = two_round_system(tr, np);
    CHECK(validate(g.surface, g.system).ok);
    CHECK(is_strongly_exceptional(g.surface, g.system));
  }
  CHECK_THROWS_AS(two_round_system(two_round(hirzebruch(0), {0}, {}), -2), Error);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 10; ++t) {
    auto g = two_round_system(random_two_round(rng, 8));
    CHECK(g.surface.n() <= 10);
    CHECK(validate(g.surface, g.system).ok);
    CHECK(is_strongly_exceptional(g.surface, g.system));
  }
}

TEST_CASE("truncated del Pezzo systems") {
  auto r7 = del_pezzo_system(7);
  CHECK(r7.system.n() == 9);
  CHECK(validate(r7.lattice, r7.system).ok);
  auto r2 = del_pezzo_system(2);
  CHECK(r2.system.classes == std::vector<Vec>{{1, -1}, {0, 1}, {1, -1}, {1, 0}});
  CHECK(r2.system.n() == 4);
  CHECK_THROWS_AS(del_pezzo_system(8), Error);
  CHECK_THROWS_AS(del_pezzo_system(0), Error);
  auto five_a = del_pezzo_on("5a", from_a_sequence({0, 0, -1, -1, -1}));
  REQUIRE(five_a.has_value());
  CHECK(is_cyclic_strongly_exceptional(five_a->surface, five_a->system));
}

TEST_CASE("searches on the minimal models") {
  auto p = search_strongly_exceptional(plane(), SearchBounds{}, false);
  REQUIRE(p.hits.size() == 1);
  CHECK(p.hits[0].classes == std::vector<Vec>(3, Vec{1, 1, 1}));
  CHECK(search_strongly_exceptional(plane(), SearchBounds{}, true).hits.size() == 1);

  auto b = make_basis(hirzebruch(2), {});
  CohomologyCache cc(b.x);
  for (bool cyclic : {false, true}) {
    auto r = search_strongly_exceptional(cc, uniform_bounds(b.x, -1, 6), cyclic);
    REQUIRE_FALSE(r.hits.empty());
    for (auto &h : r.hits) {
      std::vector<Vec> coords;
      for (auto &d : h.classes)
        coords.push_back(b.to_coords(d));
      bool in_family = false;
      for (int type = 1; type <= 2; ++type)
        for (i64 s = -8; s <= 8; ++s) {
          auto fam = hirzebruch_family(2, type, s);
          for (int rot = 0; rot < 4; ++rot) {
            bool eq = true;
            for (int i = 0; i < 4; ++i)
              eq = eq && coords[i] == fam[(i + rot) % 4];
            in_family = in_family || eq;
          }
        }
      CHECK(in_family);
      CHECK(is_strongly_exceptional(cc, h));
      if (cyclic)
        CHECK(is_cyclic_strongly_exceptional(cc, h));
    }
  }
}

TEST_CASE("no strongly exceptional system on the counterexample in the default box") {
  Surface x = from_a_sequence(counterexample_a());
  auto r = search_strongly_exceptional(x, SearchBounds{}, false);
  CHECK(r.hits.empty());
  CHECK(r.candidates > 0);
}

TEST_CASE("parallel search is deterministic") {
  Surface x = from_a_sequence({-1, -1, -1, -1, -1, -1});
  auto one = search_strongly_exceptional(x, SearchBounds{}, true, 1);
  auto three = search_strongly_exceptional(x, SearchBounds{}, true, 3);
  CHECK(one.hits == three.hits);
  CHECK(one.candidates == three.candidates);
  REQUIRE_FALSE(one.hits.empty());
  for (auto &h : one.hits)
    CHECK(canonical_cyclic(h) == h);
}

TEST_CASE("augmentation corners") {
  CHECK(has_augmentation_corner(plane(), Vec{1, 1, 1}));
  CHECK_FALSE(has_augmentation_corner(plane(), Vec{-1, -1, -1}));
  auto c = augmentation_corner(plane(), Vec{2, 2, 2});
  REQUIRE(c.has_value());
}
