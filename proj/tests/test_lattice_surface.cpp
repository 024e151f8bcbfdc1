#include "toric/tables.hpp"

#include <doctest.h>

#include <random>

using namespace toric;

TEST_CASE("model lattices: forms and Euler characteristics") {
  IntersectionLattice P2 = model_lattice({Model::Plane, 0, 0});
  auto H = make_class(P2, {1});
  CHECK(intersect(H, H) == 1);
  CHECK(euler_char(H) == 3);
  CHECK(euler_char(-H) == 0);
  CHECK(euler_char(make_class(P2, {3})) == 10);
  CHECK(is_numerically_left_orthogonal(H));

  IntersectionLattice F2 = model_lattice({Model::Hirzebruch, 2, 0});
  auto P = make_class(F2, {1, 0}), Q = make_class(F2, {0, 1});
  CHECK(intersect(P, Q) == 1);
  CHECK(intersect(P, P) == 0);
  CHECK(intersect(Q, Q) == 2);
  Vec d{-1, 3}; // 3Q - P
  CHECK(F2.euler(neg(d)) == 2);
  CHECK(euler_char_closed_form(d, {Model::Hirzebruch, 2, 0}, -1) == 2);
  CHECK(euler_char_closed_form(d, {Model::Hirzebruch, 2, 0}, 1) == F2.euler(d));

  ModelShape s{Model::Plane, 0, 3};
  IntersectionLattice L = model_lattice(s);
  for (int i = 1; i <= 3; ++i) {
    Vec r(4, 0);
    r[i] = 1;
    CHECK(L.euler(neg(r)) == 0);
    CHECK(L.form(r, r) == -1);
  }
  CHECK(project(Vec{3, -2, -1, -1}, s, 1) == Vec{3, -2, 0, 0});
  CHECK_THROWS_AS(project(Vec{3, -2, -1, -1}, s, 4), Error);
}

TEST_CASE("lattice errors") {
  CHECK_THROWS_AS(IntersectionLattice(std::vector<Vec>{{1, 0}, {1, 1}}), Error);
  IntersectionLattice A = model_lattice({Model::Plane, 0, 1}), B = model_lattice({Model::Plane, 0, 1});
  CHECK_THROWS_AS(intersect(make_class(A, {1, 0}), make_class(B, {1, 0})), Error);
  CHECK_THROWS_AS(make_class(A, {1}), Error);
  IntersectionLattice bare(std::vector<Vec>{{2}});
  CHECK_THROWS_AS(bare.euler({1}), Error);
}

TEST_CASE("reflections and root sets") {
  IntersectionLattice L = model_lattice({Model::Plane, 0, 2});
  auto R1 = make_class(L, {0, 1, 0}), R2 = make_class(L, {0, 0, 1});
  auto K = make_class(L, L.antik());
  CHECK(reflect(R1, 2, R1).coords == neg(R1.coords));
  CHECK(reflect(R1, 2, K).coords == add(K.coords, scale(2, R1.coords)));
  CHECK(in_root_set(R1, 1));
  CHECK(in_root_set(R1 - R2, 0));
  CHECK_FALSE(in_root_set(R1 - R2, 1));
  auto D = make_class(L, {2, -1, 0});
  CHECK(intersect(reflect(R1 - R2, 1, D), reflect(R1 - R2, 1, D)) == intersect(D, D));
  CHECK_THROWS_AS(reflect(R1, 1, D), Error);
}

TEST_CASE("fans from rays and from a-sequences") {
  Surface p = plane();
  CHECK(p.a == Vec{1, 1, 1});
  Surface f2 = hirzebruch(2);
  CHECK(f2.a == Vec{0, -2, 0, 2});
  CHECK(from_a_sequence(f2.a) == f2);
  Surface x = from_a_sequence(counterexample_a());
  CHECK(x.n() == 7);
  CHECK(from_rays(x.rays).a == counterexample_a());
  CHECK_THROWS_AS(from_rays({{1, 0}, {0, 1}, {-1, 0}}), Error);
  CHECK_THROWS_AS(from_rays({{2, 0}, {0, 1}, {-1, -1}}), Error);
  CHECK_THROWS_AS(from_a_sequence({0, 0, 0}), Error);
  CHECK_THROWS_AS(from_a_sequence({1, 1, 1, 1, -7}), Error);
}

TEST_CASE("blow-up and blow-down") {
  CHECK(isomorphic(blow_up(plane(), 1), hirzebruch(1)));
  CHECK(canonical_form(blow_up(hirzebruch(0), 3)) == canonical_form(Vec{0, 0, -1, -1, -1}));
  Surface f1 = hirzebruch(1);
  int e = static_cast<int>(std::find(f1.a.begin(), f1.a.end(), -1) - f1.a.begin());
  CHECK(isomorphic(blow_down(f1, e), plane()));
  Surface six = from_a_sequence({-1, -1, -1, -1, -1, -1});
  CHECK(total(blow_down(six, 0).a) == -3);
  CHECK_THROWS_AS(blow_down(hirzebruch(0), 0), Error);
  CHECK_THROWS_AS(blow_down(hirzebruch(1), 5), Error);
  Surface y = blow_up(hirzebruch(3), 2);
  CHECK(y.rays[3] == Vec2{-1, 2});
  CHECK(y.a[3] == -1);
}

TEST_CASE("intersection numbers on surfaces") {
  std::mt19937_64 rng(7);
  std::vector<Surface> xs = {plane(), hirzebruch(0), hirzebruch(3), from_a_sequence(counterexample_a())};
  for (int k = 0; k < 6; ++k)
    xs.push_back(blow_up(xs.back(), static_cast<int>(rng() % xs.back().n())));
  for (auto &x : xs) {
    int n = x.n();
    for (int i = 0; i < n; ++i) {
      Vec di = invariant_divisor(x, i);
      CHECK(is_class(x, di));
      CHECK(self_intersection(x, di) == x.a[i]);
      CHECK(intersect(x, di, invariant_divisor(x, x.next(i))) == 1);
      if (n > 3)
        CHECK(intersect(x, di, invariant_divisor(x, (i + 2) % n)) == 0);
      CHECK(intersect(x, anticanonical(x), di) == x.a[i] + 2);
    }
    Vec antik(n, 0);
    for (int i = 0; i < n; ++i)
      antik = add(antik, invariant_divisor(x, i));
    CHECK(antik == anticanonical(x));
    CHECK(self_intersection(x, anticanonical(x)) == 12 - n);
    // random classes satisfy sum d_i l_i = 0 and have integral Euler characteristic
    for (int t = 0; t < 20; ++t) {
      Vec c(n);
      for (auto &v : c)
        v = static_cast<i64>(rng() % 9) - 4;
      Vec d = d_from_c(x, c);
      CHECK(is_class(x, d));
      CHECK(lattice_coords(x, d_from_lattice_coords(x, lattice_coords(x, d))) == lattice_coords(x, d));
      IntersectionLattice L = surface_lattice(x);
      CHECK(L.euler(lattice_coords(x, d)) == euler_char(x, d));
    }
  }
  CHECK_THROWS_AS(c_representative(plane(), {1, 0, 0}), Error);
}

TEST_CASE("anticanonical status and enumeration") {
  CHECK(anticanonical_status(from_a_sequence({-1, -1, -1, -1, -1, -1})) == AnticanonicalStatus::Ample);
  CHECK(anticanonical_status(hirzebruch(2)) == AnticanonicalStatus::Nef);
  CHECK(anticanonical_status(from_a_sequence(counterexample_a())) == AnticanonicalStatus::NotNef);
  CHECK(std::string(to_string(AnticanonicalStatus::NotNef)) == "not-nef");
  auto five = enumerate_surfaces(5, -2, 10);
  std::set<Vec> got;
  for (auto &a : five)
    got.insert(canonical_form(a));
  CHECK(got == std::set<Vec>{canonical_form(Vec{0, 0, -1, -1, -1}), canonical_form(Vec{0, -2, -1, -1, 1})});
  CHECK(enumerate_surfaces(3, -2, 10).size() == 1);
}

TEST_CASE("two-step blow-downs") {
  CHECK_FALSE(two_step_blowdown(from_a_sequence(counterexample_a())).has_value());
  auto w = two_step_blowdown(from_a_sequence({-2, -2, -1, -3, -2, -1, -1, 0}));
  REQUIRE(w.has_value());
  CHECK(w->first.size() + w->second.size() == 4);
  CHECK(two_step_blowdown(hirzebruch(5)).has_value());
  CHECK_THROWS_AS(two_step_blowdown(plane()), Error);
  for (auto &s : nef_surfaces())
    if (s.a.size() > 3)
      CHECK(two_step_blowdown(from_a_sequence(s.a)).has_value());
}

TEST_CASE("minimal model program and histories") {
  Surface x = from_a_sequence({-1, -2, -1, -2, -1, -2, -1, -2});
  auto seqs = minimal_model_program(x);
  REQUIRE_FALSE(seqs.empty());
  for (auto &s : seqs) {
    Contracted c = contract(x, s);
    CHECK(c.surface.n() <= 4);
  }
  BlowupHistory h{plane(), {0, 1, 1}};
  Replay r = replay(h);
  CHECK(r.surface.n() == 6);
  BlowupTree t = partial_order(h);
  // the second blow-up hits the ray made by the first, the third hits the second
  CHECK(t.geq[1][0]);
  CHECK(t.geq[2][1]);
  CHECK(t.geq[2][0]);
  CHECK_FALSE(t.geq[0][1]);
  CHECK(t.comparable(0, 2));
  BlowupHistory h2{plane(), {0, 2}};
  CHECK_FALSE(partial_order(h2).comparable(0, 1));
  CHECK_THROWS_AS(replay({plane(), {5}}), Error);
}

TEST_CASE("minimal-model bases") {
  auto b = straightened_fixtures()[1].where.basis();
  CHECK(b.shape.model == Model::Plane);
  CHECK(b.t() == 5);
  Vec c = parse_symbols(b, "4H-2R1-2R2-2R3-R4-R5");
  CHECK(b.to_coords(b.to_d(c)) == c);
  CHECK(format_coords(b, c) == "4H-2R1-2R2-2R3-R4-R5");
  CHECK(coords_from_labels(b, Vec{4, -2, -2, -2, -1, -1}) == c);
  CHECK(b.to_d(Vec{3, -1, -1, -1, -1, -1}) == anticanonical(b.x));
  IntersectionLattice L = model_lattice(b.shape);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Vec u(6), v(6);
    for (int k = 0; k < 6; ++k) {
      u[k] = static_cast<i64>(rng() % 7) - 3;
      v[k] = static_cast<i64>(rng() % 7) - 3;
    }
    CHECK(intersect(b.x, b.to_d(u), b.to_d(v)) == L.form(u, v));
    CHECK(b.to_coords(b.to_d(u)) == u);
  }
  CHECK_THROWS_AS(parse_symbols(b, "3H-R9"), Error);
  CHECK_THROWS_AS(parse_symbols(b, "3P"), Error);
  CHECK_THROWS_AS(parse_symbols(b, ""), Error);
  CHECK_THROWS_AS(basis_from_marked(b.x, {1}), Error);

  auto f = make_basis(hirzebruch(2), {});
  CHECK(f.shape == ModelShape{Model::Hirzebruch, 2, 0});
  Vec q = f.to_d({0, 1});
  CHECK(self_intersection(f.x, q) == 2);
  CHECK(self_intersection(f.x, f.to_d({1, 0})) == 0);
}
