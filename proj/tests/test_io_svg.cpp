#include "toric/io.hpp"
#include "toric/svg.hpp"
#include "toric/tables.hpp"

#include <doctest.h>

using namespace toric;

namespace {

std::string schema_kind(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  return "";
}

std::size_t count(const std::string &s, const std::string &needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1))
    ++n;
  return n;
}

} // namespace

TEST_CASE("surface documents round trip") {
  for (auto &ns : nef_surfaces()) {
    Surface x = from_a_sequence(ns.a);
    json j = to_json(x);
    CHECK(surface_from_json(j) == x);
    CHECK(json::parse(j.dump()) == j);
    CHECK(surface_from_json(json{{"a_sequence", ns.a}}) == x);
  }
  BlowupHistory h{hirzebruch(0), {0, 2, 3}};
  json hj = to_json(h);
  BlowupHistory back = history_from_json(hj);
  CHECK(back.base == h.base);
  CHECK(back.steps == h.steps);
  CHECK(surface_from_json(json{{"history", hj}}) == replay(h).surface);
}

TEST_CASE("system and bounds documents round trip") {
  for (auto &bs : table2_systems(true)) {
    json j = to_json(bs.surface, bs.system);
    auto back = system_from_json(json::parse(j.dump()));
    CHECK(back.surface == bs.surface);
    CHECK(back.system == bs.system);
  }
  SearchBounds b;
  b.slack = 2;
  b.d_ceiling = Vec{1, 2, 3};
  SearchBounds r = bounds_from_json(to_json(b));
  CHECK(r.slack == 2);
  CHECK(r.d_ceiling == b.d_ceiling);
  CHECK(to_json(bounds_from_json(to_json(SearchBounds{}))) == to_json(SearchBounds{}));
  CHECK(to_json(Cohomology{10, 0, 0, 10}).dump() == R"({"h0":10,"h1":0,"h2":0,"chi":10})");
}

TEST_CASE("malformed documents raise schema errors") {
  CHECK(schema_kind([] { surface_from_json(json::parse(R"({"rays": 3})")); }) == "schema");
  CHECK(schema_kind([] { surface_from_json(json::parse(R"({"a_sequence": [0, 0, 0]})")); }) == "schema");
  CHECK(schema_kind([] { surface_from_json(json::parse(R"({"colour": 1, "a_sequence": [1, 1, 1]})")); }) == "schema");
  CHECK(schema_kind([] { surface_from_json(json::parse(R"({})")); }) == "schema");
  CHECK(schema_kind([] {
          surface_from_json(json::parse(R"({"rays": [[1,0],[0,1],[-1,-1]], "a_sequence": [0,1,2]})"));
        }) == "schema");
  CHECK(schema_kind([] { surface_from_json(json::parse(R"({"rays": [[1,0,0],[0,1],[-1,-1]]})")); }) == "schema");
  CHECK(schema_kind([] {
          system_from_json(json::parse(R"({"surface": {"a_sequence": [1,1,1]}, "classes": [[1,1]]})"));
        }) == "schema");
  CHECK(schema_kind([] {
          system_from_json(json::parse(R"({"surface": {"a_sequence": [1,1,1]}, "classes": []})"));
        }) == "schema");
  CHECK(schema_kind([] {
          system_from_json(
              json::parse(R"({"surface": {"a_sequence": [1,1,1]}, "classes": [[1,1,1]], "flavor": "loose"})"));
        }) == "schema");
  CHECK(schema_kind([] { bounds_from_json(json::parse(R"({"slack": "big"})")); }) == "schema");
  CHECK(schema_kind([] { bounds_from_json(json::parse(R"({"floor": 1})")); }) == "schema");
  CHECK(schema_kind([] { history_from_json(json::parse(R"({"steps": [0]})")); }) == "schema");
}

TEST_CASE("SVG figures") {
  auto b = straightened_fixtures()[1].where.basis();
  Vec d = parse_divisor(b, "4H-2R1-2R2-2R3-R4-R5");
  std::string one = render_svg(b.x, d, &b);
  CHECK(one == render_svg(b.x, d, &b));
  CHECK(one.rfind("<svg", 0) == 0);
  CHECK(one.find("</svg>") != std::string::npos);
  CHECK(count(one, "<line ") == static_cast<std::size_t>(b.x.n()));
  CHECK(count(one, "<polygon ") == 5);
  auto h = cohomology_numbers(b.x, d);
  std::string wide = render_svg(b.x, d, &b, SvgOptions{12, 16});
  CHECK(count(wide, "r=\"4\"") == static_cast<std::size_t>(h.h0));
  CHECK(count(wide, "r=\"7\"") == static_cast<std::size_t>(cohomology_numbers(b.x, neg(d)).h2));
  std::string plain = render_svg(b.x, d);
  CHECK(count(plain, "<polygon ") == 0);

  Surface p = plane();
  std::string four = render_svg(p, Vec{4, 4, 4});
  CHECK(count(four, "r=\"4\"") == 15);
  CHECK(count(four, "r=\"7\"") == 3); // h2(-4H) = h0(H)
  CHECK(count(render_svg(p, Vec{-4, -4, -4}), "r=\"4\"") == 0);
  std::string small = render_svg(p, Vec{3, 3, 3}, nullptr, SvgOptions{3, 10});
  CHECK(small.find("width=\"80\"") != std::string::npos);
  CHECK_THROWS_AS(render_svg(p, Vec{1, 0, 0}), Error);
  CHECK(detail::fmt_px(1, 3) == "0.333");
  CHECK(detail::fmt_px(-1, 2) == "-0.5");
  CHECK(detail::fmt_px(-7, 4) == "-1.75");
  CHECK(detail::fmt_px(64, 1) == "64");
}
