#pragma once

#include "toric/search.hpp"
#include "toric/systems.hpp"

#include <json.hpp>

namespace toric {

using json = nlohmann::ordered_json;

// Malformed documents raise kind "schema"; the CLI maps it to a usage error.
inline Error schema_error(const std::string &where, const std::string &what) {
  return Error("schema", where + ": " + what);
}

namespace detail {

inline const json &field(const json &j, const char *key, const std::string &where) {
  if (!j.is_object())
    throw schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

inline i64 as_int(const json &j, const std::string &where) {
  if (!j.is_number_integer())
    throw schema_error(where, "expected an integer");
  return j.get<i64>();
}

inline Vec as_vec(const json &j, const std::string &where) {
  if (!j.is_array())
    throw schema_error(where, "expected an array of integers");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline std::vector<Vec> as_vecs(const json &j, const std::string &where) {
  if (!j.is_array())
    throw schema_error(where, "expected an array of arrays");
  std::vector<Vec> v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(as_vec(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

} // namespace detail

inline json to_json(const Surface &x) {
  json j;
  json rays = json::array();
  for (auto &l : x.rays)
    rays.push_back({l[0], l[1]});
  j["rays"] = rays;
  j["a_sequence"] = x.a;
  return j;
}

inline json to_json(const BlowupHistory &h) { return {{"base", to_json(h.base)}, {"steps", h.steps}}; }

inline BlowupHistory history_from_json(const json &j, const std::string &where = "history");

// {"rays": ...} | {"a_sequence": ...} | {"history": {...}}; when both rays and
// a_sequence are given they must agree.
inline Surface surface_from_json(const json &j, const std::string &where = "surface") {
  if (!j.is_object())
    throw schema_error(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "rays" && it.key() != "a_sequence" && it.key() != "history")
      throw schema_error(where, "unknown field '" + it.key() + "'");
  std::optional<Surface> s;
  try {
    if (j.contains("rays")) {
      std::vector<Vec2> rays;
      auto v = detail::as_vecs(j["rays"], where + ".rays");
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].size() != 2)
          throw schema_error(where + ".rays[" + std::to_string(i) + "]", "expected two coordinates");
        rays.push_back({v[i][0], v[i][1]});
      }
      s = from_rays(rays);
    }
    if (j.contains("a_sequence")) {
      Vec a = detail::as_vec(j["a_sequence"], where + ".a_sequence");
      if (s) {
        if (s->a != a)
          throw schema_error(where, "a_sequence does not match the rays");
      } else {
        s = from_a_sequence(a);
      }
    }
    if (j.contains("history")) {
      Surface h = replay(history_from_json(j["history"], where + ".history")).surface;
      if (s && !(*s == h))
        throw schema_error(where, "history does not replay to the given fan");
      s = h;
    }
  } catch (const Error &e) {
    if (e.kind() == "schema")
      throw;
    throw schema_error(where, e.what());
  }
  if (!s)
    throw schema_error(where, "need one of 'rays', 'a_sequence', 'history'");
  return *s;
}

inline BlowupHistory history_from_json(const json &j, const std::string &where) {
  BlowupHistory h;
  h.base = surface_from_json(detail::field(j, "base", where), where + ".base");
  for (i64 st : detail::as_vec(detail::field(j, "steps", where), where + ".steps"))
    h.steps.push_back(static_cast<int>(st));
  return h;
}

inline json to_json(const Surface &x, const ToricSystem &s) {
  return {{"surface", to_json(x)}, {"classes", s.classes}, {"flavor", s.anchored ? "anchored" : "free"}};
}

inline SurfaceSystem system_from_json(const json &j, const std::string &where = "system") {
  Surface x = surface_from_json(detail::field(j, "surface", where), where + ".surface");
  ToricSystem s;
  s.classes = detail::as_vecs(detail::field(j, "classes", where), where + ".classes");
  if (s.classes.empty())
    throw schema_error(where + ".classes", "empty system");
  for (std::size_t i = 0; i < s.classes.size(); ++i)
    if (static_cast<int>(s.classes[i].size()) != x.n())
      throw schema_error(where + ".classes[" + std::to_string(i) + "]",
                         "d-vector length must equal the number of rays");
  if (j.contains("flavor")) {
    const json &f = j["flavor"];
    if (!f.is_string() || (f != "anchored" && f != "free"))
      throw schema_error(where + ".flavor", "expected \"anchored\" or \"free\"");
    s.anchored = f == "anchored";
  }
  return {x, s};
}

inline json to_json(const Cohomology &h) {
  return {{"h0", h.h0}, {"h1", h.h1}, {"h2", h.h2}, {"chi", h.chi}};
}

inline json to_json(const SearchBounds &b) {
  json j{{"d_floor", b.d_floor}, {"slack", b.slack}, {"s_lo", b.s_lo}, {"s_hi", b.s_hi}};
  j["d_ceiling"] = b.d_ceiling ? json(*b.d_ceiling) : json(nullptr);
  return j;
}

inline SearchBounds bounds_from_json(const json &j, const std::string &where = "bounds") {
  if (!j.is_object())
    throw schema_error(where, "expected an object");
  SearchBounds b;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &k = it.key();
    std::string w = where + "." + k;
    if (k == "d_floor")
      b.d_floor = detail::as_int(*it, w);
    else if (k == "slack")
      b.slack = detail::as_int(*it, w);
    else if (k == "s_lo")
      b.s_lo = detail::as_int(*it, w);
    else if (k == "s_hi")
      b.s_hi = detail::as_int(*it, w);
    else if (k == "d_ceiling")
      b.d_ceiling = it->is_null() ? std::nullopt : std::optional<Vec>(detail::as_vec(*it, w));
    else
      throw schema_error(where, "unknown field '" + k + "'");
  }
  return b;
}

} // namespace toric
