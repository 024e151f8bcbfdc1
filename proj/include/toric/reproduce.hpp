#pragma once

#include "toric/tables.hpp"

#include <sstream>

namespace toric {

// Plain-text comparison of a computed table against the embedded one. Known
// residuals are pinned: ok holds only if the differences are exactly those.
struct TableReport {
  int table = 0;
  bool ok = false;
  std::string summary;
  std::vector<std::string> lines;
};

namespace detail {

inline std::string join(const std::vector<std::string> &v, const char *sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + v[i];
  return s;
}

} // namespace detail

// Table 1: every a >= -2 sequence with 3..9 rays, up to rotation and reflection.
inline TableReport reproduce_table1() {
  TableReport r;
  r.table = 1;
  std::set<Vec> expect, got;
  for (auto &s : nef_surfaces())
    expect.insert(canonical_form(s.a));
  for (int n = 3; n <= 9; ++n)
    for (auto &a : enumerate_surfaces(n, -2, 10 - n))
      got.insert(canonical_form(a));
  int match = 0;
  for (auto &s : nef_surfaces()) {
    bool hit = got.count(canonical_form(s.a)) > 0;
    match += hit;
    r.lines.push_back(s.name + " (" + a_string(s.a) + "): " + (hit ? "found" : "MISSING"));
  }
  for (auto &a : got)
    if (!expect.count(a))
      r.lines.push_back("extra: " + a_string(a));
  r.ok = match == static_cast<int>(expect.size()) && got.size() == expect.size();
  r.summary = std::to_string(match) + "/" + std::to_string(expect.size()) + " surfaces match";
  if (got.size() != expect.size())
    r.summary += ", " + std::to_string(got.size() - match) + " extra";
  return r;
}

// Rows of Table 2 that fail as printed, and the Table 1 surface each Gale dual must be.
inline const std::set<std::string> &table2_printed_failures() {
  static const std::set<std::string> t = {"7b", "8c"};
  return t;
}

inline const std::map<std::string, std::string> &table2_dual_names() {
  static const std::map<std::string, std::string> t = {
      {"5b", "5a"}, {"6b", "6a"}, {"6c", "6a"}, {"6d", "6a"}, {"7a", "7b"},      {"7b", "7a"},
      {"8a", "8a"}, {"8b", "8b"}, {"8c", "8a"}, {"9", "9"},   {"5a", "5b"},      {"6a", "6b"},
      {"P2", "P2"}, {"P1xP1", "F2"}, {"F1", "F1"}, {"F2", "P1xP1"}};
  return t;
}

struct Table2Row {
  std::string name;
  bool printed = true;
  bool valid = false, cyclic = false;
  std::optional<std::string> dual;
};

inline std::vector<Table2Row> table2_rows() {
  std::vector<Table2Row> rows;
  auto check = [&](const BuiltSystem &b, bool printed) {
    Table2Row row;
    row.name = b.name;
    row.printed = printed;
    row.valid = validate(b.surface, b.system).ok;
    if (row.valid) {
      row.cyclic = is_cyclic_strongly_exceptional(b.surface, b.system);
      row.dual = nef_surface_name(gale_dual(b.surface, b.system));
    }
    rows.push_back(row);
  };
  auto printed = table2_systems(false);
  auto fixed = table2_systems(true);
  for (std::size_t i = 0; i < printed.size(); ++i) {
    check(printed[i], true);
    if (cyclic_corrections().count(printed[i].name))
      check(fixed[i], false);
  }
  return rows;
}

inline TableReport reproduce_table2() {
  TableReport r;
  r.table = 2;
  int listed = 0, listed_ok = 0, corrected = 0, corrected_ok = 0, extra_ok = 0, extra = 0;
  bool pinned = true;
  for (auto &row : table2_rows()) {
    bool pass = row.valid && row.cyclic;
    bool is_listed = row.name != "P2" && row.name != "P1xP1" && row.name != "F1" && row.name != "F2";
    auto want = table2_dual_names().at(row.name);
    bool dual_ok = !pass || row.dual == want;
    pinned = pinned && dual_ok;
    if (!row.printed) {
      ++corrected;
      corrected_ok += pass;
      pinned = pinned && pass;
    } else if (is_listed) {
      ++listed;
      listed_ok += pass;
      pinned = pinned && pass == !table2_printed_failures().count(row.name);
    } else {
      ++extra;
      extra_ok += pass;
      pinned = pinned && pass;
    }
    std::string line = row.name + (row.printed ? "" : " (corrected)") + ": " +
                       (row.valid ? (row.cyclic ? "cyclic strongly exceptional" : "NOT cyclic strongly exceptional")
                                  : "INVALID");
    if (pass)
      line += ", dual " + row.dual.value_or("outside Table 1");
    r.lines.push_back(line);
  }
  r.ok = pinned;
  r.summary = std::to_string(listed_ok) + "/" + std::to_string(listed) + " printed systems verify; " +
              std::to_string(corrected_ok) + "/" + std::to_string(corrected) + " corrected replacements verify; " +
              std::to_string(extra_ok) + "/" + std::to_string(extra) + " minimal-model systems verify";
  return r;
}

// Table 3 extras beyond the listed class, pinned per row.
inline const std::map<std::string, std::vector<std::string>> &table3_extras() {
  static const std::map<std::string, std::vector<std::string>> t = {
      {"8c", {"4H-2R1-R2-2R3-2R4-R5"}},
      {"9", {"5H-2R1-2R2-2R3-2R4-2R5-2R6"}},
  };
  return t;
}

inline TableReport reproduce_table3() {
  TableReport r;
  r.table = 3;
  bool ok = true;
  int rows = 0, rows_ok = 0;
  for (auto &row : straightened_fixtures()) {
    auto b = row.where.basis();
    CohomologyCache cc(b.x);
    std::set<std::string> got, want(row.divisors.begin(), row.divisors.end());
    for (auto &d : classify_straightened(cc, SearchBounds{}))
      got.insert(format_divisor(b, d));
    // the listed strings are normalized through the parser
    std::set<std::string> listed;
    for (auto &s : want)
      listed.insert(format_divisor(b, parse_divisor(b, s)));
    std::set<std::string> expect = listed;
    auto it = table3_extras().find(row.where.name);
    if (it != table3_extras().end())
      expect.insert(it->second.begin(), it->second.end());
    bool pass = got == expect;
    ++rows;
    rows_ok += pass;
    ok = ok && pass;
    std::vector<std::string> extras;
    for (auto &g : got)
      if (!listed.count(g))
        extras.push_back(g);
    r.lines.push_back(row.where.name + ": " + detail::join({got.begin(), got.end()}) +
                      (extras.empty() ? "" : "  [beyond listed: " + detail::join(extras) + "]") +
                      (pass ? "" : "  MISMATCH"));
  }
  // minimal models: listed families are strongly left-orthogonal for s in [-1, 5]
  auto family = [&](const std::string &name, const Surface &x, ModelShape m) {
    auto b = make_basis(x, {});
    CohomologyCache cc(x);
    std::vector<std::string> bad;
    auto listed = listed_straightened_minimal(m, -1, 5);
    for (auto &h : listed)
      if (!is_strongly_left_orthogonal(cc, b.to_d(h)))
        bad.push_back(format_coords(b, h));
    ++rows;
    rows_ok += bad.empty();
    ok = ok && bad.empty();
    r.lines.push_back(name + ": " + std::to_string(listed.size() - bad.size()) + "/" + std::to_string(listed.size()) +
                      " family members strongly left-orthogonal" + (bad.empty() ? "" : " (fail: " + detail::join(bad) + ")"));
  };
  family("P2", plane(), {Model::Plane, 0, 0});
  for (i64 a = 0; a <= 4; ++a)
    family("F" + std::to_string(a), hirzebruch(a), {Model::Hirzebruch, a, 0});
  r.ok = ok;
  r.summary = std::to_string(rows_ok) + "/" + std::to_string(rows) + " rows match";
  return r;
}

// Pinned residuals of the Euler-characteristic tables.
struct ChiResiduals {
  int missing_chi5 = 0;                 // listed rows whose class has chi = 5
  std::vector<std::string> missing_not_slo;
  std::vector<std::string> extra;
};

inline const std::map<std::string, ChiResiduals> &chi_residuals() {
  static const std::map<std::string, ChiResiduals> t = {
      {"8a", {12, {"4H-2R1-2R2-R3-R4-2R5", "4H-R1-2R2-2R3-2R4-R5"}, {}}},
      {"8c", {8, {}, {}}},
      {"9", {0, {}, {"-2H+R1+R2+R3+R4+R5+R6"}}},
  };
  return t;
}

inline TableReport reproduce_chi_table(int table) {
  ChiList L = table == 4 ? table4_8a() : table == 5 ? table5_8c() : table6_9();
  TableReport r;
  r.table = table;
  auto b = straightened_fixtures()[L.surface_row].where.basis();
  CohomologyCache cc(b.x);
  auto got = classify_strongly_LO(cc, L.chi_max, uniform_bounds(b.x, -1, L.chi_max + 1));
  const ChiResiduals &pin = chi_residuals().at(L.name);
  int chi5 = 0;
  std::set<std::string> not_slo, extra;
  std::size_t found = 0, listed = 0;
  bool clean = true;
  for (i64 chi = 0; chi <= L.chi_max; ++chi) {
    std::set<Vec> g, e;
    for (auto &c : L.by_chi[chi])
      e.insert(coords_from_labels(b, c));
    for (auto &d : got[chi])
      g.insert(b.to_coords(d));
    found += g.size();
    listed += e.size();
    std::vector<std::string> diff;
    for (auto &c : g)
      if (!e.count(c)) {
        extra.insert(format_coords(b, c));
        diff.push_back("+" + format_coords(b, c));
      }
    for (auto &c : e)
      if (!g.count(c)) {
        Vec d = b.to_d(c);
        diff.push_back("-" + format_coords(b, c));
        if (euler_char(b.x, d) == 5)
          ++chi5;
        else if (!is_strongly_left_orthogonal(cc, d))
          not_slo.insert(format_coords(b, c));
        else
          clean = false;
      }
    r.lines.push_back("chi " + std::to_string(chi) + ": found " + std::to_string(g.size()) + ", listed " +
                      std::to_string(e.size()));
    for (auto &s : diff)
      r.lines.push_back("  " + s);
  }
  r.ok = clean && chi5 == pin.missing_chi5 &&
         not_slo == std::set<std::string>(pin.missing_not_slo.begin(), pin.missing_not_slo.end()) &&
         extra == std::set<std::string>(pin.extra.begin(), pin.extra.end());
  r.summary = L.name + ": " + std::to_string(found) + " found, " + std::to_string(listed) + " listed; residuals: " +
              std::to_string(chi5) + " listed with chi 5, " + std::to_string(not_slo.size()) +
              " listed not strongly left-orthogonal, " + std::to_string(extra.size()) + " unlisted" +
              (r.ok ? " (as pinned)" : " (UNEXPECTED)");
  return r;
}

inline TableReport reproduce_table(int t) {
  switch (t) {
  case 1:
    return reproduce_table1();
  case 2:
    return reproduce_table2();
  case 3:
    return reproduce_table3();
  case 4:
  case 5:
  case 6:
    return reproduce_chi_table(t);
  }
  throw Error("usage", "table must be 1..6");
}

} // namespace toric
