#include "toric/augment.hpp"
#include "toric/io.hpp"
#include "toric/reproduce.hpp"
#include "toric/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace toric;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec parse_list(const std::string &text, const std::string &what) {
  Vec v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(tok, &used));
      if (used != tok.size() && tok.find_first_not_of(' ', used) != std::string::npos)
        throw std::invalid_argument(tok);
    } catch (const std::logic_error &) {
      throw UsageError(what + ": '" + tok + "' is not an integer");
    }
  }
  if (v.empty())
    throw UsageError(what + ": empty list");
  return v;
}

std::vector<int> parse_ints(const std::string &text, const std::string &what) {
  std::vector<int> r;
  for (i64 v : parse_list(text, what))
    r.push_back(static_cast<int>(v));
  return r;
}

json read_json(const std::string &spec, const std::string &what) {
  std::string text = spec;
  if (!spec.empty() && spec[0] != '{' && spec[0] != '[') {
    std::ifstream in(spec);
    if (!in)
      throw UsageError(what + ": cannot read '" + spec + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw UsageError(what + ": malformed JSON: " + e.what());
  }
}

// p2, p1xp1, F<a>, a Table 1 name, an a-sequence "a,b,c,..." or surface JSON (inline or file).
Surface parse_surface(const std::string &spec) {
  std::string low;
  for (char ch : spec)
    low += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (low == "p2")
    return plane();
  if (low == "p1xp1")
    return hirzebruch(0);
  if (low.size() > 1 && low[0] == 'f' && low.find_first_not_of("0123456789", 1) == std::string::npos)
    return hirzebruch(std::stoll(low.substr(1)));
  for (auto &s : nef_surfaces())
    if (s.name == spec)
      return from_a_sequence(s.a);
  if (!spec.empty() && (std::isdigit(static_cast<unsigned char>(spec[0])) || spec[0] == '-') &&
      spec.find(',') != std::string::npos)
    return from_a_sequence(parse_list(spec, "--surface"));
  return surface_from_json(read_json(spec, "--surface"));
}

struct SurfaceArgs {
  std::string surface, a;
  Surface get() const {
    if (!a.empty())
      return from_a_sequence(parse_list(a, "--a"));
    if (surface.empty())
      throw UsageError("need --surface or --a");
    return parse_surface(surface);
  }
  void add(CLI::App *c) {
    c->add_option("--surface,-s", surface, "p2, p1xp1, F<a>, Table 1 name, a-sequence or JSON");
    c->add_option("--a", a, "self-intersection sequence a_1,..,a_n");
  }
};

struct BasisArgs {
  std::string marks;
  int q_ray = -1;
  void add(CLI::App *c) {
    c->add_option("--marks", marks, "rays to contract, e.g. 0,2,4 (labels R1.. follow this order)");
    c->add_option("--q-ray", q_ray, "ray whose class is Q on a Hirzebruch model");
  }
  MinimalModelBasis get(const Surface &x) const {
    if (!marks.empty())
      return basis_from_marked(x, parse_ints(marks, "--marks"), q_ray);
    auto mm = minimal_model_program(x, true);
    if (mm.empty())
      throw Error("not-contractible", "surface has no minimal model contraction");
    return basis_from_marked(x, mm.front(), q_ray);
  }
};

struct DivisorArgs {
  std::string coeffs, d, c;
  void add(CLI::App *cmd) {
    cmd->add_option("--coeffs", coeffs, "minimal-model symbols, e.g. 3H-2R1-R2");
    cmd->add_option("--d", d, "d-vector d_1,..,d_n");
    cmd->add_option("--c", c, "c-vector c_1,..,c_n");
  }
  Vec get(const Surface &x, const BasisArgs &ba) const {
    int given = !coeffs.empty() + !d.empty() + !c.empty();
    if (given != 1)
      throw UsageError("give exactly one of --coeffs, --d, --c");
    Vec v;
    if (!coeffs.empty())
      return parse_divisor(ba.get(x), coeffs);
    v = parse_list(d.empty() ? c : d, d.empty() ? "--c" : "--d");
    if (static_cast<int>(v.size()) != x.n())
      throw UsageError("divisor length must equal the number of rays");
    if (!c.empty())
      return d_from_c(x, v);
    if (!is_class(x, v))
      throw Error("not-a-class", "d-vector is not in the image of Pic");
    return v;
  }
};

int default_jobs() {
  if (const char *e = std::getenv("TORIC_JOBS"))
    try {
      return std::max(1, std::stoi(e));
    } catch (const std::logic_error &) {
    }
  return 1;
}

void emit(const json &j) { std::cout << j.dump() << '\n'; }

json chain_json(const DeAugmentChain &c) {
  json steps = json::array();
  for (auto &st : c.steps) {
    json j{{"kind", st.kind == ChainStep::Remove ? "remove" : "reorder"}, {"index", st.index}};
    if (st.kind == ChainStep::Remove)
      j["ray"] = st.ray;
    steps.push_back(j);
  }
  json j{{"found", c.found}, {"steps", steps}};
  if (c.found)
    j["standard"] = to_json(c.base, c.standard);
  return j;
}

// Let "--opt -2,-1" through: glue a negative-looking value onto its option.
std::vector<std::string> glue_negative_values(int argc, char **argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < argc) {
      std::string b = argv[i + 1];
      if (b.size() > 1 && b[0] == '-' && std::isdigit(static_cast<unsigned char>(b[1]))) {
        out.push_back(a + "=" + b);
        ++i;
        continue;
      }
    }
    out.push_back(a);
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Toric surfaces, line-bundle cohomology and toric systems"};
  app.require_subcommand(1);
  std::function<void()> action;

  // surface ---------------------------------------------------------------
  auto *surface = app.add_subcommand("surface", "construct and classify fans");
  surface->require_subcommand(1);
  {
    auto *c = surface->add_subcommand("new", "build a fan from rays, an a-sequence or a blow-up history");
    static std::string rays, a, history, from;
    c->add_option("--rays", rays, "x,y;x,y;...");
    c->add_option("--from", from, "surface JSON, inline or file (re-emitted in normal form)");
    c->add_option("--a", a, "a_1,..,a_n");
    c->add_option("--history", history, "{\"base\": <surface>, \"steps\": [...]} inline or file");
    c->callback([&] {
      action = [&] {
        int given = !rays.empty() + !a.empty() + !history.empty() + !from.empty();
        if (given != 1)
          throw UsageError("give exactly one of --rays, --a, --history, --from");
        if (!from.empty())
          return emit(to_json(surface_from_json(read_json(from, "--from"))));
        if (!a.empty())
          return emit(to_json(from_a_sequence(parse_list(a, "--a"))));
        if (!history.empty())
          return emit(to_json(replay(history_from_json(read_json(history, "--history"))).surface));
        std::vector<Vec2> r;
        std::stringstream ss(rays);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
          Vec v = parse_list(tok, "--rays");
          if (v.size() != 2)
            throw UsageError("--rays: each ray needs two coordinates");
          r.push_back({v[0], v[1]});
        }
        emit(to_json(from_rays(r)));
      };
    });
  }
  {
    auto *c = surface->add_subcommand("enumerate", "a-sequences up to rotation and reflection");
    static int n = 0;
    static i64 amin = -2;
    static std::optional<i64> amax;
    c->add_option("--n", n, "number of rays")->required();
    c->add_option("--a-min", amin, "lower bound on every a_i");
    c->add_option("--a-max", amax, "upper bound on every a_i (default: implied by the sum rule)");
    c->callback([&] {
      action = [&] {
        i64 hi = amax.value_or(12 - 3 * n - (n - 1) * amin);
        auto v = enumerate_surfaces(n, amin, hi);
        std::set<Vec> canon;
        for (auto &s : v)
          canon.insert(canonical_form(s));
        json out{{"n", n}, {"a_min", amin}, {"a_max", hi}, {"count", canon.size()}, {"surfaces", canon}};
        emit(out);
      };
    });
  }
  {
    auto *c = surface->add_subcommand("check-two-step", "is the fan obtained by two rounds of blow-ups");
    static SurfaceArgs sa;
    sa.add(c);
    c->callback([&] { action = [&] { std::cout << (two_step_blowdown(sa.get()) ? "true" : "false") << '\n'; }; });
  }
  {
    auto *c = surface->add_subcommand("nef", "positivity of the anticanonical class");
    static SurfaceArgs sa;
    sa.add(c);
    c->callback([&] {
      action = [&] {
        Surface x = sa.get();
        std::cout << to_string(anticanonical_status(x)) << '\n';
      };
    });
  }

  // divisor ---------------------------------------------------------------
  auto *divisor = app.add_subcommand("divisor", "line-bundle queries");
  divisor->require_subcommand(1);
  static SurfaceArgs dsa;
  static BasisArgs dba;
  static DivisorArgs dda;
  {
    auto *c = divisor->add_subcommand("cohomology", "h^0, h^1, h^2 and chi");
    static bool as_json = false;
    dsa.add(c);
    dba.add(c);
    dda.add(c);
    c->add_flag("--json", as_json, "emit a JSON document");
    c->callback([&] {
      action = [&] {
        Surface x = dsa.get();
        Vec d = dda.get(x, dba);
        Cohomology h = cohomology_numbers(x, d);
        if (as_json) {
          json j{{"surface", to_json(x)}, {"d", d}};
          j.update(to_json(h));
          return emit(j);
        }
        std::cout << "h0=" << h.h0 << " h1=" << h.h1 << " h2=" << h.h2 << " chi=" << h.chi << '\n';
      };
    });
  }
  {
    auto *c = divisor->add_subcommand("straighten", "contract -1 rays while staying strongly left-orthogonal");
    dsa.add(c);
    dba.add(c);
    dda.add(c);
    c->callback([&] {
      action = [&] {
        Surface x = dsa.get();
        auto st = straighten(x, dda.get(x, dba));
        emit({{"surface", to_json(st.surface)},
              {"divisor", st.divisor},
              {"negated", st.negated},
              {"contracted", st.contracted},
              {"straightened", is_straightened(st.surface, st.divisor)}});
      };
    });
  }
  {
    auto *c = divisor->add_subcommand("check-slo", "left-orthogonality predicates");
    dsa.add(c);
    dba.add(c);
    dda.add(c);
    c->callback([&] {
      action = [&] {
        Surface x = dsa.get();
        Vec d = dda.get(x, dba);
        CohomologyCache cc(x);
        emit({{"d", d},
              {"left_orthogonal", is_left_orthogonal(cc, d)},
              {"strongly_left_orthogonal", is_strongly_left_orthogonal(cc, d)},
              {"degree_floor", degree_bound_check(d)}});
      };
    });
  }

  // system ----------------------------------------------------------------
  auto *system = app.add_subcommand("system", "toric systems");
  system->require_subcommand(1);
  static std::string sys_spec;
  static BasisArgs sba;
  static bool cyclic_flag = false;
  auto load_system = [] { return system_from_json(read_json(sys_spec, "--system")); };
  auto add_sys = [&](CLI::App *c) { c->add_option("--system", sys_spec, "system JSON, inline or file")->required(); };
  {
    auto *c = system->add_subcommand("validate", "pairing and sum axioms");
    add_sys(c);
    c->callback([&] {
      action = [&] {
        auto [x, s] = load_system();
        auto v = validate(x, s);
        emit({{"ok", v.ok}, {"violations", v.violations}});
      };
    });
  }
  {
    auto *c = system->add_subcommand("check", "exceptional, strongly and cyclic strongly exceptional");
    add_sys(c);
    c->callback([&] {
      action = [&] {
        auto [x, s] = load_system();
        CohomologyCache cc(x);
        emit({{"exceptional", is_exceptional(cc, s)},
              {"strong", is_strongly_exceptional(cc, s)},
              {"cyclic", is_cyclic_strongly_exceptional(cc, s)}});
      };
    });
  }
  {
    auto *c = system->add_subcommand("gale-dual", "the associated toric surface");
    add_sys(c);
    c->callback([&] {
      action = [&] {
        auto [x, s] = load_system();
        Surface y = gale_dual(x, s);
        auto name = nef_surface_name(y);
        emit({{"surface", to_json(y)},
              {"canonical_a", canonical_form(y)},
              {"table1", name ? json(*name) : json(nullptr)}});
      };
    });
  }
  {
    auto *c = system->add_subcommand("normal-form", "elementary moves until every head part is zero or pre-LO");
    add_sys(c);
    sba.add(c);
    c->add_flag("--cyclic", cyclic_flag, "cyclic normal form");
    c->callback([&] {
      action = [&] {
        auto [x, s] = load_system();
        CohomologyCache cc(x);
        auto b = sba.get(x);
        auto nf = normal_form(cc, b, s, cyclic_flag);
        json j = to_json(x, nf);
        json sym = json::array();
        for (auto &v : nf.classes)
          sym.push_back(format_divisor(b, v));
        j["symbols"] = sym;
        emit(j);
      };
    });
  }
  {
    auto *c = system->add_subcommand("de-augment", "reduce to a standard system on P2 or F_a");
    add_sys(c);
    c->callback([&] {
      action = [&] {
        auto [x, s] = load_system();
        emit(chain_json(de_augment_chain(x, s)));
      };
    });
  }

  // augment ---------------------------------------------------------------
  auto *aug = app.add_subcommand("augment", "standard systems and generators");
  aug->require_subcommand(1);
  {
    auto *c = aug->add_subcommand("standard", "standard systems on P2 or F_a");
    static SurfaceArgs sa;
    static i64 slo = -1, shi = 5;
    sa.add(c);
    c->add_option("--s-lo", slo);
    c->add_option("--s-hi", shi);
    c->callback([&] {
      action = [&] {
        Surface x = sa.get();
        if (x.n() > 4)
          throw Error("not-minimal", "standard systems live on P2 or F_a");
        auto b = make_basis(x, {});
        json out = json::array();
        for (auto &st : standard_systems(b.shape, slo, shi)) {
          json cls = json::array();
          for (auto &v : st.coords)
            cls.push_back(format_coords(b, v));
          out.push_back({{"type", st.type == StandardSystem::Plane ? "plane" : st.type == StandardSystem::TypeI ? "i" : "ii"},
                         {"s", st.s},
                         {"classes", pull_back(b, st.coords).classes},
                         {"symbols", cls},
                         {"exceptional", st.exceptional},
                         {"strong", st.strong},
                         {"cyclic", st.cyclic}});
        }
        emit({{"surface", to_json(x)}, {"systems", out}});
      };
    });
  }
  {
    auto *c = aug->add_subcommand("generate", "strongly exceptional systems on random two-round blow-ups");
    static std::uint64_t seed = 20240601;
    static int count = 5, max_rank = 14;
    static i64 param = 0;
    c->add_option("--seed", seed);
    c->add_option("--count", count);
    c->add_option("--max-rank", max_rank);
    c->add_option("--param", param, "parameter of the middle class on Hirzebruch bases");
    c->callback([&] {
      action = [&] {
        std::mt19937_64 rng(seed);
        json out = json::array();
        for (int i = 0; i < count; ++i) {
          TwoRound tr = random_two_round(rng, max_rank);
          auto g = two_round_system(tr, param);
          out.push_back({{"history", to_json(tr.history)},
                         {"first_round", tr.first},
                         {"system", to_json(g.surface, g.system)},
                         {"strongly_exceptional", is_strongly_exceptional(g.surface, g.system)}});
        }
        emit({{"seed", seed}, {"generated", out}});
      };
    });
  }

  // search ----------------------------------------------------------------
  auto *search = app.add_subcommand("search", "bounded exhaustive search for toric systems");
  search->require_subcommand(1);
  for (bool cyc : {false, true}) {
    auto *c = search->add_subcommand(cyc ? "cyclic" : "strong",
                                     cyc ? "cyclic strongly exceptional systems" : "strongly exceptional systems");
    auto sa = std::make_shared<SurfaceArgs>();
    auto bounds = std::make_shared<std::string>();
    auto jobs = std::make_shared<int>(default_jobs());
    auto timing = std::make_shared<bool>(false);
    sa->add(c);
    c->add_option("--bounds", *bounds, "bounds JSON: d_floor, d_ceiling, slack, s_lo, s_hi");
    c->add_option("--jobs,-j", *jobs, "worker threads (default from TORIC_JOBS)");
    c->add_flag("--timing", *timing, "include elapsed seconds (breaks byte-stability)");
    c->callback([&action, sa, bounds, jobs, timing, cyc] {
      action = [=] {
        Surface x = sa->get();
        SearchBounds b = bounds->empty() ? SearchBounds{} : bounds_from_json(read_json(*bounds, "--bounds"));
        if (b.d_ceiling && static_cast<int>(b.d_ceiling->size()) != x.n())
          throw UsageError("bounds.d_ceiling length must equal the number of rays");
        auto t0 = std::chrono::steady_clock::now();
        auto r = search_strongly_exceptional(x, b, cyc, *jobs);
        json hits = json::array();
        for (auto &h : r.hits)
          hits.push_back(h.classes);
        json out{{"surface", to_json(x)}, {"bounds", to_json(b)}, {"cyclic", cyc},
                 {"candidates", r.candidates}, {"hits", hits}};
        if (*timing)
          out["elapsed"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(out);
      };
    });
  }

  // tables ----------------------------------------------------------------
  auto *tables = app.add_subcommand("tables", "reproduce the embedded tables");
  tables->require_subcommand(1);
  {
    auto *c = tables->add_subcommand("reproduce", "compare computed and embedded table");
    static int which = 0;
    static bool verbose = false;
    c->add_option("table", which, "1..6")->required()->check(CLI::Range(1, 6));
    c->add_flag("--verbose,-v", verbose, "per-row detail");
    c->callback([&] {
      action = [&] {
        auto r = reproduce_table(which);
        std::cout << r.summary << '\n';
        if (verbose)
          for (auto &l : r.lines)
            std::cout << "  " << l << '\n';
        if (!r.ok)
          throw Error("mismatch", "table " + std::to_string(which) + " differs beyond the pinned residuals");
      };
    });
  }

  // figure ----------------------------------------------------------------
  auto *figure = app.add_subcommand("figure", "lattice diagrams");
  figure->require_subcommand(1);
  {
    auto *c = figure->add_subcommand("svg", "hyperplanes, sections, interior points and triangles");
    static SurfaceArgs sa;
    static BasisArgs ba;
    static DivisorArgs da;
    static std::string out_file;
    static bool triangles = false;
    static int radius = 6;
    sa.add(c);
    ba.add(c);
    da.add(c);
    c->add_option("--out,-o", out_file, "output file")->required();
    c->add_flag("--triangles", triangles, "shade the blow-up triangles of the basis");
    c->add_option("--radius", radius, "half-width of the lattice window")->check(CLI::Range(1, 64));
    c->callback([&] {
      action = [&] {
        Surface x = sa.get();
        Vec d = da.get(x, ba);
        std::optional<MinimalModelBasis> b;
        if (triangles)
          b = ba.get(x);
        SvgOptions opt;
        opt.radius = radius;
        std::string svg = render_svg(x, d, b ? &*b : nullptr, opt);
        std::ofstream f(out_file, std::ios::binary);
        if (!f)
          throw Error("io", "cannot write " + out_file);
        f << svg;
        std::cout << out_file << '\n';
      };
    });
  }

  auto args = glue_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (action)
      action();
  } catch (const UsageError &e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const Error &e) {
    std::cerr << e.what() << '\n';
    return e.kind() == "schema" || e.kind() == "parse" ? 2 : 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
