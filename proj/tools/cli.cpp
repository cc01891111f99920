#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "pldyn/covering.hpp"
#include "pldyn/gallery.hpp"
#include "pldyn/minimality.hpp"
#include "pldyn/orbit.hpp"
#include "pldyn/plot.hpp"
#include "pldyn/report.hpp"
#include "pldyn/sensitivity.hpp"

namespace pldyn::cli {

namespace {

// Raised for bad flag values found after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kChecks = {
    "tt",       "dpt",         "minimality",  "m-inverse",
    "covering", "sensitivity", "nonexpansive", "almost-open"};
const char* const kDefaultChecks =
    "tt,dpt,minimality,m-inverse,almost-open,sensitivity";

struct Options {
  std::string system;
  std::string system_file;
  std::size_t grid = 64;
  std::size_t max_word_len = 20;
  std::string checks = kDefaultChecks;
  std::string delta;
  std::string radii = "1/16,1/64,1/256";
  std::string point;
  std::string radius;
  std::string interval;
  std::string out;
  std::string plot;
  std::size_t jobs = 1;
  std::string report;
  std::string gallery_name;
};

struct Loaded {
  SystemDef system;
  std::optional<ExpectedVerdicts> expected;
};

Rational parse_rational(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": unparsable rational \"" + text + "\"");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Loaded load(const Options& o) {
  if (o.system.empty() == o.system_file.empty()) {
    throw UsageError("exactly one of --system and --system-file is required");
  }
  if (!o.system_file.empty()) return {load_system(o.system_file), std::nullopt};
  try {
    auto g = gallery_system(o.system);
    return {std::move(g.system), std::move(g.expected)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void check_budgets(const Options& o) {
  if (o.grid == 0) throw UsageError("--grid must be positive");
  if (o.max_word_len == 0) throw UsageError("--max-word-len must be positive");
  if (o.jobs == 0) throw UsageError("--jobs must be positive");
}

Rational point_in_space(const SystemDef& system, const std::string& text,
                        const std::string& flag) {
  Rational x = parse_rational(text, flag);
  if (system.space == Space::interval && (x < 0 || x > 1)) {
    throw UsageError(flag + ": " + x.str() + " lies outside [0,1]");
  }
  return normalize_point(system.space, x);
}

Rational positive(const std::string& text, const std::string& flag) {
  Rational r = parse_rational(text, flag);
  if (!(r > 0)) throw UsageError(flag + " must be positive");
  return r;
}

Interval parse_interval(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError("--interval: expected p/q:p/q");
  }
  Interval i{parse_rational(text.substr(0, colon), "--interval"),
             parse_rational(text.substr(colon + 1), "--interval")};
  if (!(0 <= i.lo && i.lo < i.hi && i.hi <= 1)) {
    throw UsageError("--interval: need 0 <= lo < hi <= 1");
  }
  return i;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
}

std::string stem_of(const std::string& path) {
  if (path.size() > 5 && path.ends_with(".json")) {
    return path.substr(0, path.size() - 5);
  }
  return path;
}

void emit(const json& report, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << dump(report);
  } else {
    write_file(o.out, dump(report));
  }
}

json parameters(const Options& o) {
  json p = {{"grid", o.grid}, {"max_word_len", o.max_word_len}};
  return p;
}

struct Expectation {
  std::string key;
  json expected;
  json observed;
};

int analyze(const Options& o, std::ostream& out, std::ostream& err) {
  check_budgets(o);
  Loaded loaded = load(o);
  const SystemDef& sys = loaded.system;
  const Grid grid{o.grid};
  const std::size_t L = o.max_word_len;

  std::set<std::string> checks;
  for (const auto& c : split(o.checks, ',')) {
    if (c == "all") {
      checks.insert(kChecks.begin(), kChecks.end());
      continue;
    }
    if (std::find(kChecks.begin(), kChecks.end(), c) == kChecks.end()) {
      throw UsageError("--check: unknown check \"" + c + "\"");
    }
    checks.insert(c);
  }
  if (checks.empty()) throw UsageError("--check: no checks requested");

  std::vector<Rational> radii;
  for (const auto& r : split(o.radii, ',')) radii.push_back(positive(r, "--radii"));
  if (radii.empty()) throw UsageError("--radii: at least one radius needed");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] < radii[i - 1])) {
      throw UsageError("--radii must be strictly decreasing");
    }
  }
  std::optional<Rational> given_delta;
  if (!o.delta.empty()) given_delta = positive(o.delta, "--delta");
  std::optional<Rational> point;
  if (!o.point.empty()) point = point_in_space(sys, o.point, "--point");
  std::optional<Rational> radius;
  if (!o.radius.empty()) radius = positive(o.radius, "--radius");
  std::optional<Interval> region;
  if (!o.interval.empty()) region = parse_interval(o.interval);
  if (checks.count("covering") && (!point || !radius)) {
    throw UsageError("covering needs --point and --radius");
  }
  if (checks.count("nonexpansive") && !region) {
    throw UsageError("nonexpansive needs --interval");
  }
  std::vector<std::string> plots = split(o.plot, ',');
  for (const auto& k : plots) {
    auto kinds = plot_kinds();
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) {
      throw UsageError("--plot: unknown kind \"" + k + "\"");
    }
    if (k == "orbit" && !point) throw UsageError("orbit plot needs --point");
    if (k == "separation-heatmap" && !checks.count("sensitivity")) {
      throw UsageError("separation-heatmap needs --check sensitivity");
    }
  }
  if (!plots.empty() && o.out.empty()) {
    throw UsageError("--plot needs --out to place the SVG files");
  }

  json params = parameters(o);
  params["checks"] = json(std::vector<std::string>(checks.begin(), checks.end()));
  params["radii"] = json::array();
  for (const auto& r : radii) params["radii"].push_back(r.str());
  if (given_delta) params["delta"] = given_delta->str();
  if (point) params["point"] = point->str();
  if (radius) params["radius"] = radius->str();
  if (region) params["interval"] = {region->lo.str(), region->hi.str()};

  json report = {{"system", system_to_json(sys)}, {"parameters", params}};
  json& out_checks = report["checks"] = json::object();
  std::vector<Expectation> observed;
  const auto& exp = loaded.expected;
  auto expect = [&](const std::optional<bool>& e, const std::string& key,
                    bool value) {
    if (exp && e) observed.push_back({key, *e, value});
  };

  if (checks.count("almost-open")) {
    auto r = is_almost_open(sys);
    out_checks["almost-open"] = to_json(r);
    if (exp) expect(exp->almost_open, "almost_open", r.almost_open);
  }
  if (checks.count("tt")) {
    auto r = is_tt(sys, grid, L, o.jobs);
    out_checks["tt"] = to_json(sys, r);
    if (exp) expect(exp->tt, "tt", r.status == Status::certified);
  }
  if (checks.count("dpt")) {
    out_checks["dpt"] =
        to_json(transitive_fraction(sys, grid, L, std::nullopt, o.jobs));
  }
  if (point) {
    auto orbit = to_json(sys, orbit_cells(sys, *point, grid, L));
    orbit["n_cells"] = grid.n_cells;
    out_checks["orbit"] = std::move(orbit);
  }

  const bool need_minimal = checks.count("minimality") ||
                            checks.count("m-inverse") ||
                            (checks.count("sensitivity") && !given_delta);
  std::optional<DistinctMinimalSets> sets;
  if (need_minimal) {
    MinimalityOptions mo;
    mo.jobs = o.jobs;
    auto cells = minimal_cells(sys, grid, L,
                               Rational(1, 2 * static_cast<long>(grid.n_cells)),
                               mo);
    sets = distinct_minimal_sets(sys, grid, L, cells);
    out_checks["minimality"] = to_json(sys, cells, *sets);
    if (exp) {
      expect(exp->minimal_points_dense, "minimal_points_dense",
             cells.density == Rational(1));
      expect(exp->minimal, "minimal",
             cells.density == Rational(1) && sets->classes.size() <= 1);
    }
  }
  if (checks.count("m-inverse")) {
    auto r = m_inverse_cells(sys, grid, L, minimal_targets(grid, *sets));
    out_checks["m-inverse"] = to_json(sys, r);
    if (exp) expect(exp->m_inverse_dense, "m_inverse_dense",
                    r.density == Rational(1));
  }
  if (checks.count("covering")) {
    auto fam = covering_family(sys, *point, *radius, grid, L);
    out_checks["covering"] = to_json(sys, fam, verify_covering(sys, grid, fam));
  }
  std::optional<SensitivityVerdict> sens;
  if (checks.count("sensitivity")) {
    std::optional<DerivedDelta> derived;
    Rational delta;
    if (given_delta) {
      delta = *given_delta;
    } else {
      derived = derive_delta(sys, grid, *sets);
      if (!derived) {
        throw UsageError(
            "sensitivity needs --delta: no exact minimal set was found to "
            "derive it from");
      }
      delta = derived->delta;
    }
    // Below delta a witness has to come from expansion, not from the
    // starting gap, so the schedule must reach at least delta.
    std::vector<Rational> sradii = radii;
    const bool appended = sradii.back() > delta;
    if (appended) sradii.push_back(delta);
    sens = certify_sensitive(sys, delta, grid, sradii, L, o.jobs);
    out_checks["sensitivity"] = to_json(sys, *sens, derived);
    if (appended) {
      out_checks["sensitivity"]["radius_appended"] = delta.str();
    }
    if (exp) {
      expect(exp->sensitive, "sensitive", sens->status == Status::certified);
      if (exp->delta && derived) {
        observed.push_back(
            {"delta", exp->delta->str(), derived->delta.str()});
      }
    }
  }
  if (checks.count("nonexpansive")) {
    out_checks["nonexpansive"] =
        to_json(sys, certify_nonexpansive(sys, region->lo, region->hi,
                                          std::min<std::size_t>(L, 12)));
  }

  bool mismatch = false;
  if (exp) {
    report["expected"] = expected_to_json(*exp);
    json table = json::object();
    for (const auto& e : observed) {
      bool met = e.expected == e.observed;
      mismatch = mismatch || !met;
      table[e.key] = {{"expected", e.expected},
                      {"observed", e.observed},
                      {"met", met}};
    }
    report["expectations"] = std::move(table);
    report["outcome"] = mismatch ? "mismatch" : "met";
  } else {
    report["outcome"] = "no expectations";
  }

  emit(report, o, out);
  if (!o.out.empty()) {
    const std::string stem = stem_of(o.out);
    if (sens) write_file(stem + ".witnesses.csv", witnesses_csv(sys, *sens));
    for (const auto& k : plots) {
      write_file(stem + "." + k + ".svg", render_plot(report, k));
    }
  }
  if (mismatch) {
    for (const auto& e : observed) {
      if (e.expected != e.observed) {
        err << "expectation not met: " << e.key << " expected "
            << e.expected.dump() << ", observed " << e.observed.dump()
            << "\n";
      }
    }
    return kExitMismatch;
  }
  return kExitOk;
}

int covering(const Options& o, std::ostream& out) {
  check_budgets(o);
  Loaded loaded = load(o);
  const SystemDef& sys = loaded.system;
  if (o.point.empty() || o.radius.empty()) {
    throw UsageError("covering needs --point and --radius");
  }
  Rational x = point_in_space(sys, o.point, "--point");
  Rational r = positive(o.radius, "--radius");
  Grid grid{o.grid};
  auto fam = covering_family(sys, x, r, grid, o.max_word_len);
  bool verified = verify_covering(sys, grid, fam);
  json params = parameters(o);
  params["point"] = x.str();
  params["radius"] = r.str();
  json report = {{"system", system_to_json(sys)},
                 {"parameters", params},
                 {"covering", to_json(sys, fam, verified)}};
  emit(report, o, out);
  return verified ? kExitOk : kExitMismatch;
}

int nonexpansive(const Options& o, std::ostream& out) {
  check_budgets(o);
  Loaded loaded = load(o);
  const SystemDef& sys = loaded.system;
  if (o.interval.empty()) throw UsageError("nonexpansive needs --interval");
  Interval region = parse_interval(o.interval);
  auto v = certify_nonexpansive(sys, region.lo, region.hi, o.max_word_len);
  json params = {{"max_word_len", o.max_word_len},
                 {"interval", {region.lo.str(), region.hi.str()}}};
  json report = {{"system", system_to_json(sys)},
                 {"parameters", params},
                 {"nonexpansive", to_json(sys, v)}};
  emit(report, o, out);
  return kExitOk;
}

int gallery_list(std::ostream& out) {
  json list = json::array();
  for (const auto& name : gallery_names()) {
    auto g = gallery_system(name);
    list.push_back({{"name", name},
                    {"space", to_string(g.system.space)},
                    {"generators", g.system.generator_count()},
                    {"theorem", g.expected.theorem}});
  }
  out << dump({{"systems", list}});
  return kExitOk;
}

int gallery_show(const Options& o, std::ostream& out) {
  GallerySystem g;
  try {
    g = gallery_system(o.gallery_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json report = {{"system", system_to_json(g.system)},
                 {"expected", expected_to_json(g.expected)}};
  emit(report, o, out);
  return kExitOk;
}

int plot(const Options& o, std::ostream& out) {
  std::ifstream in(o.report);
  if (!in) throw UsageError("cannot open report " + o.report);
  json report;
  try {
    report = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(o.report + ": " + e.what());
  }
  if (o.plot.empty()) throw UsageError("plot needs --plot KIND");
  std::string svg;
  try {
    svg = render_plot(report, o.plot);
  } catch (const PlotError& e) {
    throw UsageError(e.what());
  }
  if (o.out.empty()) {
    out << svg;
  } else {
    write_file(o.out, svg);
  }
  return kExitOk;
}

void add_system_flags(CLI::App* sub, Options& o) {
  auto* s = sub->add_option("--system", o.system,
                            "gallery system: counterexample, tent, "
                            "expanding2, rotation:p/q");
  auto* f = sub->add_option("--system-file", o.system_file,
                            "JSON system definition");
  s->excludes(f);
  sub->add_option("--grid", o.grid, "number of grid cells")
      ->capture_default_str();
  sub->add_option("--max-word-len", o.max_word_len, "word length budget")
      ->capture_default_str();
  sub->add_option("--out", o.out, "output file (default: stdout)");
  sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Exact analysis of semigroup actions generated by "
               "piecewise-linear maps",
               "pldyn"};
  app.require_subcommand(1);

  auto* an = app.add_subcommand("analyze", "run checks on a system");
  add_system_flags(an, o);
  an->add_option("--check", o.checks,
                 "comma list of tt, dpt, minimality, m-inverse, covering, "
                 "sensitivity, nonexpansive, almost-open, or all")
      ->capture_default_str();
  an->add_option("--delta", o.delta, "sensitivity constant p/q");
  an->add_option("--radii", o.radii, "decreasing search radii p/q,p/q,...")
      ->capture_default_str();
  an->add_option("--point", o.point, "point for orbit and covering");
  an->add_option("--radius", o.radius, "covering radius");
  an->add_option("--interval", o.interval, "nonexpansive region p/q:p/q");
  an->add_option("--plot", o.plot,
                 "comma list of map-graph, orbit, separation-heatmap");

  auto* cov = app.add_subcommand("covering", "finite return family");
  add_system_flags(cov, o);
  cov->add_option("--point", o.point, "center point")->required();
  cov->add_option("--radius", o.radius, "ball radius")->required();

  auto* ne = app.add_subcommand("nonexpansive",
                                "bounded and unbounded width certificates");
  add_system_flags(ne, o);
  ne->add_option("--interval", o.interval, "region p/q:p/q")->required();

  auto* gal = app.add_subcommand("gallery", "built-in systems");
  gal->require_subcommand(1);
  auto* gl = gal->add_subcommand("list", "list built-in systems");
  auto* gs = gal->add_subcommand("show", "print a system and its expectations");
  gs->add_option("name", o.gallery_name, "system name")->required();
  gs->add_option("--out", o.out, "output file (default: stdout)");

  auto* pl = app.add_subcommand("plot", "render a report as SVG");
  pl->add_option("report", o.report, "analysis report JSON")->required();
  pl->add_option("--plot", o.plot,
                 "map-graph, orbit or separation-heatmap")->required();
  pl->add_option("--out", o.out, "SVG file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (an->parsed()) return analyze(o, out, err);
    if (cov->parsed()) return covering(o, out);
    if (ne->parsed()) {
      if (!ne->count("--max-word-len")) o.max_word_len = 12;
      return nonexpansive(o, out);
    }
    if (gl->parsed()) return gallery_list(out);
    if (gs->parsed()) return gallery_show(o, out);
    if (pl->parsed()) return plot(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pldyn::cli
