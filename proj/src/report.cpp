#include "pldyn/report.hpp"

#include <fstream>
#include <sstream>

namespace pldyn {

namespace {

json rat(const Rational& r) { return r.str(); }

json rats(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

json interval(const Interval& i) { return json::array({i.lo.str(), i.hi.str()}); }

template <class Container>
json indices(const Container& c) {
  json out = json::array();
  for (std::size_t i : c) out.push_back(i);
  return out;
}

json optional_word(const SystemDef& system, const std::optional<Word>& w) {
  return w ? json(format_word(system, *w)) : json(nullptr);
}

Rational parse_token(const json& j, const std::string& where) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number_integer()) {
    text = std::to_string(j.get<long>());
  } else {
    throw SchemaError(where + ": expected a rational string \"p/q\"");
  }
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw SchemaError(where + ": cannot parse \"" + text + "\" as a rational");
  }
}

}  // namespace

json system_to_json(const SystemDef& system) {
  json gens = json::array();
  for (const auto& g : system.generators) {
    json pts = json::array();
    for (const auto& p : g.breakpoints()) {
      pts.push_back(json::array({p.x.str(), p.y.str()}));
    }
    gens.push_back(std::move(pts));
  }
  return {{"name", system.name},
          {"space", to_string(system.space)},
          {"generators", std::move(gens)},
          {"generator_names", system.generator_names}};
}

SystemDef system_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("system: expected a JSON object");
  if (!j.contains("space") || !j["space"].is_string()) {
    throw SchemaError("space: expected \"interval\" or \"circle\"");
  }
  Space space;
  try {
    space = parse_space(j["space"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("space: ") + e.what());
  }
  std::string name = "custom";
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SchemaError("name: expected a string");
    name = j["name"].get<std::string>();
  }
  if (!j.contains("generators") || !j["generators"].is_array() ||
      j["generators"].empty()) {
    throw SchemaError("generators: expected a non-empty array of maps");
  }
  std::vector<PLMap> gens;
  const auto& arr = j["generators"];
  for (std::size_t g = 0; g < arr.size(); ++g) {
    const std::string where = "generators[" + std::to_string(g) + "]";
    if (!arr[g].is_array()) {
      throw SchemaError(where + ": expected an array of [x, y] pairs");
    }
    std::vector<Breakpoint> pts;
    for (std::size_t i = 0; i < arr[g].size(); ++i) {
      const std::string at = where + "[" + std::to_string(i) + "]";
      const auto& p = arr[g][i];
      if (!p.is_array() || p.size() != 2) {
        throw SchemaError(at + ": expected a pair [x, y]");
      }
      pts.push_back({parse_token(p[0], at + "[0]"), parse_token(p[1], at + "[1]")});
    }
    try {
      gens.push_back(PLMap::from_breakpoints(space, std::move(pts)));
    } catch (const MapError& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  std::vector<std::string> names;
  if (j.contains("generator_names")) {
    if (!j["generator_names"].is_array()) {
      throw SchemaError("generator_names: expected an array of strings");
    }
    for (const auto& n : j["generator_names"]) {
      if (!n.is_string()) {
        throw SchemaError("generator_names: expected an array of strings");
      }
      names.push_back(n.get<std::string>());
    }
  }
  try {
    return make_system(space, std::move(gens), name, names);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("generator_names: ") + e.what());
  }
}

SystemDef load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  try {
    return system_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void save_system(const SystemDef& system, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write file");
  out << dump(system_to_json(system));
}

json expected_to_json(const ExpectedVerdicts& e) {
  json out = json::object();
  auto flag = [&](const char* key, const std::optional<bool>& v) {
    if (v) out[key] = *v;
  };
  flag("tt", e.tt);
  flag("minimal_points_dense", e.minimal_points_dense);
  flag("m_inverse_dense", e.m_inverse_dense);
  flag("almost_open", e.almost_open);
  flag("sensitive", e.sensitive);
  flag("minimal", e.minimal);
  if (e.delta) out["delta"] = e.delta->str();
  out["theorem"] = e.theorem;
  out["basis"] = e.basis;
  return out;
}

json to_json(const SystemDef& system, const TTResult& r) {
  json matrix = json::array();
  for (std::size_t u = 0; u < r.n_cells; ++u) {
    matrix.push_back(json::array());
    for (std::size_t v = 0; v < r.n_cells; ++v) matrix[u].push_back(nullptr);
  }
  for (const auto& w : r.witnesses) {
    matrix[w.source][w.target] = format_word(system, w.word);
  }
  json unwitnessed = json::array();
  for (const auto& [u, v] : r.unwitnessed) {
    unwitnessed.push_back(json::array({u, v}));
  }
  json families = json::object();
  for (const auto& [u, images] : r.absorbing_families) {
    json list = json::array();
    for (const auto& i : images) list.push_back(interval(i));
    families[std::to_string(u)] = std::move(list);
  }
  return {{"status", to_string(r.status)},
          {"n_cells", r.n_cells},
          {"max_len", r.max_len},
          {"witness_words", std::move(matrix)},
          {"witnessed_pairs", r.witnesses.size()},
          {"unwitnessed", std::move(unwitnessed)},
          {"absorbing_families", std::move(families)},
          {"cause", r.cause}};
}

json to_json(const TransitiveFraction& r) {
  return {{"samples", r.samples},
          {"certified", r.certified},
          {"fraction", rat(r.fraction)},
          {"exceptions", rats(r.exceptions)},
          {"dpt_plausible", r.dpt_plausible}};
}

json to_json(const SystemDef& system, const OrbitApprox& r) {
  json levels = json::array();
  for (const auto& level : r.hit_by_length) levels.push_back(indices(level));
  json reps = json::object();
  for (const auto& [cell, p] : r.representative) {
    reps[std::to_string(cell)] = {{"word", format_word(system, p.word)},
                                  {"value", rat(p.value)}};
  }
  return {{"origin", rat(r.origin)},
          {"max_len", r.max_len},
          {"truncated", r.truncated},
          {"hit_cells", indices(r.hit_cells())},
          {"hit_by_length", std::move(levels)},
          {"representatives", std::move(reps)}};
}

json to_json(const SystemDef& system, const MinimalCells& cells,
             const DistinctMinimalSets& sets) {
  json per_cell = json::array();
  for (const auto& c : cells.per_cell) {
    per_cell.push_back({{"status", to_string(c.status)},
                        {"exact", c.exact},
                        {"sample", rat(c.sample)}});
  }
  json classes = json::array();
  for (const auto& c : sets.classes) {
    classes.push_back({{"label", c.label},
                       {"exact", c.is_exact},
                       {"points", rats(c.points)},
                       {"cells", indices(c.cells)},
                       {"certifying_word",
                        optional_word(system, c.certifying_word)}});
  }
  json distance = json::array();
  for (const auto& row : sets.distance) {
    json r = json::array();
    for (const auto& d : row) r.push_back(d ? json(d->str()) : json(nullptr));
    distance.push_back(std::move(r));
  }
  return {{"n_cells", cells.n_cells},
          {"max_len", cells.max_len},
          {"return_radius", rat(cells.return_radius)},
          {"density", rat(cells.density)},
          {"certified_cells", indices(cells.certified)},
          {"per_cell", std::move(per_cell)},
          {"classes", std::move(classes)},
          {"distance", std::move(distance)},
          {"note", sets.note},
          {"notes", cells.notes}};
}

json to_json(const SystemDef& system, const MInverse& r) {
  json witness = json::object();
  for (const auto& [cell, w] : r.witness) {
    witness[std::to_string(cell)] = format_word(system, w);
  }
  return {{"cells", indices(r.cells)},
          {"density", rat(r.density)},
          {"witness", std::move(witness)},
          {"cause", r.cause}};
}

json to_json(const AlmostOpenReport& r) {
  json constancy = json::array();
  for (const auto& c : r.constancy) {
    constancy.push_back(c ? interval(*c) : json(nullptr));
  }
  return {{"almost_open", r.almost_open},
          {"constancy", std::move(constancy)},
          {"spot_checks", r.spot_checks},
          {"spot_checks_consistent", r.spot_checks_consistent}};
}

json to_json(const WeightCertificate& r) {
  return {{"applicable", r.applicable},
          {"passed", r.passed},
          {"bands_checked", r.bands_checked},
          {"failures", r.failures},
          {"note", r.note}};
}

json to_json(const SystemDef& system, const SensitivityVerdict& r,
             const std::optional<DerivedDelta>& derived) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json witness = nullptr;
    if (e.witness) {
      witness = {{"y", rat(e.witness->y)},
                 {"word", format_word(system, e.witness->word)},
                 {"separation", rat(e.witness->separation)}};
    }
    entries.push_back({{"cell", e.cell},
                       {"radius", rat(e.radius)},
                       {"x", rat(e.x)},
                       {"status", to_string(e.status)},
                       {"best_separation", rat(e.best_separation)},
                       {"witness", std::move(witness)}});
  }
  json out = {{"delta", rat(r.delta)},
              {"status", to_string(r.status)},
              {"n_cells", r.n_cells},
              {"max_len", r.max_len},
              {"radii", rats(r.radii)},
              {"entries", std::move(entries)},
              {"failures", r.failures.size()},
              {"certificate",
               r.certificate ? to_json(*r.certificate) : json(nullptr)}};
  if (derived) {
    out["delta_source"] = {{"rule", derived->rule},
                           {"classes", derived->classes},
                           {"x0", derived->x0 ? json(derived->x0->str())
                                              : json(nullptr)}};
  } else {
    out["delta_source"] = {{"rule", "given"}};
  }
  return out;
}

json to_json(const SystemDef& system, const CoveringFamily& r, bool verified) {
  json words = json::array();
  for (const auto& w : r.words) words.push_back(format_word(system, w));
  json witness = json::object();
  for (const auto& [cell, index] : r.per_cell_witness) {
    witness[std::to_string(cell)] = format_word(system, r.words[index]);
  }
  return {{"status", to_string(r.status)},
          {"center", rat(r.center)},
          {"radius", rat(r.radius)},
          {"n_cells", r.n_cells},
          {"max_len", r.max_len},
          {"words", std::move(words)},
          {"size", r.words.size()},
          {"orbit_cells", indices(r.orbit_cells)},
          {"certified_cells", indices(r.certified_cells)},
          {"uncovered", indices(r.uncovered)},
          {"per_cell_witness", std::move(witness)},
          {"center_minimality", to_string(r.center_minimality)},
          {"verified", verified}};
}

json to_json(const SystemDef& system, const NonexpansiveVerdict& r) {
  return {{"status", to_string(r.status)},
          {"region", interval(r.region)},
          {"max_len", r.max_len},
          {"words_checked", r.words_checked},
          {"point_images", r.point_images},
          {"widest", rat(r.widest)},
          {"widest_word", optional_word(system, r.widest_word)},
          {"offending", optional_word(system, r.offending)},
          {"cause", r.cause},
          {"certificate",
           r.certificate ? to_json(*r.certificate) : json(nullptr)},
          {"unbounded",
           r.certificate && r.certificate->passed &&
               r.region.lo > Rational(1, 2)}};
}

std::string witnesses_csv(const SystemDef& system,
                          const SensitivityVerdict& r) {
  std::ostringstream out;
  out << "cell,radius,x,y,word,separation\n";
  for (const auto& e : r.entries) {
    if (!e.witness) continue;
    out << e.cell << ',' << e.radius.str() << ',' << e.witness->x.str() << ','
        << e.witness->y.str() << ',' << format_word(system, e.witness->word)
        << ',' << e.witness->separation.str() << '\n';
  }
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pldyn
