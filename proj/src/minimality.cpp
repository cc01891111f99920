#include "pldyn/minimality.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "pldyn/parallel.hpp"
#include "pldyn/word_search.hpp"

namespace pldyn {

namespace {

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept { return r.hash(); }
};

struct OptionalMapHash {
  std::size_t operator()(const std::optional<PLMap>& m) const noexcept {
    return m ? m->hash() : 0;
  }
};

struct IntervalSetHash {
  std::size_t operator()(const std::vector<Interval>& v) const noexcept {
    std::size_t h = v.size();
    for (const auto& i : v) h = h * 1000003u ^ IntervalHash{}(i);
    return h;
  }
};

// Fixed points of one linear piece of a (lifted) map, reduced to [0,1).
void piece_fixed_points(Space space, const Breakpoint& a, const Breakpoint& b,
                        std::vector<Rational>& out) {
  Rational slope = (b.y - a.y) / (b.x - a.x);
  // y(x) - x = k for an integer k; k = 0 only on the interval.
  long k_lo = 0, k_hi = 0;
  if (space == Space::circle) {
    Rational d1 = a.y - a.x, d2 = b.y - b.x;
    k_lo = ceil_int(min(d1, d2));
    k_hi = floor_int(max(d1, d2));
  }
  for (long k = k_lo; k <= k_hi; ++k) {
    Rational shift(k);
    if (slope == 1) {
      if (a.y - a.x == shift) {
        out.push_back(normalize_point(space, a.x));
        out.push_back(normalize_point(space, b.x));
      }
      continue;
    }
    // a.y + slope (x - a.x) = x + k
    Rational x = (a.y - slope * a.x - shift) / (Rational(1) - slope);
    if (a.x <= x && x <= b.x) out.push_back(normalize_point(space, x));
  }
}

std::optional<Word> permuting_word(const SystemDef& system,
                                   const std::vector<Rational>& points,
                                   std::size_t budget) {
  std::optional<Word> found;
  for_each_word(system.generator_count(), budget, [&](const Word& w) {
    std::vector<Rational> image;
    image.reserve(points.size());
    for (const auto& p : points) image.push_back(word_apply(system, w, p));
    std::sort(image.begin(), image.end());
    if (image == points) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

std::optional<Word> return_word(const SystemDef& system, const Rational& from,
                                const Rational& target,
                                const Rational& radius, std::size_t max_len) {
  std::optional<Word> found;
  search_words<Rational, Rational, RationalHash>(
      system.generator_count(), max_len, Extension::left, Dedupe::global,
      from,
      [&](Letter g, const Rational& p) {
        return pl_eval(system.generators[g], p);
      },
      [](const Rational& p) { return p; },
      [&](const Word& w, const Rational& p) {
        if (distance(system.space, p, target) < radius) {
          found = w;
          return Visit::stop;
        }
        return Visit::extend;
      });
  return found;
}

bool class_less(const MinimalSetApprox& a, const MinimalSetApprox& b) {
  if (a.points.front() != b.points.front()) {
    return a.points.front() < b.points.front();
  }
  return a.points.size() < b.points.size();
}

MinimalSetApprox exact_class(const SystemDef& system, const Grid& grid,
                             std::vector<Rational> orbit) {
  MinimalSetApprox c;
  c.is_exact = true;
  for (const auto& p : orbit) c.cells.insert(grid.cell_of(system.space, p));
  c.points = std::move(orbit);
  return c;
}

}  // namespace

std::optional<std::vector<Rational>> exact_minimal_orbit(
    const SystemDef& system, const Rational& x, std::size_t cap) {
  const Rational start = normalize_point(system.space, x);
  std::unordered_map<Rational, std::size_t, RationalHash> index;
  std::vector<Rational> nodes;
  std::vector<std::vector<std::size_t>> edges;
  auto intern = [&](const Rational& p) {
    auto [it, inserted] = index.try_emplace(p, nodes.size());
    if (inserted) {
      nodes.push_back(p);
      edges.emplace_back();
    }
    return it->second;
  };
  intern(start);
  // Node 0 is the start; it belongs to the orbit only if some word returns.
  std::vector<char> in_orbit(1, 0);
  std::vector<std::size_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t u = queue[head];
    for (const auto& g : system.generators) {
      std::size_t v = intern(pl_eval(g, nodes[u]));
      if (nodes.size() > cap + 1) return std::nullopt;
      edges[u].push_back(v);
      if (in_orbit.size() < nodes.size()) in_orbit.resize(nodes.size(), 0);
      if (!in_orbit[v]) {
        in_orbit[v] = 1;
        queue.push_back(v);
      }
    }
  }
  if (!in_orbit[0]) return std::nullopt;
  // Every orbit point must lead back to the start.
  std::vector<std::vector<std::size_t>> reverse(nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    for (std::size_t v : edges[u]) reverse[v].push_back(u);
  }
  std::vector<char> reaches(nodes.size(), 0);
  std::vector<std::size_t> stack{0};
  reaches[0] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : reverse[v]) {
      if (!reaches[u]) {
        reaches[u] = 1;
        stack.push_back(u);
      }
    }
  }
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (in_orbit[u] && !reaches[u]) return std::nullopt;
  }
  std::vector<Rational> orbit;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (in_orbit[u]) orbit.push_back(nodes[u]);
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

MinimalPointResult is_minimal_point(const SystemDef& system,
                                    const Rational& x, const Grid& grid,
                                    std::size_t max_len,
                                    const Rational& return_radius,
                                    std::size_t exact_cap) {
  MinimalPointResult out;
  if (exact_minimal_orbit(system, x, exact_cap)) {
    out.status = Status::certified;
    out.exact = true;
    return out;
  }
  // Stream the orbit (first word per point) and demand a return from each
  // cell's first representative as soon as the cell is reached.
  std::set<std::size_t> seen_cells;
  search_words<Rational, Rational, RationalHash>(
      system.generator_count(), max_len, Extension::left, Dedupe::global,
      normalize_point(system.space, x),
      [&](Letter g, const Rational& p) {
        return pl_eval(system.generators[g], p);
      },
      [](const Rational& p) { return p; },
      [&](const Word& w, const Rational& p) {
        std::size_t cell = grid.cell_of(system.space, p);
        if (!seen_cells.insert(cell).second) return Visit::extend;
        auto back = return_word(system, p, x, return_radius, max_len);
        if (!back) {
          out.stuck = OrbitPoint{w, p};
          return Visit::stop;
        }
        out.returns.emplace(cell, *back);
        return Visit::extend;
      });
  out.status = out.stuck ? Status::unknown : Status::certified;
  return out;
}

std::vector<Rational> periodic_candidates(const SystemDef& system,
                                          std::size_t budget,
                                          std::size_t breakpoint_cap) {
  std::vector<Rational> out;
  search_words<std::optional<PLMap>, std::optional<PLMap>, OptionalMapHash>(
      system.generator_count(), budget, Extension::left, Dedupe::global,
      std::optional<PLMap>(PLMap::identity(system.space)),
      [&](Letter g, const std::optional<PLMap>& m) -> std::optional<PLMap> {
        if (!m) return std::nullopt;
        try {
          return pl_compose(system.generators[g], *m, breakpoint_cap);
        } catch (const BudgetError&) {
          return std::nullopt;
        }
      },
      [](const std::optional<PLMap>& m) { return m; },
      [&](const Word&, const std::optional<PLMap>& m) {
        if (!m) return Visit::prune;
        const auto& pts = m->breakpoints();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
          piece_fixed_points(system.space, pts[i], pts[i + 1], out);
        }
        return Visit::extend;
      });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinimalCells minimal_cells(const SystemDef& system, const Grid& grid,
                           std::size_t max_len, const Rational& return_radius,
                           const MinimalityOptions& options) {
  MinimalCells out;
  out.n_cells = grid.n_cells;
  out.max_len = max_len;
  out.return_radius = return_radius;

  std::vector<MinimalSetApprox> classes;
  std::set<Rational> known;
  auto add_class = [&](std::vector<Rational> orbit) {
    if (known.count(orbit.front())) return;
    for (const auto& p : orbit) known.insert(p);
    classes.push_back(exact_class(system, grid, std::move(orbit)));
  };
  std::vector<std::optional<Rational>> exact_in_cell(grid.n_cells);
  std::size_t covered = 0;
  auto note_points = [&](const std::vector<Rational>& pts) {
    for (const auto& p : pts) {
      auto& slot = exact_in_cell[grid.cell_of(system.space, p)];
      if (!slot) {
        slot = p;
        ++covered;
      } else if (p < *slot) {
        slot = p;
      }
    }
  };
  // Smallest denominators first; stop once every cell holds an exact point.
  auto candidates = periodic_candidates(system, options.periodic_budget,
                                        options.breakpoint_cap);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Rational& a, const Rational& b) {
                     return cmp(a.raw().get_den(), b.raw().get_den()) < 0;
                   });
  std::size_t tested = 0;
  for (const auto& c : candidates) {
    if (covered == grid.n_cells) break;
    ++tested;
    if (known.count(c)) continue;
    if (auto orbit = exact_minimal_orbit(system, c, options.exact_orbit_cap)) {
      note_points(*orbit);
      add_class(std::move(*orbit));
    }
  }
  if (tested < candidates.size()) {
    out.notes.push_back("periodic candidates tested: " +
                        std::to_string(tested) + " of " +
                        std::to_string(candidates.size()) +
                        " (every cell already held an exact minimal point)");
  }

  struct MidpointResult {
    std::optional<std::vector<Rational>> orbit;
    Status status = Status::unknown;
  };
  std::vector<MidpointResult> mid(grid.n_cells);
  parallel_for(grid.n_cells, options.jobs, [&](std::size_t j) {
    if (exact_in_cell[j]) return;
    Rational m = grid.midpoint(j);
    mid[j].orbit = exact_minimal_orbit(system, m, options.exact_orbit_cap);
    if (mid[j].orbit) {
      mid[j].status = Status::certified;
      return;
    }
    mid[j].status = is_minimal_point(system, m, grid, max_len, return_radius,
                                     options.exact_orbit_cap)
                        .status;
  });

  out.per_cell.resize(grid.n_cells);
  for (std::size_t j = 0; j < grid.n_cells; ++j) {
    auto& cell = out.per_cell[j];
    if (exact_in_cell[j]) {
      cell = {Status::certified, true, *exact_in_cell[j]};
    } else {
      cell.sample = grid.midpoint(j);
      cell.status = mid[j].status;
      cell.exact = mid[j].orbit.has_value();
      if (mid[j].orbit) {
        add_class(std::move(*mid[j].orbit));
      } else if (cell.status == Status::certified) {
        out.approximate_samples.push_back(cell.sample);
      }
    }
    if (cell.status == Status::certified) out.certified.push_back(j);
  }
  out.density = Rational(static_cast<long>(out.certified.size()),
                         static_cast<long>(grid.n_cells));

  std::sort(classes.begin(), classes.end(), class_less);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes[i].label = "M" + std::to_string(i + 1);
    classes[i].certifying_word =
        permuting_word(system, classes[i].points, options.periodic_budget);
  }
  out.exact_classes = std::move(classes);
  return out;
}

MInverse m_inverse_cells(const SystemDef& system, const Grid& grid,
                         std::size_t max_len,
                         const std::vector<Interval>& targets,
                         std::size_t interval_cap) {
  MInverse out;
  std::vector<Interval> start = merge_intervals(targets);
  bool over_cap = false;
  search_words<std::vector<Interval>, std::vector<Interval>, IntervalSetHash>(
      system.generator_count(), max_len, Extension::right, Dedupe::global,
      start,
      [&](Letter g, const std::vector<Interval>& set) {
        std::vector<Interval> parts;
        for (const auto& iv : set) {
          auto pre = pl_preimage(system.generators[g], iv.lo, iv.hi);
          parts.insert(parts.end(), pre.begin(), pre.end());
        }
        return merge_intervals(std::move(parts));
      },
      [](const std::vector<Interval>& set) { return set; },
      [&](const Word& w, const std::vector<Interval>& set) {
        if (set.empty()) return Visit::prune;
        if (set.size() > interval_cap) {
          over_cap = true;
          return Visit::prune;
        }
        for (const auto& iv : set) {
          for (std::size_t c : grid.cells_meeting(iv)) {
            if (out.cells.insert(c).second) out.witness.emplace(c, w);
          }
        }
        if (out.cells.size() == grid.n_cells) return Visit::stop;
        return Visit::extend;
      });
  if (over_cap) {
    out.cause = "preimage sets above " + std::to_string(interval_cap) +
                " intervals were not extended";
  }
  out.density = Rational(static_cast<long>(out.cells.size()),
                         static_cast<long>(grid.n_cells));
  return out;
}

Rational set_distance(Space space, const std::vector<Rational>& a,
                      const std::vector<Rational>& b) {
  std::optional<Rational> best;
  for (const auto& p : a) {
    for (const auto& q : b) {
      Rational d = distance(space, p, q);
      if (!best || d < *best) best = d;
    }
  }
  if (!best) throw std::invalid_argument("distance to an empty set");
  return *best;
}

DistinctMinimalSets distinct_minimal_sets(const SystemDef& system,
                                          const Grid& grid,
                                          std::size_t max_len,
                                          const MinimalCells& cells) {
  DistinctMinimalSets out;
  out.classes = cells.exact_classes;

  // Approximate classes: merge samples whose orbits enter each other's
  // return radius.
  const auto& samples = cells.approximate_samples;
  std::vector<OrbitApprox> orbits;
  for (const auto& s : samples) {
    orbits.push_back(orbit_cells(system, s, grid, max_len));
  }
  auto enters = [&](std::size_t i, std::size_t j) {
    for (const auto& [cell, rep] : orbits[i].representative) {
      if (distance(system.space, rep.value, samples[j]) <
          cells.return_radius) {
        return true;
      }
    }
    return false;
  };
  std::vector<std::size_t> parent(samples.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (enters(i, j) && enters(j, i)) {
        std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, MinimalSetApprox> groups;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto& g = groups[find(i)];
    g.points.push_back(samples[i]);
    for (std::size_t c : orbits[i].hit_cells()) g.cells.insert(c);
  }
  std::size_t k = 0;
  for (auto& [root, g] : groups) {
    g.label = "A" + std::to_string(++k);
    out.classes.push_back(std::move(g));
  }

  const std::size_t n = out.classes.size();
  out.distance.assign(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (out.classes[i].is_exact && out.classes[j].is_exact) {
        out.distance[i][j] = set_distance(system.space, out.classes[i].points,
                                          out.classes[j].points);
      }
    }
  }
  if (n < 2) out.note = "non-minimality not established";
  return out;
}

DistinctMinimalSets distinct_minimal_sets(const SystemDef& system,
                                          const Grid& grid,
                                          std::size_t max_len,
                                          const MinimalityOptions& options) {
  auto cells = minimal_cells(system, grid, max_len,
                             Rational(1, 2 * static_cast<long>(grid.n_cells)),
                             options);
  return distinct_minimal_sets(system, grid, max_len, cells);
}

std::vector<Interval> minimal_targets(const Grid& grid,
                                      const DistinctMinimalSets& sets) {
  std::vector<Interval> out;
  for (const auto& c : sets.classes) {
    if (c.is_exact) {
      for (const auto& p : c.points) out.push_back({p, p});
    } else {
      for (std::size_t j : c.cells) out.push_back(grid.cell(j));
    }
  }
  return merge_intervals(std::move(out));
}

}  // namespace pldyn
