#include "pldyn/orbit.hpp"

#include <algorithm>

#include "pldyn/parallel.hpp"
#include "pldyn/word_search.hpp"

namespace pldyn {

namespace {

struct RationalKeyHash {
  std::size_t operator()(const Rational& r) const noexcept { return r.hash(); }
};

}  // namespace

std::set<std::size_t> OrbitApprox::hit_cells() const {
  std::set<std::size_t> out;
  for (const auto& [cell, point] : representative) out.insert(cell);
  return out;
}

OrbitApprox orbit_cells(const SystemDef& system, const Rational& x,
                        const Grid& grid, std::size_t max_len,
                        std::size_t level_cap) {
  OrbitApprox out;
  out.origin = x;
  out.max_len = max_len;
  out.hit_by_length.resize(max_len);
  auto stats = search_words<Rational, Rational, RationalKeyHash>(
      system.generator_count(), max_len, Extension::left, Dedupe::per_level,
      normalize_point(system.space, x),
      [&](Letter g, const Rational& p) {
        return pl_eval(system.generators[g], p);
      },
      [](const Rational& p) { return p; },
      [&](const Word& w, const Rational& p) {
        std::size_t c = grid.cell_of(system.space, p);
        out.hit_by_length[w.size() - 1].insert(c);
        out.representative.try_emplace(c, OrbitPoint{w, p});
        return Visit::extend;
      },
      level_cap);
  out.truncated = stats.truncated;
  return out;
}

TransitivePointResult is_transitive_point(const SystemDef& system,
                                          const Rational& x, const Grid& grid,
                                          std::size_t max_len) {
  std::vector<char> hit(grid.n_cells, 0);
  std::size_t count = 0;
  search_words<Rational, Rational, RationalKeyHash>(
      system.generator_count(), max_len, Extension::left, Dedupe::global,
      normalize_point(system.space, x),
      [&](Letter g, const Rational& p) {
        return pl_eval(system.generators[g], p);
      },
      [](const Rational& p) { return p; },
      [&](const Word&, const Rational& p) {
        std::size_t c = grid.cell_of(system.space, p);
        if (!hit[c]) {
          hit[c] = 1;
          if (++count == grid.n_cells) return Visit::stop;
        }
        return Visit::extend;
      });
  TransitivePointResult out;
  out.hit_count = count;
  for (std::size_t c = 0; c < grid.n_cells; ++c) {
    if (!hit[c]) out.missing_cells.push_back(c);
  }
  out.status =
      out.missing_cells.empty() ? Status::certified : Status::unknown;
  return out;
}

TTResult is_tt(const SystemDef& system, const Grid& grid, std::size_t max_len,
               std::size_t jobs) {
  const std::size_t n = grid.n_cells;
  struct SourceResult {
    std::vector<std::optional<Word>> witness;
    bool closed = false;
    std::vector<Interval> images;
  };
  std::vector<SourceResult> per_source(n);

  parallel_for(n, jobs, [&](std::size_t u) {
    SourceResult& res = per_source[u];
    res.witness.assign(n, std::nullopt);
    std::size_t remaining = n;
    auto stats = search_words<Interval, Interval, IntervalHash>(
        system.generator_count(), max_len, Extension::left, Dedupe::global,
        grid.cell(u),
        [&](Letter g, const Interval& arc) {
          return canonical_arc(system.space,
                               lifted_image(system.generators[g], arc));
        },
        [](const Interval& arc) { return arc; },
        [&](const Word& w, const Interval& image) {
          res.images.push_back(image);
          for (std::size_t v = 0; v < n; ++v) {
            if (res.witness[v]) continue;
            if (grid.open_cell_meets(system.space, v, image)) {
              res.witness[v] = w;
              if (--remaining == 0) return Visit::stop;
            }
          }
          return Visit::extend;
        });
    res.closed = stats.closed;
  });

  TTResult out;
  out.n_cells = n;
  out.max_len = max_len;
  bool refuted = false;
  for (std::size_t u = 0; u < n; ++u) {
    auto& res = per_source[u];
    bool missing = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (res.witness[v]) {
        out.witnesses.push_back({u, v, *res.witness[v]});
      } else {
        out.unwitnessed.emplace_back(u, v);
        missing = true;
      }
    }
    if (missing && res.closed) {
      refuted = true;
      out.absorbing_families.emplace(u, std::move(res.images));
    }
  }
  if (out.unwitnessed.empty()) {
    out.status = Status::certified;
  } else if (refuted) {
    out.status = Status::refuted;
    out.cause = "image family of a source cell closed without meeting every "
                "cell";
  } else {
    out.status = Status::unknown;
    out.cause = "word-length budget exhausted";
  }
  return out;
}

TransitiveFraction transitive_fraction(
    const SystemDef& system, const Grid& grid, std::size_t max_len,
    std::optional<std::vector<Rational>> samples, std::size_t jobs) {
  std::vector<Rational> points;
  if (samples) {
    points = std::move(*samples);
  } else {
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
      points.push_back(grid.midpoint(j));
    }
  }
  std::vector<Status> status(points.size(), Status::unknown);
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    status[i] = is_transitive_point(system, points[i], grid, max_len).status;
  });
  TransitiveFraction out;
  out.samples = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (status[i] == Status::certified) {
      ++out.certified;
    } else {
      out.exceptions.push_back(points[i]);
    }
  }
  out.fraction = points.empty()
                     ? Rational(0)
                     : Rational(static_cast<long>(out.certified),
                                static_cast<long>(out.samples));
  out.dpt_plausible = !points.empty() && out.certified == out.samples;
  return out;
}

}  // namespace pldyn
