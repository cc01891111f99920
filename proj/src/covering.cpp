#include "pldyn/covering.hpp"

#include <set>

#include "pldyn/minimality.hpp"
#include "pldyn/orbit.hpp"
#include "pldyn/word_search.hpp"

namespace pldyn {

namespace {

struct ImagesHash {
  std::size_t operator()(const std::vector<Interval>& v) const noexcept {
    std::size_t h = v.size();
    for (const auto& i : v) h = h * 1000003u ^ IntervalHash{}(i);
    return h;
  }
};

struct Candidate {
  Word word;
  // Positions in the orbit cell list.
  std::vector<std::size_t> covers;
};

}  // namespace

bool inside_open_ball(Space space, const Interval& lifted,
                      const Rational& center, const Rational& radius) {
  const Rational lo = center - radius, hi = center + radius;
  if (space == Space::interval) return lo < lifted.lo && lifted.hi < hi;
  long k = floor_int(lo - lifted.lo);
  for (long shift = k; shift <= k + 2; ++shift) {
    Rational s(shift);
    if (lo < lifted.lo + s && lifted.hi + s < hi) return true;
  }
  return false;
}

CoveringFamily covering_family(const SystemDef& system, const Rational& x,
                               const Rational& radius, const Grid& grid,
                               std::size_t max_len, std::size_t state_cap) {
  if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
  CoveringFamily out;
  out.center = normalize_point(system.space, x);
  out.radius = radius;
  out.n_cells = grid.n_cells;
  out.max_len = max_len;
  auto hit = orbit_cells(system, out.center, grid, max_len).hit_cells();
  out.orbit_cells.assign(hit.begin(), hit.end());
  const std::size_t m = out.orbit_cells.size();

  std::vector<Interval> start;
  for (std::size_t c : out.orbit_cells) start.push_back(grid.cell(c));
  std::vector<Candidate> candidates;
  std::set<std::vector<std::size_t>> seen_covers;
  search_words<std::vector<Interval>, std::vector<Interval>, ImagesHash>(
      system.generator_count(), max_len, Extension::left, Dedupe::global,
      start,
      [&](Letter g, const std::vector<Interval>& images) {
        std::vector<Interval> next;
        next.reserve(images.size());
        for (const auto& arc : images) {
          next.push_back(canonical_arc(
              system.space, lifted_image(system.generators[g], arc)));
        }
        return next;
      },
      [](const std::vector<Interval>& images) { return images; },
      [&](const Word& w, const std::vector<Interval>& images) {
        std::vector<std::size_t> covers;
        for (std::size_t i = 0; i < m; ++i) {
          if (inside_open_ball(system.space, images[i], out.center, radius)) {
            covers.push_back(i);
          }
        }
        if (covers.empty() || !seen_covers.insert(covers).second) {
          return Visit::extend;
        }
        bool full = covers.size() == m;
        candidates.push_back({w, std::move(covers)});
        return full ? Visit::stop : Visit::extend;
      },
      state_cap);

  // Greedy cover: largest gain, earliest word on ties.
  std::vector<char> done(m, 0);
  std::size_t remaining = m;
  while (remaining > 0) {
    std::size_t best = candidates.size(), best_gain = 0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      std::size_t gain = 0;
      for (std::size_t i : candidates[k].covers) gain += !done[i];
      if (gain > best_gain) {
        best_gain = gain;
        best = k;
      }
    }
    if (best_gain == 0) break;
    std::size_t index = out.words.size();
    out.words.push_back(candidates[best].word);
    for (std::size_t i : candidates[best].covers) {
      if (done[i]) continue;
      done[i] = 1;
      --remaining;
      out.per_cell_witness.emplace(out.orbit_cells[i], index);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    (done[i] ? out.certified_cells : out.uncovered)
        .push_back(out.orbit_cells[i]);
  }
  out.status = out.uncovered.empty() ? Status::certified : Status::unknown;
  out.center_minimality =
      is_minimal_point(system, out.center, grid, max_len, radius).status;
  return out;
}

bool verify_covering(const SystemDef& system, const Grid& grid,
                     const CoveringFamily& family) {
  for (const auto& [cell, index] : family.per_cell_witness) {
    if (index >= family.words.size()) return false;
    PLMap phi = word_map(system, family.words[index]);
    Interval c = grid.cell(cell);
    if (!inside_open_ball(system.space, pl_image(phi, c.lo, c.hi),
                          family.center, family.radius)) {
      return false;
    }
  }
  return family.per_cell_witness.size() == family.certified_cells.size();
}

}  // namespace pldyn
