#include "pldyn/sensitivity.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "pldyn/parallel.hpp"
#include "pldyn/word_search.hpp"

namespace pldyn {

namespace {

struct OptionalMapHash {
  std::size_t operator()(const std::optional<PLMap>& m) const noexcept {
    return m ? m->hash() : 0;
  }
};

bool shares_point(Space space, const std::vector<Rational>& a,
                  const std::vector<Rational>& b) {
  for (const auto& p : a) {
    for (const auto& q : b) {
      if (distance(space, p, q).is_zero()) return true;
    }
  }
  return false;
}

// k with 2^-k-1 < t <= 2^-k, for t in (0, 1].
long closed_band(const Rational& t) {
  long k = 0;
  Rational edge(1, 2);
  while (!(t > edge)) {
    edge /= Rational(2);
    ++k;
  }
  return k;
}

// Band holding the points just above t, for t in [0, 1): k with
// 2^-k-1 <= t < 2^-k. Points just above 0 lie in every deep band.
std::optional<long> band_above(const Rational& t) {
  if (t.is_zero()) return std::nullopt;
  long k = 0;
  Rational edge(1, 2);
  while (t < edge) {
    edge /= Rational(2);
    ++k;
  }
  return k;
}

// Candidate points of a local map on D: ends, grid points, breakpoints and,
// on the circle, the points where the lifted offset from phi(x) is a half
// integer (the farthest possible circle distance).
std::vector<Rational> witness_candidates(Space space, const PLMap& m,
                                         const Rational& fx,
                                         const std::vector<Rational>& grid_pts) {
  const auto& pts = m.breakpoints();
  std::vector<Rational> out;
  out.reserve(pts.size() + grid_pts.size() + 4);
  for (const auto& p : pts) out.push_back(p.x);
  out.insert(out.end(), grid_pts.begin(), grid_pts.end());
  if (space == Space::circle) {
    const Rational half(1, 2);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      Rational dp = pts[i].y - fx, dq = pts[i + 1].y - fx;
      if (dp == dq) continue;
      long k_lo = ceil_int(min(dp, dq) - half);
      long k_hi = floor_int(max(dp, dq) - half);
      for (long k = k_lo; k <= k_hi; ++k) {
        Rational target = Rational(k) + half;
        out.push_back(pts[i].x + (target - dp) * (pts[i + 1].x - pts[i].x) /
                                     (dq - dp));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Rational theorem1_delta(Space space, const MinimalSetApprox& m1,
                        const MinimalSetApprox& m2) {
  if (!m1.is_exact || !m2.is_exact) {
    throw std::invalid_argument("both minimal sets must be exact");
  }
  if (shares_point(space, m1.points, m2.points)) {
    throw std::invalid_argument("minimal sets intersect");
  }
  return set_distance(space, m1.points, m2.points) / Rational(8);
}

Rational theorem2_case_a_delta(Space space, const Rational& x0,
                               const MinimalSetApprox& m) {
  if (!m.is_exact) throw std::invalid_argument("minimal set must be exact");
  Rational d = set_distance(space, {x0}, m.points);
  if (d.is_zero()) {
    throw std::invalid_argument("x0 = " + x0.str() +
                                " lies in the minimal set");
  }
  return d / Rational(4);
}

AlmostOpenReport is_almost_open(const SystemDef& system,
                                std::size_t spot_checks,
                                std::size_t spot_word_len) {
  AlmostOpenReport out;
  for (const auto& g : system.generators) {
    out.constancy.push_back(constancy_interval(g));
    if (out.constancy.back()) out.almost_open = false;
  }
  // Compositions of almost-open maps stay almost open.
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> len(1, spot_word_len);
  std::uniform_int_distribution<Letter> letter(
      0, static_cast<Letter>(system.generator_count() - 1));
  for (std::size_t i = 0; i < spot_checks; ++i) {
    std::vector<Letter> letters(len(rng));
    for (auto& l : letters) l = letter(rng);
    try {
      PLMap m = word_map(system, Word(std::move(letters)));
      ++out.spot_checks;
      if (out.almost_open && constancy_interval(m)) {
        out.spot_checks_consistent = false;
      }
    } catch (const BudgetError&) {
    }
  }
  return out;
}

WitnessSearch find_witness(const SystemDef& system, const Rational& delta,
                           const Rational& x, const Rational& radius,
                           const Grid& grid, std::size_t max_len,
                           std::size_t map_budget) {
  if (!(radius > 0) || !(delta > 0)) {
    throw std::invalid_argument("radius and delta must be positive");
  }
  const Space space = system.space;
  const Rational cx = normalize_point(space, x);
  const long n = static_cast<long>(grid.n_cells);
  const Rational inner = radius * (Rational(1) - Rational(1, n));

  // D: the closed interval spanned by x +- inner and the grid points of the
  // open ball; it lies inside the open ball.
  Rational lo = cx - inner, hi = cx + inner;
  std::vector<Rational> grid_pts;
  for (long j = floor_int((cx - radius) * Rational(n)) + 1;
       Rational(j, n) < cx + radius; ++j) {
    Rational p(j, n);
    if (!(p > cx - radius)) continue;
    if (space == Space::interval && (j < 0 || j > n)) continue;
    grid_pts.push_back(p);
    lo = min(lo, p);
    hi = max(hi, p);
  }
  if (space == Space::interval) {
    lo = max(lo, Rational(0));
    hi = min(hi, Rational(1));
  }

  WitnessSearch out;
  const PLMap start = PLMap::identity(space, lo, hi);
  auto stats = search_words<std::optional<PLMap>, std::optional<PLMap>,
                            OptionalMapHash>(
      system.generator_count(), max_len, Extension::left, Dedupe::global,
      std::optional<PLMap>(start),
      [&](Letter g, const std::optional<PLMap>& m) -> std::optional<PLMap> {
        if (!m) return std::nullopt;
        try {
          return pl_compose(system.generators[g], *m);
        } catch (const BudgetError&) {
          return std::nullopt;
        }
      },
      [](const std::optional<PLMap>& m) { return m; },
      [&](const Word& w, const std::optional<PLMap>& m) {
        if (!m) {
          out.truncated = true;
          return Visit::prune;
        }
        if (++out.words_visited > map_budget) {
          out.truncated = true;
          return Visit::stop;
        }
        Rational fx = m->lift_at(cx);
        std::optional<std::pair<Rational, Rational>> hit;
        bool constant = true;
        for (const auto& y : witness_candidates(space, *m, fx, grid_pts)) {
          Rational sep = distance(space, fx, m->lift_at(y));
          if (!sep.is_zero()) constant = false;
          if (sep > out.best_separation) out.best_separation = sep;
          if (!hit && sep > delta) hit.emplace(y, sep);
        }
        if (hit) {
          out.witness = SensitivityWitness{cx, normalize_point(space, hit->first),
                                           w, hit->second};
          return Visit::stop;
        }
        // A map constant on D stays constant under further letters.
        return constant && m->breakpoints().front().y ==
                               m->breakpoints().back().y
                   ? Visit::prune
                   : Visit::extend;
      });
  out.truncated = out.truncated || stats.truncated;
  out.closed = stats.closed;
  out.status = out.witness ? Status::certified : Status::unknown;
  return out;
}

WeightCertificate weight_certificate(const SystemDef& system) {
  WeightCertificate out;
  if (system.space != Space::interval) {
    out.applicable = false;
    out.note = "dyadic weights are defined on the interval only";
    return out;
  }
  long deepest = 0;
  for (const auto& g : system.generators) {
    for (const auto& p : g.breakpoints()) {
      if (p.x > 0) deepest = std::max(deepest, closed_band(p.x));
    }
  }
  const long K = deepest + 1;
  out.bands_checked = static_cast<std::size_t>(K + 1);

  for (std::size_t gi = 0; gi < system.generators.size(); ++gi) {
    const auto& g = system.generators[gi];
    const auto& pts = g.breakpoints();
    // Bands past K sit inside the first piece; they repeat band K when the
    // piece is constant or fixes 0.
    if (!g.piece_slope(0).is_zero() && !pts.front().y.is_zero()) {
      out.failures.push_back("generator " + system.letter_name(gi) +
                             ": first piece neither constant nor through 0");
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      Rational slope = abs(g.piece_slope(i));
      if (slope.is_zero()) continue;
      for (long k = 0; k <= K; ++k) {
        Rational band_hi = pow2(-k), band_lo = pow2(-k - 1);
        Rational s_lo = max(pts[i].x, band_lo), s_hi = min(pts[i + 1].x, band_hi);
        if (!(s_lo < s_hi)) continue;
        Interval image = pl_image(g, s_lo, s_hi);
        auto image_band = band_above(image.lo);
        Rational bound =
            image_band ? pow2(k - *image_band) : Rational(0);
        if (slope > bound) {
          out.failures.push_back("generator " + system.letter_name(gi) +
                                 ", piece " + std::to_string(i) + ", band " +
                                 std::to_string(k) + ": |slope| " +
                                 slope.str() + " > bound " + bound.str());
        }
      }
    }
  }
  out.passed = out.failures.empty();
  out.note = out.passed
                 ? "every word is non-expansive on intervals inside (1/2,1]"
                 : "weight inequality fails";
  return out;
}

SensitivityVerdict certify_sensitive(const SystemDef& system,
                                     const Rational& delta, const Grid& grid,
                                     const std::vector<Rational>& radii,
                                     std::size_t max_len, std::size_t jobs) {
  SensitivityVerdict out;
  out.delta = delta;
  out.n_cells = grid.n_cells;
  out.max_len = max_len;
  out.radii = radii;
  const std::size_t nr = radii.size();
  out.entries.resize(grid.n_cells * nr);
  if (system.space == Space::interval) {
    out.certificate = weight_certificate(system);
  }
  const bool unbounded = out.certificate && out.certificate->passed;
  // Inside (1/2,1] no word stretches a gap, so a gap below radius <= delta
  // can never exceed delta.
  auto provably_refuted = [&](const SensitivityEntry& e) {
    return unbounded && e.x - e.radius >= Rational(1, 2) && e.radius <= delta;
  };
  parallel_for(out.entries.size(), jobs, [&](std::size_t k) {
    auto& e = out.entries[k];
    e.cell = k / nr;
    e.radius = radii[k % nr];
    e.x = grid.midpoint(e.cell);
    const bool refuted = provably_refuted(e);
    auto search = find_witness(system, delta, e.x, e.radius, grid, max_len,
                               refuted ? kRefutedProbeBudget : kDefaultMapBudget);
    e.witness = std::move(search.witness);
    e.best_separation = std::move(search.best_separation);
    e.status = e.witness   ? Status::certified
               : refuted   ? Status::refuted
                           : Status::unknown;
  });

  bool refuted = false;
  for (const auto& e : out.entries) {
    if (e.status == Status::certified) continue;
    refuted = refuted || e.status == Status::refuted;
    out.failures.emplace_back(e.cell, e.radius);
  }
  if (out.failures.empty()) {
    out.status = Status::certified;
  } else {
    out.status = refuted ? Status::refuted : Status::unknown;
  }
  return out;
}

NonexpansiveVerdict certify_nonexpansive(const SystemDef& system,
                                         const Rational& lo,
                                         const Rational& hi,
                                         std::size_t max_len,
                                         std::size_t state_cap) {
  if (!(0 <= lo && lo < hi && hi <= 1)) {
    throw std::invalid_argument("region must satisfy 0 <= lo < hi <= 1");
  }
  NonexpansiveVerdict out;
  out.region = {lo, hi};
  out.max_len = max_len;
  const Rational width = hi - lo;
  auto stats = search_words<Interval, Interval, IntervalHash>(
      system.generator_count(), max_len, Extension::left, Dedupe::none,
      out.region,
      [&](Letter g, const Interval& arc) {
        return lifted_image(system.generators[g], arc);
      },
      [](const Interval& arc) { return arc; },
      [&](const Word& w, const Interval& image) {
        ++out.words_checked;
        Rational wd = image.width();
        if (wd > out.widest || !out.widest_word) {
          out.widest = wd;
          out.widest_word = w;
        }
        if (wd > width) {
          out.offending = w;
          return Visit::stop;
        }
        if (wd.is_zero()) {
          ++out.point_images;
          return Visit::prune;
        }
        return Visit::extend;
      },
      state_cap);
  if (out.offending) {
    out.status = Status::refuted;
    out.cause = "image of the region under " +
                format_word(system, *out.offending) + " is wider than it";
  } else if (stats.truncated) {
    out.status = Status::unknown;
    out.cause = "word tree exceeded the state cap";
  } else {
    out.status = Status::certified;
  }
  if (system.space == Space::interval) {
    out.certificate = weight_certificate(system);
  }
  return out;
}

SlopeBound word_slope_bound(const SystemDef& system, const Word& w,
                            const Rational& lo, const Rational& hi) {
  PLMap m = word_map(system, w);
  const auto& pts = m.breakpoints();
  SlopeBound out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].x < hi && pts[i + 1].x > lo) {
      out.max_slope = max(out.max_slope, abs(m.piece_slope(i)));
    }
    if (i > 0 && lo < pts[i].x && pts[i].x < hi) {
      out.breakpoints.push_back(pts[i].x);
    }
  }
  return out;
}

std::optional<DerivedDelta> derive_delta(const SystemDef& system,
                                         const Grid& grid,
                                         const DistinctMinimalSets& sets) {
  std::vector<const MinimalSetApprox*> exact;
  for (const auto& c : sets.classes) {
    if (c.is_exact) exact.push_back(&c);
  }
  if (exact.size() >= 2) {
    std::optional<DerivedDelta> best;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      for (std::size_t j = i + 1; j < exact.size(); ++j) {
        Rational d = theorem1_delta(system.space, *exact[i], *exact[j]);
        if (!best || d > best->delta) {
          best = DerivedDelta{d, "theorem1: d(M1,M2)/8",
                              {exact[i]->label, exact[j]->label}, std::nullopt};
        }
      }
    }
    return best;
  }
  if (exact.size() == 1) {
    std::optional<Rational> x0;
    Rational far;
    for (long j = 0; j <= static_cast<long>(grid.n_cells); ++j) {
      Rational p(j, static_cast<long>(grid.n_cells));
      Rational d = set_distance(system.space, {p}, exact[0]->points);
      if (!x0 || d > far) {
        x0 = p;
        far = d;
      }
    }
    if (far.is_zero()) return std::nullopt;
    return DerivedDelta{far / Rational(4), "theorem2 case a: d(x0,M)/4",
                        {exact[0]->label}, x0};
  }
  return std::nullopt;
}

}  // namespace pldyn
