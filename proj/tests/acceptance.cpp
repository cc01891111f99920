// End-to-end acceptance run. Prints one PASS/FAIL line per criterion with
// its measured time against the budget, and exits non-zero on any FAIL.
// Budgets are wall-clock seconds on a single core.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "generators.hpp"
#include "pldyn/covering.hpp"
#include "pldyn/gallery.hpp"
#include "pldyn/minimality.hpp"
#include "pldyn/orbit.hpp"
#include "pldyn/sensitivity.hpp"

using namespace pldyn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

Rational random_point(std::mt19937_64& rng, Space space) {
  Rational x = testing::random_unit_rational(rng, 97);
  return normalize_point(space, x);
}

std::string cells_str(const std::set<std::size_t>& cells) {
  std::string s = "{";
  for (auto c : cells) s += (s.size() > 1 ? "," : "") + std::to_string(c);
  return s + "}";
}

// 1. Phi_{w1 w2}(x) = Phi_w1(Phi_w2(x)).
Outcome action_law() {
  Outcome out;
  std::mt19937_64 rng(20240611);
  std::size_t total = 0;
  for (const auto& name : gallery_names()) {
    auto sys = gallery_system(name).system;
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
      Word w1 = testing::random_word(rng, sys.generator_count(), 6);
      Word w2 = testing::random_word(rng, sys.generator_count(), 6);
      Rational x = random_point(rng, sys.space);
      // Nested letter-by-letter evaluation of the product against the
      // composed maps of each factor.
      Rational lhs = word_apply(sys, w1 * w2, x);
      Rational rhs =
          pl_eval(word_map(sys, w1), pl_eval(word_map(sys, w2), x));
      if (lhs != rhs) ++bad;
      ++total;
    }
    out.require(bad == 0, name + ": " + std::to_string(bad) + " violations");
  }
  out.note(std::to_string(total) + " triples, exact equality");
  return out;
}

bool is_identity_on(const PLMap& m) {
  for (const auto& p : m.breakpoints()) {
    if (p.x != p.y) return false;
  }
  return true;
}

// 2. Counterexample constructions.
Outcome counterexample_construction() {
  Outcome out;
  GallerySystem g;
  try {
    g = counterexample_system();
  } catch (const std::exception& e) {
    out.require(false, std::string("construction threw: ") + e.what());
    return out;
  }
  const auto& f = g.system.generators;
  const Rational eighth(1, 8);
  out.require(is_identity_on(restrict_map(pl_compose(f[2], f[1]), 0, eighth)),
              "f3 o f2 = id on [0,1/8]");
  out.require(is_identity_on(restrict_map(pl_compose(f[1], f[2]), 0, eighth)),
              "f2 o f3 = id on [0,1/8]");
  Rational steepest(-1);
  for (const auto& m : f) {
    auto part = restrict_map(m, Rational(1, 4), 1);
    for (std::size_t i = 0; i < part.piece_count(); ++i) {
      Rational s = part.piece_slope(i);
      if (s < 0) s = -s;
      steepest = max(steepest, s);
    }
  }
  out.require(steepest < 1, "slopes on (1/4,1) below 1");
  out.note("max |slope| on (1/4,1) = " + steepest.str());
  auto zero_set = pl_preimage(f[0], 0, 0);
  out.require(zero_set.size() == 1 && zero_set[0] == Interval{0, 1},
              "f1^-1({0}) = [0,1]");
  return out;
}

// 3. TT, non-minimal, M^-1 dense and non-sensitive on the counterexample.
Outcome counterexample_reproduction() {
  Outcome out;
  auto sys = counterexample_system().system;
  const Grid grid{16};
  const std::size_t L = 14;

  auto tt = is_tt(sys, grid, L);
  out.require(tt.status == Status::certified, "TT certified");

  auto cells = minimal_cells(sys, grid, L, Rational(1, 32));
  std::set<std::size_t> certified(cells.certified.begin(),
                                  cells.certified.end());
  out.require(certified == std::set<std::size_t>{0},
              "minimal cells exactly {0}, got " + cells_str(certified));

  auto sets = distinct_minimal_sets(sys, grid, L, cells);
  auto minv = m_inverse_cells(sys, grid, L, minimal_targets(grid, sets));
  bool via_a = minv.cells.size() == grid.n_cells;
  for (const auto& [cell, w] : minv.witness) via_a = via_a && w == Word{0};
  out.require(via_a, "M^-1 covers every cell via (a)");

  out.require(!is_almost_open(sys).almost_open, "almost-open is false");

  auto ne = certify_nonexpansive(sys, Rational(3, 5), Rational(9, 10), 12);
  out.require(ne.status == Status::certified,
              "non-expansive on [3/5,9/10] up to length 12");
  out.require(ne.certificate && ne.certificate->passed,
              "unbounded-length weight certificate");
  out.note("non-expansion: " + std::to_string(ne.words_checked) +
           " words measured, " + std::to_string(ne.point_images) +
           " point images, widest " + ne.widest.str());
  return out;
}

// 4. Positive instance on the tent map.
Outcome tent_sensitivity() {
  Outcome out;
  auto sys = tent_monoid().system;
  const Grid grid{64};
  const std::size_t L = 20;
  const std::vector<Rational> radii{Rational(1, 16), Rational(1, 64),
                                    Rational(1, 256)};

  auto cells = minimal_cells(sys, grid, L, Rational(1, 128));
  auto sets = distinct_minimal_sets(sys, grid, L, cells);
  std::set<std::vector<Rational>> found;
  for (const auto& c : sets.classes) {
    if (c.is_exact) found.insert(c.points);
  }
  const std::set<std::vector<Rational>> want{
      {Rational(0)}, {Rational(2, 3)}, {Rational(2, 5), Rational(4, 5)}};
  // Every periodic orbit is a minimal set, so more classes are expected.
  out.require(std::includes(found.begin(), found.end(), want.begin(),
                            want.end()),
              "exact minimal sets {0}, {2/3}, {2/5,4/5} among those found");
  out.note(std::to_string(found.size()) + " exact classes");

  MinimalSetApprox m0, m1;
  m0.points = {Rational(0)};
  m1.points = {Rational(2, 3)};
  m0.is_exact = m1.is_exact = true;
  Rational delta = theorem1_delta(Space::interval, m0, m1);
  out.require(delta == Rational(1, 12), "delta = 1/12, got " + delta.str());

  auto v = certify_sensitive(sys, delta, grid, radii, L);
  out.require(v.status == Status::certified, "sensitivity certified");
  std::size_t checked = 0;
  for (const auto& e : v.entries) {
    if (!e.witness) continue;
    const auto& w = *e.witness;
    Rational sep = distance(sys.space, word_apply(sys, w.word, w.x),
                            word_apply(sys, w.word, w.y));
    bool ok = w.x == e.x && distance(sys.space, w.x, w.y) < e.radius &&
              sep == w.separation && sep > delta;
    if (ok) ++checked;
  }
  out.require(checked == grid.n_cells * radii.size(),
              "every (cell, radius) witnessed and re-verified");
  out.note(std::to_string(checked) + " witnesses re-verified");
  return out;
}

// 5. Finite return family for the period-2 point.
Outcome covering_mirror() {
  Outcome out;
  auto sys = tent_monoid().system;
  const Grid grid{256};
  const Rational x(2, 5), r(1, 100);
  auto fam = covering_family(sys, x, r, grid, 20);
  out.require(fam.status == Status::certified, "family certified");
  out.require(fam.words.size() <= 2,
              "family size <= 2, got " + std::to_string(fam.words.size()));
  out.require(verify_covering(sys, grid, fam), "per-cell certificates");
  bool inside = !fam.orbit_cells.empty();
  for (auto cell : fam.orbit_cells) {
    auto it = fam.per_cell_witness.find(cell);
    if (it == fam.per_cell_witness.end()) {
      inside = false;
      continue;
    }
    // Image through the composed map, independent of the search's iterated
    // interval images.
    auto c = grid.cell(cell);
    auto img = pl_image(word_map(sys, fam.words[it->second]), c.lo, c.hi);
    inside = inside && x - r < img.lo && img.hi < x + r;
  }
  out.require(inside, "images of orbit cells inside B(2/5, 1/100)");
  std::string words;
  for (const auto& w : fam.words) {
    words += (words.empty() ? "" : ",") + format_word(sys, w);
  }
  out.note("family {" + words + "} over cells " +
           cells_str({fam.orbit_cells.begin(), fam.orbit_cells.end()}));
  return out;
}

// 6. PT point and dense minimal cells imply TT, on every gallery system.
Outcome transitive_cross_check() {
  Outcome out;
  const Grid grid{16};
  const std::size_t L = 200;
  const Rational x = Rational(1, 7) + Rational(1, 1000003);
  std::size_t instances = 0;
  for (const auto& name : gallery_names()) {
    auto sys = gallery_system(name).system;
    auto cells = minimal_cells(sys, grid, L, Rational(1, 32));
    if (cells.density != 1) {
      out.note(name + ": minimal density " + cells.density.str());
      continue;
    }
    auto pt = is_transitive_point(sys, x, grid, L);
    if (pt.status != Status::certified) {
      out.note(name + ": PT unknown");
      continue;
    }
    ++instances;
    auto tt = is_tt(sys, grid, L);
    out.require(tt.status == Status::certified, name + ": TT not certified");
    out.note(name + ": instance, TT " + to_string(tt.status));
  }
  bool named = true;
  for (const char* name : {"tent", "expanding2"}) {
    auto sys = gallery_system(name).system;
    named = named &&
            minimal_cells(sys, grid, L, Rational(1, 32)).density == 1 &&
            is_transitive_point(sys, x, grid, L).status == Status::certified;
  }
  out.require(named, "tent and expanding2 satisfy the hypotheses");
  out.note(std::to_string(instances) + " instances");
  return out;
}

// 7. Rotation as a negative control.
Outcome rotation_control() {
  Outcome out;
  auto sys = rotation_system(5, 17).system;
  std::mt19937_64 rng(17);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Word w = testing::random_word(rng, 1, 6);
    Rational x = random_point(rng, sys.space);
    Rational y = random_point(rng, sys.space);
    if (distance(sys.space, word_apply(sys, w, x), word_apply(sys, w, y)) !=
        distance(sys.space, x, y)) {
      ++bad;
    }
  }
  out.require(bad == 0, std::to_string(bad) + " isometry violations");

  const Grid grid{64};
  const Rational delta(1, 100);
  std::size_t unknown = 0;
  Rational best;
  for (std::size_t c = 0; c < grid.n_cells; ++c) {
    auto s = find_witness(sys, delta, grid.midpoint(c), delta, grid, 20);
    if (s.status == Status::unknown && !s.witness) ++unknown;
    best = max(best, s.best_separation);
  }
  out.require(unknown == grid.n_cells, "find_witness Unknown at every cell");
  out.note("largest separation " + best.str() + " < 1/100");

  auto orbit = exact_minimal_orbit(sys, 0);
  out.require(orbit && orbit->size() == 17, "orbit of 0 has 17 points");
  auto m = is_minimal_point(sys, 0, grid, 20, Rational(1, 128));
  out.require(m.status == Status::certified && m.exact,
              "minimality certified on the 17-point orbit");
  return out;
}

// 8. Worker count does not change the report.
Outcome determinism() {
  Outcome out;
  auto run = [](const std::string& jobs) {
    std::ostringstream o, e;
    int code = cli::run({"analyze", "--system", "tent", "--grid", "64",
                         "--max-word-len", "20", "--radii",
                         "1/16,1/64,1/256", "--check",
                         "tt,minimality,sensitivity", "--jobs", jobs},
                        o, e);
    return std::make_pair(code, o.str());
  };
  auto a = run("1"), b = run("1"), c = run("8");
  out.require(a.first == 0, "exit code 0");
  out.require(a == b, "two single-worker runs identical");
  out.require(a == c, "1 and 8 workers identical");
  out.note(std::to_string(a.second.size()) + " bytes compared");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "action law", 10, action_law},
      {2, "counterexample construction", 1, counterexample_construction},
      {3, "counterexample reproduction", 300, counterexample_reproduction},
      {4, "tent sensitivity", 300, tent_sensitivity},
      {5, "covering family", 30, covering_mirror},
      {6, "transitivity cross-check", 300, transitive_cross_check},
      {7, "rotation negative control", 30, rotation_control},
      {8, "determinism", 300, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (secs > c.budget_s) {
      o.require(false, "over time budget");
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d %s  %s  [%.2f s / %.0f s]  %s\n", c.id,
                o.pass ? "PASS" : "FAIL", c.name, secs, c.budget_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
