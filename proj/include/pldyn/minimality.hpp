// Minimal points and minimal sets, the set M of minimal points, and its
// preimage union M^-1.
//
// Every verdict here is "at resolution": it holds for the declared grid,
// word-length budget and return radius. The one exception is an exact finite
// orbit, which is a proof: a closed finite orbit in which every point leads
// back to the start is a minimal set.

#ifndef PLDYN_MINIMALITY_HPP_
#define PLDYN_MINIMALITY_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pldyn/grid.hpp"
#include "pldyn/orbit.hpp"
#include "pldyn/semigroup.hpp"

namespace pldyn {

struct MinimalityOptions {
  // Words up to this length are solved for fixed points.
  std::size_t periodic_budget = 8;
  // Largest finite orbit accepted as exact.
  std::size_t exact_orbit_cap = 256;
  std::size_t breakpoint_cap = kDefaultBreakpointCap;
  std::size_t jobs = 1;
};

struct MinimalSetApprox {
  std::set<std::size_t> cells;
  // Exact sets: the whole orbit, sorted. Otherwise the certified samples.
  std::vector<Rational> points;
  bool is_exact = false;
  std::string label;
  // A word permuting the exact point set, when one exists within the
  // periodic budget.
  std::optional<Word> certifying_word;
};

// The orbit O(x) when it is finite (at most `cap` points), contains x, and
// every point of it leads back to x. Sorted.
std::optional<std::vector<Rational>> exact_minimal_orbit(
    const SystemDef& system, const Rational& x, std::size_t cap = 256);

struct MinimalPointResult {
  Status status = Status::unknown;
  bool exact = false;
  // Representative that found no return within the budget.
  std::optional<OrbitPoint> stuck;
  // Return word per orbit representative cell.
  std::map<std::size_t, Word> returns;
};

MinimalPointResult is_minimal_point(const SystemDef& system,
                                    const Rational& x, const Grid& grid,
                                    std::size_t max_len,
                                    const Rational& return_radius,
                                    std::size_t exact_cap = 256);

// Fixed points of phi_w on each linear piece, |w| <= budget. Pieces on which
// phi_w is the identity contribute their endpoints.
std::vector<Rational> periodic_candidates(const SystemDef& system,
                                          std::size_t budget,
                                          std::size_t breakpoint_cap);

struct CellMinimality {
  Status status = Status::unknown;
  bool exact = false;
  Rational sample;
};

struct MinimalCells {
  std::size_t n_cells = 0;
  std::size_t max_len = 0;
  Rational return_radius;
  std::vector<CellMinimality> per_cell;
  std::vector<std::size_t> certified;
  Rational density;
  std::vector<MinimalSetApprox> exact_classes;
  // Certified-at-resolution samples with no exact orbit, in cell order.
  std::vector<Rational> approximate_samples;
  std::vector<std::string> notes;
};

MinimalCells minimal_cells(const SystemDef& system, const Grid& grid,
                           std::size_t max_len, const Rational& return_radius,
                           const MinimalityOptions& options = {});

struct MInverse {
  std::set<std::size_t> cells;
  std::map<std::size_t, Word> witness;
  Rational density;
  std::string cause;
};

// Cells meeting the union of phi_w^-1(target) over |w| <= max_len, with the
// first witnessing word per cell.
MInverse m_inverse_cells(const SystemDef& system, const Grid& grid,
                         std::size_t max_len,
                         const std::vector<Interval>& targets,
                         std::size_t interval_cap = 1u << 16);

struct DistinctMinimalSets {
  std::vector<MinimalSetApprox> classes;
  // distance[i][j] for exact pairs; empty optional otherwise.
  std::vector<std::vector<std::optional<Rational>>> distance;
  std::string note;
};

// min over point pairs of the space metric.
Rational set_distance(Space space, const std::vector<Rational>& a,
                      const std::vector<Rational>& b);

DistinctMinimalSets distinct_minimal_sets(const SystemDef& system,
                                          const Grid& grid,
                                          std::size_t max_len,
                                          const MinimalCells& cells);

DistinctMinimalSets distinct_minimal_sets(
    const SystemDef& system, const Grid& grid, std::size_t max_len,
    const MinimalityOptions& options = {});

// Targets for m_inverse_cells covering the detected minimal sets: exact
// points as degenerate intervals, approximate classes by their cells.
std::vector<Interval> minimal_targets(const Grid& grid,
                                      const DistinctMinimalSets& sets);

}  // namespace pldyn

#endif  // PLDYN_MINIMALITY_HPP_
