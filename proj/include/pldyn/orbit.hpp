// Grid-discretized orbits and the transitivity hierarchy (PT, TT, DPT).

#ifndef PLDYN_ORBIT_HPP_
#define PLDYN_ORBIT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pldyn/grid.hpp"
#include "pldyn/semigroup.hpp"

namespace pldyn {

struct OrbitPoint {
  Word word;
  Rational value;
};

// Orbit of `origin` under all words of length 1..max_len (the origin itself
// is only included when some word returns to it).
struct OrbitApprox {
  Rational origin;
  std::size_t max_len = 0;
  // First orbit point found in each cell, in enumeration order.
  std::map<std::size_t, OrbitPoint> representative;
  // Cells hit by words of each length; index 0 is length 1.
  std::vector<std::set<std::size_t>> hit_by_length;
  // A level held more distinct points than the level cap.
  bool truncated = false;

  [[nodiscard]] std::set<std::size_t> hit_cells() const;
};

inline constexpr std::size_t kDefaultLevelCap = 1u << 18;

OrbitApprox orbit_cells(const SystemDef& system, const Rational& x,
                        const Grid& grid, std::size_t max_len,
                        std::size_t level_cap = kDefaultLevelCap);

struct TransitivePointResult {
  Status status = Status::unknown;
  std::vector<std::size_t> missing_cells;
  std::size_t hit_count = 0;
};

// Certified when the orbit hits every cell; a miss is only ever Unknown.
TransitivePointResult is_transitive_point(const SystemDef& system,
                                          const Rational& x, const Grid& grid,
                                          std::size_t max_len);

struct TTWitness {
  std::size_t source;
  std::size_t target;
  Word word;
};

struct TTResult {
  Status status = Status::unknown;
  std::size_t n_cells = 0;
  std::size_t max_len = 0;
  std::vector<TTWitness> witnesses;  // sorted by (source, target)
  std::vector<std::pair<std::size_t, std::size_t>> unwitnessed;
  // Source cells whose image family closed up without reaching every
  // target. The listed images are every image of the source under every
  // word: a finite forward-invariant family, an exact refutation.
  std::map<std::size_t, std::vector<Interval>> absorbing_families;
  std::string cause;
};

// For each ordered pair of cells (U, V), the least word w with
// phi_w(U) meeting the interior of V. Images are iterated interval images,
// so no composed map is materialized.
TTResult is_tt(const SystemDef& system, const Grid& grid, std::size_t max_len,
               std::size_t jobs = 1);

struct TransitiveFraction {
  std::size_t samples = 0;
  std::size_t certified = 0;
  Rational fraction;
  std::vector<Rational> exceptions;
  // Density of transitive points is never finitely certifiable.
  bool dpt_plausible = false;
};

// Samples default to cell midpoints.
TransitiveFraction transitive_fraction(
    const SystemDef& system, const Grid& grid, std::size_t max_len,
    std::optional<std::vector<Rational>> samples = std::nullopt,
    std::size_t jobs = 1);

}  // namespace pldyn

#endif  // PLDYN_ORBIT_HPP_
