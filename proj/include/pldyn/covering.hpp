// Finite families of words that return a whole orbit closure into a ball
// around its starting point, certified cell by cell.

#ifndef PLDYN_COVERING_HPP_
#define PLDYN_COVERING_HPP_

#include <cstddef>
#include <map>
#include <vector>

#include "pldyn/grid.hpp"
#include "pldyn/semigroup.hpp"

namespace pldyn {

struct CoveringFamily {
  Status status = Status::unknown;
  Rational center;
  Rational radius;
  std::size_t n_cells = 0;
  std::size_t max_len = 0;
  std::vector<Word> words;
  // Cells hit by the orbit of the center.
  std::vector<std::size_t> orbit_cells;
  std::vector<std::size_t> certified_cells;
  std::vector<std::size_t> uncovered;
  // cell -> index into words
  std::map<std::size_t, std::size_t> per_cell_witness;
  // Whether the center itself was certified minimal at the same budgets.
  Status center_minimality = Status::unknown;
};

// Closed lifted interval strictly inside (center - radius, center + radius),
// up to an integer shift on the circle.
bool inside_open_ball(Space space, const Interval& lifted,
                      const Rational& center, const Rational& radius);

CoveringFamily covering_family(const SystemDef& system, const Rational& x,
                               const Rational& radius, const Grid& grid,
                               std::size_t max_len,
                               std::size_t state_cap = 1u << 16);

// Re-checks every per-cell witness through the composed word map.
bool verify_covering(const SystemDef& system, const Grid& grid,
                     const CoveringFamily& family);

}  // namespace pldyn

#endif  // PLDYN_COVERING_HPP_
