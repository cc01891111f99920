// Uniform grid of closed cells [j/n, (j+1)/n] over [0,1].

#ifndef PLDYN_GRID_HPP_
#define PLDYN_GRID_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "pldyn/pl_map.hpp"

namespace pldyn {

enum class Status { certified, refuted, unknown };

std::string to_string(Status s);

struct Grid {
  std::size_t n_cells = 64;

  [[nodiscard]] Interval cell(std::size_t j) const;
  [[nodiscard]] Rational midpoint(std::size_t j) const;
  [[nodiscard]] Rational width() const;
  // Smallest j whose closed cell contains x (circle points are reduced
  // first).
  [[nodiscard]] std::size_t cell_of(Space space, const Rational& x) const;
  // Cells whose closed cell meets [lo, hi] (lo, hi inside [0,1]).
  [[nodiscard]] std::vector<std::size_t> cells_meeting(
      const Interval& part) const;
  // Cells whose open interior meets the lifted interval.
  [[nodiscard]] bool open_cell_meets(Space space, std::size_t j,
                                     const Interval& lifted) const;
};

}  // namespace pldyn

#endif  // PLDYN_GRID_HPP_
