#include "pldyn/grid.hpp"

#include <stdexcept>

namespace pldyn {

std::string to_string(Status s) {
  switch (s) {
    case Status::certified:
      return "certified";
    case Status::refuted:
      return "refuted";
    case Status::unknown:
      return "unknown";
  }
  return "unknown";
}

Interval Grid::cell(std::size_t j) const {
  long n = static_cast<long>(n_cells);
  long k = static_cast<long>(j);
  return {Rational(k, n), Rational(k + 1, n)};
}

Rational Grid::midpoint(std::size_t j) const {
  long n = static_cast<long>(n_cells);
  return Rational(2 * static_cast<long>(j) + 1, 2 * n);
}

Rational Grid::width() const { return Rational(1, static_cast<long>(n_cells)); }

std::size_t Grid::cell_of(Space space, const Rational& x) const {
  Rational p = normalize_point(space, x);
  if (p < 0 || p > 1) throw std::domain_error("point outside [0,1]");
  long c = ceil_int(p * Rational(static_cast<long>(n_cells))) - 1;
  return c < 0 ? 0 : static_cast<std::size_t>(c);
}

std::vector<std::size_t> Grid::cells_meeting(const Interval& part) const {
  std::vector<std::size_t> out;
  Rational n(static_cast<long>(n_cells));
  long first = ceil_int(part.lo * n) - 1;
  if (first < 0) first = 0;
  long last = floor_int(part.hi * n);
  if (last >= static_cast<long>(n_cells)) last = static_cast<long>(n_cells) - 1;
  for (long j = first; j <= last; ++j) out.push_back(static_cast<std::size_t>(j));
  return out;
}

bool Grid::open_cell_meets(Space space, std::size_t j,
                           const Interval& lifted) const {
  Interval c = cell(j);
  if (space == Space::interval) return lifted.lo < c.hi && lifted.hi > c.lo;
  if (lifted.width() >= 1) return true;
  for (long k = floor_int(lifted.lo) - 1; k <= ceil_int(lifted.hi) + 1; ++k) {
    Rational shift(k);
    if (lifted.lo < c.hi + shift && lifted.hi > c.lo + shift) return true;
  }
  return false;
}

}  // namespace pldyn
