// Phase space, metric and exact piecewise-linear maps.

#ifndef PLDYN_PL_MAP_HPP_
#define PLDYN_PL_MAP_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldyn/rational.hpp"

namespace pldyn {

enum class Space { interval, circle };

std::string to_string(Space s);
Space parse_space(const std::string& s);

// Interval: |x - y|. Circle: min(|x - y|, 1 - |x - y|) on reduced points.
Rational distance(Space s, const Rational& x, const Rational& y);

// Circle points are kept in [0,1); interval points are returned unchanged.
Rational normalize_point(Space s, const Rational& x);

// Closed interval [lo, hi]; lo == hi denotes a point.
struct Interval {
  Rational lo;
  Rational hi;

  [[nodiscard]] Rational width() const { return hi - lo; }
  [[nodiscard]] bool contains(const Rational& x) const {
    return lo <= x && x <= hi;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct IntervalHash {
  std::size_t operator()(const Interval& i) const noexcept {
    return i.lo.hash() * 31 + i.hi.hash();
  }
};

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Thrown when a breakpoint list violates a PLMap invariant. The message
// names the offending breakpoint.
class MapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a composed map would exceed its breakpoint cap.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBreakpointCap = 100000;

// Continuous piecewise-linear map given by its breakpoints.
//
// A generator has domain [0,1]. Maps produced by restrict() or by composing
// onto a restricted map have a sub-domain [domain_lo, domain_hi]; on the
// circle that domain may extend past [0,1] (it lives on the lift).
//
// Interval maps take values in [0,1]. Circle maps are stored as a lift: y
// values are unrestricted rationals, a point's image is the lift value mod 1,
// and a full circle map has y_last - y_0 equal to its (integer) degree.
class PLMap {
 public:
  // Validates a full-domain map. Throws MapError.
  static PLMap from_breakpoints(Space space, std::vector<Breakpoint> points);
  static PLMap identity(Space space, const Rational& lo = 0,
                        const Rational& hi = 1);
  static PLMap constant(Space space, const Rational& value);

  [[nodiscard]] Space space() const { return space_; }
  [[nodiscard]] const std::vector<Breakpoint>& breakpoints() const {
    return points_;
  }
  [[nodiscard]] std::size_t piece_count() const { return points_.size() - 1; }
  [[nodiscard]] const Rational& domain_lo() const { return points_.front().x; }
  [[nodiscard]] const Rational& domain_hi() const { return points_.back().x; }
  [[nodiscard]] bool is_full() const;
  // y_last - y_0 of a full circle map; 0 for interval maps.
  [[nodiscard]] long degree() const;

  // Lift value by linear interpolation; t must lie in the domain.
  [[nodiscard]] Rational lift_at(const Rational& t) const;
  // Lift extended periodically, F(t + k) = F(t) + k * degree. Full maps only.
  [[nodiscard]] Rational periodic_lift_at(const Rational& t) const;
  // Slope of piece i (between breakpoints i and i+1).
  [[nodiscard]] Rational piece_slope(std::size_t i) const;
  // Index of the piece containing t (the left one at an interior breakpoint).
  [[nodiscard]] std::size_t piece_index(const Rational& t) const;

  friend bool operator==(const PLMap&, const PLMap&) = default;
  [[nodiscard]] std::size_t hash() const;

  // Unchecked constructor for derived maps; collinear points are removed.
  PLMap(Space space, std::vector<Breakpoint> points);

 private:
  Space space_ = Space::interval;
  std::vector<Breakpoint> points_;
};

struct PLMapHash {
  std::size_t operator()(const PLMap& m) const noexcept { return m.hash(); }
};

// Exact value at x (reduced mod 1 on the circle). Throws std::domain_error
// when x lies outside the domain.
Rational pl_eval(const PLMap& map, const Rational& x);

// Exact (min, max) of the lift over [lo, hi]. For interval maps this is the
// image itself; for circle maps it is the lifted arc.
Interval pl_image(const PLMap& map, const Rational& lo, const Rational& hi);

// {x in domain : map(x) in [lo, hi]} as sorted maximal disjoint closed
// intervals. On the circle [lo, hi] is an arc of the reduced circle.
std::vector<Interval> pl_preimage(const PLMap& map, const Rational& lo,
                                  const Rational& hi);

// Image of a lifted interval under a full map. Interval maps require the
// interval inside [0,1]; circle maps use the periodic lift, so the arc may
// extend past [0,1].
Interval lifted_image(const PLMap& map, const Interval& arc);

// Circle arcs shifted by an integer so that lo lies in [0,1); interval
// arcs unchanged.
Interval canonical_arc(Space space, Interval arc);

// outer o inner. outer must be full-domain; the result has inner's domain.
// Throws BudgetError past `cap` breakpoints.
PLMap pl_compose(const PLMap& outer, const PLMap& inner,
                 std::size_t cap = kDefaultBreakpointCap);

// Slope of the piece containing x, or nullopt at a breakpoint whose adjacent
// slopes differ. Throws std::domain_error at the domain ends.
std::optional<Rational> pl_slope_at(const PLMap& map, const Rational& x);

// map restricted to [lo, hi].
PLMap restrict_map(const PLMap& map, const Rational& lo, const Rational& hi);

// Maximal interval of positive length on which the map is constant, if any.
std::optional<Interval> constancy_interval(const PLMap& map);

// Union of closed intervals, sorted and merged where they touch.
std::vector<Interval> merge_intervals(std::vector<Interval> parts);

}  // namespace pldyn

#endif  // PLDYN_PL_MAP_HPP_
