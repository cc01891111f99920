#include "pldyn/pl_map.hpp"

#include <algorithm>
#include <utility>

namespace pldyn {

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

std::vector<Breakpoint> drop_collinear(std::vector<Breakpoint> pts) {
  if (pts.size() <= 2) return pts;
  std::vector<Breakpoint> out;
  out.reserve(pts.size());
  out.push_back(std::move(pts[0]));
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (!collinear(out.back(), pts[i], pts[i + 1])) {
      out.push_back(std::move(pts[i]));
    }
  }
  out.push_back(std::move(pts.back()));
  return out;
}

std::string where(std::size_t i) { return "breakpoint " + std::to_string(i); }

// Lift breakpoints of a full map that lie strictly between lo and hi.
std::vector<Rational> lifted_breakpoints_between(const PLMap& outer,
                                                 const Rational& lo,
                                                 const Rational& hi) {
  std::vector<Rational> out;
  const auto& pts = outer.breakpoints();
  if (outer.space() == Space::interval) {
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      if (lo < pts[i].x && pts[i].x < hi) out.push_back(pts[i].x);
    }
    return out;
  }
  for (long k = floor_int(lo) - 1; k <= ceil_int(hi) + 1; ++k) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      Rational b = pts[i].x + Rational(k);
      if (lo < b && b < hi) out.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational interpolate(const Breakpoint& a, const Breakpoint& b,
                     const Rational& t) {
  if (t == a.x) return a.y;
  if (t == b.x) return b.y;
  return a.y + (b.y - a.y) * (t - a.x) / (b.x - a.x);
}

}  // namespace

std::string to_string(Space s) {
  return s == Space::interval ? "interval" : "circle";
}

Space parse_space(const std::string& s) {
  if (s == "interval") return Space::interval;
  if (s == "circle") return Space::circle;
  throw std::invalid_argument("unknown space \"" + s + "\"");
}

Rational distance(Space s, const Rational& x, const Rational& y) {
  if (s == Space::interval) return abs(x - y);
  Rational d = abs(frac(x) - frac(y));
  Rational other = Rational(1) - d;
  return other < d ? other : d;
}

Rational normalize_point(Space s, const Rational& x) {
  return s == Space::circle ? frac(x) : x;
}

PLMap::PLMap(Space space, std::vector<Breakpoint> points)
    : space_(space), points_(drop_collinear(std::move(points))) {}

PLMap PLMap::from_breakpoints(Space space, std::vector<Breakpoint> points) {
  if (points.size() < 2) throw MapError("a map needs at least two breakpoints");
  if (points.front().x != 0) throw MapError(where(0) + ": x must be 0");
  if (points.back().x != 1) {
    throw MapError(where(points.size() - 1) + ": x must be 1");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i - 1].x < points[i].x)) {
      throw MapError(where(i) + ": x values must be strictly increasing");
    }
    if (space == Space::interval &&
        (points[i].y < 0 || points[i].y > 1)) {
      throw MapError(where(i) + ": y = " + points[i].y.str() +
                     " outside [0,1]");
    }
  }
  if (space == Space::circle &&
      !(points.back().y - points.front().y).is_integer()) {
    throw MapError(where(points.size() - 1) +
                   ": circle map is discontinuous, y_last - y_0 = " +
                   (points.back().y - points.front().y).str() +
                   " is not an integer");
  }
  return PLMap(space, std::move(points));
}

PLMap PLMap::identity(Space space, const Rational& lo, const Rational& hi) {
  if (lo == hi) return PLMap(space, {{lo, lo}});
  return PLMap(space, {{lo, lo}, {hi, hi}});
}

PLMap PLMap::constant(Space space, const Rational& value) {
  return PLMap(space, {{0, value}, {1, value}});
}

bool PLMap::is_full() const { return domain_lo() == 0 && domain_hi() == 1; }

long PLMap::degree() const {
  if (space_ == Space::interval) return 0;
  return floor_int(points_.back().y - points_.front().y);
}

std::size_t PLMap::piece_index(const Rational& t) const {
  auto it = std::lower_bound(
      points_.begin() + 1, points_.end(), t,
      [](const Breakpoint& b, const Rational& v) { return b.x < v; });
  if (it == points_.end()) --it;
  return static_cast<std::size_t>(it - points_.begin()) - 1;
}

Rational PLMap::lift_at(const Rational& t) const {
  if (t < domain_lo() || t > domain_hi()) {
    throw std::domain_error("point " + t.str() + " outside map domain [" +
                            domain_lo().str() + ", " + domain_hi().str() +
                            "]");
  }
  if (points_.size() == 1) return points_.front().y;
  std::size_t i = piece_index(t);
  return interpolate(points_[i], points_[i + 1], t);
}

Rational PLMap::periodic_lift_at(const Rational& t) const {
  if (space_ == Space::interval) return lift_at(t);
  long k = floor_int(t);
  Rational base = lift_at(t - Rational(k));
  return base + Rational(k * degree());
}

Rational PLMap::piece_slope(std::size_t i) const {
  const auto& a = points_[i];
  const auto& b = points_[i + 1];
  return (b.y - a.y) / (b.x - a.x);
}

std::size_t PLMap::hash() const {
  std::size_t h = static_cast<std::size_t>(space_) + points_.size();
  for (const auto& p : points_) {
    h = h * 1000003u ^ p.x.hash();
    h = h * 1000003u ^ p.y.hash();
  }
  return h;
}

Rational pl_eval(const PLMap& map, const Rational& x) {
  return normalize_point(map.space(), map.lift_at(x));
}

Interval pl_image(const PLMap& map, const Rational& lo, const Rational& hi) {
  if (hi < lo || lo < map.domain_lo() || hi > map.domain_hi()) {
    throw std::domain_error("malformed image interval [" + lo.str() + ", " +
                            hi.str() + "]");
  }
  Rational a = map.lift_at(lo);
  Rational b = map.lift_at(hi);
  Interval out{min(a, b), max(a, b)};
  for (const auto& p : map.breakpoints()) {
    if (lo < p.x && p.x < hi) {
      if (p.y < out.lo) out.lo = p.y;
      if (p.y > out.hi) out.hi = p.y;
    }
  }
  return out;
}

Interval lifted_image(const PLMap& map, const Interval& arc) {
  if (map.space() == Space::interval) return pl_image(map, arc.lo, arc.hi);
  Rational a = map.periodic_lift_at(arc.lo);
  Rational b = map.periodic_lift_at(arc.hi);
  Interval out{min(a, b), max(a, b)};
  for (const auto& t : lifted_breakpoints_between(map, arc.lo, arc.hi)) {
    Rational v = map.periodic_lift_at(t);
    if (v < out.lo) out.lo = v;
    if (v > out.hi) out.hi = std::move(v);
  }
  return out;
}

Interval canonical_arc(Space space, Interval arc) {
  if (space == Space::interval) return arc;
  Rational shift(floor_int(arc.lo));
  if (!shift.is_zero()) {
    arc.lo -= shift;
    arc.hi -= shift;
  }
  return arc;
}

std::vector<Interval> merge_intervals(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  std::vector<Interval> out;
  for (auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi) {
      if (p.hi > out.back().hi) out.back().hi = std::move(p.hi);
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Interval> pl_preimage(const PLMap& map, const Rational& lo,
                                  const Rational& hi) {
  const auto& pts = map.breakpoints();
  std::vector<std::pair<Rational, Rational>> targets;
  if (map.space() == Space::interval) {
    if (hi < lo) throw std::domain_error("malformed preimage target");
    targets.emplace_back(lo, hi);
  } else {
    Rational ymin = pts.front().y, ymax = pts.front().y;
    for (const auto& p : pts) {
      ymin = min(ymin, p.y);
      ymax = max(ymax, p.y);
    }
    // An arc with lo > hi wraps through 0.
    Rational top = hi < lo ? hi + Rational(1) : hi;
    for (long k = floor_int(ymin) - 2; k <= ceil_int(ymax) + 1; ++k) {
      targets.emplace_back(lo + Rational(k), top + Rational(k));
    }
  }

  std::vector<Interval> parts;
  if (pts.size() == 1) {
    for (const auto& [a, b] : targets) {
      if (a <= pts[0].y && pts[0].y <= b) parts.push_back({pts[0].x, pts[0].x});
    }
    return merge_intervals(std::move(parts));
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[i + 1];
    for (const auto& [a, b] : targets) {
      if (p.y == q.y) {
        if (a <= p.y && p.y <= b) parts.push_back({p.x, q.x});
        continue;
      }
      Rational vmin = max(a, min(p.y, q.y));
      Rational vmax = min(b, max(p.y, q.y));
      if (vmax < vmin) continue;
      auto at = [&](const Rational& v) {
        return p.x + (v - p.y) * (q.x - p.x) / (q.y - p.y);
      };
      Rational x1 = at(vmin), x2 = at(vmax);
      parts.push_back({min(x1, x2), max(x1, x2)});
    }
  }
  return merge_intervals(std::move(parts));
}

PLMap pl_compose(const PLMap& outer, const PLMap& inner, std::size_t cap) {
  if (!outer.is_full()) {
    throw std::invalid_argument("outer map of a composition must be full");
  }
  if (outer.space() != inner.space()) {
    throw std::invalid_argument("composition across different spaces");
  }
  const auto& in = inner.breakpoints();
  std::vector<Breakpoint> out;
  out.reserve(in.size() + outer.breakpoints().size());
  auto push = [&](const Rational& x, const Rational& v) {
    out.push_back({x, outer.periodic_lift_at(v)});
  };
  push(in.front().x, in.front().y);
  for (std::size_t i = 0; i + 1 < in.size(); ++i) {
    const auto& p = in[i];
    const auto& q = in[i + 1];
    if (p.y != q.y) {
      auto crossings =
          lifted_breakpoints_between(outer, min(p.y, q.y), max(p.y, q.y));
      if (q.y < p.y) std::reverse(crossings.begin(), crossings.end());
      for (const auto& b : crossings) {
        Rational x = p.x + (b - p.y) * (q.x - p.x) / (q.y - p.y);
        push(x, b);
      }
    }
    push(q.x, q.y);
    if (out.size() > 2 * cap + 2) {
      throw BudgetError("composition exceeds " + std::to_string(cap) +
                        " breakpoints");
    }
  }
  if (outer.space() == Space::circle) {
    Rational shift(floor_int(out.front().y));
    if (!shift.is_zero()) {
      for (auto& b : out) b.y -= shift;
    }
  }
  PLMap result(outer.space(), std::move(out));
  if (result.breakpoints().size() > cap) {
    throw BudgetError("composition exceeds " + std::to_string(cap) +
                      " breakpoints");
  }
  return result;
}

std::optional<Rational> pl_slope_at(const PLMap& map, const Rational& x) {
  if (x <= map.domain_lo() || x >= map.domain_hi()) {
    throw std::domain_error("slope requested at domain end " + x.str());
  }
  const auto& pts = map.breakpoints();
  std::size_t i = map.piece_index(x);
  if (pts[i + 1].x == x) {
    Rational left = map.piece_slope(i);
    Rational right = map.piece_slope(i + 1);
    if (left != right) return std::nullopt;
    return left;
  }
  return map.piece_slope(i);
}

PLMap restrict_map(const PLMap& map, const Rational& lo, const Rational& hi) {
  if (hi < lo || lo < map.domain_lo() || hi > map.domain_hi()) {
    throw std::domain_error("restriction outside the map domain");
  }
  std::vector<Breakpoint> pts;
  pts.push_back({lo, map.lift_at(lo)});
  for (const auto& p : map.breakpoints()) {
    if (lo < p.x && p.x < hi) pts.push_back(p);
  }
  if (hi != lo) pts.push_back({hi, map.lift_at(hi)});
  return PLMap(map.space(), std::move(pts));
}

std::optional<Interval> constancy_interval(const PLMap& map) {
  const auto& pts = map.breakpoints();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].y == pts[i + 1].y) {
      std::size_t j = i + 1;
      while (j + 1 < pts.size() && pts[j + 1].y == pts[i].y) ++j;
      return Interval{pts[i].x, pts[j].x};
    }
  }
  return std::nullopt;
}

}  // namespace pldyn
