#include "pldyn/gallery.hpp"

#include <stdexcept>

namespace pldyn {

namespace {

PLMap interval_map(std::vector<Breakpoint> pts) {
  return PLMap::from_breakpoints(Space::interval, std::move(pts));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("gallery construction check failed: " + what);
}

PLMap tent() { return interval_map({{0, 0}, {Rational(1, 2), 1}, {1, 0}}); }

}  // namespace

GallerySystem counterexample_system() {
  PLMap f1 = PLMap::constant(Space::interval, 0);
  PLMap f2 = interval_map({{0, 0}, {Rational(1, 4), Rational(1, 2)}, {1, 1}});
  PLMap f3 = interval_map({{0, 0}, {1, Rational(1, 2)}});
  SystemDef sys =
      make_system(Space::interval, {f1, f2, f3}, "counterexample",
                  {"a", "b", "c"});

  const Rational eighth(1, 8);
  PLMap id = PLMap::identity(Space::interval, 0, eighth);
  require(pl_compose(f3, restrict_map(f2, 0, eighth)) == id,
          "f3 o f2 = id on [0,1/8]");
  require(pl_compose(f2, restrict_map(f3, 0, eighth)) == id,
          "f2 o f3 = id on [0,1/8]");
  // f3 restricted to [0,1/8] is the inverse of f2 there: f2 maps [0,1/16]
  // onto [0,1/8] and f3 undoes it.
  require(pl_compose(f3, restrict_map(f2, 0, Rational(1, 16))) ==
              PLMap::identity(Space::interval, 0, Rational(1, 16)),
          "f3 inverts f2 on [0,1/16]");
  const Rational quarter(1, 4);
  for (const auto& g : sys.generators) {
    for (std::size_t i = 0; i < g.piece_count(); ++i) {
      const auto& a = g.breakpoints()[i];
      const auto& b = g.breakpoints()[i + 1];
      if (b.x > quarter && a.x < 1) {
        require(abs(g.piece_slope(i)) < 1, "slopes on (1/4,1) below 1");
      }
    }
  }

  ExpectedVerdicts e;
  e.tt = true;
  e.minimal_points_dense = false;
  e.m_inverse_dense = true;
  e.almost_open = false;
  e.sensitive = false;
  e.minimal = false;
  e.theorem = "none: almost-openness fails, so the non-sensitive outcome "
              "does not contradict the almost-open sensitivity theorem";
  e.basis = {
      "tt: every x in (0,1] has a dense orbit (gap expansion under f2, f3)",
      "minimal points: only 0, since a = f1 sends everything to 0",
      "m-inverse: f1^-1(0) = [0,1]",
      "almost open: f1 is constant on [0,1]",
      "not sensitive: |phi_s(I)| <= |I| for every interval I in (1/2,1)",
  };
  return {std::move(sys), std::move(e)};
}

GallerySystem tent_monoid() {
  SystemDef sys = make_system(Space::interval, {tent()}, "tent", {"a"});
  require(pl_eval(sys.generators[0], Rational(2, 3)) == Rational(2, 3),
          "T(2/3) = 2/3");
  require(pl_eval(sys.generators[0], Rational(2, 5)) == Rational(4, 5) &&
              pl_eval(sys.generators[0], Rational(4, 5)) == Rational(2, 5),
          "period-2 orbit {2/5, 4/5}");
  ExpectedVerdicts e;
  e.tt = true;
  e.minimal_points_dense = true;
  e.m_inverse_dense = true;
  e.almost_open = true;
  e.sensitive = true;
  e.minimal = false;
  e.delta = Rational(1, 12);
  e.theorem = "dense minimal points, transitive, non-minimal: sensitive";
  e.basis = {
      "tt: the full tent map is locally eventually onto",
      "minimal points: periodic points of T are dense",
      "non-minimal: {0} and {2/3} are disjoint fixed points",
      "delta: d({0},{2/3}) / 8 = 1/12",
  };
  return {std::move(sys), std::move(e)};
}

GallerySystem two_generator_expanding() {
  PLMap t3 = interval_map(
      {{0, 0}, {Rational(1, 3), 1}, {Rational(2, 3), 0}, {1, 1}});
  SystemDef sys =
      make_system(Space::interval, {tent(), t3}, "expanding2", {"a", "b"});
  require(pl_eval(sys.generators[0], 0) == 0 &&
              pl_eval(sys.generators[1], 0) == 0,
          "common fixed point 0");
  require(pl_eval(t3, Rational(1, 3)) == 1, "T3(1/3) = 1");
  ExpectedVerdicts e;
  e.tt = true;
  e.minimal_points_dense = true;
  e.m_inverse_dense = true;
  e.almost_open = true;
  e.sensitive = true;
  e.minimal = false;
  e.theorem = "dense minimal points, transitive, non-minimal: sensitive";
  e.basis = {
      "both generators expand by at least 2 on every piece",
      "0 is a common fixed point, so the system is not minimal",
  };
  return {std::move(sys), std::move(e)};
}

GallerySystem rotation_system(long p, long q) {
  if (!(0 < p && p < q)) {
    throw std::invalid_argument("rotation needs 0 < p < q");
  }
  Rational shift(p, q);
  PLMap lift = PLMap::from_breakpoints(Space::circle,
                                       {{0, shift}, {1, shift + Rational(1)}});
  SystemDef sys = make_system(Space::circle, {lift},
                              "rotation:" + shift.str(), {"a"});
  ExpectedVerdicts e;
  e.minimal_points_dense = true;
  e.almost_open = true;
  e.sensitive = false;
  e.theorem = "none: every point is minimal, rotations are isometries";
  e.basis = {
      "every orbit is finite, so every point is periodic and minimal",
      "translations preserve circle distance exactly",
  };
  return {std::move(sys), std::move(e)};
}

std::vector<std::string> gallery_names() {
  return {"counterexample", "tent", "expanding2", "rotation:5/17"};
}

GallerySystem gallery_system(const std::string& name) {
  if (name == "counterexample") return counterexample_system();
  if (name == "tent") return tent_monoid();
  if (name == "expanding2") return two_generator_expanding();
  if (name.rfind("rotation:", 0) == 0) {
    Rational r = Rational::parse(name.substr(9));
    if (!(r > 0 && r < 1)) {
      throw std::invalid_argument("rotation amount must lie in (0,1)");
    }
    return rotation_system(r.raw().get_num().get_si(),
                           r.raw().get_den().get_si());
  }
  throw std::invalid_argument("unknown system \"" + name + "\"");
}

}  // namespace pldyn
