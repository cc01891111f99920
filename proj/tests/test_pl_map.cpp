#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "pldyn/pl_map.hpp"

using namespace pldyn;

namespace {

PLMap tent() {
  return PLMap::from_breakpoints(Space::interval,
                                 {{0, 0}, {Rational(1, 2), 1}, {1, 0}});
}
PLMap f2() {
  return PLMap::from_breakpoints(
      Space::interval, {{0, 0}, {Rational(1, 4), Rational(1, 2)}, {1, 1}});
}
PLMap f3() {
  return PLMap::from_breakpoints(Space::interval, {{0, 0}, {1, Rational(1, 2)}});
}
PLMap zero() { return PLMap::constant(Space::interval, 0); }
PLMap id() { return PLMap::identity(Space::interval); }

}  // namespace

TEST_CASE("pl_eval") {
  CHECK(pl_eval(zero(), Rational(7, 10)) == 0);
  CHECK(pl_eval(tent(), 0) == 0);
  CHECK(pl_eval(f2(), Rational(3, 4)) == Rational(5, 6));
  CHECK_THROWS_AS(pl_eval(tent(), Rational(3, 2)), std::domain_error);
  CHECK_THROWS_AS(pl_eval(tent(), Rational(-1, 2)), std::domain_error);
}

TEST_CASE("pl_image") {
  CHECK(pl_image(zero(), 0, 1) == Interval{0, 0});
  CHECK(pl_image(id(), Rational(1, 3), Rational(2, 3)) ==
        Interval{Rational(1, 3), Rational(2, 3)});
  CHECK(pl_image(tent(), Rational(1, 4), Rational(3, 4)) ==
        Interval{Rational(1, 2), 1});
  CHECK_THROWS_AS(pl_image(tent(), Rational(3, 4), Rational(1, 4)),
                  std::domain_error);
}

TEST_CASE("pl_preimage") {
  auto all = pl_preimage(zero(), 0, 0);
  REQUIRE(all.size() == 1);
  CHECK(all[0] == Interval{0, 1});
  auto ab = pl_preimage(id(), Rational(1, 5), Rational(3, 7));
  REQUIRE(ab.size() == 1);
  CHECK(ab[0] == Interval{Rational(1, 5), Rational(3, 7)});
  auto upper = pl_preimage(tent(), Rational(1, 2), 1);
  REQUIRE(upper.size() == 1);
  CHECK(upper[0] == Interval{Rational(1, 4), Rational(3, 4)});
  // Degenerate target: T^-1(0) = {0, 1}.
  auto ends = pl_preimage(tent(), 0, 0);
  REQUIRE(ends.size() == 2);
  CHECK(ends[0] == Interval{0, 0});
  CHECK(ends[1] == Interval{1, 1});
}

TEST_CASE("pl_compose") {
  // f3 o f2 is the identity on [0,1/8].
  PLMap c = pl_compose(f3(), f2());
  for (long k = 0; k <= 16; ++k) {
    Rational x(k, 128);
    CHECK(pl_eval(c, x) == x);
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    PLMap m = testing::random_interval_map(rng);
    CHECK(pl_compose(id(), m) == m);
    CHECK(pl_compose(m, id()) == m);
  }
  // T o T: four pieces of slope magnitude 4. Oracle: difference quotients of
  // nested evaluation at points inside each quarter.
  PLMap tt = pl_compose(tent(), tent());
  CHECK(tt.piece_count() == 4);
  for (long q = 0; q < 4; ++q) {
    Rational a(8 * q + 1, 32), b(8 * q + 3, 32);
    Rational nested =
        (pl_eval(tent(), pl_eval(tent(), b)) -
         pl_eval(tent(), pl_eval(tent(), a))) / (b - a);
    CHECK(abs(nested) == 4);
    CHECK(abs(tt.piece_slope(static_cast<std::size_t>(q))) == 4);
  }
}

TEST_CASE("composition budget is enforced") {
  PLMap m = tent();
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 10; ++i) m = pl_compose(tent(), m, 200);
      }(),
      BudgetError);
}

TEST_CASE("pl_slope_at") {
  CHECK(*pl_slope_at(zero(), Rational(1, 2)) == 0);
  CHECK(*pl_slope_at(id(), Rational(1, 3)) == 1);
  CHECK_FALSE(pl_slope_at(tent(), Rational(1, 2)).has_value());
  CHECK(*pl_slope_at(tent(), Rational(1, 3)) == 2);
  CHECK_THROWS_AS(pl_slope_at(tent(), 0), std::domain_error);
  CHECK_THROWS_AS(pl_slope_at(tent(), 1), std::domain_error);
}

TEST_CASE("validation names the offending breakpoint") {
  try {
    PLMap::from_breakpoints(Space::interval,
                            {{0, 0}, {Rational(1, 2), Rational(3, 2)}, {1, 0}});
    FAIL("expected MapError");
  } catch (const MapError& e) {
    CHECK(std::string(e.what()).find("breakpoint 1") != std::string::npos);
  }
  CHECK_THROWS_AS(PLMap::from_breakpoints(
                      Space::interval, {{0, 0}, {0, 1}, {1, 0}}),
                  MapError);
  CHECK_THROWS_AS(PLMap::from_breakpoints(
                      Space::circle, {{0, 0}, {1, Rational(1, 2)}}),
                  MapError);
}

TEST_CASE("circle lifts evaluate mod 1") {
  PLMap rot = PLMap::from_breakpoints(
      Space::circle, {{0, Rational(5, 17)}, {1, Rational(22, 17)}});
  CHECK(pl_eval(rot, Rational(13, 17)) == Rational(1, 17));
  CHECK(pl_eval(rot, 1) == Rational(5, 17));
  CHECK(distance(Space::circle, Rational(1, 10), Rational(9, 10)) ==
        Rational(1, 5));
  // Preimage of an arc is an arc.
  auto pre = pl_preimage(rot, 0, Rational(1, 17));
  REQUIRE(pre.size() == 1);
  CHECK(pre[0] == Interval{Rational(12, 17), Rational(13, 17)});
  PLMap twice = pl_compose(rot, rot);
  CHECK(pl_eval(twice, 0) == Rational(10, 17));
  CHECK(lifted_image(rot, {Rational(-1, 10), Rational(1, 10)}).width() ==
        Rational(1, 5));
}

TEST_CASE("property: evaluation is exact interpolation inside [0,1]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    PLMap m = testing::random_interval_map(rng);
    Rational x = testing::random_unit_rational(rng, 97);
    Rational y = pl_eval(m, x);
    CHECK(y >= 0);
    CHECK(y <= 1);
    const auto& pts = m.breakpoints();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      if (pts[k].x <= x && x <= pts[k + 1].x) {
        Rational t = (x - pts[k].x) / (pts[k + 1].x - pts[k].x);
        CHECK(y == pts[k].y + t * (pts[k + 1].y - pts[k].y));
        break;
      }
    }
  }
}

TEST_CASE("property: composition agrees with nested evaluation") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    PLMap a = testing::random_interval_map(rng);
    PLMap b = testing::random_interval_map(rng);
    PLMap c = pl_compose(a, b);
    for (int j = 0; j < 1000; ++j) {
      Rational x = testing::random_unit_rational(rng, 500);
      REQUIRE(pl_eval(c, x) == pl_eval(a, pl_eval(b, x)));
    }
  }
}

TEST_CASE("property: image/preimage duality and image extremality") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    PLMap m = testing::random_interval_map(rng);
    Rational lo = testing::random_unit_rational(rng, 12);
    Rational hi = testing::random_unit_rational(rng, 12);
    if (hi < lo) std::swap(lo, hi);
    auto pre = pl_preimage(m, lo, hi);
    std::vector<Rational> samples;
    for (const auto& p : m.breakpoints()) samples.push_back(p.x);
    for (const auto& iv : pre) {
      samples.push_back(iv.lo);
      samples.push_back(iv.hi);
    }
    for (int j = 0; j < 50; ++j) {
      samples.push_back(testing::random_unit_rational(rng, 200));
    }
    for (const auto& x : samples) {
      bool inside = false;
      for (const auto& iv : pre) inside = inside || iv.contains(x);
      Rational y = pl_eval(m, x);
      CHECK(inside == (lo <= y && y <= hi));
    }
    // Extremality: the image bounds are attained on endpoints or interior
    // breakpoints, and no sample exceeds them.
    Interval img = pl_image(m, lo, hi);
    std::vector<Rational> candidates{pl_eval(m, lo), pl_eval(m, hi)};
    for (const auto& p : m.breakpoints()) {
      if (lo < p.x && p.x < hi) candidates.push_back(p.y);
    }
    CHECK(*std::min_element(candidates.begin(), candidates.end()) == img.lo);
    CHECK(*std::max_element(candidates.begin(), candidates.end()) == img.hi);
    for (int j = 0; j < 20; ++j) {
      Rational x = lo + (hi - lo) * testing::random_unit_rational(rng, 50);
      CHECK(img.contains(pl_eval(m, x)));
    }
  }
}
