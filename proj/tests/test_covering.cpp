#include "doctest.h"
#include "pldyn/covering.hpp"
#include "pldyn/gallery.hpp"
#include "pldyn/minimality.hpp"

using namespace pldyn;

TEST_CASE("inside_open_ball") {
  CHECK(inside_open_ball(Space::interval, {Rational(2, 5), Rational(2, 5)},
                         Rational(2, 5), Rational(1, 100)));
  CHECK_FALSE(inside_open_ball(Space::interval,
                               {Rational(39, 100), Rational(2, 5)},
                               Rational(2, 5), Rational(1, 100)));
  // Wraps through 0 on the circle.
  CHECK(inside_open_ball(Space::circle, {Rational(99, 100), Rational(101, 100)},
                         0, Rational(1, 50)));
  CHECK(inside_open_ball(Space::circle, {Rational(1, 100), Rational(1, 50)},
                         Rational(99, 100), Rational(1, 20)));
  CHECK_FALSE(inside_open_ball(Space::circle, {Rational(1, 4), Rational(1, 2)},
                               0, Rational(1, 10)));
}

TEST_CASE("covering_family on the tent map") {
  auto sys = tent_monoid().system;
  Grid grid{256};
  const Rational r(1, 100);

  SUBCASE("fixed point 2/3") {
    auto fam = covering_family(sys, Rational(2, 3), r, grid, 8);
    CHECK(fam.status == Status::certified);
    CHECK(fam.orbit_cells == std::vector<std::size_t>{170});
    CHECK(fam.words == std::vector<Word>{Word{0}});
    // T on [170/256, 171/256] is 2 - 2x: image [170/256, 172/256].
    Interval image{Rational(170, 256), Rational(172, 256)};
    CHECK(Rational(2, 3) - r < image.lo);
    CHECK(image.hi < Rational(2, 3) + r);
    CHECK(verify_covering(sys, grid, fam));
  }
  SUBCASE("period-2 point 2/5") {
    auto fam = covering_family(sys, Rational(2, 5), r, grid, 8);
    CHECK(fam.status == Status::certified);
    CHECK(fam.words.size() <= 2);
    CHECK(fam.words == std::vector<Word>{Word{0}, Word{0, 0}});
    CHECK(fam.per_cell_witness.at(grid.cell_of(Space::interval,
                                               Rational(4, 5))) == 0);
    CHECK(fam.per_cell_witness.at(grid.cell_of(Space::interval,
                                               Rational(2, 5))) == 1);
    CHECK(verify_covering(sys, grid, fam));
    CHECK(fam.center_minimality == Status::certified);
  }
  SUBCASE("coarse grid cannot certify") {
    auto fam = covering_family(sys, Rational(2, 5), r, Grid{64}, 8);
    CHECK(fam.status == Status::unknown);
    CHECK_FALSE(fam.uncovered.empty());
  }
}

TEST_CASE("covering_family at a contracting fixed point") {
  auto half = PLMap::from_breakpoints(Space::interval,
                                      {{0, 0}, {1, Rational(1, 2)}});
  auto sys = make_system(Space::interval, {half}, "half");
  auto fam = covering_family(sys, 0, Rational(1, 100), Grid{16}, 12);
  CHECK(fam.status == Status::certified);
  // Cell [0,1/16] needs 1/16 * 2^-k < 1/100, so k = 3.
  CHECK(fam.words == std::vector<Word>{Word{0, 0, 0}});
}

TEST_CASE("property: covering certificates re-verify and imply minimality") {
  auto sys = rotation_system(5, 17).system;
  Grid grid{64};
  for (long k = 0; k < 17; k += 4) {
    Rational x = Rational(k, 17) + Rational(1, 200);
    auto fam = covering_family(sys, x, Rational(1, 20), grid, 20);
    CHECK(fam.status == Status::certified);
    CHECK(verify_covering(sys, grid, fam));
    CHECK(fam.words.size() <= fam.orbit_cells.size());
    CHECK(fam.center_minimality == Status::certified);
  }
  auto tent = tent_monoid().system;
  for (auto x : {Rational(2, 3), Rational(2, 5), Rational(2, 9),
                 Rational(2, 7)}) {
    auto fam = covering_family(tent, x, Rational(1, 50), Grid{512}, 10);
    CHECK(verify_covering(tent, Grid{512}, fam));
    CHECK(fam.words.size() <= fam.orbit_cells.size());
    if (fam.status == Status::certified) {
      CHECK(is_minimal_point(tent, x, Grid{512}, 10, Rational(1, 50)).status ==
            Status::certified);
    }
  }
}
