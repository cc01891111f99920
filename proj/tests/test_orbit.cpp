#include "doctest.h"
#include "pldyn/gallery.hpp"
#include "pldyn/orbit.hpp"

using namespace pldyn;

namespace {

SystemDef identity_system() {
  return make_system(Space::interval, {PLMap::identity(Space::interval)},
                     "identity");
}

const Rational kGeneric = Rational(1, 7) + Rational(1, 1000003);

}  // namespace

TEST_CASE("grid cells use the smallest index at shared endpoints") {
  Grid g{4};
  CHECK(g.cell_of(Space::interval, 0) == 0);
  CHECK(g.cell_of(Space::interval, Rational(1, 4)) == 0);
  CHECK(g.cell_of(Space::interval, Rational(3, 10)) == 1);
  CHECK(g.cell_of(Space::interval, 1) == 3);
  CHECK(g.cells_meeting({Rational(1, 4), Rational(1, 4)}) ==
        std::vector<std::size_t>{0, 1});
  CHECK(g.open_cell_meets(Space::interval, 1, {0, Rational(1, 4)}) == false);
  CHECK(g.open_cell_meets(Space::circle, 0, {Rational(9, 10), Rational(11, 10)}));
}

TEST_CASE("orbit_cells") {
  Grid grid{16};
  auto ce = counterexample_system().system;
  auto orbit = orbit_cells(ce, Rational(1, 2), grid, 3);
  CHECK(orbit.hit_cells().count(grid.cell_of(Space::interval, 0)) == 1);
  CHECK(orbit.representative.at(0).word == Word{0});

  auto id = identity_system();
  auto fixed = orbit_cells(id, Rational(3, 10), grid, 5);
  CHECK(fixed.hit_cells() == std::set<std::size_t>{4});
  for (const auto& level : fixed.hit_by_length) {
    CHECK(level == std::set<std::size_t>{4});
  }

  auto tent = tent_monoid().system;
  auto two = orbit_cells(tent, Rational(2, 5), Grid{64}, 2);
  CHECK(two.representative.at(Grid{64}.cell_of(Space::interval, Rational(4, 5)))
            .value == Rational(4, 5));
  const auto& back =
      two.representative.at(Grid{64}.cell_of(Space::interval, Rational(2, 5)));
  CHECK(back.value == Rational(2, 5));
  CHECK(back.word.size() == 2);
}

TEST_CASE("property: orbit cells grow monotonically with the budget") {
  auto sys = two_generator_expanding().system;
  Grid grid{32};
  std::set<std::size_t> previous;
  for (std::size_t len = 1; len <= 8; ++len) {
    auto hit = orbit_cells(sys, Rational(3, 11), grid, len).hit_cells();
    CHECK(std::includes(hit.begin(), hit.end(), previous.begin(),
                        previous.end()));
    previous = hit;
  }
  for (const auto& [cell, point] :
       orbit_cells(sys, Rational(3, 11), grid, 8).representative) {
    CHECK(word_apply(sys, point.word, Rational(3, 11)) == point.value);
    CHECK(grid.cell(cell).contains(point.value));
  }
}

TEST_CASE("is_transitive_point") {
  CHECK(is_transitive_point(identity_system(), Rational(1, 3), Grid{2}, 10)
            .status == Status::unknown);
  auto tent = tent_monoid().system;
  // T(1/3) = 2/3 = T(2/3): a two-point forward orbit.
  CHECK(word_apply(tent, Word{0}, Rational(1, 3)) == Rational(2, 3));
  CHECK(word_apply(tent, Word{0}, Rational(2, 3)) == Rational(2, 3));
  CHECK(is_transitive_point(tent, Rational(1, 3), Grid{64}, 200).status ==
        Status::unknown);
  // 24 orbit points can occupy at most 24 of 64 cells.
  auto short_run = is_transitive_point(tent, kGeneric, Grid{64}, 24);
  CHECK(short_run.status == Status::unknown);
  CHECK(short_run.hit_count <= 24);
}
