// Seeded random generators shared by the property tests.

#ifndef PLDYN_TESTS_GENERATORS_HPP_
#define PLDYN_TESTS_GENERATORS_HPP_

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "pldyn/pl_map.hpp"
#include "pldyn/semigroup.hpp"

namespace pldyn::testing {

inline Rational random_unit_rational(std::mt19937_64& rng, long max_den = 60) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(0, den);
  return Rational(num_dist(rng), den);
}

// Continuous PL self-map of [0,1] with up to `max_pieces` pieces.
inline PLMap random_interval_map(std::mt19937_64& rng,
                                 std::size_t max_pieces = 5) {
  std::uniform_int_distribution<std::size_t> pieces(1, max_pieces);
  std::size_t k = pieces(rng);
  std::set<Rational> xs{0, 1};
  while (xs.size() < k + 1) xs.insert(random_unit_rational(rng, 24));
  std::vector<Breakpoint> pts;
  for (const auto& x : xs) pts.push_back({x, random_unit_rational(rng, 24)});
  return PLMap::from_breakpoints(Space::interval, std::move(pts));
}

inline Word random_word(std::mt19937_64& rng, std::size_t gens,
                        std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<Letter> letter(0,
                                               static_cast<Letter>(gens - 1));
  std::vector<Letter> out(len(rng));
  for (auto& l : out) l = letter(rng);
  return Word(std::move(out));
}

}  // namespace pldyn::testing

#endif  // PLDYN_TESTS_GENERATORS_HPP_
