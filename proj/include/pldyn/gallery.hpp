// Built-in systems covering each hypothesis combination of the sensitivity
// theorems, with the verdicts each one is expected to produce.

#ifndef PLDYN_GALLERY_HPP_
#define PLDYN_GALLERY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pldyn/semigroup.hpp"

namespace pldyn {

struct ExpectedVerdicts {
  std::optional<bool> tt;
  std::optional<bool> minimal_points_dense;
  std::optional<bool> m_inverse_dense;
  std::optional<bool> almost_open;
  std::optional<bool> sensitive;
  // Whether the whole system is minimal (one orbit closure is everything).
  std::optional<bool> minimal;
  std::optional<Rational> delta;
  std::string theorem;
  // Why each expectation holds, one line per item.
  std::vector<std::string> basis;
};

struct GallerySystem {
  SystemDef system;
  ExpectedVerdicts expected;
};

// f1 = 0, f2 = {(0,0),(1/4,1/2),(1,1)}, f3(x) = x/2, generators a, b, c.
// Construction asserts f3 o f2 = f2 o f3 = id on [0,1/8], every slope on
// (1/4,1) below 1, and f3 inverting f2 on [0,1/8]; a failure throws
// std::logic_error.
GallerySystem counterexample_system();

// The full tent map {(0,0),(1/2,1),(1,0)}.
GallerySystem tent_monoid();

// Tent map together with the three-branch map {(0,0),(1/3,1),(2/3,0),(1,1)}.
GallerySystem two_generator_expanding();

// Circle rotation x -> x + p/q mod 1. Requires 0 < p < q.
GallerySystem rotation_system(long p, long q);

// Names accepted by gallery_system(): counterexample, tent, expanding2,
// rotation:p/q (listed with the 5/17 rotation).
std::vector<std::string> gallery_names();

// Throws std::invalid_argument for an unknown name.
GallerySystem gallery_system(const std::string& name);

}  // namespace pldyn

#endif  // PLDYN_GALLERY_HPP_
