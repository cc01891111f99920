// Sensitivity constants from pairs of minimal sets, witness search,
// almost-openness, and non-expansiveness certificates.

#ifndef PLDYN_SENSITIVITY_HPP_
#define PLDYN_SENSITIVITY_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pldyn/grid.hpp"
#include "pldyn/minimality.hpp"
#include "pldyn/semigroup.hpp"

namespace pldyn {

// d(m1, m2) / 8 for exact disjoint minimal sets.
Rational theorem1_delta(Space space, const MinimalSetApprox& m1,
                        const MinimalSetApprox& m2);

// d(x0, m) / 4 for an exact set m not containing x0.
Rational theorem2_case_a_delta(Space space, const Rational& x0,
                               const MinimalSetApprox& m);

struct AlmostOpenReport {
  bool almost_open = true;
  // Per generator: an interval on which it is constant, if any.
  std::vector<std::optional<Interval>> constancy;
  std::size_t spot_checks = 0;
  // Composed words agreed with the generator-wise verdict.
  bool spot_checks_consistent = true;
};

AlmostOpenReport is_almost_open(const SystemDef& system,
                                std::size_t spot_checks = 64,
                                std::size_t spot_word_len = 4);

struct SensitivityWitness {
  Rational x;
  Rational y;
  Word word;
  Rational separation;
};

// Distinct local maps examined per witness search before giving up.
inline constexpr std::size_t kDefaultMapBudget = 1u << 11;
// Budget for entries already refuted by the weight certificate; the search
// only records the best separation seen.
inline constexpr std::size_t kRefutedProbeBudget = 1u << 8;

struct WitnessSearch {
  Status status = Status::unknown;
  std::optional<SensitivityWitness> witness;
  // Largest separation seen over all candidates.
  Rational best_separation;
  std::size_t words_visited = 0;
  // Every distinct local map was seen before the budget ran out.
  bool closed = false;
  bool truncated = false;
};

WitnessSearch find_witness(const SystemDef& system, const Rational& delta,
                           const Rational& x, const Rational& radius,
                           const Grid& grid, std::size_t max_len,
                           std::size_t map_budget = kDefaultMapBudget);

struct WeightCertificate {
  bool applicable = true;
  bool passed = false;
  std::size_t bands_checked = 0;
  // "generator g, piece i, band k: |slope| s > bound b"
  std::vector<std::string> failures;
  std::string note;
};

// Non-expansion of every composition in the density 2^k on the dyadic band
// (2^-k-1, 2^-k]. Passing implies |phi_w(I)| <= |I| for every word and every
// interval I inside (1/2, 1].
WeightCertificate weight_certificate(const SystemDef& system);

struct SensitivityEntry {
  std::size_t cell = 0;
  Rational radius;
  Rational x;
  Status status = Status::unknown;
  std::optional<SensitivityWitness> witness;
  Rational best_separation;
};

struct SensitivityVerdict {
  Rational delta;
  Status status = Status::unknown;
  std::size_t n_cells = 0;
  std::size_t max_len = 0;
  std::vector<Rational> radii;
  // Ordered by cell, then radius as given.
  std::vector<SensitivityEntry> entries;
  std::vector<std::pair<std::size_t, Rational>> failures;
  std::optional<WeightCertificate> certificate;
};

SensitivityVerdict certify_sensitive(const SystemDef& system,
                                     const Rational& delta, const Grid& grid,
                                     const std::vector<Rational>& radii,
                                     std::size_t max_len,
                                     std::size_t jobs = 1);

struct NonexpansiveVerdict {
  Status status = Status::unknown;
  Interval region;
  std::size_t max_len = 0;
  // Words whose image was measured (point images are not extended).
  std::size_t words_checked = 0;
  std::size_t point_images = 0;
  Rational widest;
  std::optional<Word> widest_word;
  std::optional<Word> offending;
  std::optional<WeightCertificate> certificate;
  std::string cause;
};

NonexpansiveVerdict certify_nonexpansive(const SystemDef& system,
                                         const Rational& lo,
                                         const Rational& hi,
                                         std::size_t max_len,
                                         std::size_t state_cap = 1u << 22);

struct SlopeBound {
  Rational max_slope;
  // Points of the open region where the word map is not differentiable.
  std::vector<Rational> breakpoints;
};

SlopeBound word_slope_bound(const SystemDef& system, const Word& w,
                            const Rational& lo, const Rational& hi);

// Sensitivity constant from detected minimal sets: the most distant pair of
// exact classes, or d(x0, M) / 4 with x0 the grid point farthest from a lone
// class. Empty when no exact class exists.
struct DerivedDelta {
  Rational delta;
  std::string rule;
  std::vector<std::string> classes;
  std::optional<Rational> x0;
};

std::optional<DerivedDelta> derive_delta(const SystemDef& system,
                                         const Grid& grid,
                                         const DistinctMinimalSets& sets);

}  // namespace pldyn

#endif  // PLDYN_SENSITIVITY_HPP_
