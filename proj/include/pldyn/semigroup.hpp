// Words of the free semigroup, dynamical systems, and the action law.
//
// Convention: a word w = (i1, i2, ..., ik) acts as g_i1 o g_i2 o ... o g_ik,
// so the RIGHTMOST letter acts first and concatenation satisfies
// phi(w1 w2) = phi(w1) o phi(w2). The string form prints letters in the same
// order, leftmost acts last: "cb" on the counterexample system means f3 o f2.

#ifndef PLDYN_SEMIGROUP_HPP_
#define PLDYN_SEMIGROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pldyn/pl_map.hpp"

namespace pldyn {

using Letter = std::uint32_t;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  [[nodiscard]] const std::vector<Letter>& letters() const { return letters_; }
  [[nodiscard]] std::size_t size() const { return letters_.size(); }
  [[nodiscard]] bool empty() const { return letters_.empty(); }
  [[nodiscard]] Letter operator[](std::size_t i) const { return letters_[i]; }

  // (i) . w: `letter` acts after w.
  [[nodiscard]] Word prepend(Letter letter) const;
  // w . (i): `letter` acts before w.
  [[nodiscard]] Word append(Letter letter) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Enumeration order: shorter first, then lexicographic by letters.
bool canonical_less(const Word& a, const Word& b);

struct SystemDef {
  Space space = Space::interval;
  std::vector<PLMap> generators;
  std::string name;
  // One single-character name per generator; defaults to a, b, c, ...
  std::vector<std::string> generator_names;

  [[nodiscard]] std::size_t generator_count() const {
    return generators.size();
  }
  [[nodiscard]] const std::string& letter_name(Letter i) const {
    return generator_names.at(i);
  }

  friend bool operator==(const SystemDef&, const SystemDef&) = default;
};

// Validates generators against the space and fills default names.
// Throws MapError.
SystemDef make_system(Space space, std::vector<PLMap> generators,
                      std::string name,
                      std::vector<std::string> generator_names = {});

std::string format_word(const SystemDef& system, const Word& w);
// Inverse of format_word. Throws std::invalid_argument.
Word parse_word(const SystemDef& system, std::string_view text);

// Throws std::out_of_range on an empty word or a bad generator index.
void check_word(const SystemDef& system, const Word& w);

// phi_w(x) by nested evaluation, rightmost letter first.
Rational word_apply(const SystemDef& system, const Word& w,
                    const Rational& x);

// The composed map phi_w. Throws BudgetError past `cap` breakpoints.
PLMap word_map(const SystemDef& system, const Word& w,
               std::size_t cap = kDefaultBreakpointCap);

// phi_w restricted to [lo, hi] (on the circle the domain may leave [0,1]).
PLMap word_map_on(const SystemDef& system, const Word& w, const Rational& lo,
                  const Rational& hi, std::size_t cap = kDefaultBreakpointCap);

// All words of length 1..max_len in enumeration order. `include_empty`
// prepends the empty word (monoid experiments; off by default).
std::vector<Word> enumerate_words(std::size_t generator_count,
                                  std::size_t max_len,
                                  bool include_empty = false);

// Streaming form of enumerate_words; `visit` returns false to stop early.
void for_each_word(std::size_t generator_count, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit);

}  // namespace pldyn

#endif  // PLDYN_SEMIGROUP_HPP_
