#include "pldyn/semigroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace pldyn {

Word Word::prepend(Letter letter) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() + 1);
  out.push_back(letter);
  out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out));
}

Word Word::append(Letter letter) const {
  std::vector<Letter> out = letters_;
  out.push_back(letter);
  return Word(std::move(out));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

bool canonical_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters() < b.letters();
}

SystemDef make_system(Space space, std::vector<PLMap> generators,
                      std::string name,
                      std::vector<std::string> generator_names) {
  if (generators.empty()) throw MapError("a system needs a generator");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.space() != space) {
      throw MapError("generator " + std::to_string(i) +
                     " lives on a different space");
    }
    // Re-run the full-map checks on the stored breakpoints.
    try {
      (void)PLMap::from_breakpoints(space, g.breakpoints());
    } catch (const MapError& e) {
      throw MapError("generator " + std::to_string(i) + ", " + e.what());
    }
  }
  if (generator_names.empty()) {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      generator_names.emplace_back(1, static_cast<char>('a' + i));
    }
  }
  if (generator_names.size() != generators.size()) {
    throw MapError("generator name count does not match generator count");
  }
  for (std::size_t i = 0; i < generator_names.size(); ++i) {
    if (generator_names[i].size() != 1) {
      throw MapError("generator names must be single characters");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (generator_names[i] == generator_names[j]) {
        throw MapError("duplicate generator name " + generator_names[i]);
      }
    }
  }
  return SystemDef{space, std::move(generators), std::move(name),
                   std::move(generator_names)};
}

std::string format_word(const SystemDef& system, const Word& w) {
  std::string out;
  for (Letter l : w.letters()) out += system.letter_name(l);
  return out;
}

Word parse_word(const SystemDef& system, std::string_view text) {
  std::vector<Letter> letters;
  for (char c : text) {
    auto it = std::find(system.generator_names.begin(),
                        system.generator_names.end(), std::string(1, c));
    if (it == system.generator_names.end()) {
      throw std::invalid_argument(std::string("unknown generator '") + c +
                                  "'");
    }
    letters.push_back(
        static_cast<Letter>(it - system.generator_names.begin()));
  }
  if (letters.empty()) throw std::invalid_argument("empty word");
  return Word(std::move(letters));
}

void check_word(const SystemDef& system, const Word& w) {
  if (w.empty()) throw std::out_of_range("empty word");
  for (Letter l : w.letters()) {
    if (l >= system.generator_count()) {
      throw std::out_of_range("generator index " + std::to_string(l) +
                              " out of range");
    }
  }
}

Rational word_apply(const SystemDef& system, const Word& w,
                    const Rational& x) {
  check_word(system, w);
  Rational value = x;
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    value = pl_eval(system.generators[*it], value);
  }
  return value;
}

PLMap word_map_on(const SystemDef& system, const Word& w, const Rational& lo,
                  const Rational& hi, std::size_t cap) {
  check_word(system, w);
  PLMap map = PLMap::identity(system.space, lo, hi);
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    map = pl_compose(system.generators[*it], map, cap);
  }
  return map;
}

PLMap word_map(const SystemDef& system, const Word& w, std::size_t cap) {
  return word_map_on(system, w, 0, 1, cap);
}

void for_each_word(std::size_t generator_count, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Letter> letters(len, 0);
    while (true) {
      if (!visit(Word(letters))) return;
      std::size_t i = len;
      while (i > 0 && letters[i - 1] + 1 == generator_count) {
        letters[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
      ++letters[i - 1];
    }
  }
}

std::vector<Word> enumerate_words(std::size_t generator_count,
                                  std::size_t max_len, bool include_empty) {
  std::vector<Word> out;
  if (include_empty) out.emplace_back();
  for_each_word(generator_count, max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace pldyn
