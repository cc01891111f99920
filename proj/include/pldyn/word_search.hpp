// Breadth-first traversal of the word tree carrying a per-word state.
//
// Words are visited in enumeration order (length, then lexicographic). With
// Extension::left a word's state is step(letter, state(rest)) for
// word = letter . rest, which is how images compose (the new letter acts
// last). With Extension::right the new letter is appended, which is how
// preimages compose.
//
// Deduplication keeps only the first word (in enumeration order) reaching a
// given state. Every descendant of a later duplicate is reproduced by a
// shorter descendant of the first one, so first-hit witnesses are unchanged.

#ifndef PLDYN_WORD_SEARCH_HPP_
#define PLDYN_WORD_SEARCH_HPP_

#include <cstddef>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pldyn/semigroup.hpp"

namespace pldyn {

enum class Extension { left, right };
enum class Dedupe { none, per_level, global };
enum class Visit { extend, prune, stop };

struct SearchStats {
  std::size_t visited = 0;
  std::size_t deepest = 0;
  bool stopped = false;
  // Frontier emptied before max_len with nothing pruned or truncated: every
  // reachable state has been seen.
  bool closed = false;
  // A level exceeded the state cap and was cut short.
  bool truncated = false;
};

template <class State, class Key, class KeyHash, class StepFn, class KeyFn,
          class VisitFn>
SearchStats search_words(std::size_t generator_count, std::size_t max_len,
                         Extension ext, Dedupe dedupe, const State& init,
                         StepFn&& step, KeyFn&& key, VisitFn&& visit,
                         std::size_t state_cap = 1u << 20) {
  SearchStats stats;
  std::unordered_set<Key, KeyHash> seen;
  struct Node {
    Word word;
    State state;
  };
  std::vector<Node> frontier;
  bool pruned = false;

  auto expand = [&](const Word& parent_word, const State& parent, Letter g,
                    std::vector<Node>& next,
                    std::unordered_set<Key, KeyHash>& level_seen) -> bool {
    Word w = ext == Extension::left ? parent_word.prepend(g)
                                    : parent_word.append(g);
    State s = step(g, parent);
    if (dedupe != Dedupe::none) {
      auto& table = dedupe == Dedupe::global ? seen : level_seen;
      if (!table.insert(key(s)).second) return true;
    }
    ++stats.visited;
    stats.deepest = w.size();
    Visit v = visit(w, s);
    if (v == Visit::stop) {
      stats.stopped = true;
      return false;
    }
    if (v == Visit::prune) {
      pruned = true;
      return true;
    }
    if (next.size() >= state_cap) {
      stats.truncated = true;
      return true;
    }
    next.push_back(Node{std::move(w), std::move(s)});
    return true;
  };

  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    std::unordered_set<Key, KeyHash> level_seen;
    if (len == 1) {
      for (Letter g = 0; g < generator_count; ++g) {
        if (!expand(Word{}, init, g, next, level_seen)) return stats;
      }
    } else if (ext == Extension::left) {
      for (Letter g = 0; g < generator_count; ++g) {
        for (const auto& node : frontier) {
          if (!expand(node.word, node.state, g, next, level_seen)) {
            return stats;
          }
        }
      }
    } else {
      for (const auto& node : frontier) {
        for (Letter g = 0; g < generator_count; ++g) {
          if (!expand(node.word, node.state, g, next, level_seen)) {
            return stats;
          }
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) {
      stats.closed = !pruned && !stats.truncated && dedupe == Dedupe::global;
      return stats;
    }
  }
  return stats;
}

}  // namespace pldyn

#endif  // PLDYN_WORD_SEARCH_HPP_
