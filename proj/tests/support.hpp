#ifndef RGK_TESTS_SUPPORT_HPP
#define RGK_TESTS_SUPPORT_HPP

// Shared helpers for the unit tests: seeded random languages and
// brute-force membership oracles that do not reuse the library's algorithms.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "rgk/trace.hpp"

namespace rgk::testing {

inline Word random_word(std::mt19937_64& rng, std::size_t states, std::size_t len) {
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(states - 1));
  Word w(len);
  for (auto& a : w) a = {pick(rng), pick(rng)};
  return w;
}

inline Lang random_lang(std::mt19937_64& rng, Bound b, std::size_t max_words = 5) {
  std::uniform_int_distribution<std::size_t> count(0, max_words);
  std::uniform_int_distribution<std::size_t> len(0, b.max_len);
  std::vector<Word> words;
  for (std::size_t n = count(rng); n > 0; --n) words.push_back(random_word(rng, b.states, len(rng)));
  return Lang(b, words);
}

/// Every word of length <= b.max_len, built by counting in base states^2.
inline std::vector<Word> all_words(Bound b) {
  std::vector<Word> out{Word{}};
  const std::size_t letters = b.states * b.states;
  for (std::size_t len = 1; len <= b.max_len; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= letters;
    for (std::size_t code = 0; code < total; ++code) {
      Word w(len);
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i, c /= letters) {
        w[i] = {static_cast<StateId>((c % letters) / b.states), static_cast<StateId>(c % b.states)};
      }
      out.push_back(w);
    }
  }
  return out;
}

/// Classic dynamic program: is w an interleaving of u and v?
inline bool interleaves(const Word& w, const Word& u, const Word& v) {
  if (w.size() != u.size() + v.size()) return false;
  std::vector<std::vector<bool>> ok(u.size() + 1, std::vector<bool>(v.size() + 1, false));
  ok[0][0] = true;
  for (std::size_t i = 0; i <= u.size(); ++i) {
    for (std::size_t j = 0; j <= v.size(); ++j) {
      if (i == 0 && j == 0) continue;
      const Letter& c = w[i + j - 1];
      ok[i][j] = (i > 0 && ok[i - 1][j] && u[i - 1] == c) || (j > 0 && ok[i][j - 1] && v[j - 1] == c);
    }
  }
  return ok[u.size()][v.size()];
}

/// Can w be cut into consecutive nonempty factors, each in x?
inline bool factorizes(const Word& w, const Lang& x) {
  std::vector<bool> reach(w.size() + 1, false);
  reach[0] = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!reach[i]) continue;
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      if (x.contains(Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j)))) {
        reach[j] = true;
      }
    }
  }
  return reach[w.size()];
}

inline bool chained(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1].post != w[i].pre) return false;
  }
  return true;
}

}  // namespace rgk::testing

#endif  // RGK_TESTS_SUPPORT_HPP
