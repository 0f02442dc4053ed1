#ifndef RGK_TRACE_HPP
#define RGK_TRACE_HPP

// Bounded trace languages over state-pair letters.
//
// A Lang is a canonical (sorted, duplicate-free) set of words, each of length
// at most bound().max_len, over the alphabet of all pairs of state ids below
// bound().states. Every operation that can lengthen words takes an explicit
// Bound and drops anything longer; the results are exactly the words of length
// <= max_len of the corresponding unbounded operation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgk {

using StateId = std::uint32_t;

struct Letter {
  StateId pre = 0;
  StateId post = 0;

  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

struct Bound {
  std::size_t max_len = 1;
  std::size_t states = 1;

  bool operator==(const Bound&) const = default;
};

class BoundMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Lang {
 public:
  explicit Lang(Bound bound);
  /// Canonicalizes `words`; throws std::invalid_argument if a word is longer
  /// than the bound or uses a state outside it.
  Lang(Bound bound, std::vector<Word> words);

  [[nodiscard]] Bound bound() const { return bound_; }
  [[nodiscard]] const std::vector<Word>& words() const { return words_; }
  [[nodiscard]] std::size_t size() const { return words_.size(); }
  [[nodiscard]] bool empty() const { return words_.empty(); }
  [[nodiscard]] bool contains(const Word& w) const;

  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

  bool operator==(const Lang& other) const = default;

 private:
  struct Trusted {};
  Lang(Bound bound, std::vector<Word> words, Trusted);
  friend Lang make_lang_unchecked(Bound, std::vector<Word>);

  Bound bound_;
  std::vector<Word> words_;
};

/// Sorts and deduplicates without validation; callers guarantee lengths and
/// state ids are within `bound`.
Lang make_lang_unchecked(Bound bound, std::vector<Word> words);

Lang zero(Bound bound);
Lang one(Bound bound);

/// Set union (the dioid +). Bounds must agree.
Lang join(const Lang& x, const Lang& y);
Lang meet(const Lang& x, const Lang& y);
/// Set difference x \ y; bounds must agree.
Lang difference(const Lang& x, const Lang& y);

Lang concat(const Lang& x, const Lang& y, Bound bound);

/// All interleavings of u and v that keep the internal order of each.
std::vector<Word> word_shuffle(const Word& u, const Word& v);

Lang shuffle(const Lang& x, const Lang& y, Bound bound);
Lang star(const Lang& x, Bound bound);
Lang plus(const Lang& x, Bound bound);

bool leq(const Lang& x, const Lang& y);

/// z <- y : the largest bounded w-set with concat(w, y) <= z.
Lang residual_left(const Lang& z, const Lang& y, Bound bound);
/// x -> z : the largest bounded w-set with concat(x, w) <= z.
Lang residual_right(const Lang& x, const Lang& z, Bound bound);
/// x / z : the largest bounded w-set with shuffle(x, w) <= z.
Lang residual_par(const Lang& x, const Lang& z, Bound bound);

/// Every word of length <= bound.max_len. Throws std::length_error when the
/// universe would exceed kUniverseLimit words.
Lang universe(Bound bound);
inline constexpr std::size_t kUniverseLimit = 2'000'000;
std::size_t universe_size(Bound bound);

/// Words of x with length <= bound.max_len, re-tagged with `bound`.
Lang truncate(const Lang& x, Bound bound);

std::string to_string(const Letter& a);
std::string to_string(const Word& w);
/// One word per line, letters as "(i,j)", in canonical order; the empty word
/// is written as "<eps>".
std::string dump(const Lang& x);
std::ostream& operator<<(std::ostream& os, const Lang& x);

}  // namespace rgk

#endif  // RGK_TRACE_HPP
