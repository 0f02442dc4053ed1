#include "rgk/trace.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace rgk {

namespace {

void canonicalize(std::vector<Word>& words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

void require_same_bound(const Lang& x, const Lang& y, const char* op) {
  if (x.bound() != y.bound()) {
    throw BoundMismatch(std::string(op) + ": operands computed under different bounds");
  }
}

void require_same_alphabet(const Lang& x, Bound bound, const char* op) {
  if (x.bound().states != bound.states) {
    throw BoundMismatch(std::string(op) + ": operand alphabet differs from target bound");
  }
}

Word append(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Words of x grouped by length, up to max_len.
std::vector<std::vector<const Word*>> by_length(const Lang& x, std::size_t max_len) {
  std::vector<std::vector<const Word*>> buckets(max_len + 1);
  for (const Word& w : x) {
    if (w.size() <= max_len) buckets[w.size()].push_back(&w);
  }
  return buckets;
}

void shuffle_into(const Word& u, std::size_t i, const Word& v, std::size_t j, Word& prefix,
                  std::vector<Word>& out) {
  if (i == u.size() && j == v.size()) {
    out.push_back(prefix);
    return;
  }
  if (i < u.size()) {
    prefix.push_back(u[i]);
    shuffle_into(u, i + 1, v, j, prefix, out);
    prefix.pop_back();
  }
  if (j < v.size()) {
    prefix.push_back(v[j]);
    shuffle_into(u, i, v, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Lang::Lang(Bound bound) : bound_(bound) {}

Lang::Lang(Bound bound, std::vector<Word> words) : bound_(bound), words_(std::move(words)) {
  for (const Word& w : words_) {
    if (w.size() > bound_.max_len) {
      throw std::invalid_argument("word " + to_string(w) + " exceeds length bound " +
                                  std::to_string(bound_.max_len));
    }
    for (const Letter& a : w) {
      if (a.pre >= bound_.states || a.post >= bound_.states) {
        throw std::invalid_argument("letter " + to_string(a) + " outside the state space");
      }
    }
  }
  canonicalize(words_);
}

Lang::Lang(Bound bound, std::vector<Word> words, Trusted) : bound_(bound), words_(std::move(words)) {
  canonicalize(words_);
}

Lang make_lang_unchecked(Bound bound, std::vector<Word> words) {
  return Lang(bound, std::move(words), Lang::Trusted{});
}

bool Lang::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

Lang zero(Bound bound) { return Lang(bound); }

Lang one(Bound bound) { return make_lang_unchecked(bound, {Word{}}); }

Lang join(const Lang& x, const Lang& y) {
  require_same_bound(x, y, "join");
  std::vector<Word> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return make_lang_unchecked(x.bound(), std::move(out));
}

Lang meet(const Lang& x, const Lang& y) {
  require_same_bound(x, y, "meet");
  std::vector<Word> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return make_lang_unchecked(x.bound(), std::move(out));
}

Lang difference(const Lang& x, const Lang& y) {
  require_same_bound(x, y, "difference");
  std::vector<Word> out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return make_lang_unchecked(x.bound(), std::move(out));
}

Lang concat(const Lang& x, const Lang& y, Bound bound) {
  require_same_alphabet(x, bound, "concat");
  require_same_alphabet(y, bound, "concat");
  std::vector<Word> out;
  const auto ys = by_length(y, bound.max_len);
  for (const Word& a : x) {
    if (a.size() > bound.max_len) continue;
    for (std::size_t len = 0; a.size() + len <= bound.max_len; ++len) {
      for (const Word* b : ys[len]) out.push_back(append(a, *b));
    }
  }
  return make_lang_unchecked(bound, std::move(out));
}

std::vector<Word> word_shuffle(const Word& u, const Word& v) {
  std::vector<Word> out;
  Word prefix;
  prefix.reserve(u.size() + v.size());
  shuffle_into(u, 0, v, 0, prefix, out);
  canonicalize(out);
  return out;
}

Lang shuffle(const Lang& x, const Lang& y, Bound bound) {
  require_same_alphabet(x, bound, "shuffle");
  require_same_alphabet(y, bound, "shuffle");
  std::vector<Word> out;
  const auto ys = by_length(y, bound.max_len);
  Word prefix;
  for (const Word& a : x) {
    if (a.size() > bound.max_len) continue;
    for (std::size_t len = 0; a.size() + len <= bound.max_len; ++len) {
      for (const Word* b : ys[len]) shuffle_into(a, 0, *b, 0, prefix, out);
    }
  }
  return make_lang_unchecked(bound, std::move(out));
}

Lang star(const Lang& x, Bound bound) {
  require_same_alphabet(x, bound, "star");
  Lang result = one(bound);
  Lang frontier = result;
  while (!frontier.empty()) {
    Lang fresh = difference(concat(x, frontier, bound), result);
    if (fresh.empty()) break;
    result = join(result, fresh);
    frontier = std::move(fresh);
  }
  return result;
}

Lang plus(const Lang& x, Bound bound) { return concat(x, star(x, bound), bound); }

bool leq(const Lang& x, const Lang& y) {
  require_same_bound(x, y, "leq");
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

std::size_t universe_size(Bound bound) {
  const std::size_t letters = bound.states * bound.states;
  std::size_t total = 1;
  std::size_t layer = 1;
  for (std::size_t len = 1; len <= bound.max_len; ++len) {
    if (letters != 0 && layer > kUniverseLimit / letters) return kUniverseLimit + 1;
    layer *= letters;
    total += layer;
    if (total > kUniverseLimit) return kUniverseLimit + 1;
  }
  return total;
}

Lang universe(Bound bound) {
  if (universe_size(bound) > kUniverseLimit) {
    throw std::length_error("word universe too large for the requested bound");
  }
  std::vector<Letter> alphabet;
  for (StateId a = 0; a < bound.states; ++a) {
    for (StateId b = 0; b < bound.states; ++b) alphabet.push_back({a, b});
  }
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= bound.max_len; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const Letter& a : alphabet) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return make_lang_unchecked(bound, std::move(out));
}

Lang residual_left(const Lang& z, const Lang& y, Bound bound) {
  require_same_alphabet(z, bound, "residual_left");
  require_same_alphabet(y, bound, "residual_left");
  std::vector<Word> out;
  for (const Word& w : universe(bound)) {
    const bool ok = std::all_of(y.begin(), y.end(), [&](const Word& b) {
      return w.size() + b.size() > bound.max_len || z.contains(append(w, b));
    });
    if (ok) out.push_back(w);
  }
  return make_lang_unchecked(bound, std::move(out));
}

Lang residual_right(const Lang& x, const Lang& z, Bound bound) {
  require_same_alphabet(x, bound, "residual_right");
  require_same_alphabet(z, bound, "residual_right");
  std::vector<Word> out;
  for (const Word& w : universe(bound)) {
    const bool ok = std::all_of(x.begin(), x.end(), [&](const Word& a) {
      return a.size() + w.size() > bound.max_len || z.contains(append(a, w));
    });
    if (ok) out.push_back(w);
  }
  return make_lang_unchecked(bound, std::move(out));
}

Lang residual_par(const Lang& x, const Lang& z, Bound bound) {
  require_same_alphabet(x, bound, "residual_par");
  require_same_alphabet(z, bound, "residual_par");
  std::vector<Word> out;
  const auto xs = by_length(x, bound.max_len);
  for (const Word& w : universe(bound)) {
    bool ok = true;
    for (std::size_t len = 0; ok && w.size() + len <= bound.max_len; ++len) {
      for (const Word* a : xs[len]) {
        for (const Word& s : word_shuffle(*a, w)) {
          if (!z.contains(s)) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    }
    if (ok) out.push_back(w);
  }
  return make_lang_unchecked(bound, std::move(out));
}

Lang truncate(const Lang& x, Bound bound) {
  require_same_alphabet(x, bound, "truncate");
  std::vector<Word> out;
  for (const Word& w : x) {
    if (w.size() <= bound.max_len) out.push_back(w);
  }
  return make_lang_unchecked(bound, std::move(out));
}

std::string to_string(const Letter& a) {
  return "(" + std::to_string(a.pre) + "," + std::to_string(a.post) + ")";
}

std::string to_string(const Word& w) {
  if (w.empty()) return "<eps>";
  std::string s;
  for (const Letter& a : w) s += to_string(a);
  return s;
}

std::string dump(const Lang& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Lang& x) {
  for (const Word& w : x) os << to_string(w) << '\n';
  return os;
}

}  // namespace rgk
