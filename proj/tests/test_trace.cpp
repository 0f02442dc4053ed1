#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rgk/trace.hpp"
#include "support.hpp"

using namespace rgk;
using rgk::testing::all_words;
using rgk::testing::factorizes;
using rgk::testing::interleaves;
using rgk::testing::random_lang;

namespace {

Word w_of(std::initializer_list<std::pair<StateId, StateId>> letters) {
  Word w;
  for (auto [a, b] : letters) w.push_back({a, b});
  return w;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("languages are canonical and validated") {
  const Bound b{2, 2};
  Lang x(b, {w_of({{1, 0}}), Word{}, w_of({{1, 0}}), w_of({{0, 0}, {1, 1}})});
  CHECK(x.size() == 3);
  CHECK(std::is_sorted(x.begin(), x.end()));
  CHECK(x.contains(Word{}));
  CHECK_FALSE(x.contains(w_of({{0, 1}})));

  CHECK_THROWS_AS(Lang(b, {w_of({{0, 0}, {0, 0}, {0, 0}})}), std::invalid_argument);
  CHECK_THROWS_AS(Lang(b, {w_of({{2, 0}})}), std::invalid_argument);
}

TEST_CASE("zero and one") {
  const Bound b{3, 2};
  CHECK(zero(b).empty());
  CHECK(one(b).size() == 1);
  CHECK(one(b).contains(Word{}));
}

TEST_CASE("operands with different bounds are rejected") {
  const Lang a = one(Bound{2, 2});
  const Lang b = one(Bound{3, 2});
  CHECK_THROWS_AS(join(a, b), BoundMismatch);
  CHECK_THROWS_AS(leq(a, b), BoundMismatch);
  CHECK_THROWS_AS(concat(a, one(Bound{2, 3}), Bound{2, 3}), BoundMismatch);
}

TEST_CASE("universe size is the geometric sum over the alphabet") {
  for (std::size_t s = 1; s <= 3; ++s) {
    for (std::size_t l = 0; l <= 3; ++l) {
      std::size_t expect = 0, pow = 1;
      for (std::size_t k = 0; k <= l; ++k, pow *= s * s) expect += pow;
      CHECK(universe_size(Bound{l, s}) == expect);
      CHECK(universe(Bound{l, s}).size() == expect);
    }
  }
  CHECK_THROWS_AS(universe(Bound{12, 4}), std::length_error);
}

TEST_CASE("word shuffle counts and order preservation") {
  const Word u = w_of({{0, 1}, {1, 2}, {2, 0}});
  const Word v = w_of({{3, 3}, {3, 4}});
  const auto all = word_shuffle(u, v);
  // Letters are pairwise distinct, so every interleaving is a distinct word.
  CHECK(all.size() == binomial(5, 2));
  for (const Word& w : all) CHECK(interleaves(w, u, v));
  CHECK(word_shuffle(u, Word{}) == std::vector<Word>{u});
}

TEST_CASE("set operations agree with std::set") {
  std::mt19937_64 rng(7);
  const Bound b{3, 2};
  for (int round = 0; round < 200; ++round) {
    const Lang x = random_lang(rng, b, 8), y = random_lang(rng, b, 8);
    const std::set<Word> sx(x.begin(), x.end()), sy(y.begin(), y.end());
    std::vector<Word> u, i, d;
    std::set_union(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(u));
    std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(i));
    std::set_difference(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(d));
    CHECK(join(x, y).words() == u);
    CHECK(meet(x, y).words() == i);
    CHECK(difference(x, y).words() == d);
    CHECK(leq(x, y) == std::includes(sy.begin(), sy.end(), sx.begin(), sx.end()));
  }
}

TEST_CASE("products and star match membership oracles over the universe") {
  std::mt19937_64 rng(11);
  const Bound b{3, 2};
  const auto universe_words = all_words(b);
  for (int round = 0; round < 40; ++round) {
    const Lang x = random_lang(rng, b, 4), y = random_lang(rng, b, 4);
    const Lang cat = concat(x, y, b), shuf = shuffle(x, y, b), st = star(x, b), pl = plus(x, b);
    for (const Word& w : universe_words) {
      bool in_cat = false, in_shuf = false;
      for (const Word& u : x) {
        for (const Word& v : y) {
          Word uv = u;
          uv.insert(uv.end(), v.begin(), v.end());
          in_cat = in_cat || uv == w;
          in_shuf = in_shuf || interleaves(w, u, v);
        }
      }
      CHECK(cat.contains(w) == in_cat);
      CHECK(shuf.contains(w) == in_shuf);
      CHECK(st.contains(w) == (w.empty() || factorizes(w, x)));
      CHECK(pl.contains(w) == ((w.empty() && x.contains(w)) || (!w.empty() && factorizes(w, x))));
    }
  }
}

TEST_CASE("residuals are the largest solutions by definition") {
  std::mt19937_64 rng(13);
  const Bound b{2, 2};
  const auto universe_words = all_words(b);
  for (int round = 0; round < 40; ++round) {
    const Lang x = random_lang(rng, b, 3), z = random_lang(rng, b, 10);
    const Lang left = residual_left(z, x, b), right = residual_right(x, z, b), par = residual_par(x, z, b);
    for (const Word& w : universe_words) {
      const Lang single(b, {w});
      CHECK(left.contains(w) == leq(concat(single, x, b), z));
      CHECK(right.contains(w) == leq(concat(x, single, b), z));
      CHECK(par.contains(w) == leq(shuffle(x, single, b), z));
    }
  }
}

TEST_CASE("truncation keeps short words and retags the bound") {
  const Bound wide{3, 2}, narrow{1, 2};
  const Lang x(wide, {Word{}, w_of({{0, 1}}), w_of({{0, 1}, {1, 1}}), w_of({{1, 1}, {1, 1}, {1, 0}})});
  const Lang t = truncate(x, narrow);
  CHECK(t.bound() == narrow);
  CHECK(t.words() == std::vector<Word>{Word{}, w_of({{0, 1}})});
}

TEST_CASE("dump lists one word per line with an explicit empty word") {
  const Lang x(Bound{2, 3}, {Word{}, w_of({{0, 2}, {2, 1}})});
  CHECK(dump(x) == "<eps>\n(0,2)(2,1)\n");
  std::ostringstream os;
  os << x;
  CHECK(os.str() == dump(x));
}
