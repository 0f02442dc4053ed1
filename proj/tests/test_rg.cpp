#include <random>

#include "doctest.h"
#include "rgk/program.hpp"
#include "rgk/rg.hpp"
#include "support.hpp"

using namespace rgk;
using rgk::testing::all_words;
using rgk::testing::chained;
using rgk::testing::random_lang;

namespace {

Word w_of(std::initializer_list<std::pair<StateId, StateId>> letters) {
  Word w;
  for (auto [a, b] : letters) w.push_back({a, b});
  return w;
}

Relation random_relation(std::mt19937_64& rng, std::size_t states, double density) {
  std::bernoulli_distribution keep(density);
  return Relation::from_predicate(states, [&](StateId, StateId) { return keep(rng); });
}

/// w is u with R-letters inserted anywhere.
bool padded_by(const Word& w, const Word& u, const Relation& r) {
  std::vector<std::vector<bool>> ok(w.size() + 1, std::vector<bool>(u.size() + 1, false));
  ok[0][0] = true;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    for (std::size_t j = 0; j <= u.size(); ++j) {
      const Letter& c = w[i - 1];
      ok[i][j] = (ok[i - 1][j] && r.contains(c.pre, c.post)) || (j > 0 && ok[i - 1][j - 1] && u[j - 1] == c);
    }
  }
  return ok[w.size()][u.size()];
}

StateSet only(std::size_t states, StateId s) {
  StateSet out(states, false);
  out[s] = true;
  return out;
}

}  // namespace

TEST_CASE("consistency of words") {
  CHECK(consistent(Word{}));
  CHECK(consistent(w_of({{0, 1}})));
  CHECK(consistent(w_of({{0, 1}, {1, 1}, {1, 0}})));
  CHECK_FALSE(consistent(w_of({{0, 1}, {0, 1}})));
}

TEST_CASE("pi keeps exactly the chained words") {
  const Bound b{3, 2};
  const Lang u = universe(b);
  const Lang c = pi(u);
  for (const Word& w : u) CHECK(c.contains(w) == chained(w));
  CHECK(join(c, inconsistent_universe(b)) == u);
  CHECK(meet(c, inconsistent_universe(b)).empty());
}

TEST_CASE("leq_pi ignores inconsistent words and reports a consistent witness") {
  const Bound b{2, 2};
  const Lang bad(b, {w_of({{0, 1}, {0, 1}})});
  CHECK(leq_pi(bad, zero(b)));
  const Lang x(b, {w_of({{0, 1}, {0, 1}}), w_of({{0, 1}, {1, 1}})});
  CHECK_FALSE(leq_pi(x, zero(b)));
  const auto witness = leq_pi_witness(x, zero(b));
  REQUIRE(witness);
  CHECK(*witness == w_of({{0, 1}, {1, 1}}));
}

TEST_CASE("lift and materialize enumerate words over the relation") {
  std::mt19937_64 rng(3);
  const Bound b{3, 3};
  for (int round = 0; round < 20; ++round) {
    const Relation r = random_relation(rng, 3, 0.3);
    const Lang l = lift(r, b);
    CHECK(l.size() == r.count());
    for (const Word& w : l) CHECK((w.size() == 1 && r.contains(w[0].pre, w[0].post)));

    const Lang m = materialize(Rely{r}, b);
    std::size_t expect = 0, pow = 1;
    for (std::size_t k = 0; k <= b.max_len; ++k, pow *= r.count()) expect += pow;
    CHECK(m.size() == expect);
    CHECK(within(m, r));
    CHECK(within(l, r));
    if (r.count() < 9) CHECK_FALSE(within(universe(b), r));
  }
}

TEST_CASE("rely shuffle inserts relation steps around program steps") {
  std::mt19937_64 rng(5);
  const Bound b{3, 2};
  const auto words = all_words(b);
  for (int round = 0; round < 30; ++round) {
    const Relation r = random_relation(rng, 2, 0.4);
    const Lang x = random_lang(rng, b, 3);
    const Lang s = rely_shuffle(r, x, b);
    const Lang cs = consistent_rely_shuffle(r, x, b);
    for (const Word& w : words) {
      bool expect = false;
      for (const Word& u : x) expect = expect || padded_by(w, u, r);
      CHECK(s.contains(w) == expect);
      CHECK(cs.contains(w) == (expect && chained(w)));
    }
  }
}

TEST_CASE("a single step under no interference") {
  // Two states; the program moves 0 to 1 in one step.
  const Bound b{3, 2};
  const Lang x = lift(Relation::from_pairs(2, {{0, 1}}), b);
  const Lang p = end_lang(only(2, 0), b);
  const Rely id{Relation::identity(2)};
  const Rely move{Relation::from_pairs(2, {{0, 1}})};

  CHECK(quintuple_holds(p, id, x, end_lang(only(2, 1), b), move, b));
  CHECK(quintuple_refine_holds(p, id, x, end_lang(only(2, 1), b), move, b));

  const auto wrong_post = quintuple_check(p, id, x, end_lang(only(2, 0), b), move, b);
  CHECK_FALSE(wrong_post.holds());
  CHECK_FALSE(wrong_post.post_ok);
  REQUIRE(wrong_post.witness);
  CHECK(consistent(*wrong_post.witness));
  CHECK(wrong_post.witness->back().post == 1);
  CHECK_FALSE(quintuple_refine_holds(p, id, x, end_lang(only(2, 0), b), move, b));

  const auto wrong_guar = quintuple_check(p, id, x, end_lang(only(2, 1), b), id, b);
  CHECK_FALSE(wrong_guar.guar_ok);
  CHECK_FALSE(quintuple_refine_holds(p, id, x, end_lang(only(2, 1), b), id, b));
}

TEST_CASE("interference that resets the state breaks the postcondition") {
  const Bound b{3, 2};
  const Lang x = lift(Relation::from_pairs(2, {{0, 1}}), b);
  const Lang p = end_lang(only(2, 0), b);
  const Lang q = end_lang(only(2, 1), b);
  const Rely reset{Relation::from_pairs(2, {{0, 0}, {1, 1}, {1, 0}})};
  const Rely top{Relation::full(2)};
  CHECK_FALSE(quintuple_holds(p, reset, x, q, top, b));
  CHECK_FALSE(quintuple_refine_holds(p, reset, x, q, top, b));
}

TEST_CASE("axiom reports pass on random relies") {
  std::mt19937_64 rng(9);
  const Bound b{3, 2};
  for (int round = 0; round < 15; ++round) {
    const Relation r = random_relation(rng, 2, 0.5), s = random_relation(rng, 2, 0.5);
    const Lang x = random_lang(rng, b, 3), y = random_lang(rng, b, 3), z = random_lang(rng, b, 3);
    CHECK(check_rg_axioms(Rely{r}, Rely{r | s}, x, y, b).passed());
    CHECK(check_con_axioms(x, y, z, b).passed());
    CHECK(derived_rely_facts(Rely{r}, b).passed());
    CHECK(atomic_identities(r, s, b).passed());
    CHECK(i_closure(r, s, b).passed());
    CHECK(pi_image_laws(x, y, z, b).passed());
  }
}
