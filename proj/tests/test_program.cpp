#include <random>

#include "doctest.h"
#include "rgk/program.hpp"
#include "rgk/rg.hpp"
#include "support.hpp"

using namespace rgk;
namespace a = rgk::ast;
using rgk::testing::chained;

namespace {

Pred random_pred(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> form(0, depth > 0 ? 5 : 2);
  std::uniform_int_distribution<int> value(0, 3);
  std::uniform_int_distribution<std::size_t> which(0, vars.size() - 1);
  auto atom = [&] { return value(rng) < 2 ? a::var(vars[which(rng)]) : a::constant(value(rng)); };
  switch (form(rng)) {
    case 0: return a::eq(atom(), atom());
    case 1: return a::lt(atom(), atom());
    case 2: return a::le(atom(), atom());
    case 3: return a::conj(random_pred(rng, vars, depth - 1), random_pred(rng, vars, depth - 1));
    case 4: return a::disj(random_pred(rng, vars, depth - 1), random_pred(rng, vars, depth - 1));
    default: return a::neg(random_pred(rng, vars, depth - 1));
  }
}

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("state ids are mixed radix with the first variable least significant") {
  const StateSpace s({"x", "y"}, 3);
  CHECK(s.size() == 9);
  CHECK(s.encode({2, 1}) == 2 + 3 * 1);
  CHECK(s.value(5, 0) == 2);
  CHECK(s.value(5, 1) == 1);
  CHECK(s.with_value(5, 1, 0) == 2);
  CHECK(s.describe(5) == "x=2,y=1");
  CHECK(s.index_of("y") == 1);
  CHECK_FALSE(s.index_of("z"));
  CHECK_THROWS_AS(s.require_index("z"), std::invalid_argument);
}

TEST_CASE("malformed state spaces are rejected") {
  CHECK_THROWS_AS(StateSpace({"x"}, 1), std::invalid_argument);
  CHECK_THROWS_AS(StateSpace({"x", "x"}, 2), std::invalid_argument);
  CHECK_THROWS_AS(StateSpace({"x", "y", "z"}, 20, 4096), std::invalid_argument);
  CHECK_NOTHROW(StateSpace({"x", "y", "z"}, 16, 4096));
}

TEST_CASE("arithmetic is modular and comparisons use the reduced values") {
  const StateSpace s({"x"}, 5);
  const StateId x3 = s.encode({3});
  CHECK(eval_expr(s, x3, a::add(a::var("x"), a::constant(4))) == 2);
  CHECK(eval_expr(s, x3, a::mul(a::var("x"), a::var("x"))) == 4);
  CHECK(eval_expr(s, x3, a::sub(a::constant(1), a::var("x"))) == 3);
  CHECK(eval_expr(s, x3, a::constant(-1)) == 4);
  CHECK(holds(s, x3, a::lt(a::add(a::var("x"), a::constant(3)), a::var("x"))));
}

TEST_CASE("substitution denotes the preimage of the update") {
  std::mt19937_64 rng(21);
  const StateSpace s({"x", "y"}, 4);
  for (int round = 0; round < 200; ++round) {
    const Pred p = random_pred(rng, {"x", "y"}, 2);
    const std::string x = round % 2 ? "x" : "y";
    const Expr e = a::add(a::var("x"), a::mul(a::var("y"), a::constant(round % 3)));
    const StateSet pre = denote(s, subst(p, x, e));
    for (StateId st = 0; st < s.size(); ++st) {
      const StateId after = s.with_value(st, s.require_index(x), eval_expr(s, st, e));
      CHECK(pre[st] == holds(s, after, p));
    }
  }
}

TEST_CASE("image collects the states reached by the assignment") {
  const StateSpace s({"x", "y"}, 3);
  StateSet from(s.size(), false);
  from[s.encode({0, 1})] = true;
  from[s.encode({2, 2})] = true;
  const StateSet to = image(s, from, "x", a::add(a::var("y"), a::constant(1)));
  StateSet expect(s.size(), false);
  expect[s.encode({2, 1})] = true;
  expect[s.encode({0, 2})] = true;
  CHECK(to == expect);
}

TEST_CASE("relation vocabulary") {
  const StateSpace s({"x", "y"}, 3);
  const Relation keep_x = unchanged(s, {"x"});
  const Relation up = increasing(s, "y");
  const Relation down = decreasing(s, "y");
  const Relation pres = preserves(s, a::eq(a::var("x"), a::constant(1)));
  for (StateId p = 0; p < s.size(); ++p) {
    for (StateId q = 0; q < s.size(); ++q) {
      CHECK(keep_x.contains(p, q) == (s.value(p, 0) == s.value(q, 0)));
      CHECK(up.contains(p, q) == (s.value(p, 1) <= s.value(q, 1)));
      CHECK(down.contains(p, q) == (s.value(p, 1) >= s.value(q, 1)));
      CHECK(pres.contains(p, q) == (s.value(p, 0) != 1 || s.value(q, 0) == 1));
    }
  }
  CHECK(unchanged(s, {"x", "y"}) == Relation::identity(s.size()));
  CHECK(unchanged(s, {}) == Relation::full(s.size()));
  CHECK(evaluate(s, a::rel_and(a::increasing("y"), a::decreasing("y"))) == unchanged(s, {"y"}));
  CHECK(evaluate(s, a::rel_or(a::id(), a::top())) == Relation::full(s.size()));
}

TEST_CASE("test and end languages have the expected shape and size") {
  const StateSpace s({"x"}, 3);
  const Pred p = a::lt(a::var("x"), a::constant(2));
  const Bound b = s.bound(3);
  const Lang t = test_lang(s, p, b);
  CHECK(t.size() == 2);
  for (const Word& w : t) CHECK((w.size() == 1 && w[0].pre == w[0].post && w[0].pre < 2));

  const Lang e = end_lang(s, p, b);
  // Last letter: any pre state and one of 2 post states; earlier letters arbitrary.
  std::size_t expect = 0;
  for (std::size_t len = 1; len <= 3; ++len) expect += power(9, len - 1) * 3 * 2;
  CHECK(e.size() == expect);
  CHECK_FALSE(e.contains(Word{}));
  CHECK(consistent_end_lang(denote(s, p), b) == pi(e));
}

TEST_CASE("mumbling contracts chained steps") {
  const Word w{{0, 1}, {1, 2}, {2, 0}};
  const auto m = mumble_word(w);
  const std::vector<Word> expect{{{0, 0}}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 2}, {2, 0}}, {{0, 2}, {2, 0}}};
  CHECK(m == expect);
  CHECK(mumble_word(Word{{0, 1}, {0, 1}}).size() == 1);
}

TEST_CASE("assignment steps from each state to its update") {
  const StateSpace s({"x", "y"}, 3);
  const Expr e = a::add(a::var("y"), a::constant(1));
  const Lang one_step = assign_lang(s, "x", e, s.bound(1));
  CHECK(one_step.size() == s.size());
  for (const Word& w : one_step) {
    REQUIRE(w.size() == 1);
    CHECK(w[0].post == s.with_value(w[0].pre, 0, eval_expr(s, w[0].pre, e)));
  }
  const Lang raw = denote(s, a::assign("x", e), s.bound(2), Mumbling::Raw);
  CHECK(raw.size() == s.size() * s.size());
  for (const Word& w : raw) CHECK(w.size() == 2);
}

TEST_CASE("sequenced assignments compute the composed update") {
  const StateSpace s({"x"}, 4);
  const Cmd c = a::seq({a::assign("x", a::constant(1)), a::assign("x", a::add(a::var("x"), a::constant(1)))});
  const Lang l = pi(denote(s, c, s.bound(2)));
  CHECK_FALSE(l.empty());
  for (const Word& w : l) CHECK(s.value(w.back().post, 0) == 2);
}

TEST_CASE("control flow denotations") {
  const StateSpace s({"x"}, 3);
  const Bound b = s.bound(3);
  CHECK(denote(s, a::skip(), b) == one(b));
  CHECK(denote(s, a::atomic(a::id()), b) == lift(Relation::identity(3), b));

  const Pred pos = a::lt(a::constant(0), a::var("x"));
  const Cmd dec = a::assign("x", a::sub(a::var("x"), a::constant(1)));
  // Every consistent completed run of the countdown ends at zero.
  for (const Word& w : pi(denote(s, a::while_loop(pos, dec), b))) CHECK(s.value(w.back().post, 0) == 0);

  const Cmd branch = a::if_else(pos, a::assign("x", a::constant(0)), a::assign("x", a::constant(2)));
  for (const Word& w : pi(denote(s, branch, b))) {
    CHECK(s.value(w.back().post, 0) == (s.value(w.front().pre, 0) > 0 ? 0u : 2u));
  }

  const Cmd l = a::atomic(a::increasing("x")), r = a::atomic(a::decreasing("x"));
  CHECK(denote(s, a::par(l, r), b) == mumble_close(shuffle(denote(s, l, b), denote(s, r, b), b)));
  CHECK(denote(s, a::choice(l, r), b) == mumble_close(join(denote(s, l, b), denote(s, r, b))));
}

TEST_CASE("validation names unknown variables") {
  const StateSpace s({"x"}, 3);
  CHECK_THROWS_WITH_AS(validate(s, a::assign("y", a::constant(0))), doctest::Contains("'y'"), std::invalid_argument);
  CHECK_THROWS_AS(denote(s, a::test(a::eq(a::var("z"), a::constant(0))), s.bound(2)), std::invalid_argument);
  CHECK_THROWS_AS(denote(s, a::skip(), Bound{2, 4}), BoundMismatch);
}

TEST_CASE("stuttering equivalence") {
  const StateSpace s({"x"}, 2);
  const Bound b = s.bound(3);
  const Lang x = denote(s, a::assign("x", a::constant(1)), b);
  CHECK(stutter_eq(x, x, b));
  const Lang twice = denote(s, a::seq(a::atomic(a::id()), a::assign("x", a::constant(1))), b);
  CHECK(stutter_eq(x, twice, b));
  // The empty word has no counterpart among the identity steps.
  CHECK_FALSE(stutter_eq(one(b), test_lang(s, a::truth(), b), b));
}

TEST_CASE("state_pred denotes exactly the given states") {
  std::mt19937_64 rng(4);
  const StateSpace s({"x", "y"}, 3);
  std::bernoulli_distribution keep(0.4);
  for (int round = 0; round < 20; ++round) {
    StateSet set(s.size());
    for (std::size_t i = 0; i < set.size(); ++i) set[i] = keep(rng);
    CHECK(denote(s, state_pred(s, set)) == set);
  }
}
