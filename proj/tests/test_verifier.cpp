#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rgk/rg.hpp"
#include "rgk/syntax.hpp"
#include "rgk/verifier.hpp"

using namespace rgk;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(RGK_TEST_DATA) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Quintuple spec_for(const std::string& spec, const std::string& program) {
  const SpecParts parts = parse_spec(spec);
  return {parts.rely, parts.guar, parts.pre, parts.post, parse_program(program)};
}

const Check* first_failure(const Report& r) {
  for (const Check& c : r.checks()) {
    if (c.verdict == Verdict::Fail) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("rule names round trip and arities") {
  for (Rule r : {Rule::Skip, Rule::Weakening, Rule::Sequential, Rule::Parallel, Rule::Choice, Rule::Star,
                 Rule::AssignAxiom, Rule::BruteForce}) {
    CHECK(rule_from_string(to_string(r)) == r);
  }
  CHECK_FALSE(rule_from_string("Frame"));
  CHECK(rule_arity(Rule::Skip) == 0);
  CHECK(rule_arity(Rule::BruteForce) == 0);
  CHECK(rule_arity(Rule::Weakening) == 1);
  CHECK(rule_arity(Rule::Star) == 1);
  CHECK(rule_arity(Rule::Parallel) == 2);
  CHECK(rule_arity(Rule::Sequential) == 2);
}

TEST_CASE("condition inclusion is decided on predicates") {
  const StateSpace s({"x"}, 4);
  const Condition small = end_of(parse_pred("x = 1")), big = end_of(parse_pred("x < 2"));
  CHECK(condition_leq(s, small, big, 3));
  CHECK_FALSE(condition_leq(s, big, small, 3));
  CHECK(condition_leq(s, test_of(parse_pred("x = 1")), big, 3));
  CHECK_FALSE(condition_leq(s, small, test_of(parse_pred("x = 1")), 3));
  // Inclusion agrees with the languages themselves.
  const Bound b = s.bound(3);
  CHECK(leq(to_lang(s, small, b), to_lang(s, big, b)));
  CHECK_FALSE(leq(to_lang(s, big, b), to_lang(s, small, b)));

  const Condition both = meet(small, test_of(parse_pred("x < 3")));
  CHECK(both.kind == Condition::Kind::Test);
  CHECK(denote(s, both.pred) == denote(s, parse_pred("x = 1")));
}

TEST_CASE("stability under interference") {
  const StateSpace s({"x", "y"}, 3);
  const Condition p = end_of(parse_pred("x = 1"));
  CHECK(condition_stable(s, p, unchanged(s, {"x"}), 3));
  CHECK_FALSE(condition_stable(s, p, Relation::full(s.size()), 3));
  CHECK(condition_stable(s, end_of(parse_pred("x >= 1")), increasing(s, "x"), 3));
}

TEST_CASE("brute force: postcondition and guarantee violations carry consistent witnesses") {
  const StateSpace s({"x", "y"}, 4);
  const auto ok = check_bruteforce(s, spec_for("pre end(x = 1) post end(x = 2)", "x := x + 1"), 4);
  CHECK(ok.verdict == Verdict::Pass);
  CHECK(ok.explored > 0);

  const auto post = check_bruteforce(s, spec_for("pre end(x = 1) post end(x = 3)", "x := x + 1"), 4);
  CHECK(post.verdict == Verdict::Fail);
  REQUIRE(post.witness);
  CHECK(consistent(*post.witness));
  CHECK(s.value(post.witness->back().post, 0) == 2);

  const auto guar =
      check_bruteforce(s, spec_for("guar unchanged{x} pre end(x = 1) post end(true)", "y := 1; x := 0"), 6);
  CHECK(guar.verdict == Verdict::Fail);
  REQUIRE(guar.witness);
  CHECK(consistent(*guar.witness));

  const auto interfered =
      check_bruteforce(s, spec_for("rely top pre end(x = 1) post end(x = 2)", "x := x + 1"), 4);
  CHECK(interfered.verdict == Verdict::Fail);
  const auto tolerated =
      check_bruteforce(s, spec_for("rely unchanged{x} pre end(x = 1) post end(x = 2)", "x := x + 1"), 4);
  CHECK(tolerated.verdict == Verdict::Pass);
}

TEST_CASE("brute force never passes when the bound is too short") {
  const StateSpace s({"x"}, 8);
  const Quintuple bad = spec_for("pre end(x = 0) post end(x = 4)", "while x < 5 { x := x + 1 }");
  const Quintuple good = spec_for("pre end(x = 0) post end(x = 5)", "while x < 5 { x := x + 1 }");
  for (std::size_t len = 1; len < 17; ++len) {
    CHECK(check_bruteforce(s, bad, len).verdict == Verdict::BoundInsufficient);
    CHECK(check_bruteforce(s, good, len).verdict == Verdict::BoundInsufficient);
  }
  CHECK(check_bruteforce(s, bad, 17).verdict == Verdict::Fail);
  const auto done = check_bruteforce(s, good, 17);
  CHECK(done.verdict == Verdict::Pass);
  CHECK(done.saturation == 17);
}

TEST_CASE("the parallel assignment outline and its perturbation") {
  const StateSpace s({"x", "y", "z"}, 8);
  const Report good = check_outline(s, parse_outline(read_data("parallel_assign.json")), 6);
  CHECK(good.overall() == Verdict::Pass);
  CHECK(good.checks().size() > 4);

  const Report bad = check_outline(s, parse_outline(read_data("parallel_assign_bad.json")), 6);
  CHECK(bad.overall() == Verdict::Fail);
  const Check* failure = first_failure(bad);
  REQUIRE(failure);
  REQUIRE(failure->witness);
  CHECK(consistent(*failure->witness));

  // Serial and concurrent leaf checking produce the same report.
  CHECK(check_outline(s, parse_outline(read_data("parallel_assign.json")), 6, {false}).text() == good.text());
}

TEST_CASE("malformed outlines are rejected") {
  const StateSpace s({"x", "y"}, 3);
  ProofNode node;
  node.rule = Rule::Parallel;
  node.conclusion = spec_for("pre end(true) post end(true)", "x := 1 || y := 1");
  CHECK(check_outline(s, node, 3).overall() == Verdict::Fail);

  node.rule = Rule::Sequential;
  node.conclusion = spec_for("pre end(true) post end(true)", "x := 1 || y := 1");
  ProofNode leaf;
  leaf.conclusion = spec_for("pre end(true) post end(true)", "x := 1");
  node.premises = {leaf, leaf};
  CHECK(check_outline(s, node, 3).overall() == Verdict::Fail);
}

TEST_CASE("a sequential outline whose midpoint is too weak fails a premise") {
  const StateSpace s({"x"}, 4);
  ProofNode root;
  root.rule = Rule::Sequential;
  root.conclusion = spec_for("guar top pre end(x = 0) post end(x = 2)", "x := x + 1; x := x + 1");
  ProofNode first, second;
  first.conclusion = spec_for("guar top pre end(x = 0) post end(x = 1)", "x := x + 1");
  second.conclusion = spec_for("guar top pre end(x = 1) post end(x = 2)", "x := x + 1");
  root.premises = {first, second};
  CHECK(check_outline(s, root, 4).overall() == Verdict::Pass);

  root.premises[0].conclusion = spec_for("guar top pre end(x = 0) post end(x < 2)", "x := x + 1");
  root.premises[1].conclusion = spec_for("guar top pre end(x < 2) post end(x = 2)", "x := x + 1");
  CHECK(check_outline(s, root, 4).overall() == Verdict::Fail);
}

TEST_CASE("quintuples compare up to denotation") {
  const StateSpace s({"x"}, 3);
  const Quintuple a = spec_for("rely id guar top pre end(x < 1) post end(x = 1)", "x := 1");
  const Quintuple b = spec_for("rely unchanged{x} guar top pre end(x = 0) post end(1 = x)", "x := 1");
  const Quintuple c = spec_for("rely id guar top pre end(x < 1) post end(x = 1)", "x := 0 + 1");
  CHECK(same_quintuple(s, a, b, 3));
  CHECK_FALSE(same_quintuple(s, a, c, 3));
}

TEST_CASE("least-index search over every hit pattern of a length-two array") {
  const Pred p = parse_pred("v = 1");
  for (std::vector<std::int64_t> arr : {std::vector<std::int64_t>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    const Findp f = build_findp(arr, p);
    CHECK(f.hits == std::vector<bool>{arr[0] == 1, arr[1] == 1});
    CHECK(f.space.domain() == arr.size() + 2);
    CHECK(findp_scaled(arr, p, 60).overall() == Verdict::Pass);
  }
  // Short bounds are never reported as a pass.
  for (std::size_t len : {1, 4, 8, 12}) CHECK(findp_scaled({0, 1}, p, len).overall() == Verdict::BoundInsufficient);
}

TEST_CASE("element predicates compare values beyond the index range") {
  const Pred p = parse_pred("v = 7");
  const Findp f = build_findp({3, 7}, p);
  CHECK(f.hits == std::vector<bool>{false, true});
  CHECK(findp_scaled({3, 7}, p, 60).overall() == Verdict::Pass);
}
