// Acceptance gate: one pass/fail line per criterion, with timing.
//
// Usage: rgk_acceptance <path to the rgk CLI>
// The CLI path is needed for the exit-code part of the least-index search
// criterion; without it that criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "rgk/laws.hpp"
#include "rgk/rg.hpp"
#include "rgk/syntax.hpp"
#include "rgk/verifier.hpp"

using namespace rgk;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + why;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::size_t number_before(const std::string& text, const std::string& label) {
  std::smatch m;
  if (std::regex_search(text, m, std::regex("(\\d+) " + label))) return std::stoul(m[1]);
  return 0;
}

/// Every check of `r` passes, and each one saw at least `minimum` instances
/// (and at least `minimum` with a true antecedent, for implications).
void require_sweep(Outcome& o, const Report& r, std::size_t minimum) {
  std::size_t fewest = static_cast<std::size_t>(-1);
  for (const Check& c : r.checks()) {
    if (c.verdict == Verdict::Skipped) continue;
    o.require(c.verdict == Verdict::Pass, "'" + c.name + "' " + std::string(to_string(c.verdict)) + ": " + c.detail);
    std::size_t seen = number_before(c.detail, "instances");
    if (c.detail.find("with antecedent") != std::string::npos) seen = number_before(c.detail, "with antecedent");
    o.require(seen >= minimum, "'" + c.name + "' has only " + std::to_string(seen) + " instances");
    fewest = std::min(fewest, seen);
  }
  o.require(!r.checks().empty(), "no checks ran");
  o.note(std::to_string(r.checks().size()) + " laws, fewest instances " + std::to_string(fewest));
}

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(RGK_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Check* first_failure(const Report& r) {
  for (const Check& c : r.checks()) {
    if (c.verdict == Verdict::Fail) return &c;
  }
  return nullptr;
}

const SweepConfig kLanguage{42, 3, 4, 0};

Outcome trioid() {
  Outcome o;
  require_sweep(o, sweep_trioid(kLanguage), 1000);
  return o;
}

Outcome interchange() {
  Outcome o;
  require_sweep(o, sweep_interchange(kLanguage), 1000);
  return o;
}

Outcome rely_axioms() {
  Outcome o;
  require_sweep(o, sweep_rely_axioms(kLanguage), 200);
  return o;
}

Outcome pi_laws() {
  Outcome o;
  require_sweep(o, sweep_pi(kLanguage), 200);
  return o;
}

Outcome atomicity() {
  Outcome o;
  require_sweep(o, sweep_atomic(kLanguage), 100);
  return o;
}

Outcome encodings() {
  Outcome o;
  const Report r = sweep_encoding(kLanguage);
  require_sweep(o, r, 500);
  // Agreement is only informative if both verdicts occur.
  for (const Check& c : r.checks()) {
    o.require(number_before(c.detail, "holding") > 0 && number_before(c.detail, "failing") > 0,
              "instances do not cover both verdicts: " + c.detail);
  }
  return o;
}

Outcome program_laws() {
  Outcome o;
  require_sweep(o, sweep_program_laws(kLanguage), 200);
  return o;
}

Outcome assignment() {
  Outcome o;
  const Report r = sweep_assignment(kLanguage);
  const Check* standard = r.find("assignment rule {end(P[x/e])} x := e {end(P)}");
  o.require(standard != nullptr, "assignment law missing");
  if (standard) {
    o.require(standard->verdict == Verdict::Pass, standard->detail);
    o.require(number_before(standard->detail, "instances") >= 100, "fewer than 100 instances");
    o.note("{end(P[x/e])} x := e {end(P)}: " + standard->detail);
  }
  o.require(r.passed(), "assignment sweep: " + r.text());
  return o;
}

Outcome parallel_assignment() {
  Outcome o;
  const StateSpace space({"x", "y", "z"}, 8);
  const std::size_t bound = 6;
  const Report good = check_outline(space, parse_outline(read_data("parallel_assign.json")), bound);
  o.require(good.overall() == Verdict::Pass, "outline: " + good.text());
  o.note("outline " + std::to_string(good.checks().size()) + " checks pass");

  // The postcondition perturbed to x = 5, once through the outline and once
  // against the whole program directly.
  const Report bad = check_outline(space, parse_outline(read_data("parallel_assign_bad.json")), bound);
  const SpecParts spec = parse_spec(read_data("parallel_assign_bad.spec"));
  const Quintuple direct{spec.rely, spec.guar, spec.pre, spec.post, parse_program(read_data("parallel_assign.prog"))};
  const LeafResult leaf = check_bruteforce(space, direct, bound);
  o.require(bad.overall() == Verdict::Fail, "perturbed outline did not fail");
  o.require(leaf.verdict == Verdict::Fail, "perturbed spec did not fail");
  const Check* c = first_failure(bad);
  o.require(c && c->witness && consistent(*c->witness), "perturbed outline failure lacks a consistent witness");
  o.require(leaf.witness && consistent(*leaf.witness), "perturbed spec failure lacks a consistent witness");
  if (leaf.witness) o.note("witness " + to_string(*leaf.witness) + " ends in " + space.describe(leaf.witness->back().post));
  return o;
}

void collect_leaves(const ProofNode& n, std::vector<const ProofNode*>& out) {
  if (n.rule == Rule::BruteForce) out.push_back(&n);
  for (const ProofNode& p : n.premises) collect_leaves(p, out);
}

int run_cli(const std::string& cli, const std::string& args) {
  const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return status != -1 && WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome findp(const std::string& cli) {
  Outcome o;
  const Pred p = parse_pred("v = 1");
  const std::size_t bound = 60;
  for (std::vector<std::int64_t> arr : {std::vector<std::int64_t>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    const std::string label = "[" + std::to_string(arr[0]) + "," + std::to_string(arr[1]) + "]";
    const Report r = findp_scaled(arr, p, bound);
    o.require(r.overall() == Verdict::Pass, label + ": " + r.text());

    // Each searcher leaf guarantees the other side's variables unchanged and
    // its own f decreasing, and meets that guarantee.
    const Findp f = build_findp(arr, p);
    std::vector<const ProofNode*> leaves;
    collect_leaves(f.outline, leaves);
    std::size_t searchers = 0;
    for (const ProofNode* leaf : leaves) {
      const Relation g = evaluate(f.space, leaf->conclusion.guar);
      const Relation side_a = unchanged(f.space, {"iB", "fB", "f"}) & decreasing(f.space, "fA");
      const Relation side_b = unchanged(f.space, {"iA", "fA", "f"}) & decreasing(f.space, "fB");
      if (g != side_a && g != side_b) continue;
      ++searchers;
      const LeafResult res = check_bruteforce(f.space, leaf->conclusion, bound);
      o.require(res.verdict == Verdict::Pass, label + " searcher leaf: " + res.detail);
    }
    o.require(searchers == 2, label + ": expected two searcher leaves, found " + std::to_string(searchers));
  }
  o.note("4 patterns pass at L = 60 with both searcher guarantees");

  if (cli.empty()) {
    o.require(false, "no CLI path given, cannot check the exit code");
  } else {
    const int code = run_cli(cli, "--mode findp --bound 5");
    o.require(code == 3, "CLI at an insufficient bound exited " + std::to_string(code) + ", expected 3");
    o.note("CLI exit " + std::to_string(code) + " at L = 5");
  }
  return o;
}

Outcome rule_soundness() {
  Outcome o;
  const Report r = sweep_rule_soundness(kLanguage);
  require_sweep(o, r, 50);
  for (const char* rule : {"Skip", "Weakening", "Sequential", "Parallel", "Choice", "Star", "AssignAxiom"}) {
    o.require(r.find(std::string("soundness ") + rule) != nullptr, std::string("no instances for ") + rule);
  }
  return o;
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {1, "trioid laws on >= 1000 language triples", 60, trioid},
      {2, "interchange law on >= 1000 quadruples", 60, interchange},
      {3, "rely axioms and derived facts on >= 200 relies", 120, rely_axioms},
      {4, "pi retraction, con1-con4 and Kleene closure on >= 200 instances", 120, pi_laws},
      {5, "atomicity identities on >= 100 relation pairs", 0, atomicity},
      {6, "the two quintuple encodings agree on >= 500 instances", 0, encodings},
      {7, "test, mumble and stutter laws on >= 200 instances each", 0, program_laws},
      {8, "assignment rule on >= 100 instances", 0, assignment},
      {9, "parallel assignment outline at N = 8, L = 6 and its perturbation", 300, parallel_assignment},
      {10, "least-index search, all four hit patterns, and exit 3 on a short bound", 900, [&] { return findp(cli); }},
      {11, "rule soundness on >= 50 instances per rule", 0, rule_soundness},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.require(false, "took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    }
    if (!o.ok) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.name << "  (" << timing
              << ")  -- " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
