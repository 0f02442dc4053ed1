#ifndef RGK_VERIFIER_HPP
#define RGK_VERIFIER_HPP

// Proof outlines over rely-guarantee quintuples. Each outline node names the
// rule that justifies its conclusion; leaves are discharged by exhaustive
// exploration of the consistent traces of pre.(rely || prog).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgk/program.hpp"
#include "rgk/report.hpp"

namespace rgk {

/// A pre- or postcondition: end(P) or test(P).
struct Condition {
  enum class Kind { End, Test };
  Kind kind = Kind::End;
  Pred pred;
};

Condition end_of(Pred p);
Condition test_of(Pred p);
/// Language meet: test wins over end, predicates are conjoined.
Condition meet(const Condition& a, const Condition& b);
Lang to_lang(const StateSpace& space, const Condition& c, Bound bound);
/// Language inclusion of the two conditions at length bound `max_len`,
/// decided on predicates.
bool condition_leq(const StateSpace& space, const Condition& a, const Condition& b, std::size_t max_len);
/// p.<R>* <=pi p at length bound `max_len`.
bool condition_stable(const StateSpace& space, const Condition& p, const Relation& r, std::size_t max_len);

struct Quintuple {
  RelExpr rely;
  RelExpr guar;
  Condition pre;
  Condition post;
  Cmd prog;
};

enum class Rule { Skip, Weakening, Sequential, Parallel, Choice, Star, AssignAxiom, BruteForce };

std::string_view to_string(Rule r);
std::optional<Rule> rule_from_string(std::string_view name);
/// Number of premises a rule takes.
std::size_t rule_arity(Rule r);

struct ProofNode {
  Rule rule = Rule::BruteForce;
  Quintuple conclusion;
  std::vector<ProofNode> premises;
};

struct SideCondition {
  enum class Kind {
    RelLeq,      // lhs_rel <= rhs_rel
    CondLeq,     // lhs_cond <= rhs_cond
    Stable,      // lhs_cond . <rhs_rel>* <=pi lhs_cond
    AssignPost,  // states reached by var := expr from lhs_cond lie in rhs_cond
  };
  Kind kind = Kind::RelLeq;
  std::string label;
  RelExpr lhs_rel, rhs_rel;
  Condition lhs_cond, rhs_cond;
  std::string var;
  Expr expr;
};

struct SideResult {
  bool ok = true;
  std::optional<Word> witness;
};

SideResult check_side(const StateSpace& space, const SideCondition& sc, std::size_t max_len);

/// What a rule demands of an outline node: the premises it expects (matched
/// against the node's own premises), side conditions, and structural errors
/// such as a wrong arity or a conclusion that does not fit the rule.
struct RuleApplication {
  std::vector<Quintuple> premises;
  std::vector<SideCondition> side_conditions;
  std::vector<std::string> shape_errors;
};

RuleApplication apply_skip(const StateSpace& space, const ProofNode& node, std::size_t max_len);
RuleApplication apply_weakening(const StateSpace& space, const ProofNode& node, std::size_t max_len);
RuleApplication apply_sequential(const StateSpace& space, const ProofNode& node, std::size_t max_len);
RuleApplication apply_parallel(const StateSpace& space, const ProofNode& node, std::size_t max_len);
RuleApplication apply_choice(const StateSpace& space, const ProofNode& node, std::size_t max_len);
RuleApplication apply_star(const StateSpace& space, const ProofNode& node, std::size_t max_len);
RuleApplication apply_assign(const StateSpace& space, const ProofNode& node, std::size_t max_len);
RuleApplication apply_rule(const StateSpace& space, const ProofNode& node, std::size_t max_len);

struct LeafResult {
  Verdict verdict = Verdict::Pass;
  std::optional<Word> witness;
  std::string detail;
  std::size_t explored = 0;   // distinct (control point, state) pairs
  std::size_t saturation = 0; // greatest trace length needed to reach them
  StateSet finals;            // end states of completed traces within the bound
};

/// Decides the quintuple over the consistent traces of pre.(rely || prog):
/// every completed trace satisfies post, and every program step taken in
/// such a trace (completed or not) lies in the guarantee. Traces are
/// explored to saturation; a violation no longer than `max_len` is a
/// failure, and anything only visible beyond `max_len` is reported as
/// bound-insufficient.
LeafResult check_bruteforce(const StateSpace& space, const Quintuple& q, std::size_t max_len);

struct OutlineOptions {
  bool parallel = true;
};

/// Checks every rule application and discharges BruteForce leaves. Check
/// names are "<path> <Rule>" with suffixes for side conditions.
Report check_outline(const StateSpace& space, const ProofNode& root, std::size_t max_len,
                     OutlineOptions options = {});

/// Quintuple equality up to denotation: relies, guarantees and conditions are
/// compared semantically, programs structurally.
bool same_quintuple(const StateSpace& space, const Quintuple& a, const Quintuple& b, std::size_t max_len);

/// The parallel even/odd search for the least index whose element satisfies
/// `p`, with `p` a predicate over the single variable `v` (the element value).
struct Findp {
  StateSpace space;
  Cmd program;
  Quintuple goal;
  ProofNode outline;
  std::vector<bool> hits;
};

Findp build_findp(const std::vector<std::int64_t>& array, const Pred& p);
/// Checks the outline and the goal directly. The state space has variables
/// fA, fB, iA, iB, f over values 0..len+1.
Report findp_scaled(const std::vector<std::int64_t>& array, const Pred& p, std::size_t max_len,
                    OutlineOptions options = {});

}  // namespace rgk

#endif  // RGK_VERIFIER_HPP
