#ifndef RGK_PROGRAM_HPP
#define RGK_PROGRAM_HPP

// Programs as trace languages. ASTs are immutable and shared; every node is
// created through the factory functions below.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rgk/state.hpp"
#include "rgk/trace.hpp"

namespace rgk {

struct ExprNode;
struct PredNode;
struct RelNode;
struct CmdNode;
using Expr = std::shared_ptr<const ExprNode>;
using Pred = std::shared_ptr<const PredNode>;
using RelExpr = std::shared_ptr<const RelNode>;
using Cmd = std::shared_ptr<const CmdNode>;

struct ExprNode {
  enum class Kind { Const, Var, Add, Sub, Mul };
  Kind kind = Kind::Const;
  std::int64_t value = 0;
  std::string var;
  Expr lhs, rhs;
};

struct PredNode {
  enum class Kind { True, False, Eq, Lt, Le, And, Or, Not };
  Kind kind = Kind::True;
  Expr lhs, rhs;  // comparisons
  Pred a, b;      // connectives; Not uses a
};

/// Rely/guarantee vocabulary: each node denotes a relation on states.
struct RelNode {
  enum class Kind { Id, Top, Unchanged, Preserves, Increasing, Decreasing, And, Or };
  Kind kind = Kind::Id;
  std::vector<std::string> vars;  // Unchanged; Increasing/Decreasing use vars[0]
  Pred pred;                      // Preserves
  RelExpr a, b;                   // And / Or
};

struct CmdNode {
  enum class Kind { Skip, Assign, Seq, Choice, If, While, Par, Atomic, Test, Star };
  Kind kind = Kind::Skip;
  std::string var;  // Assign
  Expr expr;        // Assign
  Pred pred;        // If, While, Test
  RelExpr rel;      // Atomic
  Cmd first, second;  // Seq/Choice/Par operands, If branches, While/Star body in first
};

namespace ast {
Expr constant(std::int64_t v);
Expr var(std::string name);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);

Pred truth();
Pred falsity();
Pred eq(Expr a, Expr b);
Pred lt(Expr a, Expr b);
Pred le(Expr a, Expr b);
Pred conj(Pred a, Pred b);
Pred disj(Pred a, Pred b);
Pred neg(Pred a);
/// !a || b
Pred implies(Pred a, Pred b);

RelExpr id();
RelExpr top();
RelExpr unchanged(std::vector<std::string> vars);
RelExpr preserves(Pred p);
RelExpr increasing(std::string var);
RelExpr decreasing(std::string var);
RelExpr rel_and(RelExpr a, RelExpr b);
RelExpr rel_or(RelExpr a, RelExpr b);

Cmd skip();
Cmd assign(std::string var, Expr e);
Cmd seq(Cmd a, Cmd b);
/// Right-nested sequence of one or more commands.
Cmd seq(std::vector<Cmd> cmds);
Cmd choice(Cmd a, Cmd b);
Cmd if_else(Pred p, Cmd then_branch, Cmd else_branch);
Cmd while_loop(Pred p, Cmd body);
Cmd par(Cmd a, Cmd b);
Cmd atomic(RelExpr r);
Cmd test(Pred p);
Cmd star(Cmd body);
}  // namespace ast

bool equal(const Expr& a, const Expr& b);
bool equal(const Pred& a, const Pred& b);
bool equal(const RelExpr& a, const RelExpr& b);
bool equal(const Cmd& a, const Cmd& b);

std::set<std::string> vars_of(const Expr& e);
std::set<std::string> vars_of(const Pred& p);

/// Throws std::invalid_argument naming the first variable not in `space`.
void validate(const StateSpace& space, const Expr& e);
void validate(const StateSpace& space, const Pred& p);
void validate(const StateSpace& space, const RelExpr& r);
void validate(const StateSpace& space, const Cmd& c);

/// Arithmetic mod N; the result is in 0..N-1.
std::uint32_t eval_expr(const StateSpace& space, StateId s, const Expr& e);
bool holds(const StateSpace& space, StateId s, const Pred& p);
StateSet denote(const StateSpace& space, const Pred& p);

/// Syntactic substitution of e for x. Its denotation is
/// { s : s[x := eval(s, e)] satisfies p }.
Pred subst(const Pred& p, const std::string& x, const Expr& e);
/// { s[x := eval(s, e)] : s in states }, the states reached by x := e.
StateSet image(const StateSpace& space, const StateSet& states, const std::string& x, const Expr& e);

Relation unchanged(const StateSpace& space, const std::vector<std::string>& vars);
Relation preserves(const StateSpace& space, const Pred& p);
Relation increasing(const StateSpace& space, const std::string& x);
Relation decreasing(const StateSpace& space, const std::string& x);
Relation evaluate(const StateSpace& space, const RelExpr& r);

Lang test_lang(const StateSpace& space, const Pred& p, Bound bound);
Lang test_lang(const StateSet& states, Bound bound);
/// Nonempty words whose last letter ends in a state satisfying p; the empty
/// word has no final state and is excluded.
Lang end_lang(const StateSpace& space, const Pred& p, Bound bound);
Lang end_lang(const StateSet& states, Bound bound);

/// The consistent words of end_lang, generated directly: chained words of
/// length 1..max_len whose last state is in `states`.
Lang consistent_end_lang(const StateSet& states, Bound bound);

/// A predicate denoting exactly `states`: a disjunction of full valuations.
Pred state_pred(const StateSpace& space, const StateSet& states);

std::vector<Word> mumble_word(const Word& w);
Lang mumble_close(const Lang& x);

/// <Id>* || x  =pi  <Id>* || y at the given bound.
bool stutter_eq(const Lang& x, const Lang& y, Bound bound);

Lang assign_lang(const StateSpace& space, const std::string& x, const Expr& e, Bound bound);

enum class Mumbling { Closed, Raw };

/// Compositional denotation. With Mumbling::Closed every node's language is
/// mumble-closed after it is built; Raw leaves all languages as generated.
Lang denote(const StateSpace& space, const Cmd& c, Bound bound, Mumbling mumbling = Mumbling::Closed);

}  // namespace rgk

#endif  // RGK_PROGRAM_HPP
