#ifndef RGK_SYNTAX_HPP
#define RGK_SYNTAX_HPP

// Concrete syntax for programs, predicates, rely/guarantee vocabulary,
// quintuple specs and proof outlines, plus printers whose output parses back
// to the same tree.
//
// Programs, loosest binding first:
//   c  ::= c + c | c || c | c ; c | atom
//   atom ::= skip | x := e | if P { c } else { c } | while P { c }
//          | test(P) | atomic(R) | star { c } | ( c )
// An assignment's expression extends as far as it can, so an assignment used
// as an operand of + must be parenthesised: (x := 1) + skip.

#include <stdexcept>
#include <string>
#include <string_view>

#include "rgk/program.hpp"
#include "rgk/verifier.hpp"

namespace rgk {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

Expr parse_expr(std::string_view text);
Pred parse_pred(std::string_view text);
/// id | top | unchanged{x,y} | preserves(P) | increasing(x) | decreasing(x),
/// combined with & (intersection) and | (union).
RelExpr parse_rel(std::string_view text);
/// end(P) | test(P)
Condition parse_condition(std::string_view text);
Cmd parse_program(std::string_view text);

/// "rely R guar G pre C post C", clauses in any order. A missing rely is
/// `id`, a missing guarantee `top`, missing conditions `end(true)`.
struct SpecParts {
  RelExpr rely;
  RelExpr guar;
  Condition pre;
  Condition post;
};
SpecParts parse_spec(std::string_view text);

/// JSON proof outline: an object with "rule", "program", optional "rely",
/// "guar", "pre", "post" (same syntax and defaults as parse_spec) and
/// "premises" (array of outlines). Throws ParseError.
ProofNode parse_outline(std::string_view json_text);
std::string outline_to_json(const ProofNode& node, int indent = 2);

std::string to_string(const Expr& e);
std::string to_string(const Pred& p);
std::string to_string(const RelExpr& r);
std::string to_string(const Cmd& c);
std::string to_string(const Condition& c);
std::string to_string(const Quintuple& q);

}  // namespace rgk

#endif  // RGK_SYNTAX_HPP
