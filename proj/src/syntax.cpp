#include "rgk/syntax.hpp"

#include <cctype>
#include <charconv>
#include <set>

#include "json.hpp"

namespace rgk {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

const std::set<std::string>& reserved() {
  static const std::set<std::string> words{"skip", "if", "else", "while", "test", "atomic", "star", "true", "false"};
  return words;
}

std::vector<Token> lex(std::string_view src) {
  static const char* const two[] = {":=", "||", "&&", "<=", ">=", "!=", "=="};
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t n = 1;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i + n < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_')) ++n;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
      t.kind = Tok::Int;
    } else {
      t.kind = Tok::Sym;
      for (const char* op : two) {
        if (src.substr(i, 2) == op) n = 2;
      }
      if (n == 1 && std::string_view("+-*;(){},=<>!&|:").find(ch) == std::string_view::npos) {
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
      }
    }
    t.text = std::string(src.substr(i, n));
    advance(n);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  [[nodiscard]] bool at(std::string_view text) const {
    return peek().kind != Tok::End && peek().kind != Tok::Int && peek().text == text;
  }
  bool accept(std::string_view text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.column);
  }
  void finish() {
    if (peek().kind != Tok::End) fail("unexpected trailing input");
  }

  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || reserved().count(t.text) != 0) fail("expected a variable name");
    ++pos_;
    return t.text;
  }

  // Expressions.
  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept("+")) {
        e = ast::add(e, term());
      } else if (accept("-")) {
        e = ast::sub(e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    while (accept("*")) e = ast::mul(e, factor());
    return e;
  }

  Expr factor() {
    if (accept("(")) {
      Expr e = expr();
      expect(")");
      return e;
    }
    if (accept("-")) {
      if (peek().kind == Tok::Int) return ast::constant(-integer());
      return ast::sub(ast::constant(0), factor());
    }
    if (peek().kind == Tok::Int) return ast::constant(integer());
    return ast::var(ident());
  }

  std::int64_t integer() {
    const Token& t = peek();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || p != t.text.data() + t.text.size()) fail("integer literal out of range");
    ++pos_;
    return v;
  }

  // Predicates.
  Pred pred() {
    Pred p = pred_and();
    while (accept("||")) p = ast::disj(p, pred_and());
    return p;
  }

  Pred pred_and() {
    Pred p = pred_unary();
    while (accept("&&")) p = ast::conj(p, pred_unary());
    return p;
  }

  [[nodiscard]] bool at_operator() const {
    static const std::set<std::string> ops{"=", "==", "<", "<=", ">", ">=", "!=", "+", "-", "*"};
    return peek().kind == Tok::Sym && ops.count(peek().text) != 0;
  }

  Pred pred_unary() {
    if (accept("!")) return ast::neg(pred_unary());
    if (accept("true")) return ast::truth();
    if (accept("false")) return ast::falsity();
    if (at("(")) {
      const std::size_t save = pos_;
      try {
        ++pos_;
        Pred p = pred();
        expect(")");
        if (!at_operator()) return p;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    return comparison();
  }

  Pred comparison() {
    Expr a = expr();
    if (accept("=") || accept("==")) return ast::eq(a, expr());
    if (accept("<=")) return ast::le(a, expr());
    if (accept("<")) return ast::lt(a, expr());
    if (accept(">=")) {
      Expr b = expr();
      return ast::le(b, a);
    }
    if (accept(">")) {
      Expr b = expr();
      return ast::lt(b, a);
    }
    if (accept("!=")) return ast::neg(ast::eq(a, expr()));
    fail("expected a comparison");
  }

  // Relations.
  RelExpr rel() {
    RelExpr r = rel_and();
    while (accept("|") || accept("||")) r = ast::rel_or(r, rel_and());
    return r;
  }

  RelExpr rel_and() {
    RelExpr r = rel_atom();
    while (accept("&")) r = ast::rel_and(r, rel_atom());
    return r;
  }

  RelExpr rel_atom() {
    if (accept("(")) {
      RelExpr r = rel();
      expect(")");
      return r;
    }
    if (accept("id")) return ast::id();
    if (accept("top")) return ast::top();
    if (accept("unchanged")) {
      expect("{");
      std::vector<std::string> vars;
      if (!at("}")) {
        vars.push_back(ident());
        while (accept(",")) vars.push_back(ident());
      }
      expect("}");
      return ast::unchanged(std::move(vars));
    }
    if (accept("preserves")) {
      expect("(");
      Pred p = pred();
      expect(")");
      return ast::preserves(p);
    }
    for (bool inc : {true, false}) {
      if (accept(inc ? "increasing" : "decreasing")) {
        expect("(");
        std::string v = ident();
        expect(")");
        return inc ? ast::increasing(v) : ast::decreasing(v);
      }
    }
    fail("expected id, top, unchanged{..}, preserves(..), increasing(..) or decreasing(..)");
  }

  Condition condition() {
    for (bool end : {true, false}) {
      if (accept(end ? "end" : "test")) {
        expect("(");
        Pred p = pred();
        expect(")");
        return end ? end_of(p) : test_of(p);
      }
    }
    fail("expected end(..) or test(..)");
  }

  // Commands.
  Cmd cmd() {
    Cmd c = cmd_par();
    while (accept("+")) c = ast::choice(c, cmd_par());
    return c;
  }

  Cmd cmd_par() {
    Cmd c = cmd_seq();
    while (accept("||")) c = ast::par(c, cmd_seq());
    return c;
  }

  Cmd cmd_seq() {
    Cmd c = cmd_atom();
    while (accept(";")) c = ast::seq(c, cmd_atom());
    return c;
  }

  Cmd block() {
    expect("{");
    Cmd c = cmd();
    expect("}");
    return c;
  }

  Cmd cmd_atom() {
    if (accept("(")) {
      Cmd c = cmd();
      expect(")");
      return c;
    }
    if (accept("skip")) return ast::skip();
    if (accept("if")) {
      Pred p = pred();
      Cmd a = block();
      expect("else");
      Cmd b = block();
      return ast::if_else(p, a, b);
    }
    if (accept("while")) {
      Pred p = pred();
      return ast::while_loop(p, block());
    }
    if (accept("test")) {
      expect("(");
      Pred p = pred();
      expect(")");
      return ast::test(p);
    }
    if (accept("atomic")) {
      expect("(");
      RelExpr r = rel();
      expect(")");
      return ast::atomic(r);
    }
    if (accept("star")) return ast::star(block());
    if (peek().kind != Tok::Ident || reserved().count(peek().text) != 0) fail("expected a command");
    std::string x = ident();
    expect(":=");
    return ast::assign(std::move(x), expr());
  }

  SpecParts spec() {
    SpecParts s{ast::id(), ast::top(), end_of(ast::truth()), end_of(ast::truth())};
    std::set<std::string> seen;
    while (peek().kind != Tok::End) {
      const std::string word = peek().text;
      if (word != "rely" && word != "guar" && word != "pre" && word != "post") {
        fail("expected rely, guar, pre or post");
      }
      if (!seen.insert(word).second) fail("duplicate " + word + " clause");
      ++pos_;
      if (word == "rely") s.rely = rel();
      if (word == "guar") s.guar = rel();
      if (word == "pre") s.pre = condition();
      if (word == "post") s.post = condition();
    }
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <typename F>
auto parse_all(std::string_view text, F f) {
  Parser p(text);
  auto out = f(p);
  p.finish();
  return out;
}

// Printing. Precedence levels: expressions sum 0, product 1, atom 2;
// predicates or 0, and 1, unary 2; commands choice 0, par 1, seq 2, atom 3.

std::string print(const Expr& e, int level) {
  switch (e->kind) {
    case ExprNode::Kind::Const: return std::to_string(e->value);
    case ExprNode::Kind::Var: return e->var;
    case ExprNode::Kind::Mul: {
      std::string s = print(e->lhs, 1) + " * " + print(e->rhs, 2);
      return level > 1 ? "(" + s + ")" : s;
    }
    default: {
      const char* op = e->kind == ExprNode::Kind::Add ? " + " : " - ";
      std::string s = print(e->lhs, 0) + op + print(e->rhs, 1);
      return level > 0 ? "(" + s + ")" : s;
    }
  }
}

std::string print(const Pred& p, int level) {
  switch (p->kind) {
    case PredNode::Kind::True: return "true";
    case PredNode::Kind::False: return "false";
    case PredNode::Kind::Eq: return print(p->lhs, 0) + " = " + print(p->rhs, 0);
    case PredNode::Kind::Lt: return print(p->lhs, 0) + " < " + print(p->rhs, 0);
    case PredNode::Kind::Le: return print(p->lhs, 0) + " <= " + print(p->rhs, 0);
    case PredNode::Kind::Not: {
      const auto k = p->a->kind;
      const bool bare = k == PredNode::Kind::True || k == PredNode::Kind::False || k == PredNode::Kind::Not;
      return bare ? "!" + print(p->a, 2) : "!(" + print(p->a, 0) + ")";
    }
    case PredNode::Kind::And: {
      std::string s = print(p->a, 1) + " && " + print(p->b, 2);
      return level > 1 ? "(" + s + ")" : s;
    }
    case PredNode::Kind::Or: {
      std::string s = print(p->a, 0) + " || " + print(p->b, 1);
      return level > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

std::string print(const RelExpr& r, int level) {
  switch (r->kind) {
    case RelNode::Kind::Id: return "id";
    case RelNode::Kind::Top: return "top";
    case RelNode::Kind::Unchanged: {
      std::string s = "unchanged{";
      for (std::size_t i = 0; i < r->vars.size(); ++i) s += (i ? "," : "") + r->vars[i];
      return s + "}";
    }
    case RelNode::Kind::Preserves: return "preserves(" + print(r->pred, 0) + ")";
    case RelNode::Kind::Increasing: return "increasing(" + r->vars.at(0) + ")";
    case RelNode::Kind::Decreasing: return "decreasing(" + r->vars.at(0) + ")";
    case RelNode::Kind::And: {
      std::string s = print(r->a, 1) + " & " + print(r->b, 2);
      return level > 1 ? "(" + s + ")" : s;
    }
    case RelNode::Kind::Or: {
      std::string s = print(r->a, 0) + " | " + print(r->b, 1);
      return level > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

// in_choice: the command sits where a following '+' would be read as
// arithmetic by an assignment's expression, so assignments are wrapped.
std::string print(const Cmd& c, int level, bool in_choice) {
  using K = CmdNode::Kind;
  auto wrap = [&](int own, std::string s) { return level > own ? "(" + s + ")" : s; };
  switch (c->kind) {
    case K::Skip: return "skip";
    case K::Assign: {
      std::string s = c->var + " := " + print(c->expr, 0);
      return in_choice ? "(" + s + ")" : s;
    }
    case K::Test: return "test(" + print(c->pred, 0) + ")";
    case K::Atomic: return "atomic(" + print(c->rel, 0) + ")";
    case K::Star: return "star { " + print(c->first, 0, false) + " }";
    case K::If:
      return "if " + print(c->pred, 0) + " { " + print(c->first, 0, false) + " } else { " +
             print(c->second, 0, false) + " }";
    case K::While: return "while " + print(c->pred, 0) + " { " + print(c->first, 0, false) + " }";
    case K::Choice: return wrap(0, print(c->first, 0, true) + " + " + print(c->second, 1, true));
    case K::Par: {
      const bool inner = level <= 1 && in_choice;
      return wrap(1, print(c->first, 1, inner) + " || " + print(c->second, 2, inner));
    }
    case K::Seq: {
      const bool inner = level <= 2 && in_choice;
      return wrap(2, print(c->first, 2, inner) + " ; " + print(c->second, 3, inner));
    }
  }
  return "?";
}

nlohmann::json node_to_json(const ProofNode& node) {
  nlohmann::json j;
  j["rule"] = std::string(to_string(node.rule));
  j["program"] = to_string(node.conclusion.prog);
  j["rely"] = to_string(node.conclusion.rely);
  j["guar"] = to_string(node.conclusion.guar);
  j["pre"] = to_string(node.conclusion.pre);
  j["post"] = to_string(node.conclusion.post);
  if (!node.premises.empty()) {
    j["premises"] = nlohmann::json::array();
    for (const auto& p : node.premises) j["premises"].push_back(node_to_json(p));
  }
  return j;
}

std::string field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return {};
  if (!j[key].is_string()) throw ParseError(where + ": \"" + key + "\" must be a string", 1, 1);
  return j[key].get<std::string>();
}

ProofNode node_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": outline node must be an object", 1, 1);
  ProofNode node;
  const std::string rule = field(j, "rule", where);
  const auto r = rule_from_string(rule);
  if (!r) throw ParseError(where + ": unknown rule '" + rule + "'", 1, 1);
  node.rule = *r;

  auto sub = [&](const char* key, auto parse) {
    try {
      return parse(field(j, key, where));
    } catch (const ParseError& e) {
      throw ParseError(where + " \"" + key + "\": " + e.what(), e.line(), e.column());
    }
  };
  const std::string program = field(j, "program", where);
  if (program.empty()) throw ParseError(where + ": missing \"program\"", 1, 1);
  node.conclusion.prog = sub("program", [](const std::string& s) { return parse_program(s); });
  std::string spec;
  for (const char* key : {"rely", "guar", "pre", "post"}) {
    const std::string text = field(j, key, where);
    if (!text.empty()) spec += std::string(key) + " " + text + "\n";
  }
  SpecParts parts;
  try {
    parts = parse_spec(spec);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.line(), e.column());
  }
  node.conclusion.rely = parts.rely;
  node.conclusion.guar = parts.guar;
  node.conclusion.pre = parts.pre;
  node.conclusion.post = parts.post;
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw ParseError(where + ": \"premises\" must be an array", 1, 1);
    for (std::size_t i = 0; i < j["premises"].size(); ++i) {
      node.premises.push_back(node_from_json(j["premises"][i], where + "." + std::to_string(i)));
    }
  }
  return node;
}

}  // namespace

Expr parse_expr(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.expr(); });
}
Pred parse_pred(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.pred(); });
}
RelExpr parse_rel(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.rel(); });
}
Condition parse_condition(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.condition(); });
}
Cmd parse_program(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.cmd(); });
}
SpecParts parse_spec(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.spec(); });
}

ProofNode parse_outline(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed outline JSON", line, col);
  }
  return node_from_json(j, "node 0");
}

std::string outline_to_json(const ProofNode& node, int indent) { return node_to_json(node).dump(indent); }

std::string to_string(const Expr& e) { return print(e, 0); }
std::string to_string(const Pred& p) { return print(p, 0); }
std::string to_string(const RelExpr& r) { return print(r, 0); }
std::string to_string(const Cmd& c) { return print(c, 0, false); }

std::string to_string(const Condition& c) {
  return std::string(c.kind == Condition::Kind::End ? "end(" : "test(") + print(c.pred, 0) + ")";
}

std::string to_string(const Quintuple& q) {
  return "rely " + to_string(q.rely) + " guar " + to_string(q.guar) + " pre " + to_string(q.pre) + " post " +
         to_string(q.post) + " program " + to_string(q.prog);
}

}  // namespace rgk
