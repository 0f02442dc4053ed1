#include "rgk/program.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "rgk/rg.hpp"

namespace rgk {

namespace ast {

namespace {
Expr make_expr(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }
Pred make_pred(PredNode n) { return std::make_shared<const PredNode>(std::move(n)); }
RelExpr make_rel(RelNode n) { return std::make_shared<const RelNode>(std::move(n)); }
Cmd make_cmd(CmdNode n) { return std::make_shared<const CmdNode>(std::move(n)); }

Expr binary(ExprNode::Kind k, Expr a, Expr b) {
  ExprNode n;
  n.kind = k;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make_expr(std::move(n));
}

Pred compare(PredNode::Kind k, Expr a, Expr b) {
  PredNode n;
  n.kind = k;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make_pred(std::move(n));
}

Pred connective(PredNode::Kind k, Pred a, Pred b) {
  PredNode n;
  n.kind = k;
  n.a = std::move(a);
  n.b = std::move(b);
  return make_pred(std::move(n));
}

Cmd compound(CmdNode::Kind k, Cmd a, Cmd b) {
  CmdNode n;
  n.kind = k;
  n.first = std::move(a);
  n.second = std::move(b);
  return make_cmd(std::move(n));
}
}  // namespace

Expr constant(std::int64_t v) {
  ExprNode n;
  n.value = v;
  return make_expr(std::move(n));
}

Expr var(std::string name) {
  ExprNode n;
  n.kind = ExprNode::Kind::Var;
  n.var = std::move(name);
  return make_expr(std::move(n));
}

Expr add(Expr a, Expr b) { return binary(ExprNode::Kind::Add, std::move(a), std::move(b)); }
Expr sub(Expr a, Expr b) { return binary(ExprNode::Kind::Sub, std::move(a), std::move(b)); }
Expr mul(Expr a, Expr b) { return binary(ExprNode::Kind::Mul, std::move(a), std::move(b)); }

Pred truth() { return make_pred(PredNode{}); }

Pred falsity() {
  PredNode n;
  n.kind = PredNode::Kind::False;
  return make_pred(std::move(n));
}

Pred eq(Expr a, Expr b) { return compare(PredNode::Kind::Eq, std::move(a), std::move(b)); }
Pred lt(Expr a, Expr b) { return compare(PredNode::Kind::Lt, std::move(a), std::move(b)); }
Pred le(Expr a, Expr b) { return compare(PredNode::Kind::Le, std::move(a), std::move(b)); }
Pred conj(Pred a, Pred b) { return connective(PredNode::Kind::And, std::move(a), std::move(b)); }
Pred disj(Pred a, Pred b) { return connective(PredNode::Kind::Or, std::move(a), std::move(b)); }
Pred neg(Pred a) { return connective(PredNode::Kind::Not, std::move(a), nullptr); }
Pred implies(Pred a, Pred b) { return disj(neg(std::move(a)), std::move(b)); }

RelExpr id() { return make_rel(RelNode{}); }

RelExpr top() {
  RelNode n;
  n.kind = RelNode::Kind::Top;
  return make_rel(std::move(n));
}

RelExpr unchanged(std::vector<std::string> vars) {
  RelNode n;
  n.kind = RelNode::Kind::Unchanged;
  n.vars = std::move(vars);
  return make_rel(std::move(n));
}

RelExpr preserves(Pred p) {
  RelNode n;
  n.kind = RelNode::Kind::Preserves;
  n.pred = std::move(p);
  return make_rel(std::move(n));
}

RelExpr increasing(std::string var) {
  RelNode n;
  n.kind = RelNode::Kind::Increasing;
  n.vars = {std::move(var)};
  return make_rel(std::move(n));
}

RelExpr decreasing(std::string var) {
  RelNode n;
  n.kind = RelNode::Kind::Decreasing;
  n.vars = {std::move(var)};
  return make_rel(std::move(n));
}

RelExpr rel_and(RelExpr a, RelExpr b) {
  RelNode n;
  n.kind = RelNode::Kind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return make_rel(std::move(n));
}

RelExpr rel_or(RelExpr a, RelExpr b) {
  RelNode n;
  n.kind = RelNode::Kind::Or;
  n.a = std::move(a);
  n.b = std::move(b);
  return make_rel(std::move(n));
}

Cmd skip() { return make_cmd(CmdNode{}); }

Cmd assign(std::string var, Expr e) {
  CmdNode n;
  n.kind = CmdNode::Kind::Assign;
  n.var = std::move(var);
  n.expr = std::move(e);
  return make_cmd(std::move(n));
}

Cmd seq(Cmd a, Cmd b) { return compound(CmdNode::Kind::Seq, std::move(a), std::move(b)); }

Cmd seq(std::vector<Cmd> cmds) {
  if (cmds.empty()) throw std::invalid_argument("seq of no commands");
  Cmd out = cmds.back();
  for (std::size_t i = cmds.size() - 1; i-- > 0;) out = seq(cmds[i], out);
  return out;
}

Cmd choice(Cmd a, Cmd b) { return compound(CmdNode::Kind::Choice, std::move(a), std::move(b)); }

Cmd if_else(Pred p, Cmd then_branch, Cmd else_branch) {
  CmdNode n;
  n.kind = CmdNode::Kind::If;
  n.pred = std::move(p);
  n.first = std::move(then_branch);
  n.second = std::move(else_branch);
  return make_cmd(std::move(n));
}

Cmd while_loop(Pred p, Cmd body) {
  CmdNode n;
  n.kind = CmdNode::Kind::While;
  n.pred = std::move(p);
  n.first = std::move(body);
  return make_cmd(std::move(n));
}

Cmd par(Cmd a, Cmd b) { return compound(CmdNode::Kind::Par, std::move(a), std::move(b)); }

Cmd atomic(RelExpr r) {
  CmdNode n;
  n.kind = CmdNode::Kind::Atomic;
  n.rel = std::move(r);
  return make_cmd(std::move(n));
}

Cmd test(Pred p) {
  CmdNode n;
  n.kind = CmdNode::Kind::Test;
  n.pred = std::move(p);
  return make_cmd(std::move(n));
}

Cmd star(Cmd body) { return compound(CmdNode::Kind::Star, std::move(body), nullptr); }

}  // namespace ast

bool equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::Const: return a->value == b->value;
    case ExprNode::Kind::Var: return a->var == b->var;
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

bool equal(const Pred& a, const Pred& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case PredNode::Kind::True:
    case PredNode::Kind::False: return true;
    case PredNode::Kind::Eq:
    case PredNode::Kind::Lt:
    case PredNode::Kind::Le: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    default: return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

bool equal(const RelExpr& a, const RelExpr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case RelNode::Kind::Id:
    case RelNode::Kind::Top: return true;
    case RelNode::Kind::Unchanged:
    case RelNode::Kind::Increasing:
    case RelNode::Kind::Decreasing: return a->vars == b->vars;
    case RelNode::Kind::Preserves: return equal(a->pred, b->pred);
    default: return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

bool equal(const Cmd& a, const Cmd& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  return a->var == b->var && equal(a->expr, b->expr) && equal(a->pred, b->pred) &&
         equal(a->rel, b->rel) && equal(a->first, b->first) && equal(a->second, b->second);
}

namespace {

void collect(const Expr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprNode::Kind::Var) out.insert(e->var);
  collect(e->lhs, out);
  collect(e->rhs, out);
}

void collect(const Pred& p, std::set<std::string>& out) {
  if (!p) return;
  collect(p->lhs, out);
  collect(p->rhs, out);
  collect(p->a, out);
  collect(p->b, out);
}

std::uint32_t reduce(std::int64_t v, std::uint32_t n) {
  const std::int64_t m = static_cast<std::int64_t>(n);
  return static_cast<std::uint32_t>(((v % m) + m) % m);
}

}  // namespace

std::set<std::string> vars_of(const Expr& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

std::set<std::string> vars_of(const Pred& p) {
  std::set<std::string> out;
  collect(p, out);
  return out;
}

void validate(const StateSpace& space, const Expr& e) {
  for (const auto& v : vars_of(e)) space.require_index(v);
}

void validate(const StateSpace& space, const Pred& p) {
  for (const auto& v : vars_of(p)) space.require_index(v);
}

void validate(const StateSpace& space, const RelExpr& r) {
  if (!r) return;
  for (const auto& v : r->vars) space.require_index(v);
  validate(space, r->pred);
  validate(space, r->a);
  validate(space, r->b);
}

void validate(const StateSpace& space, const Cmd& c) {
  if (!c) return;
  if (c->kind == CmdNode::Kind::Assign) space.require_index(c->var);
  validate(space, c->expr);
  validate(space, c->pred);
  validate(space, c->rel);
  validate(space, c->first);
  validate(space, c->second);
}

std::uint32_t eval_expr(const StateSpace& space, StateId s, const Expr& e) {
  const std::uint32_t n = space.domain();
  switch (e->kind) {
    case ExprNode::Kind::Const: return reduce(e->value, n);
    case ExprNode::Kind::Var: return space.value(s, space.require_index(e->var));
    default: break;
  }
  const std::int64_t a = eval_expr(space, s, e->lhs);
  const std::int64_t b = eval_expr(space, s, e->rhs);
  switch (e->kind) {
    case ExprNode::Kind::Add: return reduce(a + b, n);
    case ExprNode::Kind::Sub: return reduce(a - b, n);
    default: return reduce(a * b, n);
  }
}

bool holds(const StateSpace& space, StateId s, const Pred& p) {
  switch (p->kind) {
    case PredNode::Kind::True: return true;
    case PredNode::Kind::False: return false;
    case PredNode::Kind::Eq: return eval_expr(space, s, p->lhs) == eval_expr(space, s, p->rhs);
    case PredNode::Kind::Lt: return eval_expr(space, s, p->lhs) < eval_expr(space, s, p->rhs);
    case PredNode::Kind::Le: return eval_expr(space, s, p->lhs) <= eval_expr(space, s, p->rhs);
    case PredNode::Kind::And: return holds(space, s, p->a) && holds(space, s, p->b);
    case PredNode::Kind::Or: return holds(space, s, p->a) || holds(space, s, p->b);
    case PredNode::Kind::Not: return !holds(space, s, p->a);
  }
  return false;
}

StateSet denote(const StateSpace& space, const Pred& p) {
  validate(space, p);
  StateSet out(space.size());
  for (StateId s = 0; s < space.size(); ++s) out[s] = holds(space, s, p);
  return out;
}

namespace {

Expr subst_expr(const Expr& e, const std::string& x, const Expr& by) {
  switch (e->kind) {
    case ExprNode::Kind::Const: return e;
    case ExprNode::Kind::Var: return e->var == x ? by : e;
    case ExprNode::Kind::Add: return ast::add(subst_expr(e->lhs, x, by), subst_expr(e->rhs, x, by));
    case ExprNode::Kind::Sub: return ast::sub(subst_expr(e->lhs, x, by), subst_expr(e->rhs, x, by));
    case ExprNode::Kind::Mul: return ast::mul(subst_expr(e->lhs, x, by), subst_expr(e->rhs, x, by));
  }
  return e;
}

}  // namespace

Pred subst(const Pred& p, const std::string& x, const Expr& e) {
  switch (p->kind) {
    case PredNode::Kind::True:
    case PredNode::Kind::False: return p;
    case PredNode::Kind::Eq: return ast::eq(subst_expr(p->lhs, x, e), subst_expr(p->rhs, x, e));
    case PredNode::Kind::Lt: return ast::lt(subst_expr(p->lhs, x, e), subst_expr(p->rhs, x, e));
    case PredNode::Kind::Le: return ast::le(subst_expr(p->lhs, x, e), subst_expr(p->rhs, x, e));
    case PredNode::Kind::And: return ast::conj(subst(p->a, x, e), subst(p->b, x, e));
    case PredNode::Kind::Or: return ast::disj(subst(p->a, x, e), subst(p->b, x, e));
    case PredNode::Kind::Not: return ast::neg(subst(p->a, x, e));
  }
  return p;
}

StateSet image(const StateSpace& space, const StateSet& states, const std::string& x, const Expr& e) {
  const std::size_t xi = space.require_index(x);
  validate(space, e);
  StateSet out(space.size());
  for (StateId s = 0; s < space.size(); ++s) {
    if (states[s]) out[space.with_value(s, xi, eval_expr(space, s, e))] = true;
  }
  return out;
}

namespace {

template <class Keep>
Relation relation_where(std::size_t states, Keep keep) {
  Relation r(states);
  for (StateId a = 0; a < states; ++a) {
    for (StateId b = 0; b < states; ++b) {
      if (keep(a, b)) r.insert(a, b);
    }
  }
  return r;
}

std::vector<std::int64_t> column(const StateSpace& space, std::size_t var) {
  std::vector<std::int64_t> out(space.size());
  for (StateId s = 0; s < space.size(); ++s) out[s] = space.value(s, var);
  return out;
}

}  // namespace

Relation unchanged(const StateSpace& space, const std::vector<std::string>& vars) {
  // Two states agree on vars iff their projections onto vars coincide.
  std::vector<std::uint64_t> key(space.size(), 0);
  for (const auto& v : vars) {
    const auto col = column(space, space.require_index(v));
    for (StateId s = 0; s < space.size(); ++s) key[s] = key[s] * space.domain() + static_cast<std::uint64_t>(col[s]);
  }
  return relation_where(space.size(), [&](StateId a, StateId b) { return key[a] == key[b]; });
}

Relation preserves(const StateSpace& space, const Pred& p) {
  const StateSet sat = denote(space, p);
  return relation_where(space.size(), [&](StateId a, StateId b) { return !sat[a] || sat[b]; });
}

Relation increasing(const StateSpace& space, const std::string& x) {
  const auto col = column(space, space.require_index(x));
  return relation_where(space.size(), [&](StateId a, StateId b) { return col[a] <= col[b]; });
}

Relation decreasing(const StateSpace& space, const std::string& x) {
  const auto col = column(space, space.require_index(x));
  return relation_where(space.size(), [&](StateId a, StateId b) { return col[a] >= col[b]; });
}

Relation evaluate(const StateSpace& space, const RelExpr& r) {
  switch (r->kind) {
    case RelNode::Kind::Id: return Relation::identity(space.size());
    case RelNode::Kind::Top: return Relation::full(space.size());
    case RelNode::Kind::Unchanged: return unchanged(space, r->vars);
    case RelNode::Kind::Preserves: return preserves(space, r->pred);
    case RelNode::Kind::Increasing: return increasing(space, r->vars.at(0));
    case RelNode::Kind::Decreasing: return decreasing(space, r->vars.at(0));
    case RelNode::Kind::And: return evaluate(space, r->a) & evaluate(space, r->b);
    case RelNode::Kind::Or: return evaluate(space, r->a) | evaluate(space, r->b);
  }
  throw std::logic_error("unknown relation form");
}

Lang test_lang(const StateSet& states, Bound bound) {
  std::vector<Word> out;
  if (bound.max_len >= 1) {
    for (StateId s = 0; s < states.size(); ++s) {
      if (states[s]) out.push_back(Word{{s, s}});
    }
  }
  return make_lang_unchecked(bound, std::move(out));
}

Lang test_lang(const StateSpace& space, const Pred& p, Bound bound) {
  return test_lang(denote(space, p), bound);
}

Lang end_lang(const StateSet& states, Bound bound) {
  std::vector<Word> finals;
  for (StateId a = 0; a < bound.states; ++a) {
    for (StateId b = 0; b < states.size(); ++b) {
      if (states[b]) finals.push_back(Word{{a, b}});
    }
  }
  if (bound.max_len == 0) return zero(bound);
  const Bound shorter{bound.max_len - 1, bound.states};
  return concat(universe(shorter), make_lang_unchecked(bound, std::move(finals)), bound);
}

Lang end_lang(const StateSpace& space, const Pred& p, Bound bound) {
  return end_lang(denote(space, p), bound);
}

Lang consistent_end_lang(const StateSet& states, Bound bound) {
  // Grow backwards from the final letter so every word is chained.
  std::vector<Word> layer;
  for (StateId a = 0; a < bound.states; ++a) {
    for (StateId b = 0; b < states.size(); ++b) {
      if (states[b] && bound.max_len >= 1) layer.push_back(Word{{a, b}});
    }
  }
  std::vector<Word> out = layer;
  for (std::size_t len = 2; len <= bound.max_len; ++len) {
    std::vector<Word> grown;
    for (const Word& w : layer) {
      for (StateId a = 0; a < bound.states; ++a) {
        Word v;
        v.reserve(w.size() + 1);
        v.push_back({a, w.front().pre});
        v.insert(v.end(), w.begin(), w.end());
        grown.push_back(std::move(v));
      }
    }
    out.insert(out.end(), grown.begin(), grown.end());
    layer = std::move(grown);
  }
  return make_lang_unchecked(bound, std::move(out));
}

Pred state_pred(const StateSpace& space, const StateSet& states) {
  Pred out = ast::falsity();
  bool first = true;
  for (StateId s = 0; s < states.size(); ++s) {
    if (!states[s]) continue;
    Pred exact = ast::truth();
    for (std::size_t i = 0; i < space.variables().size(); ++i) {
      const Pred here = ast::eq(ast::var(space.variables()[i]), ast::constant(space.value(s, i)));
      exact = i == 0 ? here : ast::conj(exact, here);
    }
    out = first ? exact : ast::disj(out, exact);
    first = false;
  }
  return out;
}

std::vector<Word> mumble_word(const Word& w) {
  std::set<Word> seen{w};
  std::deque<Word> todo{w};
  while (!todo.empty()) {
    Word u = std::move(todo.front());
    todo.pop_front();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      if (u[i].post != u[i + 1].pre) continue;
      Word v;
      v.reserve(u.size() - 1);
      v.insert(v.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i));
      v.push_back({u[i].pre, u[i + 1].post});
      v.insert(v.end(), u.begin() + static_cast<std::ptrdiff_t>(i) + 2, u.end());
      if (seen.insert(v).second) todo.push_back(std::move(v));
    }
  }
  return {seen.begin(), seen.end()};
}

Lang mumble_close(const Lang& x) {
  std::set<Word> seen(x.begin(), x.end());
  std::deque<const Word*> todo;
  for (const Word& w : seen) todo.push_back(&w);
  while (!todo.empty()) {
    const Word& u = *todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      if (u[i].post != u[i + 1].pre) continue;
      Word v;
      v.reserve(u.size() - 1);
      v.insert(v.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i));
      v.push_back({u[i].pre, u[i + 1].post});
      v.insert(v.end(), u.begin() + static_cast<std::ptrdiff_t>(i) + 2, u.end());
      auto [it, fresh] = seen.insert(std::move(v));
      if (fresh) todo.push_back(&*it);
    }
  }
  return make_lang_unchecked(x.bound(), {seen.begin(), seen.end()});
}

bool stutter_eq(const Lang& x, const Lang& y, Bound bound) {
  if (x.bound() != y.bound()) throw BoundMismatch("stutter_eq: operands computed under different bounds");
  const Relation id = Relation::identity(bound.states);
  const Lang sx = consistent_rely_shuffle(id, x, bound);
  const Lang sy = consistent_rely_shuffle(id, y, bound);
  return sx == sy;
}

Lang assign_lang(const StateSpace& space, const std::string& x, const Expr& e, Bound bound) {
  const std::size_t xi = space.require_index(x);
  validate(space, e);
  // The unmumbled assignment is test-then-update, two letters long; build it at
  // length two so the contracted single step exists even when bound is 1.
  const Bound work{std::max<std::size_t>(bound.max_len, 2), bound.states};
  const std::uint32_t n = space.domain();
  std::vector<std::vector<StateId>> fiber(n);
  for (StateId s = 0; s < space.size(); ++s) fiber[eval_expr(space, s, e)].push_back(s);
  std::vector<Word> out;
  for (std::uint32_t v = 0; v < n; ++v) {
    for (StateId s : fiber[v]) {
      for (StateId t = 0; t < space.size(); ++t) out.push_back(Word{{s, s}, {t, space.with_value(t, xi, v)}});
    }
  }
  return truncate(mumble_close(make_lang_unchecked(work, std::move(out))), bound);
}

namespace {

Lang denote_raw(const StateSpace& space, const Cmd& c, Bound bound, Mumbling m) {
  using K = CmdNode::Kind;
  switch (c->kind) {
    case K::Skip: return one(bound);
    case K::Assign: {
      if (m == Mumbling::Closed) return assign_lang(space, c->var, c->expr, bound);
      const std::size_t xi = space.require_index(c->var);
      std::vector<Word> out;
      if (bound.max_len >= 2) {
        for (StateId s = 0; s < space.size(); ++s) {
          const std::uint32_t v = eval_expr(space, s, c->expr);
          for (StateId t = 0; t < space.size(); ++t) out.push_back(Word{{s, s}, {t, space.with_value(t, xi, v)}});
        }
      }
      return make_lang_unchecked(bound, std::move(out));
    }
    case K::Seq: return concat(denote(space, c->first, bound, m), denote(space, c->second, bound, m), bound);
    case K::Choice: return join(denote(space, c->first, bound, m), denote(space, c->second, bound, m));
    case K::If: {
      const Lang yes = concat(test_lang(space, c->pred, bound), denote(space, c->first, bound, m), bound);
      const Lang no = concat(test_lang(space, ast::neg(c->pred), bound), denote(space, c->second, bound, m), bound);
      return join(yes, no);
    }
    case K::While: {
      const Lang body = concat(test_lang(space, c->pred, bound), denote(space, c->first, bound, m), bound);
      const Lang loop = m == Mumbling::Closed ? mumble_close(body) : body;
      return concat(star(loop, bound), test_lang(space, ast::neg(c->pred), bound), bound);
    }
    case K::Par: return shuffle(denote(space, c->first, bound, m), denote(space, c->second, bound, m), bound);
    case K::Atomic: return lift(evaluate(space, c->rel), bound);
    case K::Test: return test_lang(space, c->pred, bound);
    case K::Star: return star(denote(space, c->first, bound, m), bound);
  }
  throw std::logic_error("unknown command form");
}

}  // namespace

Lang denote(const StateSpace& space, const Cmd& c, Bound bound, Mumbling mumbling) {
  if (bound.states != space.size()) throw BoundMismatch("denote: bound over a different state space");
  validate(space, c);
  Lang out = denote_raw(space, c, bound, mumbling);
  return mumbling == Mumbling::Closed ? mumble_close(out) : out;
}

}  // namespace rgk
