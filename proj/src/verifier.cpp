#include "rgk/verifier.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <stdexcept>

#include "rgk/rg.hpp"
#include "rgk/syntax.hpp"

namespace rgk {

Condition end_of(Pred p) { return Condition{Condition::Kind::End, std::move(p)}; }
Condition test_of(Pred p) { return Condition{Condition::Kind::Test, std::move(p)}; }

Condition meet(const Condition& a, const Condition& b) {
  const bool test = a.kind == Condition::Kind::Test || b.kind == Condition::Kind::Test;
  return Condition{test ? Condition::Kind::Test : Condition::Kind::End, ast::conj(a.pred, b.pred)};
}

Lang to_lang(const StateSpace& space, const Condition& c, Bound bound) {
  return c.kind == Condition::Kind::Test ? test_lang(space, c.pred, bound) : end_lang(space, c.pred, bound);
}

namespace {

std::optional<StateId> first_not_in(const StateSet& a, const StateSet& b) {
  for (StateId s = 0; s < a.size(); ++s) {
    if (a[s] && !b[s]) return s;
  }
  return std::nullopt;
}

std::optional<StateId> first_in(const StateSet& a) {
  for (StateId s = 0; s < a.size(); ++s) {
    if (a[s]) return s;
  }
  return std::nullopt;
}

std::optional<Word> condition_leq_witness(const StateSpace& space, const Condition& a, const Condition& b,
                                          std::size_t max_len) {
  const StateSet sa = denote(space, a.pred);
  const StateSet sb = denote(space, b.pred);
  if (a.kind == Condition::Kind::End && b.kind == Condition::Kind::Test) {
    const auto s = first_in(sa);
    if (!s) return std::nullopt;
    if (space.size() >= 2) return Word{{static_cast<StateId>((*s + 1) % space.size()), *s}};
    if (max_len >= 2) return Word{{*s, *s}, {*s, *s}};
  }
  if (auto s = first_not_in(sa, sb)) return Word{{*s, *s}};
  return std::nullopt;
}

std::optional<Word> stable_witness(const StateSpace& space, const Condition& p, const Relation& r,
                                   std::size_t max_len) {
  if (max_len < 2) return std::nullopt;
  const StateSet sp = denote(space, p.pred);
  for (StateId s = 0; s < sp.size(); ++s) {
    if (!sp[s]) continue;
    for (StateId t : r.successors(s)) {
      if (p.kind == Condition::Kind::Test || !sp[t]) return Word{{s, s}, {s, t}};
    }
  }
  return std::nullopt;
}

bool rel_eq(const StateSpace& space, const RelExpr& a, const RelExpr& b) {
  return evaluate(space, a) == evaluate(space, b);
}

bool cond_eq(const StateSpace& space, const Condition& a, const Condition& b, std::size_t max_len) {
  return condition_leq(space, a, b, max_len) && condition_leq(space, b, a, max_len);
}

SideCondition rel_leq(std::string label, RelExpr lhs, RelExpr rhs) {
  SideCondition sc;
  sc.kind = SideCondition::Kind::RelLeq;
  sc.label = std::move(label);
  sc.lhs_rel = std::move(lhs);
  sc.rhs_rel = std::move(rhs);
  return sc;
}

SideCondition cond_leq(std::string label, Condition lhs, Condition rhs) {
  SideCondition sc;
  sc.kind = SideCondition::Kind::CondLeq;
  sc.label = std::move(label);
  sc.lhs_cond = std::move(lhs);
  sc.rhs_cond = std::move(rhs);
  return sc;
}

SideCondition stable(std::string label, Condition p, RelExpr r) {
  SideCondition sc;
  sc.kind = SideCondition::Kind::Stable;
  sc.label = std::move(label);
  sc.lhs_cond = std::move(p);
  sc.rhs_rel = std::move(r);
  return sc;
}

bool has_kind(const Cmd& c, CmdNode::Kind k) { return c && c->kind == k; }

void require_arity(const ProofNode& node, RuleApplication& app) {
  const std::size_t want = rule_arity(node.rule);
  if (node.premises.size() != want) {
    app.shape_errors.push_back(std::string(to_string(node.rule)) + " takes " + std::to_string(want) +
                               " premise(s), outline gives " + std::to_string(node.premises.size()));
  }
}

}  // namespace

bool condition_leq(const StateSpace& space, const Condition& a, const Condition& b, std::size_t max_len) {
  return !condition_leq_witness(space, a, b, max_len).has_value();
}

bool condition_stable(const StateSpace& space, const Condition& p, const Relation& r, std::size_t max_len) {
  return !stable_witness(space, p, r, max_len).has_value();
}

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Skip: return "Skip";
    case Rule::Weakening: return "Weakening";
    case Rule::Sequential: return "Sequential";
    case Rule::Parallel: return "Parallel";
    case Rule::Choice: return "Choice";
    case Rule::Star: return "Star";
    case Rule::AssignAxiom: return "AssignAxiom";
    case Rule::BruteForce: return "BruteForce";
  }
  return "?";
}

std::optional<Rule> rule_from_string(std::string_view name) {
  for (Rule r : {Rule::Skip, Rule::Weakening, Rule::Sequential, Rule::Parallel, Rule::Choice, Rule::Star,
                 Rule::AssignAxiom, Rule::BruteForce}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::size_t rule_arity(Rule r) {
  switch (r) {
    case Rule::Weakening:
    case Rule::Star: return 1;
    case Rule::Sequential:
    case Rule::Parallel:
    case Rule::Choice: return 2;
    default: return 0;
  }
}

SideResult check_side(const StateSpace& space, const SideCondition& sc, std::size_t max_len) {
  SideResult out;
  switch (sc.kind) {
    case SideCondition::Kind::RelLeq: {
      const auto p = evaluate(space, sc.lhs_rel).first_outside(evaluate(space, sc.rhs_rel));
      if (p) out.witness = Word{{p->first, p->second}};
      break;
    }
    case SideCondition::Kind::CondLeq:
      out.witness = condition_leq_witness(space, sc.lhs_cond, sc.rhs_cond, max_len);
      break;
    case SideCondition::Kind::Stable:
      out.witness = stable_witness(space, sc.lhs_cond, evaluate(space, sc.rhs_rel), max_len);
      break;
    case SideCondition::Kind::AssignPost: {
      const StateSet from = denote(space, sc.lhs_cond.pred);
      const StateSet to = denote(space, sc.rhs_cond.pred);
      const std::size_t xi = space.require_index(sc.var);
      for (StateId s = 0; s < from.size() && !out.witness; ++s) {
        if (!from[s]) continue;
        const StateId t = space.with_value(s, xi, eval_expr(space, s, sc.expr));
        if (!to[t]) out.witness = Word{{s, s}, {s, t}};
      }
      break;
    }
  }
  out.ok = !out.witness.has_value();
  return out;
}

RuleApplication apply_skip(const StateSpace& space, const ProofNode& node, std::size_t max_len) {
  RuleApplication app;
  require_arity(node, app);
  const Quintuple& c = node.conclusion;
  if (!has_kind(c.prog, CmdNode::Kind::Skip)) app.shape_errors.push_back("program is not skip");
  if (!cond_eq(space, c.pre, c.post, max_len)) app.shape_errors.push_back("pre and post differ");
  app.side_conditions.push_back(stable("p.r <= p", c.pre, c.rely));
  return app;
}

RuleApplication apply_weakening(const StateSpace&, const ProofNode& node, std::size_t) {
  RuleApplication app;
  require_arity(node, app);
  if (!app.shape_errors.empty()) return app;
  const Quintuple& c = node.conclusion;
  const Quintuple& p = node.premises[0].conclusion;
  if (!equal(c.prog, p.prog)) app.shape_errors.push_back("premise program differs from conclusion program");
  app.premises.push_back(p);
  app.side_conditions.push_back(rel_leq("rely r' <= r", c.rely, p.rely));
  app.side_conditions.push_back(rel_leq("guar g <= g'", p.guar, c.guar));
  app.side_conditions.push_back(cond_leq("pre p' <= p", c.pre, p.pre));
  app.side_conditions.push_back(cond_leq("post q <= q'", p.post, c.post));
  return app;
}

RuleApplication apply_sequential(const StateSpace&, const ProofNode& node, std::size_t) {
  RuleApplication app;
  require_arity(node, app);
  const Quintuple& c = node.conclusion;
  if (!has_kind(c.prog, CmdNode::Kind::Seq)) app.shape_errors.push_back("program is not a sequence");
  if (!app.shape_errors.empty()) return app;
  const Condition& mid = node.premises[0].conclusion.post;
  app.premises.push_back(Quintuple{c.rely, c.guar, c.pre, mid, c.prog->first});
  app.premises.push_back(Quintuple{c.rely, c.guar, mid, c.post, c.prog->second});
  return app;
}

RuleApplication apply_parallel(const StateSpace& space, const ProofNode& node, std::size_t max_len) {
  RuleApplication app;
  require_arity(node, app);
  const Quintuple& c = node.conclusion;
  if (!has_kind(c.prog, CmdNode::Kind::Par)) app.shape_errors.push_back("program is not a parallel composition");
  if (!app.shape_errors.empty()) return app;
  const Quintuple& a = node.premises[0].conclusion;
  const Quintuple& b = node.premises[1].conclusion;
  if (!rel_eq(space, c.rely, ast::rel_and(a.rely, b.rely))) app.shape_errors.push_back("rely is not r1 & r2");
  if (!rel_eq(space, c.guar, ast::rel_or(a.guar, b.guar))) app.shape_errors.push_back("guarantee is not g1 | g2");
  if (!cond_eq(space, c.pre, meet(a.pre, b.pre), max_len)) app.shape_errors.push_back("pre is not p1 meet p2");
  if (!cond_eq(space, c.post, meet(a.post, b.post), max_len)) app.shape_errors.push_back("post is not q1 meet q2");
  app.premises.push_back(Quintuple{a.rely, a.guar, a.pre, a.post, c.prog->first});
  app.premises.push_back(Quintuple{b.rely, b.guar, b.pre, b.post, c.prog->second});
  app.side_conditions.push_back(rel_leq("g1 <= r2", a.guar, b.rely));
  app.side_conditions.push_back(rel_leq("g2 <= r1", b.guar, a.rely));
  return app;
}

RuleApplication apply_choice(const StateSpace&, const ProofNode& node, std::size_t) {
  RuleApplication app;
  require_arity(node, app);
  const Quintuple& c = node.conclusion;
  if (!has_kind(c.prog, CmdNode::Kind::Choice)) app.shape_errors.push_back("program is not a choice");
  if (!app.shape_errors.empty()) return app;
  app.premises.push_back(Quintuple{c.rely, c.guar, c.pre, c.post, c.prog->first});
  app.premises.push_back(Quintuple{c.rely, c.guar, c.pre, c.post, c.prog->second});
  return app;
}

RuleApplication apply_star(const StateSpace& space, const ProofNode& node, std::size_t max_len) {
  RuleApplication app;
  require_arity(node, app);
  const Quintuple& c = node.conclusion;
  if (!has_kind(c.prog, CmdNode::Kind::Star)) app.shape_errors.push_back("program is not a star");
  if (!cond_eq(space, c.pre, c.post, max_len)) app.shape_errors.push_back("pre and post differ");
  app.side_conditions.push_back(stable("p.r <= p", c.pre, c.rely));
  if (!app.shape_errors.empty()) return app;
  app.premises.push_back(Quintuple{c.rely, c.guar, c.pre, c.pre, c.prog->first});
  return app;
}

RuleApplication apply_assign(const StateSpace& space, const ProofNode& node, std::size_t) {
  RuleApplication app;
  require_arity(node, app);
  const Quintuple& c = node.conclusion;
  if (!has_kind(c.prog, CmdNode::Kind::Assign)) app.shape_errors.push_back("program is not an assignment");
  if (c.post.kind != Condition::Kind::End) app.shape_errors.push_back("post must be end(...)");
  if (!app.shape_errors.empty()) return app;
  const std::string& x = c.prog->var;
  const Expr& e = c.prog->expr;
  const auto read = vars_of(e);
  RelExpr allowed = ast::rel_and(ast::unchanged({read.begin(), read.end()}),
                                 ast::rel_and(ast::preserves(c.pre.pred), ast::preserves(c.post.pred)));
  std::vector<std::string> others;
  for (const auto& v : space.variables()) {
    if (v != x) others.push_back(v);
  }
  app.side_conditions.push_back(rel_leq("rely within unchanged(vars(e)) & preserves(P) & preserves(Q)", c.rely,
                                        std::move(allowed)));
  app.side_conditions.push_back(rel_leq("unchanged(other vars) <= guar", ast::unchanged(others), c.guar));
  SideCondition post;
  post.kind = SideCondition::Kind::AssignPost;
  post.label = "x := e maps P into Q";
  post.lhs_cond = c.pre;
  post.rhs_cond = c.post;
  post.var = x;
  post.expr = e;
  app.side_conditions.push_back(std::move(post));
  return app;
}

RuleApplication apply_rule(const StateSpace& space, const ProofNode& node, std::size_t max_len) {
  switch (node.rule) {
    case Rule::Skip: return apply_skip(space, node, max_len);
    case Rule::Weakening: return apply_weakening(space, node, max_len);
    case Rule::Sequential: return apply_sequential(space, node, max_len);
    case Rule::Parallel: return apply_parallel(space, node, max_len);
    case Rule::Choice: return apply_choice(space, node, max_len);
    case Rule::Star: return apply_star(space, node, max_len);
    case Rule::AssignAxiom: return apply_assign(space, node, max_len);
    case Rule::BruteForce: {
      RuleApplication app;
      require_arity(node, app);
      return app;
    }
  }
  throw std::logic_error("unknown rule");
}

bool same_quintuple(const StateSpace& space, const Quintuple& a, const Quintuple& b, std::size_t max_len) {
  return rel_eq(space, a.rely, b.rely) && rel_eq(space, a.guar, b.guar) &&
         cond_eq(space, a.pre, b.pre, max_len) && cond_eq(space, a.post, b.post, max_len) &&
         equal(a.prog, b.prog);
}

// ---------------------------------------------------------------------------
// Exhaustive exploration of pre.(rely || prog).

namespace {

struct Action {
  enum class Kind { Test, Update, Step };
  Kind kind = Kind::Test;
  StateSet pass;
  std::size_t var = 0;
  std::uint32_t value = 0;
  Relation rel;
};

constexpr int kEps = -1;

struct Automaton {
  std::vector<std::vector<std::pair<int, int>>> out;  // (action or kEps, target)
  int init = 0;
  int final = 0;

  int add_node() {
    out.emplace_back();
    return static_cast<int>(out.size()) - 1;
  }
  // Copies `part` in and returns the offset of its nodes.
  int embed(const Automaton& part) {
    const int base = static_cast<int>(out.size());
    for (const auto& edges : part.out) {
      auto& dst = out.emplace_back();
      for (auto [a, t] : edges) dst.emplace_back(a, t + base);
    }
    return base;
  }
};

class Compiler {
 public:
  explicit Compiler(const StateSpace& space) : space_(space) {}

  Automaton build(const Cmd& c) {
    using K = CmdNode::Kind;
    Automaton m;
    switch (c->kind) {
      case K::Skip:
        m.init = m.final = m.add_node();
        return m;
      case K::Test: {
        m.init = m.add_node();
        m.final = m.add_node();
        m.out[m.init].emplace_back(add_test(denote(space_, c->pred)), m.final);
        return m;
      }
      case K::Atomic: {
        Action a;
        a.kind = Action::Kind::Step;
        a.rel = evaluate(space_, c->rel);
        m.init = m.add_node();
        m.final = m.add_node();
        m.out[m.init].emplace_back(add(std::move(a)), m.final);
        return m;
      }
      case K::Assign: {
        const std::size_t xi = space_.require_index(c->var);
        std::vector<StateSet> fiber(space_.domain(), StateSet(space_.size()));
        for (StateId s = 0; s < space_.size(); ++s) fiber[eval_expr(space_, s, c->expr)][s] = true;
        m.init = m.add_node();
        m.final = m.add_node();
        for (std::uint32_t v = 0; v < space_.domain(); ++v) {
          if (std::none_of(fiber[v].begin(), fiber[v].end(), [](bool b) { return b; })) continue;
          const int mid = m.add_node();
          m.out[m.init].emplace_back(add_test(std::move(fiber[v])), mid);
          Action u;
          u.kind = Action::Kind::Update;
          u.var = xi;
          u.value = v;
          m.out[mid].emplace_back(add(std::move(u)), m.final);
        }
        return m;
      }
      case K::Seq: {
        const Automaton a = build(c->first);
        const Automaton b = build(c->second);
        const int oa = m.embed(a);
        const int ob = m.embed(b);
        m.out[a.final + oa].emplace_back(kEps, b.init + ob);
        m.init = a.init + oa;
        m.final = b.final + ob;
        return m;
      }
      case K::Choice: {
        const Automaton a = build(c->first);
        const Automaton b = build(c->second);
        m.init = m.add_node();
        m.final = m.add_node();
        const int oa = m.embed(a);
        const int ob = m.embed(b);
        m.out[m.init].emplace_back(kEps, a.init + oa);
        m.out[m.init].emplace_back(kEps, b.init + ob);
        m.out[a.final + oa].emplace_back(kEps, m.final);
        m.out[b.final + ob].emplace_back(kEps, m.final);
        return m;
      }
      case K::If:
        return build(ast::choice(ast::seq(ast::test(c->pred), c->first),
                                 ast::seq(ast::test(ast::neg(c->pred)), c->second)));
      case K::While:
        return build(ast::seq(ast::star(ast::seq(ast::test(c->pred), c->first)), ast::test(ast::neg(c->pred))));
      case K::Star: {
        const Automaton a = build(c->first);
        m.init = m.final = m.add_node();
        const int oa = m.embed(a);
        m.out[m.init].emplace_back(kEps, a.init + oa);
        m.out[a.final + oa].emplace_back(kEps, m.init);
        return m;
      }
      case K::Par: {
        const Automaton a = build(c->first);
        const Automaton b = build(c->second);
        const int nb = static_cast<int>(b.out.size());
        m.out.resize(a.out.size() * b.out.size());
        for (int i = 0; i < static_cast<int>(a.out.size()); ++i) {
          for (int j = 0; j < nb; ++j) {
            auto& edges = m.out[i * nb + j];
            for (auto [act, t] : a.out[i]) edges.emplace_back(act, t * nb + j);
            for (auto [act, t] : b.out[j]) edges.emplace_back(act, i * nb + t);
          }
        }
        m.init = a.init * nb + b.init;
        m.final = a.final * nb + b.final;
        return m;
      }
    }
    throw std::logic_error("unknown command form");
  }

  std::vector<Action> take_actions() { return std::move(actions_); }

 private:
  int add(Action a) {
    actions_.push_back(std::move(a));
    return static_cast<int>(actions_.size()) - 1;
  }
  int add_test(StateSet pass) {
    Action a;
    a.pass = std::move(pass);
    return add(std::move(a));
  }

  const StateSpace& space_;
  std::vector<Action> actions_;
};

// Epsilon-free moves and acceptance per control point.
struct Control {
  std::vector<std::vector<std::pair<int, int>>> moves;
  std::vector<bool> accepting;
};

Control eliminate_epsilon(const Automaton& m) {
  const std::size_t n = m.out.size();
  Control ctl;
  ctl.moves.resize(n);
  ctl.accepting.assign(n, false);
  std::vector<int> mark(n, -1);
  std::vector<int> stack;
  for (std::size_t c = 0; c < n; ++c) {
    stack.assign(1, static_cast<int>(c));
    mark[c] = static_cast<int>(c);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      if (u == m.final) ctl.accepting[c] = true;
      for (auto [a, t] : m.out[u]) {
        if (a != kEps) {
          ctl.moves[c].emplace_back(a, t);
        } else if (mark[t] != static_cast<int>(c)) {
          mark[t] = static_cast<int>(c);
          stack.push_back(t);
        }
      }
    }
    auto& mv = ctl.moves[c];
    std::sort(mv.begin(), mv.end());
    mv.erase(std::unique(mv.begin(), mv.end()), mv.end());
  }
  return ctl;
}

constexpr std::size_t kExploreLimit = std::size_t{1} << 26;
constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kRoot = kUnseen - 1;

struct Violation {
  std::size_t length = std::numeric_limits<std::size_t>::max();
  Word witness;
  std::string what;
};

}  // namespace

LeafResult check_bruteforce(const StateSpace& space, const Quintuple& q, std::size_t max_len) {
  validate(space, q.prog);
  Compiler compiler(space);
  const Automaton m = compiler.build(q.prog);
  const std::vector<Action> actions = compiler.take_actions();
  const Control ctl = eliminate_epsilon(m);

  const std::size_t states = space.size();
  const std::size_t total = ctl.moves.size() * states;
  if (total >= kExploreLimit) {
    throw std::length_error("exploration needs " + std::to_string(total) + " control/state pairs");
  }
  const Relation rely = evaluate(space, q.rely);
  const Relation guar = evaluate(space, q.guar);
  const StateSet pre = denote(space, q.pre.pred);
  const StateSet post = denote(space, q.post.pred);

  std::vector<std::uint32_t> parent(total, kUnseen);
  std::vector<std::uint32_t> depth(total, 0);
  std::vector<std::uint32_t> queue;
  auto key = [&](std::size_t c, StateId s) { return static_cast<std::uint32_t>(c * states + s); };

  auto trace_to = [&](std::uint32_t k) {
    std::vector<StateId> path;
    for (std::uint32_t at = k; at != kRoot; at = parent[at]) path.push_back(static_cast<StateId>(at % states));
    std::reverse(path.begin(), path.end());
    Word w{{path[0], path[0]}};
    for (std::size_t i = 1; i < path.size(); ++i) w.push_back({path[i - 1], path[i]});
    return w;
  };

  Violation worst;
  auto note = [&](std::size_t length, auto make_witness, const char* what) {
    if (length < worst.length) {
      worst.length = length;
      worst.witness = make_witness();
      worst.what = what;
    }
  };

  for (StateId s = 0; s < states; ++s) {
    if (!pre[s]) continue;
    const std::uint32_t k = key(static_cast<std::size_t>(m.init), s);
    parent[k] = kRoot;
    depth[k] = 1;
    queue.push_back(k);
  }

  StateSet finals(states);
  std::size_t saturation = queue.empty() ? 0 : 1;
  std::vector<StateId> next;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t k = queue[head];
    const std::size_t c = k / states;
    const StateId s = static_cast<StateId>(k % states);
    const std::uint32_t d = depth[k];

    if (ctl.accepting[c]) {
      if (d <= max_len) finals[s] = true;
      if (q.post.kind == Condition::Kind::End) {
        if (!post[s]) note(d, [&] { return trace_to(k); }, "completed trace ends outside the postcondition");
      } else if (d >= 2) {
        note(d, [&] { return trace_to(k); }, "completed trace is longer than one test step");
      } else if (q.pre.kind == Condition::Kind::End && states >= 2) {
        note(d, [&] { return Word{{static_cast<StateId>((s + 1) % states), s}}; },
             "a precondition word is not a test step");
      } else if (!post[s]) {
        note(d, [&] { return trace_to(k); }, "completed trace ends outside the postcondition");
      }
    }

    auto visit = [&](std::size_t c2, StateId s2) {
      const std::uint32_t k2 = key(c2, s2);
      if (parent[k2] != kUnseen) return;
      parent[k2] = k;
      depth[k2] = d + 1;
      saturation = std::max<std::size_t>(saturation, d + 1);
      queue.push_back(k2);
    };

    for (auto [ai, target] : ctl.moves[c]) {
      const Action& a = actions[static_cast<std::size_t>(ai)];
      next.clear();
      switch (a.kind) {
        case Action::Kind::Test:
          if (a.pass[s]) next.push_back(s);
          break;
        case Action::Kind::Update: next.push_back(space.with_value(s, a.var, a.value)); break;
        case Action::Kind::Step: next = a.rel.successors(s); break;
      }
      for (StateId s2 : next) {
        if (!guar.contains(s, s2)) {
          note(d + 1, [&] { Word w = trace_to(k); w.push_back({s, s2}); return w; },
               "program step outside the guarantee");
        }
        visit(static_cast<std::size_t>(target), s2);
      }
    }
    for (StateId s2 : rely.successors(s)) visit(c, s2);
  }

  LeafResult out;
  out.explored = queue.size();
  out.saturation = saturation;
  out.finals = std::move(finals);
  if (worst.length <= max_len) {
    out.verdict = Verdict::Fail;
    out.witness = std::move(worst.witness);
    out.detail = worst.what + "; final state " + space.describe(out.witness->back().post);
  } else if (worst.length != std::numeric_limits<std::size_t>::max()) {
    out.verdict = Verdict::BoundInsufficient;
    out.detail = worst.what + " first at length " + std::to_string(worst.length) + " > bound " +
                 std::to_string(max_len);
  } else if (saturation > max_len) {
    out.verdict = Verdict::BoundInsufficient;
    out.detail = "traces reach new configurations up to length " + std::to_string(saturation) + " > bound " +
                 std::to_string(max_len);
  } else {
    out.detail = "saturated at length " + std::to_string(saturation) + ", " + std::to_string(out.explored) +
                 " configurations";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Outlines.

namespace {

struct Slot {
  Check check;
  std::optional<std::future<LeafResult>> leaf;
};

void walk(const StateSpace& space, const ProofNode& node, const std::string& path, std::size_t max_len,
          const OutlineOptions& options, std::vector<Slot>& slots) {
  const std::string name = path + " " + std::string(to_string(node.rule));
  RuleApplication app;
  try {
    validate(space, node.conclusion.prog);
    app = apply_rule(space, node, max_len);
  } catch (const std::exception& e) {
    app.shape_errors.push_back(e.what());
  }
  for (std::size_t i = 0; i < app.premises.size() && i < node.premises.size(); ++i) {
    if (!same_quintuple(space, app.premises[i], node.premises[i].conclusion, max_len)) {
      app.shape_errors.push_back("premise " + std::to_string(i) + " should be " + to_string(app.premises[i]));
    }
  }
  std::string detail;
  for (const auto& e : app.shape_errors) detail += (detail.empty() ? "" : "; ") + e;
  slots.push_back(Slot{Check{name, app.shape_errors.empty() ? Verdict::Pass : Verdict::Fail, std::nullopt,
                             detail},
                       std::nullopt});
  for (const SideCondition& sc : app.side_conditions) {
    const SideResult r = check_side(space, sc, max_len);
    slots.push_back(Slot{Check{name + " side " + sc.label, r.ok ? Verdict::Pass : Verdict::Fail, r.witness, ""},
                         std::nullopt});
  }
  if (node.rule == Rule::BruteForce && app.shape_errors.empty()) {
    Slot slot{Check{name + " leaf", Verdict::Skipped, std::nullopt, ""}, std::nullopt};
    const auto policy = options.parallel ? std::launch::async : std::launch::deferred;
    slot.leaf = std::async(policy, [&space, &node, max_len] {
      return check_bruteforce(space, node.conclusion, max_len);
    });
    slots.push_back(std::move(slot));
  }
  for (std::size_t i = 0; i < node.premises.size(); ++i) {
    walk(space, node.premises[i], path + "." + std::to_string(i), max_len, options, slots);
  }
}

}  // namespace

Report check_outline(const StateSpace& space, const ProofNode& root, std::size_t max_len, OutlineOptions options) {
  std::vector<Slot> slots;
  walk(space, root, "0", max_len, options, slots);
  Report report;
  for (Slot& slot : slots) {
    if (slot.leaf) {
      try {
        LeafResult r = slot.leaf->get();
        slot.check.verdict = r.verdict;
        slot.check.witness = std::move(r.witness);
        slot.check.detail = std::move(r.detail);
      } catch (const std::exception& e) {
        slot.check.verdict = Verdict::Fail;
        slot.check.detail = e.what();
      }
    }
    report.add(std::move(slot.check));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Parallel least-index search.

namespace {

Pred any_of(const std::vector<Pred>& ps) {
  if (ps.empty()) return ast::falsity();
  Pred out = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) out = ast::disj(out, ps[i]);
  return out;
}

Pred all_of(const std::vector<Pred>& ps) {
  if (ps.empty()) return ast::truth();
  Pred out = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) out = ast::conj(out, ps[i]);
  return out;
}

Expr num(std::int64_t v) { return ast::constant(v); }

std::int64_t largest_constant(const Expr& e) {
  if (!e) return 0;
  const std::int64_t own = e->kind == ExprNode::Kind::Const ? (e->value < 0 ? -e->value : e->value) : 0;
  return std::max({own, largest_constant(e->lhs), largest_constant(e->rhs)});
}

std::int64_t largest_constant(const Pred& p) {
  if (!p) return 0;
  return std::max({largest_constant(p->lhs), largest_constant(p->rhs), largest_constant(p->a), largest_constant(p->b)});
}
Expr var(const char* name) { return ast::var(name); }

// The element at index i_var satisfies the search predicate.
Pred found_at(const std::vector<bool>& hits, const char* i_var, std::size_t parity) {
  std::vector<Pred> cases;
  for (std::size_t i = parity; i < hits.size(); i += 2) {
    if (hits[i]) cases.push_back(ast::eq(var(i_var), num(static_cast<std::int64_t>(i))));
  }
  return any_of(cases);
}

Cmd searcher(const std::vector<bool>& hits, const char* i_var, const char* f_var, std::size_t parity) {
  const Pred running = ast::conj(ast::lt(var(i_var), var("fA")), ast::lt(var(i_var), var("fB")));
  const Cmd body = ast::if_else(found_at(hits, i_var, parity), ast::assign(f_var, var(i_var)),
                                ast::assign(i_var, ast::add(var(i_var), num(2))));
  return ast::seq(ast::assign(i_var, num(static_cast<std::int64_t>(parity))), ast::while_loop(running, body));
}

// Searcher post: its f is the array length or one of its hits, and none of its
// indices below min(fA, fB) is a hit. Stable under the other side decreasing
// its own f.
Pred searcher_post(const std::vector<bool>& hits, const char* f_var, std::size_t parity) {
  const std::int64_t len = static_cast<std::int64_t>(hits.size());
  std::vector<Pred> where{ast::eq(var(f_var), num(len))};
  std::vector<Pred> below;
  for (std::size_t i = parity; i < hits.size(); i += 2) {
    if (!hits[i]) continue;
    const Expr at = num(static_cast<std::int64_t>(i));
    where.push_back(ast::eq(var(f_var), at));
    below.push_back(ast::neg(ast::conj(ast::lt(at, var("fA")), ast::lt(at, var("fB")))));
  }
  return ast::conj(any_of(where), all_of(below));
}

}  // namespace

Findp build_findp(const std::vector<std::int64_t>& array, const Pred& p) {
  if (array.size() > 3) throw std::invalid_argument("search array longer than 3");
  std::int64_t widest = 1;
  for (std::int64_t v : array) {
    if (v < 0) throw std::invalid_argument("array elements must be non-negative");
    widest = std::max(widest, v);
  }
  // Room for the predicate's own constants and a sum of two of them, so that
  // comparisons such as v = 7 or v + 1 < 3 do not wrap around.
  widest = std::max(widest, largest_constant(p));
  const StateSpace values({"v"}, static_cast<std::uint32_t>(2 * widest + 2));
  std::vector<bool> hits;
  for (std::int64_t v : array) hits.push_back(holds(values, static_cast<StateId>(v), p));

  const std::int64_t len = static_cast<std::int64_t>(array.size());
  StateSpace space({"fA", "fB", "iA", "iB", "f"}, static_cast<std::uint32_t>(len + 2));

  const Cmd init = ast::seq(ast::assign("fA", num(len)), ast::assign("fB", num(len)));
  const Cmd a = searcher(hits, "iA", "fA", 0);
  const Cmd b = searcher(hits, "iB", "fB", 1);
  const Cmd search = ast::par(a, b);
  const Cmd pick = ast::if_else(ast::lt(var("fA"), var("fB")), ast::assign("f", var("fA")),
                                ast::assign("f", var("fB")));
  const Cmd program = ast::seq(init, ast::seq(search, pick));

  Pred least = ast::falsity();
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i]) {
      least = ast::eq(var("f"), num(static_cast<std::int64_t>(i)));
      break;
    }
  }
  const Condition goal_post = end_of(ast::disj(least, ast::eq(var("f"), num(len))));
  const Quintuple goal{ast::id(), ast::top(), end_of(ast::truth()), goal_post, program};

  const RelExpr guar_a = ast::rel_and(ast::unchanged({"iB", "fB", "f"}), ast::decreasing("fA"));
  const RelExpr guar_b = ast::rel_and(ast::unchanged({"iA", "fA", "f"}), ast::decreasing("fB"));
  const Condition ready = end_of(ast::conj(ast::eq(var("fA"), num(len)), ast::eq(var("fB"), num(len))));
  const Condition post_a = end_of(searcher_post(hits, "fA", 0));
  const Condition post_b = end_of(searcher_post(hits, "fB", 1));
  const Condition searched = meet(post_a, post_b);

  ProofNode leaf_a{Rule::BruteForce, Quintuple{guar_b, guar_a, ready, post_a, a}, {}};
  ProofNode leaf_b{Rule::BruteForce, Quintuple{guar_a, guar_b, ready, post_b, b}, {}};
  ProofNode par{Rule::Parallel,
                Quintuple{ast::rel_and(guar_b, guar_a), ast::rel_or(guar_a, guar_b), meet(ready, ready), searched,
                          search},
                {leaf_a, leaf_b}};
  ProofNode weakened{Rule::Weakening, Quintuple{ast::id(), ast::top(), ready, searched, search}, {par}};
  ProofNode finish{Rule::BruteForce, Quintuple{ast::id(), ast::top(), searched, goal_post, pick}, {}};
  ProofNode tail{Rule::Sequential, Quintuple{ast::id(), ast::top(), ready, goal_post, ast::seq(search, pick)},
                 {weakened, finish}};
  ProofNode start{Rule::BruteForce, Quintuple{ast::id(), ast::top(), end_of(ast::truth()), ready, init}, {}};
  ProofNode root{Rule::Sequential, goal, {start, tail}};

  return Findp{std::move(space), program, goal, std::move(root), std::move(hits)};
}

Report findp_scaled(const std::vector<std::int64_t>& array, const Pred& p, std::size_t max_len,
                    OutlineOptions options) {
  const Findp f = build_findp(array, p);
  Report report;
  report.append(check_outline(f.space, f.outline, max_len, options), "outline ");
  const LeafResult direct = check_bruteforce(f.space, f.goal, max_len);
  report.add(Check{"goal FINDP <=pi end(leastP(f)) + end(f = len)", direct.verdict, direct.witness, direct.detail});
  return report;
}

}  // namespace rgk
