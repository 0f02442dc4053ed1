#include "rgk/rg.hpp"

#include <algorithm>

namespace rgk {

namespace {

Lang singleton(Bound bound, Word w) { return make_lang_unchecked(bound, {std::move(w)}); }

// First word of x missing from y.
std::optional<Word> first_outside(const Lang& x, const Lang& y) {
  for (const Word& w : x) {
    if (!y.contains(w)) return w;
  }
  return std::nullopt;
}

void add_leq(Report& report, std::string name, const Lang& x, const Lang& y) {
  auto w = first_outside(x, y);
  report.add(std::move(name), !w.has_value(), w);
}

void add_eq(Report& report, std::string name, const Lang& x, const Lang& y) {
  auto w = first_outside(x, y);
  if (!w) w = first_outside(y, x);
  report.add(std::move(name), !w.has_value(), w);
}

void add_leq_pi(Report& report, std::string name, const Lang& x, const Lang& y) {
  auto w = leq_pi_witness(x, y);
  report.add(std::move(name), !w.has_value(), w);
}

void extend_consistent(const Relation& r, const Word& x, std::size_t pos, Word& current,
                       std::size_t max_len, std::vector<Word>& out) {
  if (pos == x.size()) out.push_back(current);
  if (current.size() == max_len) return;
  const bool started = !current.empty();
  const StateId at = started ? current.back().post : 0;
  if (pos < x.size() && (!started || x[pos].pre == at)) {
    current.push_back(x[pos]);
    extend_consistent(r, x, pos + 1, current, max_len, out);
    current.pop_back();
  }
  if (started) {
    for (StateId next : r.successors(at)) {
      current.push_back({at, next});
      extend_consistent(r, x, pos, current, max_len, out);
      current.pop_back();
    }
  } else {
    for (auto [a, b] : r.pairs()) {
      current.push_back({a, b});
      extend_consistent(r, x, pos, current, max_len, out);
      current.pop_back();
    }
  }
}

}  // namespace

Lang lift(const Relation& r, Bound bound) {
  if (r.states() != bound.states) throw BoundMismatch("lift: relation over a different state space");
  std::vector<Word> out;
  if (bound.max_len >= 1) {
    for (auto [a, b] : r.pairs()) out.push_back(Word{{a, b}});
  }
  return make_lang_unchecked(bound, std::move(out));
}

bool consistent(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1].post != w[i].pre) return false;
  }
  return true;
}

Lang pi(const Lang& x) {
  std::vector<Word> out;
  for (const Word& w : x) {
    if (consistent(w)) out.push_back(w);
  }
  return make_lang_unchecked(x.bound(), std::move(out));
}

std::optional<Word> leq_pi_witness(const Lang& x, const Lang& y) {
  if (x.bound() != y.bound()) throw BoundMismatch("leq_pi: operands computed under different bounds");
  for (const Word& w : x) {
    if (consistent(w) && !y.contains(w)) return w;
  }
  return std::nullopt;
}

bool leq_pi(const Lang& x, const Lang& y) { return !leq_pi_witness(x, y).has_value(); }

Lang inconsistent_universe(Bound bound) {
  std::vector<Word> out;
  for (const Word& w : universe(bound)) {
    if (!consistent(w)) out.push_back(w);
  }
  return make_lang_unchecked(bound, std::move(out));
}

Lang materialize(const Rely& r, Bound bound) { return star(lift(r.relation, bound), bound); }

Lang rely_shuffle(const Relation& r, const Lang& x, Bound bound) {
  const Lang steps = materialize(Rely{r}, bound);
  Lang result = zero(bound);
  for (const Word& w : x) {
    if (w.size() > bound.max_len) continue;
    Lang acc = steps;
    for (const Letter& a : w) {
      acc = concat(concat(acc, singleton(bound, Word{a}), bound), steps, bound);
    }
    result = join(result, acc);
  }
  return result;
}

Lang consistent_rely_shuffle(const Relation& r, const Lang& x, Bound bound) {
  if (r.states() != bound.states) throw BoundMismatch("rely over a different state space");
  std::vector<Word> out;
  Word current;
  for (const Word& w : x) {
    if (w.size() > bound.max_len) continue;
    extend_consistent(r, w, 0, current, bound.max_len, out);
  }
  return make_lang_unchecked(bound, std::move(out));
}

bool within(const Lang& x, const Relation& g) {
  for (const Word& w : x) {
    for (const Letter& a : w) {
      if (!g.contains(a.pre, a.post)) return false;
    }
  }
  return true;
}

Report check_rg_axioms(const Rely& r, const Rely& r2, const Lang& x, const Lang& y, Bound bound) {
  Report report;
  const Lang rm = materialize(r, bound);
  const Lang rm2 = materialize(r2, bound);
  add_leq(report, "rg1 r||r <= r", shuffle(rm, rm, bound), rm);
  add_leq(report, "rg2 r <= r||r'", rm, shuffle(rm, rm2, bound));

  const Lang lhs3 = shuffle(rm, concat(x, y, bound), bound);
  const Lang rhs3 = concat(shuffle(rm, x, bound), shuffle(rm, y, bound), bound);
  add_leq(report, "rg3 r||(x.y) <= (r||x).(r||y)", lhs3, rhs3);
  add_leq(report, "rg3 (r||x).(r||y) <= r||(x.y)", rhs3, lhs3);

  const Lang lhs4 = shuffle(rm, plus(x, bound), bound);
  const Lang rhs4 = plus(shuffle(rm, x, bound), bound);
  add_leq(report, "rg4 r||x+ <= (r||x)+", lhs4, rhs4);
  add_leq(report, "rg4 (r||x)+ <= r||x+", rhs4, lhs4);
  return report;
}

Report check_con_axioms(const Lang& x, const Lang& y, const Lang& z, Bound bound) {
  Report report;
  add_leq_pi(report, "con1 x* <=pi pi(x)*", star(x, bound), star(pi(x), bound));
  add_leq_pi(report, "con2 x.y <=pi pi(x).pi(y)", concat(x, y, bound), concat(pi(x), pi(y), bound));

  if (leq_pi(join(z, concat(x, y, bound)), y)) {
    add_leq_pi(report, "con3 x*.z <=pi y", concat(star(x, bound), z, bound), y);
  } else {
    report.add(Check{"con3 x*.z <=pi y", Verdict::Pass, std::nullopt, "antecedent false"});
  }
  if (leq_pi(join(z, concat(y, x, bound)), y)) {
    add_leq_pi(report, "con4 z.x* <=pi y", concat(z, star(x, bound), bound), y);
  } else {
    report.add(Check{"con4 z.x* <=pi y", Verdict::Pass, std::nullopt, "antecedent false"});
  }
  return report;
}

Report derived_rely_facts(const Rely& r, Bound bound) {
  Report report;
  const Lang rm = materialize(r, bound);
  add_leq(report, "1 <= r", one(bound), rm);
  add_eq(report, "r* = r", star(rm, bound), rm);
  add_eq(report, "r.r = r", concat(rm, rm, bound), rm);
  add_eq(report, "r||r = r", shuffle(rm, rm, bound), rm);
  return report;
}

Report atomic_identities(const Relation& r, const Relation& s, Bound bound) {
  Report report;
  const Lang rs = materialize(Rely{r}, bound);
  const Lang ss = materialize(Rely{s}, bound);
  const Lang step = lift(s, bound);
  add_eq(report, "<R>*||<S> = <R>*;<S>;<R>*", shuffle(rs, step, bound),
         concat(concat(rs, step, bound), rs, bound));
  add_eq(report, "<R>*||<S>* = (<R>*;<S>*)*", shuffle(rs, ss, bound),
         star(concat(rs, ss, bound), bound));
  return report;
}

Report i_closure(const Relation& r, const Relation& s, Bound bound) {
  Report report;
  const Lang rs = materialize(Rely{r}, bound);
  const Lang ss = materialize(Rely{s}, bound);
  add_eq(report, "<R>* meet <S>* = <R & S>*", meet(rs, ss), materialize(Rely{r & s}, bound));
  add_eq(report, "<R>* || <S>* = <R | S>*", shuffle(rs, ss, bound), materialize(Rely{r | s}, bound));
  return report;
}

Report pi_image_laws(const Lang& a0, const Lang& b0, const Lang& c0, Bound bound) {
  Report report;
  add_eq(report, "pi retraction pi(pi(x)) = pi(x)", pi(pi(a0)), pi(a0));
  add_leq(report, "pi deflationary pi(x) <= x", pi(a0), a0);
  if (leq(a0, join(a0, b0))) {
    add_leq(report, "pi monotone", pi(a0), pi(join(a0, b0)));
  }

  const Lang a = pi(a0);
  const Lang b = pi(b0);
  const Lang c = pi(c0);
  auto dot = [&](const Lang& x, const Lang& y) { return pi(concat(x, y, bound)); };
  auto st = [&](const Lang& x) { return pi(star(x, bound)); };

  add_eq(report, "image closed under +", pi(join(a, b)), join(a, b));
  add_eq(report, "image closed under meet", pi(meet(a, b)), meet(a, b));
  add_eq(report, "pi-product associative", dot(dot(a, b), c), dot(a, dot(b, c)));
  add_eq(report, "pi-product left unit", dot(one(bound), a), a);
  add_eq(report, "pi-product right unit", dot(a, one(bound)), a);
  add_eq(report, "pi-product annihilation", dot(zero(bound), a), zero(bound));
  add_eq(report, "pi-product left distributive", dot(a, join(b, c)), join(dot(a, b), dot(a, c)));
  add_eq(report, "pi-product right distributive", dot(join(a, b), c), join(dot(a, c), dot(b, c)));
  add_eq(report, "pi-star unfold 1 + a.a* = a*", join(one(bound), dot(a, st(a))), st(a));

  // Induction laws, exercised on a b chosen so the antecedent holds.
  const Lang left_fixed = dot(st(a), join(c, b));
  if (leq(join(c, dot(a, left_fixed)), left_fixed)) {
    add_leq(report, "pi-star left induction", dot(st(a), c), left_fixed);
  } else {
    report.add("pi-star left induction antecedent", false, std::nullopt,
               "constructed fixed point is not closed");
  }
  const Lang right_fixed = dot(join(c, b), st(a));
  if (leq(join(c, dot(right_fixed, a)), right_fixed)) {
    add_leq(report, "pi-star right induction", dot(c, st(a)), right_fixed);
  } else {
    report.add("pi-star right induction antecedent", false, std::nullopt,
               "constructed fixed point is not closed");
  }
  return report;
}

QuintupleVerdict quintuple_check(const Lang& p, const Rely& r, const Lang& x, const Lang& q,
                                 const Rely& g, Bound bound) {
  QuintupleVerdict verdict;
  // Consistent words of p.(r||x) have consistent factors, so only pi(p) and
  // pi(r||x) contribute.
  const Lang traces = pi(concat(pi(truncate(p, bound)),
                                consistent_rely_shuffle(r.relation, truncate(x, bound), bound), bound));
  if (auto w = leq_pi_witness(traces, truncate(q, bound))) {
    verdict.post_ok = false;
    verdict.witness = std::move(w);
  }
  for (const Word& w : x) {
    if (w.size() > bound.max_len) continue;
    for (const Letter& a : w) {
      if (!g.relation.contains(a.pre, a.post)) {
        verdict.guar_ok = false;
        if (!verdict.witness) verdict.witness = w;
        break;
      }
    }
    if (!verdict.guar_ok) break;
  }
  return verdict;
}

bool quintuple_holds(const Lang& p, const Rely& r, const Lang& x, const Lang& q, const Rely& g,
                     Bound bound) {
  return quintuple_check(p, r, x, q, g, bound).holds();
}

bool quintuple_refine_holds(const Lang& p, const Rely& r, const Lang& x, const Lang& q,
                            const Rely& g, Bound bound) {
  const Lang target = join(truncate(q, bound), inconsistent_universe(bound));
  const Lang after_p = residual_right(truncate(p, bound), target, bound);
  const Lang spec = meet(residual_par(materialize(r, bound), after_p, bound), materialize(g, bound));
  return leq(truncate(x, bound), spec);
}

}  // namespace rgk
