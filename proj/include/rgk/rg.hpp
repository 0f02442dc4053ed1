#ifndef RGK_RG_HPP
#define RGK_RG_HPP

// Rely-guarantee layer over bounded trace languages: relation lifting,
// consistency and the retraction onto consistent words, the interference
// axioms as checkable predicates, and both quintuple encodings.

#include <optional>

#include "rgk/report.hpp"
#include "rgk/state.hpp"
#include "rgk/trace.hpp"

namespace rgk {

/// Length-one words, one per pair of `r`.
Lang lift(const Relation& r, Bound bound);

/// Adjacent letters chain: post of letter k equals pre of letter k+1.
bool consistent(const Word& w);
Lang pi(const Lang& x);
bool leq_pi(const Lang& x, const Lang& y);
/// A consistent word of x outside y, if one exists.
std::optional<Word> leq_pi_witness(const Lang& x, const Lang& y);
/// Every inconsistent word of the universe at `bound`.
Lang inconsistent_universe(Bound bound);

/// An interference constraint <R>*, kept as its generating relation.
struct Rely {
  Relation relation;
};

Lang materialize(const Rely& r, Bound bound);

/// <R>* || x, computed by inserting runs of R-letters around the letters of
/// each word of x.
Lang rely_shuffle(const Relation& r, const Lang& x, Bound bound);
/// pi(<R>* || x), generated directly with inconsistent prefixes pruned.
Lang consistent_rely_shuffle(const Relation& r, const Lang& x, Bound bound);

/// True iff every letter of every word of x is a pair of g, i.e.
/// leq(x, materialize(g, x.bound())).
bool within(const Lang& x, const Relation& g);

/// Axioms r||r <= r, r <= r||r2, r||(x.y) = (r||x).(r||y), r||x+ <= (r||x)+.
Report check_rg_axioms(const Rely& r, const Rely& r2, const Lang& x, const Lang& y, Bound bound);
/// The four conditions tying pi to star and product.
Report check_con_axioms(const Lang& x, const Lang& y, const Lang& z, Bound bound);
/// 1 <= r, r* = r, r.r = r, r||r = r.
Report derived_rely_facts(const Rely& r, Bound bound);
/// <R>*||<S> = <R>*;<S>;<R>* and <R>*||<S>* = (<R>*;<S>*)*.
Report atomic_identities(const Relation& r, const Relation& s, Bound bound);
/// Meet and shuffle of two relies are again relies (intersection / union).
Report i_closure(const Relation& r, const Relation& s, Bound bound);
/// Retraction and Kleene-algebra laws on pi-images of a, b, c.
Report pi_image_laws(const Lang& a, const Lang& b, const Lang& c, Bound bound);

struct QuintupleVerdict {
  bool post_ok = true;
  bool guar_ok = true;
  std::optional<Word> witness;

  [[nodiscard]] bool holds() const { return post_ok && guar_ok; }
};

/// p.(r||x) <=_pi q  and  x <= g.
QuintupleVerdict quintuple_check(const Lang& p, const Rely& r, const Lang& x, const Lang& q,
                                 const Rely& g, Bound bound);
bool quintuple_holds(const Lang& p, const Rely& r, const Lang& x, const Lang& q, const Rely& g,
                     Bound bound);
/// x <= r/(p -> (q + ~C)) meet g, where ~C is the set of inconsistent words:
/// the refinement encoding with its inclusion read modulo pi.
bool quintuple_refine_holds(const Lang& p, const Rely& r, const Lang& x, const Lang& q,
                            const Rely& g, Bound bound);

}  // namespace rgk

#endif  // RGK_RG_HPP
