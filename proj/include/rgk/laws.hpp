#ifndef RGK_LAWS_HPP
#define RGK_LAWS_HPP

// Seeded randomized sweeps over the algebraic laws. Every sweep reports one
// check per law: the number of instances tried, how many of them satisfied
// the law's antecedent (for implications), and the first counterexample.

#include <cstddef>
#include <cstdint>

#include "rgk/report.hpp"

namespace rgk {

struct SweepConfig {
  std::uint64_t seed = 42;
  /// Largest alphabet (state count) used by the language-level sweeps.
  std::size_t states = 3;
  /// Largest word length used by the language-level sweeps.
  std::size_t max_len = 4;
  /// Instances per sweep; 0 selects each sweep's own default.
  std::size_t instances = 0;
};

// Language algebra.
Report sweep_trioid(const SweepConfig& cfg);
Report sweep_interchange(const SweepConfig& cfg);
Report sweep_kleene(const SweepConfig& cfg);
Report sweep_galois(const SweepConfig& cfg);
Report sweep_truncation(const SweepConfig& cfg);
Report sweep_while_rule(const SweepConfig& cfg);
Report sweep_word_shuffle(const SweepConfig& cfg);

// Rely-guarantee layer.
Report sweep_rely_axioms(const SweepConfig& cfg);
Report sweep_pi(const SweepConfig& cfg);
Report sweep_atomic(const SweepConfig& cfg);
Report sweep_encoding(const SweepConfig& cfg);

// Programs and rules. These pick their own small state spaces (at most two
// variables over values 0..3); cfg.states and cfg.max_len do not apply.
Report sweep_program_laws(const SweepConfig& cfg);
Report sweep_assignment(const SweepConfig& cfg);
Report sweep_rule_soundness(const SweepConfig& cfg);
/// Looks for rule applications whose premises and side conditions hold on
/// the truncated languages at a small bound while the conclusion does not.
/// Informational: findings are reported in the detail, never as failures.
Report probe_truncation(const SweepConfig& cfg);

/// All language-algebra sweeps.
Report run_law_suite(const SweepConfig& cfg);
/// All rely-guarantee, program and rule sweeps.
Report run_axiom_suite(const SweepConfig& cfg);

}  // namespace rgk

#endif  // RGK_LAWS_HPP
