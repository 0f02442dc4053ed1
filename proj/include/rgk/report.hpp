#ifndef RGK_REPORT_HPP
#define RGK_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgk/trace.hpp"

namespace rgk {

enum class Verdict { Pass, Fail, BoundInsufficient, Skipped };

std::string_view to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::optional<Word> witness;
  std::string detail;

  [[nodiscard]] bool passed() const { return verdict == Verdict::Pass || verdict == Verdict::Skipped; }
};

/// An ordered list of named checks. Sweeps add one check per law; a failed
/// check carries the first counterexample word found.
class Report {
 public:
  void add(Check check) { checks_.push_back(std::move(check)); }
  void add(std::string name, bool ok, std::optional<Word> witness = std::nullopt,
           std::string detail = {});
  void append(const Report& other, std::string_view prefix = {});

  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }
  [[nodiscard]] const Check* find(std::string_view name) const;
  /// Fail dominates BoundInsufficient, which dominates Pass.
  [[nodiscard]] Verdict overall() const;
  [[nodiscard]] bool passed() const { return overall() == Verdict::Pass; }
  [[nodiscard]] std::string text() const;

 private:
  std::vector<Check> checks_;
};

/// Combine two verdicts with the same precedence as Report::overall.
Verdict worst(Verdict a, Verdict b);

}  // namespace rgk

#endif  // RGK_REPORT_HPP
