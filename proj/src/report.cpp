#include "rgk/report.hpp"

#include <sstream>

namespace rgk {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::BoundInsufficient: return "bound-insufficient";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

Verdict worst(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::Fail: return 3;
      case Verdict::BoundInsufficient: return 2;
      case Verdict::Pass: return 1;
      case Verdict::Skipped: return 0;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

void Report::add(std::string name, bool ok, std::optional<Word> witness, std::string detail) {
  checks_.push_back(Check{std::move(name), ok ? Verdict::Pass : Verdict::Fail,
                          ok ? std::nullopt : std::move(witness), std::move(detail)});
}

void Report::append(const Report& other, std::string_view prefix) {
  for (Check c : other.checks_) {
    if (!prefix.empty()) c.name = std::string(prefix) + c.name;
    checks_.push_back(std::move(c));
  }
}

const Check* Report::find(std::string_view name) const {
  for (const Check& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Verdict Report::overall() const {
  Verdict v = Verdict::Pass;
  for (const Check& c : checks_) {
    if (c.verdict != Verdict::Skipped) v = worst(v, c.verdict);
  }
  return v;
}

std::string Report::text() const {
  std::ostringstream os;
  for (const Check& c : checks_) {
    os << '[' << to_string(c.verdict) << "] " << c.name;
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << '\n';
    if (c.witness) os << "    witness: " << to_string(*c.witness) << '\n';
  }
  os << "overall: " << to_string(overall()) << '\n';
  return os.str();
}

}  // namespace rgk
