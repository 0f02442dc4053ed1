#include "rgk/rgk.h"

#include <cctype>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgk/laws.hpp"
#include "rgk/program.hpp"
#include "rgk/report.hpp"
#include "rgk/state.hpp"
#include "rgk/syntax.hpp"
#include "rgk/verifier.hpp"

struct rgk_session {
  rgk::StateSpace space;
  std::size_t bound;
  std::uint64_t seed;
  std::size_t instances = 0;
  bool parallel = true;
};

struct rgk_report {
  rgk::Report report;
  std::optional<rgk::StateSpace> space;
};

namespace {

thread_local std::string last_error;

rgk_status fail(rgk_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
rgk_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const rgk::ParseError& e) {
    return fail(RGK_ERR_PARSE, e.what());
  } catch (const std::length_error& e) {
    return fail(RGK_ERR_TOO_LARGE, e.what());
  } catch (const std::out_of_range& e) {
    return fail(RGK_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RGK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RGK_ERR_TOO_LARGE, "out of memory");
  } catch (const std::exception& e) {
    return fail(RGK_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_variables(const char* text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    const auto first = current.find_first_not_of(" \t");
    const auto last = current.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(current.substr(first, last - first + 1));
    current.clear();
  };
  for (const char* p = text; *p != '\0'; ++p) {
    if (*p == ',') {
      flush();
    } else {
      current.push_back(*p);
    }
  }
  flush();
  return out;
}

bool identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

void validate_condition(const rgk::StateSpace& space, const rgk::Condition& c) { rgk::validate(space, c.pred); }

void validate_node(const rgk::StateSpace& space, const rgk::ProofNode& node) {
  const rgk::Quintuple& q = node.conclusion;
  rgk::validate(space, q.rely);
  rgk::validate(space, q.guar);
  validate_condition(space, q.pre);
  validate_condition(space, q.post);
  rgk::validate(space, q.prog);
  for (const auto& p : node.premises) validate_node(space, p);
}

rgk_report* wrap(rgk::Report report, std::optional<rgk::StateSpace> space) {
  return new rgk_report{std::move(report), std::move(space)};
}

rgk::SweepConfig sweep_config(const rgk_session& s) {
  return rgk::SweepConfig{s.seed, s.space.size(), s.bound, s.instances};
}

}  // namespace

extern "C" {

const char* rgk_status_string(rgk_status status) {
  switch (status) {
    case RGK_OK: return "ok";
    case RGK_ERR_NULL_ARGUMENT: return "null argument";
    case RGK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RGK_ERR_PARSE: return "parse error";
    case RGK_ERR_STATE_LIMIT: return "state space too large";
    case RGK_ERR_TOO_LARGE: return "problem too large";
    case RGK_ERR_OUT_OF_RANGE: return "index out of range";
    case RGK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rgk_verdict_string(rgk_verdict verdict) {
  switch (verdict) {
    case RGK_PASS: return "pass";
    case RGK_FAIL: return "fail";
    case RGK_BOUND_INSUFFICIENT: return "bound-insufficient";
    case RGK_SKIPPED: return "skipped";
  }
  return "unknown verdict";
}

const char* rgk_last_error(void) { return last_error.c_str(); }

const char* rgk_version(void) { return "1.0.0"; }

rgk_status rgk_session_create(const char* variables, uint32_t domain, size_t bound, uint64_t seed,
                              size_t state_ceiling, rgk_session** out) {
  if (variables == nullptr || out == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "variables and out are required");
  *out = nullptr;
  return guarded([&] {
    const std::size_t ceiling = state_ceiling == 0 ? rgk::kDefaultStateCeiling : state_ceiling;
    auto names = split_variables(variables);
    if (names.empty()) return fail(RGK_ERR_INVALID_ARGUMENT, "at least one variable is required");
    for (const auto& n : names) {
      if (!identifier(n)) return fail(RGK_ERR_INVALID_ARGUMENT, "'" + n + "' is not a variable name");
    }
    if (domain < 2) return fail(RGK_ERR_INVALID_ARGUMENT, "domain size must be at least 2");
    if (bound < 1) return fail(RGK_ERR_INVALID_ARGUMENT, "bound must be at least 1");
    std::size_t states = 1;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (states > ceiling / domain) {
        return fail(RGK_ERR_STATE_LIMIT, std::to_string(domain) + "^" + std::to_string(names.size()) +
                                             " states exceed the ceiling of " + std::to_string(ceiling));
      }
      states *= domain;
    }
    *out = new rgk_session{rgk::StateSpace(std::move(names), domain, ceiling), bound, seed};
    return RGK_OK;
  });
}

void rgk_session_destroy(rgk_session* session) { delete session; }

size_t rgk_session_state_count(const rgk_session* session) { return session ? session->space.size() : 0; }

rgk_status rgk_session_set_instances(rgk_session* session, size_t instances) {
  if (session == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "session is required");
  session->instances = instances;
  return RGK_OK;
}

rgk_status rgk_session_set_parallel(rgk_session* session, int enabled) {
  if (session == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "session is required");
  session->parallel = enabled != 0;
  return RGK_OK;
}

rgk_status rgk_run_laws(rgk_session* session, rgk_report** out) {
  if (session == nullptr || out == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "session and out are required");
  *out = nullptr;
  return guarded([&] {
    *out = wrap(rgk::run_law_suite(sweep_config(*session)), std::nullopt);
    return RGK_OK;
  });
}

rgk_status rgk_run_axioms(rgk_session* session, rgk_report** out) {
  if (session == nullptr || out == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "session and out are required");
  *out = nullptr;
  return guarded([&] {
    *out = wrap(rgk::run_axiom_suite(sweep_config(*session)), std::nullopt);
    return RGK_OK;
  });
}

rgk_status rgk_verify(rgk_session* session, const char* spec, const char* program, const char* outline,
                      rgk_report** out) {
  if (session == nullptr || spec == nullptr || program == nullptr || out == nullptr) {
    return fail(RGK_ERR_NULL_ARGUMENT, "session, spec, program and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    const rgk::StateSpace& space = session->space;
    const rgk::SpecParts parts = rgk::parse_spec(spec);
    const rgk::Quintuple q{parts.rely, parts.guar, parts.pre, parts.post, rgk::parse_program(program)};
    rgk::ProofNode root{rgk::Rule::BruteForce, q, {}};
    if (outline != nullptr) {
      root = rgk::parse_outline(outline);
    }
    validate_node(space, root);
    validate_node(space, rgk::ProofNode{rgk::Rule::BruteForce, q, {}});
    if (outline != nullptr && !rgk::same_quintuple(space, root.conclusion, q, session->bound)) {
      return fail(RGK_ERR_INVALID_ARGUMENT, "the outline's root does not prove the given spec and program");
    }
    *out = wrap(rgk::check_outline(space, root, session->bound, rgk::OutlineOptions{session->parallel}), space);
    return RGK_OK;
  });
}

rgk_status rgk_findp(rgk_session* session, const int64_t* array, size_t length, const char* predicate,
                     rgk_report** out) {
  if (session == nullptr || predicate == nullptr || out == nullptr || (array == nullptr && length > 0)) {
    return fail(RGK_ERR_NULL_ARGUMENT, "session, predicate, array and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    const std::vector<std::int64_t> values(array, array + length);
    const rgk::Pred p = rgk::parse_pred(predicate);
    rgk::validate(rgk::StateSpace({"v"}, 2), p);
    const rgk::Findp f = rgk::build_findp(values, p);
    *out = wrap(rgk::findp_scaled(values, p, session->bound, rgk::OutlineOptions{session->parallel}), f.space);
    return RGK_OK;
  });
}

rgk_status rgk_dump(rgk_session* session, const char* program, char** out) {
  if (session == nullptr || program == nullptr || out == nullptr) {
    return fail(RGK_ERR_NULL_ARGUMENT, "session, program and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    const rgk::Cmd c = rgk::parse_program(program);
    rgk::validate(session->space, c);
    const rgk::Lang l = rgk::denote(session->space, c, session->space.bound(session->bound));
    *out = copy_string(rgk::dump(l));
    return RGK_OK;
  });
}

void rgk_string_free(char* text) { delete[] text; }

void rgk_report_destroy(rgk_report* report) { delete report; }

size_t rgk_report_count(const rgk_report* report) { return report ? report->report.checks().size() : 0; }

rgk_verdict rgk_report_overall(const rgk_report* report) {
  if (report == nullptr) return RGK_FAIL;
  return static_cast<rgk_verdict>(report->report.overall());
}

rgk_status rgk_report_check(const rgk_report* report, size_t index, const char** name, rgk_verdict* verdict,
                            const char** detail) {
  if (report == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "report is required");
  const auto& checks = report->report.checks();
  if (index >= checks.size()) return fail(RGK_ERR_OUT_OF_RANGE, "check index out of range");
  const rgk::Check& c = checks[index];
  if (name) *name = c.name.c_str();
  if (verdict) *verdict = static_cast<rgk_verdict>(c.verdict);
  if (detail) *detail = c.detail.c_str();
  return RGK_OK;
}

size_t rgk_report_witness_length(const rgk_report* report, size_t index) {
  if (report == nullptr || index >= report->report.checks().size()) return 0;
  const auto& w = report->report.checks()[index].witness;
  return w ? w->size() : 0;
}

rgk_status rgk_report_witness_letter(const rgk_report* report, size_t index, size_t position, uint32_t* pre,
                                     uint32_t* post) {
  if (report == nullptr || pre == nullptr || post == nullptr) {
    return fail(RGK_ERR_NULL_ARGUMENT, "report, pre and post are required");
  }
  if (index >= report->report.checks().size()) return fail(RGK_ERR_OUT_OF_RANGE, "check index out of range");
  const auto& w = report->report.checks()[index].witness;
  if (!w || position >= w->size()) return fail(RGK_ERR_OUT_OF_RANGE, "witness position out of range");
  *pre = (*w)[position].pre;
  *post = (*w)[position].post;
  return RGK_OK;
}

rgk_status rgk_report_describe_state(const rgk_report* report, uint32_t state, char** out) {
  if (report == nullptr || out == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "report and out are required");
  *out = nullptr;
  if (!report->space) return fail(RGK_ERR_INVALID_ARGUMENT, "this report has no state space");
  if (state >= report->space->size()) return fail(RGK_ERR_OUT_OF_RANGE, "state id out of range");
  return guarded([&] {
    *out = copy_string(report->space->describe(state));
    return RGK_OK;
  });
}

rgk_status rgk_report_text(const rgk_report* report, char** out) {
  if (report == nullptr || out == nullptr) return fail(RGK_ERR_NULL_ARGUMENT, "report and out are required");
  return guarded([&] {
    *out = copy_string(report->report.text());
    return RGK_OK;
  });
}

}  // extern "C"
