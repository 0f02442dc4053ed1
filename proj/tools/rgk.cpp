// Command-line front end over the C interface.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration or parse
// error, 3 some check needs a larger bound.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rgk/rgk.h"

namespace {

using json = nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBound = 3;

struct Options {
  std::string mode = "laws";
  std::uint32_t domain = 3;
  std::string vars = "x";
  std::size_t bound = 4;
  std::uint64_t seed = 42;
  std::size_t instances = 0;
  std::string program_file;
  std::string spec_file;
  std::string outline_file;
  std::string report = "text";
  bool dump = false;
  bool serial = false;
  std::vector<std::int64_t> array;
  std::string predicate = "v = 1";
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SessionDeleter {
  void operator()(rgk_session* s) const { rgk_session_destroy(s); }
};
struct ReportDeleter {
  void operator()(rgk_report* r) const { rgk_report_destroy(r); }
};
using Session = std::unique_ptr<rgk_session, SessionDeleter>;
using ReportHandle = std::unique_ptr<rgk_report, ReportDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  rgk_string_free(s);
  return out;
}

void check_status(rgk_status st) {
  if (st != RGK_OK) throw ConfigError(std::string(rgk_status_string(st)) + ": " + rgk_last_error());
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot read ") + what + " file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Labeled {
  std::string prefix;
  ReportHandle report;
};

std::string witness_text(const rgk_report* r, std::size_t i) {
  std::string out;
  for (std::size_t k = 0; k < rgk_report_witness_length(r, i); ++k) {
    std::uint32_t a = 0, b = 0;
    rgk_report_witness_letter(r, i, k, &a, &b);
    out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return out;
}

std::optional<std::string> describe(const rgk_report* r, std::uint32_t s) {
  char* text = nullptr;
  if (rgk_report_describe_state(r, s, &text) != RGK_OK) return std::nullopt;
  return take_string(text);
}

json checks_json(const std::vector<Labeled>& reports) {
  json out = json::array();
  for (const auto& [prefix, handle] : reports) {
    const rgk_report* r = handle.get();
    for (std::size_t i = 0; i < rgk_report_count(r); ++i) {
      const char* name = nullptr;
      const char* detail = nullptr;
      rgk_verdict v = RGK_PASS;
      rgk_report_check(r, i, &name, &v, &detail);
      json c{{"name", prefix + name}, {"verdict", rgk_verdict_string(v)}, {"detail", detail}};
      const std::size_t n = rgk_report_witness_length(r, i);
      if (n > 0) {
        json letters = json::array();
        json states = json::array();
        for (std::size_t k = 0; k < n; ++k) {
          std::uint32_t a = 0, b = 0;
          rgk_report_witness_letter(r, i, k, &a, &b);
          letters.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
          auto da = describe(r, a), db = describe(r, b);
          if (da && db) states.push_back(json::array({*da, *db}));
        }
        c["witness"] = letters;
        if (!states.empty()) c["witness_states"] = states;
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

void print_text(const std::vector<Labeled>& reports, std::ostream& os) {
  for (const auto& [prefix, handle] : reports) {
    const rgk_report* r = handle.get();
    for (std::size_t i = 0; i < rgk_report_count(r); ++i) {
      const char* name = nullptr;
      const char* detail = nullptr;
      rgk_verdict v = RGK_PASS;
      rgk_report_check(r, i, &name, &v, &detail);
      os << '[' << rgk_verdict_string(v) << "] " << prefix << name;
      if (detail && *detail) os << " -- " << detail;
      os << '\n';
      if (rgk_report_witness_length(r, i) > 0) {
        os << "    witness: " << witness_text(r, i) << '\n';
        for (std::size_t k = 0; k < rgk_report_witness_length(r, i); ++k) {
          std::uint32_t a = 0, b = 0;
          rgk_report_witness_letter(r, i, k, &a, &b);
          auto da = describe(r, a), db = describe(r, b);
          if (da && db) os << "      " << *da << "  ->  " << *db << '\n';
        }
      }
    }
  }
}

int exit_code_for(const std::vector<Labeled>& reports) {
  bool bound = false;
  for (const auto& l : reports) {
    switch (rgk_report_overall(l.report.get())) {
      case RGK_FAIL: return kExitFail;
      case RGK_BOUND_INSUFFICIENT: bound = true; break;
      default: break;
    }
  }
  return bound ? kExitBound : kExitPass;
}

std::string array_label(const std::vector<std::int64_t>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + "]";
}

json config_json(const Options& o) {
  json c{{"mode", o.mode},   {"domain", o.domain},       {"vars", o.vars},   {"bound", o.bound},
         {"seed", o.seed},   {"instances", o.instances}, {"report", o.report}};
  if (!o.program_file.empty()) c["program"] = o.program_file;
  if (!o.spec_file.empty()) c["spec"] = o.spec_file;
  if (!o.outline_file.empty()) c["outline"] = o.outline_file;
  if (o.mode == "findp") {
    c["predicate"] = o.predicate;
    if (!o.array.empty()) c["array"] = o.array;
  }
  return c;
}

struct Outcome {
  std::vector<Labeled> reports;
  std::optional<std::string> denotation;
};

Outcome execute(const Options& o) {
  rgk_session* raw = nullptr;
  check_status(rgk_session_create(o.vars.c_str(), o.domain, o.bound, o.seed, 0, &raw));
  Session session(raw);
  check_status(rgk_session_set_instances(session.get(), o.instances));
  check_status(rgk_session_set_parallel(session.get(), o.serial ? 0 : 1));

  Outcome out;
  auto add = [&](std::string prefix, rgk_report* r) { out.reports.push_back({std::move(prefix), ReportHandle(r)}); };
  std::string program;
  if (!o.program_file.empty()) program = read_file(o.program_file, "program");

  if (o.mode == "laws" || o.mode == "axioms") {
    rgk_report* r = nullptr;
    check_status(o.mode == "laws" ? rgk_run_laws(session.get(), &r) : rgk_run_axioms(session.get(), &r));
    add("", r);
  } else if (o.mode == "verify") {
    if (o.spec_file.empty() || o.program_file.empty()) throw ConfigError("verify needs --spec and --program");
    const std::string spec = read_file(o.spec_file, "spec");
    std::optional<std::string> outline;
    if (!o.outline_file.empty()) outline = read_file(o.outline_file, "outline");
    rgk_report* r = nullptr;
    check_status(rgk_verify(session.get(), spec.c_str(), program.c_str(), outline ? outline->c_str() : nullptr, &r));
    add("", r);
  } else if (o.mode == "findp") {
    // Without --array, every hit pattern of a length-2 array under v = 1.
    std::vector<std::vector<std::int64_t>> arrays;
    if (!o.array.empty()) {
      arrays.push_back(o.array);
    } else {
      arrays = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    }
    for (const auto& a : arrays) {
      rgk_report* r = nullptr;
      check_status(rgk_findp(session.get(), a.data(), a.size(), o.predicate.c_str(), &r));
      add("array " + array_label(a) + ": ", r);
    }
  } else if (o.mode != "dump") {
    throw ConfigError("unknown mode '" + o.mode + "'");
  }

  if (o.mode == "dump" || o.dump) {
    if (o.program_file.empty()) throw ConfigError("dumping a denotation needs --program");
    char* text = nullptr;
    check_status(rgk_dump(session.get(), program.c_str(), &text));
    out.denotation = take_string(text);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Rely-guarantee kernel: law sweeps, axiom checks and bounded verification"};
  app.add_option("--mode", o.mode, "laws | axioms | verify | findp | dump")
      ->check(CLI::IsMember({"laws", "axioms", "verify", "findp", "dump"}))
      ->capture_default_str();
  app.add_option("--domain", o.domain, "values per variable, 0..N-1")->check(CLI::Range(2U, 4096U))->capture_default_str();
  app.add_option("--vars", o.vars, "comma-separated variable names")->capture_default_str();
  app.add_option("--bound", o.bound, "maximum trace length L")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized sweeps")->capture_default_str();
  app.add_option("--instances", o.instances, "instances per sweep (0: each sweep's default)")->capture_default_str();
  app.add_option("--program", o.program_file, "program file");
  app.add_option("--spec", o.spec_file, "spec file: rely R guar G pre C post C");
  app.add_option("--outline", o.outline_file, "proof outline (JSON)");
  app.add_option("--report", o.report, "text | structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_flag("--dump", o.dump, "also print the program's denotation");
  app.add_flag("--serial", o.serial, "check outline leaves one at a time");
  app.add_option("--array", o.array, "findp: array elements (length at most 3)")->delimiter(',');
  app.add_option("--predicate", o.predicate, "findp: element predicate over v")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const bool structured = o.report == "structured";
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  int code = kExitPass;
  std::optional<std::string> error;
  try {
    outcome = execute(o);
    code = exit_code_for(outcome.reports);
  } catch (const ConfigError& e) {
    error = e.what();
    code = kExitConfig;
  } catch (const std::exception& e) {
    error = std::string("internal error: ") + e.what();
    code = kExitConfig;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (structured) {
    json doc{{"config", config_json(o)}, {"exit_code", code}, {"timing", {{"seconds", seconds}}}};
    if (error) {
      doc["error"] = *error;
    } else {
      doc["checks"] = checks_json(outcome.reports);
      static const char* names[] = {"pass", "fail", "config-error", "bound-insufficient"};
      doc["overall"] = names[code];
      if (outcome.denotation) {
        json lines = json::array();
        std::istringstream in(*outcome.denotation);
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        doc["denotation"] = lines;
      }
    }
    std::cout << doc.dump(2) << '\n';
  } else if (error) {
    std::cerr << "error: " << *error << '\n';
  } else {
    print_text(outcome.reports, std::cout);
    if (outcome.denotation) std::cout << *outcome.denotation;
    if (!outcome.reports.empty()) {
      static const char* names[] = {"pass", "fail", "config-error", "bound-insufficient"};
      std::cout << "overall: " << names[code] << "  (" << seconds << " s)\n";
    }
  }
  return code;
}
