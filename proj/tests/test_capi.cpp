// Exercises the shared library through its C header only.

#include <cstring>
#include <string>

#include "doctest.h"
#include "rgk/rgk.h"

namespace {

struct SessionGuard {
  rgk_session* s = nullptr;
  ~SessionGuard() { rgk_session_destroy(s); }
};

struct ReportGuard {
  rgk_report* r = nullptr;
  ~ReportGuard() { rgk_report_destroy(r); }
};

const char* kProgram = "x := x + 2 || y := z";
const char* kSpec = "rely id guar top pre end(x = 2 && y = 2 && z = 5) post end(x = 4 && y = 5 && z = 5)";
const char* kBadSpec = "rely id guar top pre end(x = 2 && y = 2 && z = 5) post end(x = 5 && y = 5 && z = 5)";

}  // namespace

TEST_CASE("status and verdict names") {
  CHECK(std::string(rgk_status_string(RGK_OK)) == "ok");
  CHECK(std::string(rgk_verdict_string(RGK_BOUND_INSUFFICIENT)) == "bound-insufficient");
  CHECK(std::strlen(rgk_version()) > 0);
}

TEST_CASE("session creation validates its arguments") {
  rgk_session* s = nullptr;
  CHECK(rgk_session_create(nullptr, 3, 4, 1, 0, &s) == RGK_ERR_NULL_ARGUMENT);
  CHECK(rgk_session_create("x", 3, 4, 1, 0, nullptr) == RGK_ERR_NULL_ARGUMENT);
  CHECK(rgk_session_create("x", 1, 4, 1, 0, &s) == RGK_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rgk_last_error()).find("domain") != std::string::npos);
  CHECK(rgk_session_create("x", 3, 0, 1, 0, &s) == RGK_ERR_INVALID_ARGUMENT);
  CHECK(rgk_session_create("x,1y", 3, 4, 1, 0, &s) == RGK_ERR_INVALID_ARGUMENT);
  CHECK(rgk_session_create("", 3, 4, 1, 0, &s) == RGK_ERR_INVALID_ARGUMENT);
  CHECK(rgk_session_create("x,x", 3, 4, 1, 0, &s) == RGK_ERR_INVALID_ARGUMENT);
  CHECK(rgk_session_create("a,b,c,d", 9, 4, 1, 0, &s) == RGK_ERR_STATE_LIMIT);
  CHECK(rgk_session_create("a,b,c,d", 3, 4, 1, 50, &s) == RGK_ERR_STATE_LIMIT);
  CHECK(s == nullptr);

  SessionGuard g;
  REQUIRE(rgk_session_create("x, y", 4, 3, 1, 0, &g.s) == RGK_OK);
  CHECK(rgk_session_state_count(g.s) == 16);
  CHECK(std::string(rgk_last_error()).empty());
}

TEST_CASE("verify reports pass, fail with a witness, and spec mismatches") {
  SessionGuard g;
  REQUIRE(rgk_session_create("x,y,z", 8, 6, 42, 0, &g.s) == RGK_OK);

  ReportGuard ok;
  REQUIRE(rgk_verify(g.s, kSpec, kProgram, nullptr, &ok.r) == RGK_OK);
  CHECK(rgk_report_overall(ok.r) == RGK_PASS);

  ReportGuard bad;
  REQUIRE(rgk_verify(g.s, kBadSpec, kProgram, nullptr, &bad.r) == RGK_OK);
  CHECK(rgk_report_overall(bad.r) == RGK_FAIL);
  std::size_t failing = rgk_report_count(bad.r);
  for (std::size_t i = 0; i < rgk_report_count(bad.r); ++i) {
    rgk_verdict v = RGK_PASS;
    REQUIRE(rgk_report_check(bad.r, i, nullptr, &v, nullptr) == RGK_OK);
    if (v == RGK_FAIL) failing = i;
  }
  REQUIRE(failing < rgk_report_count(bad.r));
  const std::size_t n = rgk_report_witness_length(bad.r, failing);
  REQUIRE(n > 0);
  std::uint32_t prev_post = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint32_t pre = 0, post = 0;
    REQUIRE(rgk_report_witness_letter(bad.r, failing, k, &pre, &post) == RGK_OK);
    if (k > 0) CHECK(pre == prev_post);
    prev_post = post;
  }
  char* last = nullptr;
  REQUIRE(rgk_report_describe_state(bad.r, prev_post, &last) == RGK_OK);
  CHECK(std::string(last) == "x=4,y=5,z=5");
  rgk_string_free(last);

  std::uint32_t a = 0, b = 0;
  CHECK(rgk_report_witness_letter(bad.r, failing, n, &a, &b) == RGK_ERR_OUT_OF_RANGE);
  CHECK(rgk_report_check(bad.r, 1000, nullptr, nullptr, nullptr) == RGK_ERR_OUT_OF_RANGE);

  char* text = nullptr;
  REQUIRE(rgk_report_text(bad.r, &text) == RGK_OK);
  CHECK(std::string(text).find("fail") != std::string::npos);
  rgk_string_free(text);
}

TEST_CASE("verify rejects bad input with the right status") {
  SessionGuard g;
  REQUIRE(rgk_session_create("x,y", 3, 4, 42, 0, &g.s) == RGK_OK);
  rgk_report* r = nullptr;
  CHECK(rgk_verify(g.s, "pre end(x = 1)", "x := (", nullptr, &r) == RGK_ERR_PARSE);
  CHECK(std::string(rgk_last_error()).find("1:") != std::string::npos);
  CHECK(rgk_verify(g.s, "pre end(w = 1)", "x := 1", nullptr, &r) == RGK_ERR_INVALID_ARGUMENT);
  CHECK(rgk_verify(g.s, "pre end(x = 1)", "x := 1", "{\"rule\": \"Skip\", \"program\": \"skip\"}", &r) ==
        RGK_ERR_INVALID_ARGUMENT);
  CHECK(rgk_verify(g.s, "pre end(x = 1)", "x := 1", "not json", &r) == RGK_ERR_PARSE);
  CHECK(rgk_verify(nullptr, "pre end(x = 1)", "x := 1", nullptr, &r) == RGK_ERR_NULL_ARGUMENT);
  CHECK(r == nullptr);
}

TEST_CASE("findp distinguishes a sufficient from an insufficient bound") {
  SessionGuard wide, narrow;
  REQUIRE(rgk_session_create("x", 3, 60, 42, 0, &wide.s) == RGK_OK);
  REQUIRE(rgk_session_create("x", 3, 5, 42, 0, &narrow.s) == RGK_OK);
  const std::int64_t arr[] = {0, 1};
  ReportGuard pass, short_bound;
  REQUIRE(rgk_findp(wide.s, arr, 2, "v = 1", &pass.r) == RGK_OK);
  CHECK(rgk_report_overall(pass.r) == RGK_PASS);
  REQUIRE(rgk_findp(narrow.s, arr, 2, "v = 1", &short_bound.r) == RGK_OK);
  CHECK(rgk_report_overall(short_bound.r) == RGK_BOUND_INSUFFICIENT);

  rgk_report* r = nullptr;
  CHECK(rgk_findp(wide.s, arr, 2, "x = 1", &r) == RGK_ERR_INVALID_ARGUMENT);
  CHECK(rgk_findp(wide.s, nullptr, 2, "v = 1", &r) == RGK_ERR_NULL_ARGUMENT);
}

TEST_CASE("sweeps and dumps through the C interface") {
  SessionGuard g;
  REQUIRE(rgk_session_create("x", 2, 3, 9, 0, &g.s) == RGK_OK);
  REQUIRE(rgk_session_set_instances(g.s, 20) == RGK_OK);
  ReportGuard laws;
  REQUIRE(rgk_run_laws(g.s, &laws.r) == RGK_OK);
  CHECK(rgk_report_overall(laws.r) == RGK_PASS);
  CHECK(rgk_report_count(laws.r) > 20);
  char* none = nullptr;
  CHECK(rgk_report_describe_state(laws.r, 0, &none) == RGK_ERR_INVALID_ARGUMENT);

  char* dump = nullptr;
  REQUIRE(rgk_dump(g.s, "x := 1", &dump) == RGK_OK);
  CHECK(std::string(dump).find("(0,1)") != std::string::npos);
  rgk_string_free(dump);
  CHECK(rgk_dump(g.s, "y := 1", &dump) == RGK_ERR_INVALID_ARGUMENT);
}
