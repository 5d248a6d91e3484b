#include <doctest.h>

#include <cstdlib>

#include "kzosc/selftest.hpp"

using namespace kzosc::selftest;

namespace {

const CheckResult* find(const Report& r, const std::string& suite, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.suite == suite && c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("a correct build passes every suite") {
  const Report r = run({});
  CHECK(r.ok());
  CHECK(r.failures() == 0);
  for (const char* suite : {"specfun", "tdse", "pt", "furry", "ising"}) {
    bool seen = false;
    for (const auto& c : r.checks) seen = seen || c.suite == suite;
    CHECK_MESSAGE(seen, suite);
  }
  for (const auto& c : r.checks) {
    CAPTURE(c.suite);
    CAPTURE(c.name);
    CHECK((c.passed || c.warning_only));
  }
}

TEST_CASE("a wrong step value at equal photon indices is caught") {
  Options opt;
  opt.quick = true;
  opt.theta_zero = -0.5;
  const Report r = run(opt);
  CHECK_FALSE(r.ok());
  const auto* c = find(r, "pt", "reduction_to_lzsm");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  opt.theta_zero = 0.5;
  const Report good = run(opt);
  CHECK(good.ok());
}

TEST_CASE("strict mode promotes warnings") {
  Report r;
  r.checks.push_back(CheckResult{"furry", "regime", false, true, 2.0, 1.0, ""});
  r.checks.push_back(CheckResult{"pt", "identity", true, false, 0.0, 1.0, ""});
  CHECK(r.ok());
  CHECK(r.warnings() == 1);
  CHECK(r.failures() == 0);
  r.strict = true;
  CHECK_FALSE(r.ok());
  r.checks.push_back(CheckResult{"pt", "broken", false, false, 2.0, 1.0, ""});
  r.strict = false;
  CHECK_FALSE(r.ok());
  CHECK(r.failures() == 1);
}

TEST_CASE("strict flag from the environment") {
  ::setenv("KZOSC_SELFTEST_STRICT", "1", 1);
  CHECK(options_from_env().strict);
  ::setenv("KZOSC_SELFTEST_STRICT", "0", 1);
  CHECK_FALSE(options_from_env().strict);
  ::unsetenv("KZOSC_SELFTEST_STRICT");
  CHECK_FALSE(options_from_env().strict);
}
