#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "rflight/verify.hpp"

using namespace rflight;

namespace {
std::string write_zero_file(const std::string& name, double shift_third) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << "index,zero\n";
  for (int i = 1; i <= 50; ++i) {
    double z = i * std::numbers::pi;
    if (i == 3) z += shift_third;
    out << i << ',' << std::to_string(z) << '\n';
  }
  return path;
}

const VerifyCase* find(const VerificationReport& r, const std::string& id) {
  for (const auto& c : r.cases)
    if (c.id == id) return &c;
  return nullptr;
}
}  // namespace

TEST_CASE("specfun suite passes and has the documented schema") {
  const auto r = run_suite("specfun", {});
  CHECK(r.pass());
  const auto j = r.to_json();
  CHECK(j["suite"] == "specfun");
  CHECK(j["convention"] == "no_phase");
  CHECK(j["pass"] == true);
  REQUIRE(j["cases"].is_array());
  CHECK(j["cases"].size() == r.cases.size());
  for (const auto& c : j["cases"]) {
    for (const char* key : {"id", "inputs", "expected", "actual", "tol", "pass", "ms"})
      CHECK(c.contains(key));
  }
  for (std::size_t i = 0; i + 1 < j["cases"].size(); ++i)
    CHECK(j["cases"][i]["id"].get<std::string>() < j["cases"][i + 1]["id"].get<std::string>());
  CHECK_FALSE(r.to_json(false)["cases"][0].contains("ms"));
}

TEST_CASE("reports are deterministic without timing") {
  CHECK(run_suite("specfun", {}).to_json(false).dump() == run_suite("specfun", {}).to_json(false).dump());
}

TEST_CASE("a wrong zero table fails the zero checks") {
  VerifyOptions opts;
  opts.zeros_file = write_zero_file("rflight_bad_zeros.csv", 1e-3);
  const auto bad = zero_cases(opts);
  bool saw = false;
  for (const auto& c : bad)
    if (c.id == "specfun.zeros.j0_multiples_of_pi") {
      saw = true;
      CHECK_FALSE(c.pass);
    }
  CHECK(saw);
  std::remove(opts.zeros_file->c_str());
}

TEST_CASE("a missing zero file is reported as a failing case") {
  VerifyOptions opts;
  opts.zeros_file = "/nonexistent/zeros.csv";
  for (const auto& c : zero_cases(opts))
    if (c.id != "specfun.zeros.tan_root") CHECK_FALSE(c.pass);
}

TEST_CASE("suite names") {
  for (const char* s : {"specfun", "kernels", "flights", "extended", "all"}) CHECK(is_suite_name(s));
  CHECK_FALSE(is_suite_name("nope"));
  CHECK_THROWS(run_suite("nope", {}));
}

TEST_CASE("route cases carry inputs") {
  VerificationReport r;
  r.cases = flight_route_cases({});
  const auto* anchor = find(r, "flights.anchor.two_step");
  REQUIRE(anchor != nullptr);
  CHECK(anchor->pass);
  CHECK(anchor->inputs.contains("lengths"));
}
