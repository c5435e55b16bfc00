#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "doctest.h"
#include "rflight/csv.hpp"

namespace {
struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RFLIGHT_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

double field(const std::string& out, const std::string& key) {
  const auto pos = out.find(key + "=");
  REQUIRE(pos != std::string::npos);
  const auto end = out.find('\n', pos);
  return rflight::parse_double(out.substr(pos + key.size() + 1, end - pos - key.size() - 1));
}
}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("zeros --order -1").code == 2);
  CHECK(run("flight --m 0 --lengths 1,1,1 --r 1 --method series").code == 2);
  CHECK(run("mc --m 0 --lengths 1,1 --samples 0").code == 2);
  CHECK(run("kernel --m 2 --l 1 --terms 10").code == 2);
  CHECK(run("flight --m 0 --lengths '1, 1' --r 1").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("verify bogus").code == 2);
}

TEST_CASE("flight value") {
  const auto r = run("flight --m 0 --lengths 1,1 --r 1");
  CHECK(r.code == 0);
  CHECK(std::abs(field(r.out, "value") - std::numbers::pi / 4) < 1e-6);
  const auto o = run("flight --m 0 --lengths 1,0.3 --r 2");
  CHECK(o.code == 0);
  CHECK(o.out.find("outside_support=true") != std::string::npos);
}

TEST_CASE("zeros CSV round-trips") {
  const auto r = run("zeros --order 0 --count 3");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("index,zero\n", 0) == 0);
  const auto line = r.out.substr(11, r.out.find('\n', 11) - 11);
  const auto f = rflight::split_csv_line(line);
  CHECK(std::abs(rflight::parse_double(f[1]) - std::numbers::pi) < 1e-13);
}

TEST_CASE("mc is deterministic by seed") {
  const auto a = run("mc --m 0 --lengths 1,1 --samples 20000 --bins 10 --seed 7");
  const auto b = run("mc --m 0 --lengths 1,1 --samples 20000 --bins 10 --seed 7");
  const auto c = run("mc --m 0 --lengths 1,1 --samples 20000 --bins 10 --seed 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("verify with a wrong zero table exits 1 and names the case") {
  const std::string path = "/tmp/rflight_cli_bad_zeros.csv";
  {
    std::ofstream f(path);
    f << "index,zero\n";
    for (int i = 1; i <= 50; ++i) f << i << ',' << rflight::format_double(i * std::numbers::pi + (i == 7 ? 1e-4 : 0)) << '\n';
  }
  const auto r = run("verify specfun --zeros-file " + path + " --report /tmp/rflight_cli_report.json");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL specfun.zeros.j0_multiples_of_pi") != std::string::npos);
  std::remove(path.c_str());
  std::remove("/tmp/rflight_cli_report.json");
}

TEST_CASE("verify specfun passes") {
  CHECK(run("verify specfun --report /tmp/rflight_cli_ok.json").code == 0);
  std::remove("/tmp/rflight_cli_ok.json");
}
