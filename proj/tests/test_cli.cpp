// End-to-end checks of the command-line surface. The RATEKIT_CLI environment
// variable (set by ctest) points at the binary; without it the cases are
// skipped so the unit suite can still run standalone.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("RATEKIT_CLI");
  REQUIRE(cli != nullptr);
  RunResult r;
  FILE* pipe = popen((std::string(cli) + " " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

bool cli_available() { return std::getenv("RATEKIT_CLI") != nullptr; }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("cli: eval reproduces the Bessel anchor") {
  if (!cli_available()) return;
  const RunResult r = run_cli(
      "eval --variant i1 --alpha 1 --a 1 --b 1 --delta 1 --rho 1 --method auto");
  CHECK(r.status == 0);
  CHECK(r.out.find("0.2797317636330") != std::string::npos);
}

TEST_CASE("cli: targeted ode verification for the m = 2 case") {
  if (!cli_available()) return;
  const RunResult r =
      run_cli("verify ode --variant i1 --m 2 --alpha 1 --rho 0.5 --seed 7");
  CHECK(r.status == 0);
  CHECK(r.out.find("failed: 0") != std::string::npos);
}

TEST_CASE("cli: table sweep emits monotone csv rows") {
  if (!cli_available()) return;
  const RunResult r = run_cli(
      "table --variant i2beta --beta 0.5 --alpha 1 --a 1 --delta 1 --rho 1 "
      "--b-grid 0.1:10:25 --format csv");
  CHECK(r.status == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 26);  // header + 25 rows
  CHECK(lines[0].find("value") != std::string::npos);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    // value is the 8th column
    std::size_t pos = 0;
    for (int c = 0; c < 7; ++c) pos = lines[i].find(',', pos) + 1;
    const double value = std::stod(lines[i].substr(pos));
    CHECK(value < prev);
    CHECK(value > 0.0);
    prev = value;
  }
}

TEST_CASE("cli: beta sweep on a pathway family, log spacing") {
  if (!cli_available()) return;
  const RunResult r = run_cli(
      "table --variant i1beta --alpha 0.5 --a 1 --b 1 --delta 1 --rho 1 "
      "--beta-grid 1.1:2.0:5 --log-grid --method quadrature --format csv");
  CHECK(r.status == 0);
  CHECK(split_lines(r.out).size() == 6);
}

TEST_CASE("cli: flag errors exit with status 2") {
  if (!cli_available()) return;
  CHECK(run_cli("eval --variant nope").status == 2);
  CHECK(run_cli("table --variant i1 --alpha 1").status == 2);  // no grid
  CHECK(run_cli("table --variant i1 --beta-grid 0.2:0.8:3 --format csv").status ==
        2);  // beta sweep needs a pathway family
}

TEST_CASE("cli: identical invocations are byte-identical") {
  if (!cli_available()) return;
  const std::string args = "verify identities --seed 3 --format json --threads 2";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(!a.out.empty());
  CHECK(a.out == b.out);
}
