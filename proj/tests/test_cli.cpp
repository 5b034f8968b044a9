#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NQT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

using Row = std::vector<std::string>;

std::vector<Row> parse_csv(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    Row r;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) r.push_back(cell);
    rows.push_back(r);
  }
  return rows;
}

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_CASE("table1 covers every cell and agrees with the closed forms") {
  const Run r = run("table1");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 2 * 4 * 4);
  CHECK(rows[0] == Row{"channel", "noise", "kt", "fbar_numeric", "fbar_closed", "abs_delta"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(num(rows[i][5]) < 1e-9);
    if (num(rows[i][2]) == 0.0) {
      CHECK(std::abs(num(rows[i][3]) - 1.0) < 1e-12);
      CHECK(num(rows[i][5]) < 1e-12);
    }
  }
  // Isotropic rows match between the two channels.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] != "ghz" || rows[i][1] != "iso") continue;
    for (std::size_t j = 1; j < rows.size(); ++j) {
      if (rows[j][0] == "w" && rows[j][1] == "iso" && rows[j][2] == rows[i][2]) {
        CHECK(std::abs(num(rows[i][4]) - num(rows[j][4])) < 1e-12);
      }
    }
  }
}

TEST_CASE("table1 single cell") {
  const Run r = run("table1 --channel ghz --noise z --kt 0.5");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][4] == "6.832623561226e-01");
}

TEST_CASE("CSV formatting") {
  const Run r = run("table1 --kt 0.1");
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.out.back() == '\n');
  const std::regex sci(R"(-?\d\.\d{12}e[+-]\d{2,3})");
  for (const auto& row : parse_csv(r.out)) {
    if (row[0] == "channel") continue;
    for (std::size_t c = 2; c < row.size(); ++c) CHECK(std::regex_match(row[c], sci));
  }
}

TEST_CASE("z-noise sweep crosses once near 0.223") {
  const Run r = run("sweep --figure 4c");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 302);
  CHECK(rows[0] == Row{"kt", "fbar_ghz", "fbar_w"});
  int flips = 0;
  double where = 0.0;
  int prev = 0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double d = num(rows[i][2]) - num(rows[i][1]);
    const int s = d > 0 ? 1 : -1;
    if (prev != 0 && s != prev) ++flips, where = num(rows[i][0]);
    prev = s;
  }
  CHECK(flips == 1);
  CHECK(std::abs(where - 0.223) < 0.01);
}

TEST_CASE("x-noise sweep keeps GHZ above W") {
  const Run r = run("sweep --figure 4a --kt-range 0 3 61");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 62);
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(num(rows[i][1]) > num(rows[i][2]));
}

TEST_CASE("fidelity surface on the theta-phi grid") {
  const Run r = run("sweep --figure 5 --noise x");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 61 * 61);
  CHECK(rows[0] == Row{"theta", "phi", "F_ghz", "F_w"});
  for (std::size_t i = 1; i <= 61; ++i) {
    CHECK(num(rows[i][0]) == 0.0);
    CHECK(std::abs(num(rows[i][2]) - 0.5676676416183064) < 1e-11);
  }
}

TEST_CASE("epr subcommand") {
  const Run at = run("epr --kt 0.25");
  REQUIRE(at.status == 0);
  const auto rows = parse_csv(at.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(num(rows[1][1]) - 0.7892931470571474) < 1e-11);
  CHECK(std::abs(num(rows[1][3]) - 0.7634901267661182) < 1e-11);

  const Run iso = run("epr --kt " + std::to_string(std::log(3.0) / 8));
  CHECK(std::abs(num(parse_csv(iso.out)[1][5]) - 2.0 / 3) < 1e-6);

  const Run sweep = run("epr");
  REQUIRE(sweep.status == 0);
  const auto all = parse_csv(sweep.out);
  REQUIRE(all.size() == 302);
  for (std::size_t i = 2; i < all.size(); ++i) CHECK(num(all[i][3]) < num(all[i][1]));
}

TEST_CASE("crossover subcommand") {
  const Run z = run("crossover --noise z");
  REQUIRE(z.status == 0);
  CHECK(std::abs(num(parse_csv(z.out)[1][3]) - 0.223) < 5e-3);
  CHECK(run("crossover --noise x --bracket 0.01 5").status == 1);
}

TEST_CASE("verify subcommand") {
  const Run ok = run("verify");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  const std::regex boundary(R"(PASS appendix_conjugated_boundary_violation\s+residual=([0-9.e+-]+))");
  std::smatch m;
  REQUIRE(std::regex_search(ok.out, m, boundary));
  CHECK(num(m[1]) > 0.1);

  const Run coarse = run("verify --rk4-steps 10");
  CHECK(coarse.status == 1);
  const std::regex rk4(R"(FAIL rk4_vs_expm\s+residual=([0-9.e+-]+))");
  REQUIRE(std::regex_search(coarse.out, m, rk4));
  CHECK(num(m[1]) > 1e-9);
}

TEST_CASE("groverian subcommand") {
  const Run r = run("groverian");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(num(rows[i][1]) - 1 / std::sqrt(2.0)) < 1e-6);
  }
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run("").status == 2);
  CHECK(run("bogus").status == 2);
  CHECK(run("table1 --noise q").status == 2);
  CHECK(run("table1 --channel epr").status == 2);
  CHECK(run("table1 --kt -1").status == 2);
  CHECK(run("table1 --kt 0.1 --kt-range 0 1 3").status == 2);
  CHECK(run("sweep --figure 4c --kt-range 0 1 1").status == 2);
  CHECK(run("sweep --figure 4c --kt-range 0 1 2.5").status == 2);
  CHECK(run("sweep --figure 5 --grid 1 5").status == 2);
  CHECK(run("sweep --figure 7").status == 2);
  CHECK(run("sweep").status == 2);
  CHECK(run("table1 --format xml").status == 2);
  CHECK(run("verify --rk4-steps 0").status == 2);
  CHECK(run("crossover --bracket 0.5 0.1").status == 2);
  CHECK(run("groverian --channel x").status == 2);
}

TEST_CASE("output is deterministic and mirrored to files and JSON") {
  const Run a = run("sweep --figure 4b --kt-range 0 2 41");
  const Run b = run("sweep --figure 4b --kt-range 0 2 41");
  CHECK(a.out == b.out);

  const std::string path = "cli_out_test.csv";
  REQUIRE(run("sweep --figure 4b --kt-range 0 2 41 --out " + path).status == 0);
  std::ifstream f(path, std::ios::binary);
  const std::string file((std::istreambuf_iterator<char>(f)), {});
  CHECK(file == a.out);
  std::remove(path.c_str());

  const Run j = run("sweep --figure 4b --kt-range 0 2 41 --format json");
  REQUIRE(j.status == 0);
  const auto doc = nlohmann::json::parse(j.out);
  const auto rows = parse_csv(a.out);
  REQUIRE(doc.size() == rows.size() - 1);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    CHECK(std::abs(doc[i]["fbar_w"].get<double>() - num(rows[i + 1][2])) < 1e-12);
  }
}
