// End-to-end checks of the command line tool. Each case shells out to the
// built binary, captures stdout into a temp file, and inspects it.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

int counter = 0;

RunResult run(const std::string& args) {
  const std::string path =
      "/tmp/gwgames_cli_test_" + std::to_string(++counter) + ".out";
  const std::string cmd = std::string(GWGAMES_CLI_PATH) + " " + args + " > " +
                          path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(path.c_str());
  return r;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

TEST_CASE("outcomes --json is parseable and consistent") {
  auto r = run("outcomes --k 2 --poisson 3 --variant both --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  for (const auto& e : j) {
    const double sum = e["loss"].get<double>() + e["win"].get<double>() +
                       e["draw"].get<double>();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(e["draw_positive"].get<bool>());
    CHECK(e["k"].get<int>() == 2);
  }
  CHECK(j[0]["variant"] == "normal");
  CHECK(j[1]["variant"] == "misere");
  CHECK(j[0]["c_k"].get<double>() == j[1]["c_k"].get<double>());
}

TEST_CASE("sweep rows agree with outcomes at the same point") {
  auto sweep = run("sweep --k 2 --lambda 3:3:1 --variant normal");
  REQUIRE(sweep.exit_code == 0);
  std::stringstream ss(sweep.out);
  std::string header, row;
  REQUIRE(std::getline(ss, header));
  CHECK(header == "k,lambda,variant,loss,win,draw,c_k,slope_at_ck,error");
  REQUIRE(std::getline(ss, row));
  auto cols = split_csv_line(row);
  REQUIRE(cols.size() >= 8);
  CHECK(cols[0] == "2");
  CHECK(cols[1] == "3");
  CHECK(cols[2] == "normal");

  auto oc = run("outcomes --k 2 --poisson 3 --variant normal --json");
  REQUIRE(oc.exit_code == 0);
  auto j = nlohmann::json::parse(oc.out);
  CHECK(std::stod(cols[3]) == doctest::Approx(j[0]["loss"].get<double>()));
  CHECK(std::stod(cols[4]) == doctest::Approx(j[0]["win"].get<double>()));
  CHECK(std::stod(cols[6]) == doctest::Approx(j[0]["c_k"].get<double>()));
}

TEST_CASE("sweep output is ordered and byte identical across runs") {
  const std::string args = "sweep --k 1,2 --lambda 1:2:0.5 --variant both";
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  // k=1 rows come before k=2 rows, lambda ascending within each k
  std::stringstream ss(a.out);
  std::string line;
  std::getline(ss, line);  // header
  int prev_k = 0;
  double prev_lam = 0.0;
  while (std::getline(ss, line)) {
    auto cols = split_csv_line(line);
    const int k = std::stoi(cols[0]);
    const double lam = std::stod(cols[1]);
    CHECK(k >= prev_k);
    if (k == prev_k && cols[2] == "normal") CHECK(lam > prev_lam);
    if (cols[2] == "normal") prev_lam = lam;
    if (k > prev_k) prev_lam = 0.0;
    prev_k = k;
  }
}

TEST_CASE("phase constants") {
  auto r = run("phase --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["lambda_c"].get<double>() == doctest::Approx(2.410191).epsilon(1e-5));
  CHECK(j["lambda_0"].get<double>() == doctest::Approx(2.436338).epsilon(1e-5));
  CHECK(j["eta_max"].get<double>() == doctest::Approx(0.52840).epsilon(1e-4));
}

TEST_CASE("simulate produces the documented schema and passes its tripwire") {
  auto r = run("simulate --k 1 --poisson 1.5 --horizon 3 --samples 5000 "
               "--seed 7");
  REQUIRE(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string header;
  REQUIRE(std::getline(ss, header));
  CHECK(header ==
        "n,analytic_loss,mc_loss,mc_se_loss,z_loss,analytic_win,mc_win,"
        "mc_se_win,z_win");
  int rows = 0;
  std::string line;
  while (std::getline(ss, line)) {
    auto cols = split_csv_line(line);
    REQUIRE(cols.size() == 9);
    CHECK(std::stoi(cols[0]) == rows + 1);
    CHECK(std::fabs(std::stod(cols[4])) <= 4.0);
    CHECK(std::fabs(std::stod(cols[8])) <= 4.0);
    ++rows;
  }
  CHECK(rows == 3);

  auto again = run("simulate --k 1 --poisson 1.5 --horizon 3 --samples 5000 "
                   "--seed 7");
  CHECK(again.out == r.out);
}

TEST_CASE("classes subcommand") {
  auto r = run("classes --k 2 --poisson 3");
  REQUIRE(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string header;
  REQUIRE(std::getline(ss, header));
  CHECK(header == "i,j,p");
  int rows = 0;
  std::string line;
  double win_mass = 0.0;
  while (std::getline(ss, line)) {
    auto cols = split_csv_line(line);
    REQUIRE(cols.size() == 3);
    if (cols[0] == "0") win_mass += std::stod(cols[2]);
    ++rows;
  }
  CHECK(rows == 3);
  // the classes with i = 0 partition the win event
  auto oc = run("outcomes --k 2 --poisson 3 --json");
  auto j = nlohmann::json::parse(oc.out);
  CHECK(win_mass == doctest::Approx(j[0]["win"].get<double>()).epsilon(1e-8));
}

TEST_CASE("usage errors exit with code 3") {
  CHECK(run("simulate --k 1 --poisson 1.5 --samples 0").exit_code == 3);
  CHECK(run("outcomes --k 2").exit_code == 3);  // no distribution given
  CHECK(run("outcomes --k 2 --poisson -1").exit_code == 3);
  CHECK(run("bogus").exit_code == 3);
  CHECK(run("sweep --lambda nonsense").exit_code == 3);
}
