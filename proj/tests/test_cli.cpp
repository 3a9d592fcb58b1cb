#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " " + std::string(FUNKFINSLER_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<double>> csv_rows(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Cli, EvalEuclidean) {
  const CliResult r = run("eval --eps 0 --r 1 --x 0.5,0 --xi 1,0");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  for (const char* key : {"F", "alpha", "beta", "g", "G", "S", "ric", "K", "s_gap", "k_gap", "h", "W", "c"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_NEAR(j["F"].get<double>(), 2.0, 1e-15);
  EXPECT_NEAR(j["S"].get<double>(), 3.0, 1e-14);
  EXPECT_NEAR(j["K"].get<double>(), -0.25, 1e-12);
}

TEST(Cli, EvalOriginAndNegativeArguments) {
  const CliResult r = run("eval --eps 1 --r 1 --x 0,0 --xi 1,0");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["F"].get<double>(), 1.0);
  EXPECT_EQ(j["beta"].get<double>(), 0.0);
  EXPECT_EQ(j["W"], json::array({0, 0}));
  const CliResult n = run("eval --eps -1 --r 0.9 --x -0.3,-0.2 --xi -1,0.5");
  ASSERT_EQ(n.code, 0);
  EXPECT_EQ(json::parse(n.out)["x"][0].get<double>(), -0.3);
}

TEST(Cli, SeventeenDigitNumbers) {
  const CliResult r = run("eval --eps 0 --r 1 --x 0.5,0 --xi 1,0");
  EXPECT_NE(r.out.find("1.3333333333333333"), std::string::npos);
  EXPECT_NE(r.out.find("0.66666666666666663"), std::string::npos);
}

TEST(Cli, DomainAndUsageErrors) {
  EXPECT_EQ(run("eval --eps 0 --r 1 --x 2,0 --xi 1,0").code, 2);
  EXPECT_EQ(run("eval --eps 3 --x 0,0 --xi 1,0").code, 2);
  EXPECT_EQ(run("eval --eps 1 --r 1.5 --x 0,0 --xi 1,0").code, 2);
  EXPECT_EQ(run("eval --x 0,0").code, 2);
  EXPECT_EQ(run("eval --x 0:0 --xi 1,0").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
}

TEST(Cli, FieldHyperbolicFlagGap) {
  std::string header;
  const CliResult r = run("field --eps -1 --r 1 --quantity k_gap --nx 32 --ntheta 8");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out, &header);
  EXPECT_EQ(header, "x1,x2,xi1,xi2,value");
  ASSERT_EQ(rows.size(), 8192u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 5u);
    EXPECT_LT(row[4], 0.0);
  }
}

TEST(Cli, FieldEuclideanFlagCurvature) {
  const CliResult r = run("field --eps 0 --quantity K --nx 8 --ny 5 --ntheta 3");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 8u * 5u * 3u);
  for (const auto& row : rows) EXPECT_NEAR(row[4], -0.25, 1e-10);
  // Row-major over the grid, directions fastest.
  EXPECT_EQ(rows[0][0], rows[2][0]);
  EXPECT_NE(rows[0][2], rows[1][2]);
}

TEST(Cli, FieldErrors) {
  EXPECT_EQ(run("field --nx 0").code, 2);
  EXPECT_EQ(run("field --quantity curvature").code, 2);
}

TEST(Cli, FieldJsonAndFileOutput) {
  const std::string path = testing::TempDir() + "field.csv";
  ASSERT_EQ(run("field --eps 1 --r 0.5 --quantity bh_density --nx 2 --ntheta 2 --out " + path).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(csv_rows(ss.str()).size(), 8u);
  const CliResult j = run("field --eps 1 --r 0.5 --quantity S --nx 2 --ntheta 2 --format json");
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(json::parse(j.out)["rows"].size(), 8u);
}

TEST(Cli, Distance) {
  const CliResult r = run("distance --eps 0 --r 1 --x 0,0 --y 0.5,0");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["d_xy"].get<double>(), 0.693147180559945, 1e-12);
  EXPECT_NEAR(j["d_yx"].get<double>(), 0.405465108108164, 1e-12);
  EXPECT_NEAR(j["boundary_point_xy"][0].get<double>(), 1.0, 1e-15);
  EXPECT_LT(j["quadrature_check"].get<double>(), 1e-12);
  EXPECT_NEAR(json::parse(run("distance --eps 1 --r 1 --x 0,0 --y 0.5,0").out)["d_xy"].get<double>(), 0.804718956217050,
              1e-12);
  EXPECT_EQ(json::parse(run("distance --x 0.2,0.1 --y 0.2,0.1").out)["d_xy"].get<double>(), 0.0);
  EXPECT_EQ(run("distance --x 0,0 --y 1,0").code, 2);
}

TEST(Cli, Zermelo) {
  const CliResult r = run("zermelo --eps 0 --r 1 --x 0.5,0");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["W"][0].get<double>(), -0.5, 1e-15);
  EXPECT_NEAR(j["c"].get<double>(), 0.75, 1e-15);
  EXPECT_NEAR(j["wind_norm_sq"].get<double>(), 0.25, 1e-15);
}

TEST(Cli, VerifyExitCodes) {
  const CliResult e = run("verify --eps 0 --r 1 --seed 7");
  EXPECT_EQ(e.code, 0);
  const json je = json::parse(e.out);
  EXPECT_TRUE(je["pass"].get<bool>());
  EXPECT_EQ(je["config"]["generator"], "mt19937_64");
  bool saw_k = false;
  for (const auto& rec : je["records"]) saw_k |= rec["name"] == "curvature.K ≡ −1/4";
  EXPECT_TRUE(saw_k);

  EXPECT_EQ(run("verify --eps -1 --r 0.9 --seed 7").code, 0);

  // The spherical S lower bound has counterexamples; only that record fails.
  const CliResult s = run("verify --eps 1 --r 1 --seed 7");
  EXPECT_EQ(s.code, 1);
  std::vector<std::string> failed;
  const json js = json::parse(s.out);
  for (const auto& rec : js["records"])
    if (!rec["pass"].get<bool>()) failed.push_back(rec["name"]);
  EXPECT_EQ(failed, std::vector<std::string>{"curvature.S − (3/2)F > 0"});

  EXPECT_EQ(run("verify --eps 1 --r 2").code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  EXPECT_EQ(run("verify --eps -1 --r 0.5 --seed 3").out, run("verify --eps -1 --r 0.5 --seed 3").out);
  EXPECT_EQ(run("verify --eps 0 --seed 3 --format csv").out, run("verify --eps 0 --seed 3 --format csv").out);
  EXPECT_EQ(run("field --eps 1 --quantity S --nx 6 --ntheta 4").out, run("field --eps 1 --quantity S --nx 6 --ntheta 4").out);
  const std::string args = "verify --eps 1 --r 0.5 --seed 11";
  EXPECT_EQ(run(args, "FUNKFINSLER_THREADS=1").out, run(args, "FUNKFINSLER_THREADS=7").out);
}
