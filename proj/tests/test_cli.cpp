#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TREEINT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("treeint_cli_" + name);
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, VerifyCayley) {
  const auto r = run("verify --suite cayley --n-max 8");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"].size(), 7u);
  EXPECT_EQ(j["results"][6]["lhs"], "262144");
  EXPECT_EQ(j["config"]["seed"].is_number(), true);
  EXPECT_EQ(j["tool"], "treeint");
}

TEST(Cli, CTableCsv) {
  const auto r = run("c-table --n-max 50 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("check,params,lhs,rhs,holds\n"), std::string::npos);
  EXPECT_NE(r.out.find("c,\"n=6;t=3;profile=(2,2,2)\",8,,true"), std::string::npos);
  EXPECT_NE(r.out.find("c-ratio-scan"), std::string::npos);
}

TEST(Cli, OracleCountSingleN) {
  const auto r = run("verify --suite oracle-count --n 6 --format text");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("count-trees-oracle [n=6;forests="), std::string::npos);
}

TEST(Cli, ATableRows) {
  const auto r = run("a-table --n 5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& row : j["results"])
    if (row["params"]["t"] == 2 && row["params"]["r"] == 0) {
      EXPECT_EQ(row["lhs"], "20");
      EXPECT_EQ(row["params"]["argmax_profile"], "(1,2,2)");
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Cli, SearchMaxFiveOne) {
  const auto r = run("search-max --n 5 --t 1 --seed-constructions");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& s = j["sections"]["search"];
  EXPECT_EQ(s["max_size"], 53);
  EXPECT_EQ(s["status"], "proven-optimal");
  EXPECT_EQ(s["witness"]["members"].size(), 53u);
  EXPECT_TRUE(s["stats"].contains("nodes"));
  EXPECT_FALSE(s["stats"].contains("wall_seconds"));
  const auto timed = nlohmann::json::parse(run("search-max --n 4 --t 2 --timings").out);
  EXPECT_TRUE(timed["sections"]["search"]["stats"].contains("wall_seconds"));
}

TEST(Cli, CountWithOracle) {
  const auto r = run("count --n 5 --edges 1-2,2-3 --oracle --format text");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lhs=15 rhs=15"), std::string::npos);
  const auto f = temp_path("forest.txt");
  write(f, "n 4\n1 2\n");
  const auto r2 = run("count --forest " + f.string() + " --oracle --format text");
  ASSERT_EQ(r2.code, 0);
  EXPECT_NE(r2.out.find("lhs=8 rhs=8"), std::string::npos);
}

TEST(Cli, FamilyBuildSaveAndCheck) {
  const auto path = temp_path("hm.json");
  ASSERT_EQ(run("family --build hm --n 5 --save " + path.string()).code, 0);
  EXPECT_EQ(run("family --check " + path.string() + " --t 1").code, 0);
  EXPECT_EQ(run("family --check " + path.string() + " --t 2").code, 2);
  EXPECT_EQ(run("family --build U --n 5 --t 1 --r 1 --edges 1-2,2-3,3-4").code, 0);
  EXPECT_EQ(run("family --build trivial --n 5 --edges 1-2,3-4 --format text").code, 0);
}

TEST(Cli, SpreadAndPeel) {
  const auto path = temp_path("fam.json");
  write(path, R"({"ground": 8, "members": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]})");
  const auto s = run("spread --family " + path.string() + " --alpha 3/2 --approx-r 3/2 --q-cap 3");
  ASSERT_EQ(s.code, 0);
  const auto j = nlohmann::json::parse(s.out);
  EXPECT_TRUE(j["sections"].contains("approximation"));
  const auto p = run("peel --family " + path.string() + " --t 2");
  ASSERT_EQ(p.code, 0);
  EXPECT_EQ(nlohmann::json::parse(p.out)["sections"]["trace"]["ok"], true);

  const auto big = temp_path("pairs.json");
  std::string members;
  for (int a = 0; a < 30; ++a)
    for (int b = a + 1; b < 30; ++b) members += (members.empty() ? "" : ",") + std::string("[") + std::to_string(a) + "," + std::to_string(b) + "]";
  write(big, "{\"ground\": 30, \"members\": [" + members + "]}");
  const auto mc = run("spread --family " + big.string() + " --beta 1 --delta 1/2 --trials 2000 --seed 5");
  ASSERT_EQ(mc.code, 0);
  EXPECT_EQ(nlohmann::json::parse(mc.out)["sections"]["monte_carlo"]["seed"], 5);
}

TEST(Cli, ByteIdenticalAcrossWorkers) {
  const auto a = run("verify --suite spread --instances 40 --workers 1");
  const auto b = run("verify --suite spread --instances 40 --workers 8");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputFile) {
  const auto path = temp_path("report.csv");
  std::filesystem::remove(path);
  ASSERT_EQ(run("verify --suite hm --format csv --out " + path.string()).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind("# treeint", 0), 0u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("verify --suite nope").code, 64);
  EXPECT_EQ(run("search-max --n 5").code, 64);
  EXPECT_EQ(run("verify --suite cayley --format xml").code, 64);
  EXPECT_EQ(run("count --n 4 --edges 1-2,2-3,1-3").code, 64);
  EXPECT_EQ(run("count --n 4 --edges 12").code, 64);
  EXPECT_EQ(run("enumerate --n 12").code, 64);
  EXPECT_EQ(run("family --n 4").code, 64);
  const auto bad = temp_path("bad.json");
  write(bad, "{ not json");
  EXPECT_EQ(run("peel --family " + bad.string() + " --t 1").code, 64);
}

TEST(Cli, IoErrorsAreReported) {
  EXPECT_EQ(run("peel --family /nonexistent/fam.json --t 1").code, 1);
  EXPECT_EQ(run("verify --suite hm --out /nonexistent/dir/report.json").code, 1);
}

TEST(Cli, TrivialDefaultsToBalancedForest) {
  const auto r = run("family --build trivial --n 5 --t 1 --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("t-intersecting [t=1;size=50]"), std::string::npos);
}
