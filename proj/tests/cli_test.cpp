#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Output {
  int status = -1;
  std::string text;
};

Output sh(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SEMIMATCH_BIN + " " + args + " 2>&1";
  Output out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.text.append(buf, got);
  const int raw = pclose(pipe);
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!row.empty() && row.back() == ',') out.emplace_back();
  return out;
}

const char* kHeader = "run_id,n,m,eps,mode,passes,bundles,phases,final_size,opt_size,ratio,peak_words";

TEST(Cli, RunOnTrapVerifies) {
  const Output o = sh("run --gen two-greedy-trap --eps 0.5 --verify");
  EXPECT_EQ(o.status, 0) << o.text;
  const auto rows = lines(o.text);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], kHeader);
  const auto f = fields(rows[1]);
  ASSERT_EQ(f.size(), 12u);
  EXPECT_EQ(f[8], "3");
  EXPECT_EQ(f[9], "3");
  EXPECT_EQ(f[10], "1.000000");
}

TEST(Cli, BudgetRunCountsPasses) {
  const Output o = sh("run --gen path:1001 --eps 0.5 --mode budget");
  ASSERT_EQ(o.status, 0) << o.text;
  const auto f = fields(lines(o.text).at(1));
  EXPECT_EQ(std::stoull(f[5]), 1 + 3 * std::stoull(f[6]));
  EXPECT_EQ(f[9], "");
  EXPECT_EQ(f[10], "");
}

TEST(Cli, BadInputExitsTwoWithLine) {
  const std::string path = ::testing::TempDir() + "semimatch_bad.txt";
  std::ofstream(path) << "3 2\n0 1\n1 x\n";
  const Output o = sh("run --input " + path);
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.text.find("line 3"), std::string::npos) << o.text;
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(sh("run --gen path:5 --eps 0").status, 2);
  EXPECT_EQ(sh("run --gen path:5 --eps 2").status, 2);
  EXPECT_EQ(sh("run --gen path:5 --tau 0").status, 2);
  EXPECT_EQ(sh("run").status, 2);
  EXPECT_EQ(sh("run --gen path:5 --input x.txt").status, 2);
  EXPECT_EQ(sh("run --gen path:5 --mode sometimes").status, 2);
}

TEST(Cli, SeedFlagBeatsEnvironment) {
  const std::string args = "run --gen random:30:60 --order reseed";
  const Output flag = sh(args + " --seed 5");
  ASSERT_EQ(flag.status, 0) << flag.text;
  EXPECT_EQ(sh(args + " --seed 5", "SEMIMATCH_SEED=9").text, flag.text);
  EXPECT_EQ(sh(args, "SEMIMATCH_SEED=5").text, flag.text);
}

TEST(Cli, EmptySweepIsHeaderOnly) {
  const Output o = sh("bench --n");
  EXPECT_EQ(o.status, 0) << o.text;
  EXPECT_EQ(o.text, std::string(kHeader) + "\n");
}

TEST(Cli, SweepRowsAndDeterminism) {
  const std::string args = "bench --eps 1,0.5 --n 100,1000 --gen path";
  const Output serial = sh(args);
  const Output parallel = sh(args + " --jobs 3");
  ASSERT_EQ(serial.status, 0) << serial.text;
  EXPECT_EQ(lines(serial.text).size(), 5u);
  EXPECT_EQ(serial.text, parallel.text);
  EXPECT_EQ(serial.text, sh(args).text);
}

TEST(Cli, VerifiedSweepMeetsRatio) {
  const Output o = sh("bench --eps 1,0.5 --n 8,10,14 --seeds 1,2,3 --gen random --m-factor 2 "
                      "--verify --mode quiescent");
  ASSERT_EQ(o.status, 0) << o.text;
  const auto rows = lines(o.text);
  ASSERT_EQ(rows.size(), 19u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    const double eps = std::stod(f[3]);
    EXPECT_GE(std::stod(f[10]) * (1 + eps), 1.0 - 1e-9) << rows[i];
  }
}

TEST(Cli, VerifyMatchingFile) {
  const std::string graph = ::testing::TempDir() + "semimatch_path.txt";
  const std::string good = ::testing::TempDir() + "semimatch_good.txt";
  const std::string bad = ::testing::TempDir() + "semimatch_badm.txt";
  std::ofstream(graph) << "4 3\n0 1\n1 2\n2 3\n";
  std::ofstream(good) << "0 1\n2 3\n";
  std::ofstream(bad) << "0 2\n";
  EXPECT_EQ(sh("verify --input " + graph + " --matching " + good).status, 0);
  EXPECT_NE(sh("verify --input " + graph + " --matching " + bad).status, 0);
}

}  // namespace
