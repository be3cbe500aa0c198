#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "isomlab/report.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(ISOMLAB_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("isomlab_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, DimensionExampleWritesPassingReport) {
  const fs::path out = temp_file("dim.json");
  ASSERT_EQ(run("dimension --n 3 --norm schatten:3 --seed 7 --output " + out.string()), 0);
  const isomlab::ReportDocument doc = isomlab::parse_report(slurp(out));
  ASSERT_EQ(doc.records.size(), 1u);
  EXPECT_EQ(doc.records[0].value, 8.0);
  EXPECT_EQ(doc.records[0].theorem_tag, "T1i");
  EXPECT_EQ(doc.config.seed, 7u);
  fs::remove(out);
}

TEST(Cli, SameSeedSameRecords) {
  const fs::path a = temp_file("a.json");
  const fs::path b = temp_file("b.json");
  ASSERT_EQ(run("skew --n 4 --seed 1 --samples 20 --output " + a.string()), 0);
  ASSERT_EQ(run("skew --n 4 --seed 1 --samples 20 --output " + b.string()), 0);
  isomlab::ReportDocument da = isomlab::parse_report(slurp(a));
  isomlab::ReportDocument db = isomlab::parse_report(slurp(b));
  EXPECT_TRUE(isomlab::same_document(da, db, false));
  da.wall_clock_ms = db.wall_clock_ms = 0.0;
  EXPECT_EQ(isomlab::emit_report(da, isomlab::ReportFormat::json),
            isomlab::emit_report(db, isomlab::ReportFormat::json));
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, ThreadCountDoesNotChangeRecords) {
  const fs::path a = temp_file("t1.json");
  const fs::path b = temp_file("t4.json");
  ASSERT_EQ(run("dimension --n 3,4 --seed 5 --output " + a.string()), 0);
  const std::string cmd = "ISOMLAB_THREADS=4 " + std::string(ISOMLAB_TOOL_PATH) + " dimension --n 3,4 --seed 5 --output " +
                          b.string() + " > /dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(isomlab::same_records(isomlab::parse_report(slurp(a)), isomlab::parse_report(slurp(b))));
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, FailingCheckExitsOne) { EXPECT_EQ(run("invariance --n 3 --samples 5 --tol invariance=0"), 1); }

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("dimension --n 9"), 2);
  EXPECT_EQ(run("dimension --norm schatten:0.5"), 2);
  EXPECT_EQ(run("dimension --tol nope=1"), 2);
  EXPECT_EQ(run("dimension --tol radius=abc"), 2);
  EXPECT_EQ(run("dimension --format xml"), 2);
  EXPECT_EQ(run("dimension --samples 0"), 2);
}

TEST(Cli, UnwritableOutputExitsThree) {
  EXPECT_EQ(run("dimension --n 2 --output /nonexistent-dir/sub/report.json"), 3);
}

TEST(Cli, TextFormat) {
  const fs::path out = temp_file("r.txt");
  ASSERT_EQ(run("cnr --n 2 --samples 3 --format text --output " + out.string()), 0);
  const std::string text = slurp(out);
  EXPECT_NE(text.find("cnr.radius_analytic"), std::string::npos);
  EXPECT_NE(text.find("PASS"), std::string::npos);
  fs::remove(out);
}

TEST(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("--version"), 0);
}
