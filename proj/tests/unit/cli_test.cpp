#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "cli.hpp"

namespace hpcause {
namespace {

namespace fs = std::filesystem;
using testing::data_path;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("hpcause_cli_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, BillyIsNotACauseWithHits) {
  CliRun r = run({"check-cause", data_path("rock_hits_billy.query")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("BT=1 for BS=1 (updated): not a cause"), std::string::npos) << r.out;
}

TEST(Cli, GunOriginalReportsWitness) {
  CliRun r = run({"check-cause", data_path("gun_a_original.query")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find(": cause"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("W={B, C}"), std::string::npos) << r.out;
  CliRun updated = run({"check-cause", data_path("gun_a_original.query"), "--variant", "updated"});
  EXPECT_NE(updated.out.find("not a cause"), std::string::npos) << updated.out;
}

TEST(Cli, JsonVerdictAndDeterminism) {
  CliRun a = run({"check-cause", data_path("gun_a_original.query"), "--json"});
  CliRun b = run({"check-cause", data_path("gun_a_original.query"), "--json"});
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["command"], "check-cause");
  EXPECT_EQ(j["verdict"]["is_cause"], true);
}

TEST(Cli, VotingResponsibilityIsOneSixth) {
  CliRun r = run({"responsibility", data_path("voting_11_0.query")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("responsibility of V1=1 for WIN=1: 1/6"), std::string::npos) << r.out;
  CliRun split = run({"responsibility", data_path("voting_6_5.query"), "--json"});
  EXPECT_EQ(nlohmann::json::parse(split.out)["degree"], "1/1");
}

TEST(Cli, FiringSquadBlameIsOneTenth) {
  CliRun r = run({"blame", data_path("firing_squad.state"), "--setting", "S3=1", "--effect", "D=1", "--threads", "2"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("blame of S3=1 for D=1 over 10 situations: 1/10"), std::string::npos) << r.out;
}

TEST(Cli, EnumerateListsCauses) {
  CliRun r = run({"enumerate", data_path("rock_naive.scm"), "--context", "U=1", "--effect", "BS=1", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  std::vector<std::string> causes;
  for (const auto& c : j["causes"]) causes.push_back(c["cause"].dump());
  EXPECT_EQ(causes, (std::vector<std::string>{R"({"ST":1})", R"({"BT":1})", R"({"BS":1})"}));
}

TEST(Cli, MalformedQueryExitsWithParseError) {
  CliRun r = run({"check-cause", data_path("malformed.query")});
  EXPECT_EQ(r.code, cli::kParse);
  std::string text = testing::read_data("malformed.query");
  EXPECT_NE(r.err.find("offset " + std::to_string(text.find("yes"))), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("malformed.query:4:10"), std::string::npos) << r.err;
}

TEST(Cli, InvalidModelExitsWithThree) {
  TempDir dir;
  dir.write("cyc.scm", "variables\n U : exo : {0,1}\n A : endo : {0,1}\n B : endo : {0,1}\n"
                       "equations\n A := B\n B := A\n");
  fs::path q = dir.write("q.query", "model: cyc.scm\ncontext: U=0\ncause: A=0\neffect: B=0\n");
  CliRun r = run({"check-cause", q.string()});
  EXPECT_EQ(r.code, cli::kInvalidModel) << r.err;
}

TEST(Cli, BudgetExceededExitsWithFour) {
  CliRun r = run({"responsibility", data_path("voting_11_0.query"), "--budget", "20"});
  EXPECT_EQ(r.code, cli::kBudget) << r.err;
}

TEST(Cli, QueryNotFittingTheModelExitsWithFive) {
  TempDir dir;
  fs::copy_file(data_path("gun.scm"), dir.path() / "gun.scm");
  fs::path q = dir.write("q.query", "model: gun.scm\ncontext: UA=1\ncause: A=1\neffect: D=1\n");
  CliRun r = run({"check-cause", q.string()});
  EXPECT_EQ(r.code, cli::kInvalidQuery) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"check-cause"}).code, cli::kUsage);
  EXPECT_EQ(run({"check-cause", "/nonexistent.query"}).code, cli::kUsage);
  EXPECT_EQ(run({"check-cause", data_path("gun_c.query"), "--variant", "newest"}).code, cli::kUsage);
}

TEST(Cli, GenInstanceRoundTrips) {
  struct Case {
    const char* flag;
    const char* file;
    bool expected;
  };
  for (const Case& c : {Case{"--sigma2", "sigma2_true.cqbf", true}, Case{"--sigma2", "sigma2_false.cqbf", false},
                        Case{"--pi2", "pi2_true.cqbf", true}, Case{"--pi2", "pi2_false.cqbf", false}}) {
    SCOPED_TRACE(c.file);
    TempDir dir;
    CliRun g = run({"gen-instance", c.flag, data_path(c.file), dir.path().string()});
    ASSERT_EQ(g.code, cli::kOk) << g.err;
    std::string stem = fs::path(c.file).stem().string();
    std::string label = slurp(dir.path() / (stem + ".expected"));
    EXPECT_NE(label.find(c.expected ? "expected: true" : "expected: false"), std::string::npos) << label;

    CliRun check = run({"check-cause", (dir.path() / (stem + ".query")).string(), "--json"});
    ASSERT_EQ(check.code, cli::kOk) << check.err;
    auto v = nlohmann::json::parse(check.out)["verdict"];
    bool in_language = std::string(c.flag) == "--sigma2"
                           ? v["ac1"].get<bool>() && !v["ac2_witness"].is_null()
                           : v["ac1"].get<bool>() && v["ac3_violator"].is_null();
    EXPECT_EQ(in_language, c.expected);
  }
}

TEST(Cli, SelftestPasses) {
  CliRun r = run({"selftest", "--json", "--seed", "7"});
  ASSERT_EQ(r.code, cli::kOk) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["passed"], true);
}

}  // namespace
}  // namespace hpcause
