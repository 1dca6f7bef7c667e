#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "threadsum/cli.hpp"

namespace fs = std::filesystem;
using namespace threadsum;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("threadsum-cli-" + std::to_string(::getpid()) + "-" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  static std::string fixture() { return std::string(THREADSUM_TEST_DATA) + "/filter_fixture.xml"; }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_F(CliTest, HappyPath) {
  ASSERT_EQ(run({"build-corpus", "--input", fixture(), "--output", path("c.jsonl")}), 0) << err_.str();
  EXPECT_NE(out_.str().find("threads: 7\n"), std::string::npos);
  EXPECT_NE(out_.str().find("rejected_NotUniqueBest: 1\n"), std::string::npos);
  EXPECT_EQ(lines(read(path("c.jsonl"))), 7u);

  ASSERT_EQ(run({"summarize", "--algo", "textrank", "--input", path("c.jsonl"), "--output", path("s.jsonl")}), 0)
      << err_.str();
  EXPECT_EQ(lines(read(path("s.jsonl"))), 7u);
  EXPECT_NE(read(path("s.jsonl")).find("\"algorithm\":\"textrank\""), std::string::npos);

  ASSERT_EQ(run({"upper-bound", "--input", path("c.jsonl"), "--output", path("ub.jsonl")}), 0) << err_.str();
  ASSERT_EQ(run({"evaluate", "--corpus", path("c.jsonl"), "--summaries", path("s.jsonl"), "--summaries",
                 path("ub.jsonl"), "--report", path("r.tsv")}),
            0)
      << err_.str();
  // header + 14 rows + 2 means
  EXPECT_EQ(lines(read(path("r.tsv"))), 17u);

  ASSERT_EQ(run({"stats", "--input", path("c.jsonl")}), 0);
  EXPECT_EQ(out_.str().rfind("threads: 7\n", 0), 0u);
}

TEST_F(CliTest, TrainAndUseModel) {
  ASSERT_EQ(run({"train-classifier", "--output", path("m.txt"), "--set", "classifier_dim=4096"}), 0) << err_.str();
  ASSERT_EQ(run({"build-corpus", "--input", fixture(), "--output", path("c.jsonl")}), 0);
  EXPECT_EQ(run({"summarize", "--algo", "opiniosumm", "--input", path("c.jsonl"), "--output", path("s.jsonl"),
                 "--model", path("m.txt")}),
            0)
      << err_.str();
  EXPECT_EQ(lines(read(path("s.jsonl"))), 7u);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"summarize", "--algo", "bogus", "--input", "x", "--output", "y"}), 1);
  EXPECT_EQ(run({"stats", "--input", fixture(), "--set", "no_such_key=1"}), 1);
  EXPECT_EQ(run({"stats", "--input", fixture(), "--set", "damping=2"}), 1);
  EXPECT_EQ(run({"stats", "--input", fixture(), "--jobs", "0"}), 1);
  EXPECT_EQ(run({"--help"}), 0);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  EXPECT_EQ(run({"stats", "--input", path("missing.jsonl")}), 2);
  EXPECT_FALSE(err_.str().empty());
  std::ofstream(path("bad.jsonl")) << "{broken\n";
  EXPECT_EQ(run({"stats", "--input", path("bad.jsonl")}), 2);
  std::ofstream(path("bad.xml")) << "<vespaadd><document>";
  EXPECT_EQ(run({"build-corpus", "--input", path("bad.xml"), "--output", path("c.jsonl")}), 2);
}

TEST_F(CliTest, StatsOnEmptyCorpus) {
  std::ofstream(path("empty.jsonl")).close();
  ASSERT_EQ(run({"stats", "--input", path("empty.jsonl")}), 0);
  EXPECT_EQ(out_.str(),
            "threads: 0\nanswers: 0\nanswers_per_thread: 0.000\nwords_per_answer: 0.000\n"
            "words_per_reference: 0.000\n");
}

TEST_F(CliTest, ConfigEchoRoundTrips) {
  ASSERT_EQ(run({"build-corpus", "--input", fixture(), "--output", path("a.jsonl"), "--set", "budget_words=50",
                 "--set", "damping=0.8", "--seed", "7"}),
            0);
  const std::string echo = read(path("a.jsonl.config"));
  EXPECT_EQ(echo.rfind("# threadsum build-corpus\n", 0), 0u);
  EXPECT_NE(echo.find("budget_words=50\n"), std::string::npos);
  EXPECT_NE(echo.find("damping=0.80000000000000004\n"), std::string::npos);
  EXPECT_NE(echo.find("seed=7\n"), std::string::npos);

  ASSERT_EQ(run({"build-corpus", "--input", fixture(), "--output", path("b.jsonl"), "--config",
                 path("a.jsonl.config")}),
            0);
  EXPECT_EQ(read(path("b.jsonl.config")), echo);
  EXPECT_EQ(read(path("b.jsonl")), read(path("a.jsonl")));
}

TEST(CliConfig, SetAndDescribe) {
  cli::RunConfig cfg;
  cli::apply_config_text(cfg, "# comment\n\nmin_answers = 3\ntiling_k=1.5\n");
  EXPECT_EQ(cfg.filter.min_answers, 3);
  EXPECT_DOUBLE_EQ(cfg.opinio.tiling.k, 1.5);
  EXPECT_THROW(cli::apply_setting(cfg, "budget_words", "ten"), std::invalid_argument);
  EXPECT_THROW(cli::apply_config_text(cfg, "justakey\n"), std::invalid_argument);
  const auto keys = cli::describe(cfg);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  cli::RunConfig back;
  for (const auto& [k, v] : keys) cli::apply_setting(back, k, v);
  EXPECT_EQ(cli::describe(back), keys);
}
