#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "infocausal/errors.hpp"
#include "infocausal/experiments.hpp"

namespace infocausal {
namespace {

const Corpus& corpus() {
  static const Corpus c = Corpus::load(INFOCAUSAL_TEST_CORPUS);
  return c;
}

TEST(Experiments, Quantile) {
  EXPECT_DOUBLE_EQ(quantile({3, 1, 2}, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(quantile({0, 10}, 0.25), 2.5);
  EXPECT_DOUBLE_EQ(quantile({5}, 0.99), 5.0);
  EXPECT_THROW(quantile({}, 0.5), InputError);
}

TEST(Experiments, ParseMeasure) {
  EXPECT_EQ(parse_measure("lz"), MeasureKind::kLz);
  EXPECT_EQ(parse_measure("gr"), MeasureKind::kGrammar);
  EXPECT_EQ(to_string(MeasureKind::kGrammar), "grammar");
  EXPECT_THROW(parse_measure("zip"), ConfigError);
  EXPECT_THROW(make_string_measure(MeasureKind::kShannon, {}), ConfigError);
}

TEST(Experiments, PatternSignature) {
  Pattern p(std::vector<NodeSet>{NodeSet{1}, NodeSet{0, 2}, NodeSet{1}});
  p.orient(1, 2);
  EXPECT_EQ(pattern_signature(p, {"a", "b", "c"}), "a--b;b->c");
  EXPECT_EQ(pattern_signature(Pattern(std::vector<NodeSet>(2)), {"a", "b"}), "empty");
}

TEST(Experiments, ParallelForRethrows) {
  std::vector<int> hit(20, 0);
  parallel_for(20, 4, [&](std::size_t i) { hit[i] = 1; });
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 20);
  EXPECT_THROW(parallel_for(5, 2,
                            [](std::size_t i) {
                              if (i == 3) throw InputError("boom");
                            }),
               InputError);
}

TEST(Experiments, Exp2IndependentOfJobs) {
  Exp2Config cfg;
  cfg.trials = 4;
  cfg.seed = 7;
  std::ostringstream one, many;
  cfg.jobs = 1;
  const ExperimentResult r1 = run_experiment2(cfg, corpus());
  r1.write_csv(one);
  cfg.jobs = 4;
  run_experiment2(cfg, corpus()).write_csv(many);
  EXPECT_EQ(one.str(), many.str());
  EXPECT_EQ(one.str().substr(0, one.str().find('\n')), TrialRecord::csv_header());
  EXPECT_DOUBLE_EQ(r1.correct_fraction(),
                   static_cast<double>(r1.correct_count()) / static_cast<double>(r1.trials.size()));
  EXPECT_EQ(r1.to_json().at("trials").size(), 4u);
}

TEST(Experiments, Exp1SingleStepChain) {
  Exp1Config cfg;
  cfg.k = 1;
  cfg.trials = 2;
  const ExperimentResult r = run_experiment1(cfg, corpus());
  for (const auto& t : r.trials) EXPECT_EQ(t.pattern, "s0--s1");
}

TEST(Experiments, Exp1ConfigErrorsBeforeTrials) {
  Exp1Config cfg;
  cfg.transformer = "translate";
  EXPECT_THROW(run_experiment1(cfg, corpus()), ConfigError);
}

TEST(Experiments, CalibrationSeparatesNullAndDependent) {
  CalibrationConfig cfg;
  cfg.samples = 40;
  cfg.nrange = {300, 500};
  const CalibrationResult r = calibrate(cfg, corpus());
  EXPECT_EQ(r.null_sample.size(), 40u);
  EXPECT_GT(r.power, 0.8);
  EXPECT_DOUBLE_EQ(r.threshold, quantile(r.null_sample, 0.99));
}

// ---- CLI ----------------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(INFOCAUSAL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli("exp2 --measure zip"), 2);
  EXPECT_EQ(run_cli("exp2 --graph q --trials 1"), 2);
  EXPECT_EQ(run_cli("exp2 --corpus /nonexistent/corpus.txt --trials 1"), 3);
  EXPECT_EQ(run_cli("verify --suite axioms --count 3"), 0);
}

TEST(Cli, Exp2WritesCsvAndJson) {
  const std::string prefix = ::testing::TempDir() + "cli_exp2";
  ASSERT_EQ(run_cli("exp2 --trials 2 --seed 3 --out " + prefix), 0);
  std::ifstream csv(prefix + ".csv"), json(prefix + ".json");
  ASSERT_TRUE(csv && json);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, TrialRecord::csv_header());
  const auto j = nlohmann::json::parse(json);
  EXPECT_EQ(j.at("trials").size(), 2u);
}

TEST(Cli, InfoOnFiles) {
  const std::string dir = ::testing::TempDir();
  std::ofstream(dir + "x.txt") << "the whale the whale the whale";
  std::ofstream(dir + "y.txt") << "the whale the whale the whale";
  EXPECT_EQ(run_cli("info --measure lz " + dir + "x.txt " + dir + "y.txt"), 0);
  EXPECT_EQ(run_cli("info --measure lz " + dir + "missing.txt"), 3);
}

}  // namespace
}  // namespace infocausal
