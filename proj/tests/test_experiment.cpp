#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isa/experiment.hpp"

namespace {

namespace fs = std::filesystem;
using isa::ExperimentSpec;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("isa_test_experiment_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentSpec small_spec(const fs::path& out) {
  ExperimentSpec spec;
  spec.database = isa::DSphericalDb{2, 2, isa::default_rhos(2)};
  spec.t_list = {500, 1000};
  spec.trials = 3;
  spec.seed = 5;
  spec.out = out.string();
  return spec;
}

TEST(Config, RoundTrip) {
  ExperimentSpec spec = small_spec("x");
  spec.fset = {"cos", "square"};
  spec.ica.tol = 1e-7;
  spec.search.max_sweeps = 7;
  std::istringstream is(isa::to_config(spec));
  EXPECT_EQ(isa::parse_config(is), spec);

  ExperimentSpec letters = spec;
  letters.database = isa::AOmegaDb{{"A", "B", "omega"}};
  std::istringstream is2(isa::to_config(letters));
  EXPECT_EQ(isa::parse_config(is2), letters);
}

TEST(Config, HashIgnoresOutputPath) {
  ExperimentSpec a = small_spec("one"), b = small_spec("two");
  EXPECT_EQ(isa::spec_hash(a), isa::spec_hash(b));
  b.seed = 6;
  EXPECT_NE(isa::spec_hash(a), isa::spec_hash(b));
}

TEST(Config, DefaultsAndErrors) {
  std::istringstream minimal("[experiment]\ndatabase = aomega\n[aomega]\nletters = all\n");
  const auto spec = isa::parse_config(minimal);
  EXPECT_EQ(std::get<isa::AOmegaDb>(spec.database).letters.size(), 50u);

  std::istringstream bad_db("[experiment]\ndatabase = nope\n");
  EXPECT_THROW(isa::parse_config(bad_db), isa::ConfigError);
  std::istringstream bad_rho("[dspherical]\nM = 2\nrho = uniform\n");
  EXPECT_THROW(isa::parse_config(bad_rho), isa::ConfigError);
  std::istringstream bad_letter("[experiment]\ndatabase = aomega\n[aomega]\nletters = A,Q7\n");
  EXPECT_THROW(isa::parse_config(bad_letter), isa::ConfigError);
  std::istringstream bad_trials("[experiment]\ntrials = 0\n");
  EXPECT_THROW(isa::parse_config(bad_trials), isa::ConfigError);
}

TEST(TrialSeed, DependsOnlyOnKey) {
  EXPECT_EQ(isa::trial_seed(1, 1000, 2), isa::trial_seed(1, 1000, 2));
  EXPECT_NE(isa::trial_seed(1, 1000, 2), isa::trial_seed(1, 1000, 3));
  EXPECT_NE(isa::trial_seed(1, 1000, 2), isa::trial_seed(1, 2000, 2));
  EXPECT_NE(isa::trial_seed(1, 1000, 2), isa::trial_seed(2, 1000, 2));
}

TEST(TrialRecord, JsonRoundTrip) {
  isa::TrialRecord r;
  r.spec_hash = "abc";
  r.samples = 100;
  r.trial = 2;
  r.seed = 0xffffffffffffffffULL;
  r.amari = 0.0123456789012345;
  r.sweeps = 3;
  r.accepted_swaps = {4, 1, 0};
  r.ica_iterations = 17;
  r.ica_converged = true;
  r.final_cost = 1.5e-3;
  const auto back = isa::trial_from_json(nlohmann::json::parse(isa::to_json(r).dump()));
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(*back.amari, *r.amari);
  EXPECT_EQ(back.accepted_swaps, r.accepted_swaps);

  isa::TrialRecord failed = r;
  failed.amari.reset();
  failed.error = "boom";
  const auto j = isa::to_json(failed);
  EXPECT_FALSE(j.contains("amari"));
  EXPECT_EQ(isa::trial_from_json(j).error, "boom");
}

TEST(Aggregate, MeanAndSampleStd) {
  std::vector<isa::TrialRecord> rs(4);
  const double values[] = {0.1, 0.2, 0.3};
  for (int i = 0; i < 3; ++i) {
    rs[i].samples = 10;
    rs[i].trial = i;
    rs[i].amari = values[i];
    rs[i].sweeps = 2 + i;
  }
  rs[3].samples = 10;
  rs[3].trial = 3;
  rs[3].error = "x";
  const auto agg = isa::aggregate(rs);
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_EQ(agg[0].ok, 3);
  EXPECT_EQ(agg[0].failed, 1);
  EXPECT_NEAR(agg[0].mean_r, 0.2, 1e-15);
  EXPECT_NEAR(agg[0].std_r, 0.1, 1e-15);
  EXPECT_EQ(agg[0].min_sweeps, 2);
  EXPECT_EQ(agg[0].max_sweeps, 4);
}

TEST(RunExperiment, SmallRunIsConsistent) {
  const auto dir = fresh_dir("small");
  const auto result = isa::run_experiment(small_spec(dir));
  ASSERT_EQ(result.trials.size(), 6u);
  ASSERT_EQ(result.aggregates.size(), 2u);
  EXPECT_EQ(result.failed(), 0u);
  for (const auto& r : result.trials) {
    EXPECT_GE(r.sweeps, 1);
    EXPECT_GE(*r.amari, 0.0);
    EXPECT_LE(*r.amari, 1.0);
  }
  const auto loaded = isa::load_result(dir);
  EXPECT_EQ(loaded.aggregates.size(), 2u);
  EXPECT_EQ(loaded.aggregates[1].mean_r, result.aggregates[1].mean_r);
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir / "timings.jsonl"));
  EXPECT_TRUE(fs::exists(dir / "spec.ini"));
}

TEST(RunExperiment, RerunIsBitIdentical) {
  const auto a = fresh_dir("det_a"), b = fresh_dir("det_b");
  isa::run_experiment(small_spec(a));
  isa::RunOptions two;
  two.jobs = 2;
  isa::run_experiment(small_spec(b), two);
  EXPECT_EQ(slurp(a / "trials.jsonl"), slurp(b / "trials.jsonl"));
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
}

TEST(RunExperiment, ResumesAfterInterruption) {
  const auto full = fresh_dir("resume_full"), part = fresh_dir("resume_part");
  isa::run_experiment(small_spec(full));
  isa::RunOptions stop;
  stop.stop_after = 2;
  const auto first = isa::run_experiment(small_spec(part), stop);
  EXPECT_EQ(first.trials.size(), 2u);
  // Simulate a torn write at the moment of interruption.
  {
    std::ofstream os(part / "trials.jsonl", std::ios::app | std::ios::binary);
    os << "{\"spec_hash\":\"";
  }
  std::ostringstream log;
  isa::RunOptions opts;
  opts.log = &log;
  const auto second = isa::run_experiment(small_spec(part), opts);
  EXPECT_EQ(second.trials.size(), 6u);
  EXPECT_NE(log.str().find("resuming: 2"), std::string::npos);
  EXPECT_EQ(slurp(full / "trials.jsonl"), slurp(part / "trials.jsonl"));
}

TEST(RunExperiment, RejectsDifferentSpecInSameDirectory) {
  const auto dir = fresh_dir("conflict");
  auto spec = small_spec(dir);
  spec.t_list = {300};
  spec.trials = 1;
  isa::run_experiment(spec);
  spec.seed = 99;
  EXPECT_THROW(isa::run_experiment(spec), isa::ConfigError);
}

TEST(RunExperiment, RecordsPerTrialErrors) {
  const auto dir = fresh_dir("errors");
  auto spec = small_spec(dir);
  spec.t_list = {3};  // fewer samples than dimensions: whitening fails
  spec.trials = 2;
  const auto result = isa::run_experiment(spec);
  ASSERT_EQ(result.trials.size(), 2u);
  EXPECT_EQ(result.failed(), 2u);
  EXPECT_FALSE(result.trials[0].error.empty());
  EXPECT_EQ(result.aggregates[0].ok, 0);
}

TEST(PlotData, LinearAndLogLog) {
  isa::ExperimentResult r;
  for (int k = 0; k < 3; ++k) {
    isa::Aggregate a;
    a.samples = 1000 * (k + 1) * (k + 1);
    a.ok = 2;
    a.mean_r = 0.1 / (k + 1);
    r.aggregates.push_back(a);
  }
  std::ostringstream lin, log;
  isa::emit_plot_data(lin, r, isa::PlotMode::Linear);
  isa::emit_plot_data(log, r, isa::PlotMode::LogLog);
  EXPECT_EQ(lin.str().substr(0, lin.str().find('\n')), "T,mean_r,std_r");
  EXPECT_EQ(log.str().substr(0, log.str().find('\n')), "T,mean_r,std_r,log10_T,log10_mean_r");
  // mean_r = 0.1 * (T/1000)^{-1/2}
  EXPECT_NE(lin.str().find("# power_law_fit,c=0.5"), std::string::npos);

  isa::ExperimentResult two;
  two.aggregates.assign(r.aggregates.begin(), r.aggregates.begin() + 2);
  std::ostringstream omitted;
  isa::emit_plot_data(omitted, two, isa::PlotMode::Linear);
  EXPECT_NE(omitted.str().find("# power_law_fit omitted"), std::string::npos);
}

}  // namespace
