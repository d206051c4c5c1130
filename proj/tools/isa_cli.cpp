// Command-line front end: dataset generation, experiment runs, scoring and
// plot tables.
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical failure
// (for `run`: every trial failed), 1 anything else.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "isa/isa.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Flags shared by `gen` and `run`. Unset flags leave the config value alone.
struct SpecFlags {
  std::string config;
  std::string database;
  std::string letters;
  isa::Index m = 0;
  isa::Index d = 0;
  std::vector<std::string> rho;
  std::vector<isa::Index> t;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string fset;
  std::string out;
  double ica_tol = 0;
  int ica_max_iter = 0;
  int max_sweeps = 0;
  double swap_threshold = 0;

  std::vector<CLI::Option*> opts;

  void add_to(CLI::App& app, bool experiment) {
    app.add_option("--config", config, "Experiment config file (INI); flags override it")->check(CLI::ExistingFile);
    opts = {
        app.add_option("--database", database, "dspherical or aomega")
            ->check(CLI::IsMember({"dspherical", "aomega"})),
        app.add_option("--letters", letters, "Letter subset for aomega: comma list of names, or all"),
        app.add_option("--M", m, "Number of subspaces (dspherical)")->check(CLI::PositiveNumber),
        app.add_option("--d", d, "Subspace dimension (dspherical)")->check(CLI::PositiveNumber),
        app.add_option("--rho", rho, "Radial distribution per subspace: uniform, exp(rate), lognormal(mu,sigma)"),
        app.add_option("--T", t, "Sample size(s)")->delimiter(','),
        app.add_option("--seed", seed, "Base seed"),
        app.add_option("--fset", fset, "Comma list of f functions (cos, cos2, identity, square, tanh)"),
        app.add_option("--ica-tol", ica_tol, "FastICA convergence tolerance")->check(CLI::PositiveNumber),
        app.add_option("--ica-max-iter", ica_max_iter, "FastICA iteration cap")->check(CLI::PositiveNumber),
        app.add_option("--max-sweeps", max_sweeps, "Greedy sweep cap")->check(CLI::PositiveNumber),
        app.add_option("--swap-threshold", swap_threshold, "Relative cost decrease a swap must achieve"),
    };
    if (experiment) {
      opts.push_back(app.add_option("--trials", trials, "Trials per sample size")->check(CLI::PositiveNumber));
      opts.push_back(app.add_option("--out", out, "Results directory"));
    }
  }

  bool given(const std::string& name) const {
    for (auto* o : opts)
      if (o->check_lname(name.substr(2)) && o->count() > 0) return true;
    return false;
  }

  isa::ExperimentSpec build() const {
    isa::ExperimentSpec spec;
    if (!config.empty()) spec = isa::load_config(config);
    if (given("--T")) spec.t_list = t;
    if (given("--trials")) spec.trials = trials;
    if (given("--seed")) spec.seed = seed;
    if (given("--fset")) spec.fset = isa::FunctionSet::parse(fset).names();
    if (given("--out")) spec.out = out;
    if (given("--ica-tol")) spec.ica.tol = ica_tol;
    if (given("--ica-max-iter")) spec.ica.max_iter = ica_max_iter;
    if (given("--max-sweeps")) spec.search.max_sweeps = max_sweeps;
    if (given("--swap-threshold")) spec.search.swap_threshold = swap_threshold;

    const bool switch_db = given("--database");
    if (switch_db && database == "aomega" && !std::holds_alternative<isa::AOmegaDb>(spec.database))
      spec.database = isa::AOmegaDb{isa::default_glyphs().names()};
    if (switch_db && database == "dspherical" && !std::holds_alternative<isa::DSphericalDb>(spec.database))
      spec.database = isa::DSphericalDb{};

    if (auto* letters_db = std::get_if<isa::AOmegaDb>(&spec.database)) {
      if (given("--letters")) letters_db->letters = isa::resolve_letters(isa::default_glyphs(), letters);
      if (given("--M") || given("--d") || given("--rho"))
        throw isa::ConfigError("--M, --d and --rho apply to the dspherical database only");
    } else {
      auto& sph = std::get<isa::DSphericalDb>(spec.database);
      if (given("--letters")) throw isa::ConfigError("--letters applies to the aomega database only");
      if (given("--M")) sph.subspaces = m;
      if (given("--d")) sph.dim = d;
      if (given("--rho")) {
        sph.rhos.clear();
        for (const auto& r : rho)
          for (const auto& parsed : isa::parse_rho_list(r)) sph.rhos.push_back(parsed);
        if (sph.rhos.size() == 1) sph.rhos.assign(static_cast<std::size_t>(sph.subspaces), sph.rhos.front());
      } else if (given("--M")) {
        sph.rhos = isa::default_rhos(sph.subspaces);
      }
    }
    spec.validate();
    return spec;
  }
};

int cmd_gen(const SpecFlags& flags, const std::string& out, const std::string& mixing_out,
            const std::string& sources_out, const std::string& mixing, std::optional<int> trial) {
  const isa::ExperimentSpec spec = flags.build();
  const isa::Index samples = spec.t_list.front();
  const std::uint64_t seed = trial ? isa::trial_seed(spec.seed, samples, *trial) : spec.seed;
  const auto obs = isa::make_observation(spec.database, samples, seed,
                                         mixing == "identity" ? isa::MixingChoice::Identity : isa::MixingChoice::Haar);
  isa::save_matrix(out, obs.z.data());
  if (!mixing_out.empty()) isa::save_matrix(mixing_out, obs.a.matrix());
  if (!sources_out.empty()) isa::save_matrix(sources_out, obs.s.data());
  const auto blocks = isa::blocks_of(spec.database);
  std::cout << nlohmann::json{{"file", out}, {"D", obs.z.dim()}, {"T", samples},     {"M", blocks.subspaces()},
                              {"d", blocks.dim()}, {"seed", seed},  {"mixing", mixing}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_run(const SpecFlags& flags, int jobs, bool quiet) {
  const isa::ExperimentSpec spec = flags.build();
  isa::RunOptions opts;
  opts.jobs = jobs;
  if (!quiet) opts.log = &std::cerr;
  const auto result = isa::run_experiment(spec, opts);
  isa::write_summary_csv(std::cout, result);
  if (result.failed() == result.trials.size()) {
    std::cerr << "all trials failed; first error: " << result.trials.front().error << '\n';
    return kExitNumerical;
  }
  return 0;
}

int cmd_amari(const std::string& w_path, const std::string& a_path, isa::Index m, isa::Index d) {
  const auto w = isa::load_matrix(w_path);
  const auto a = isa::load_matrix(a_path);
  const auto rep = isa::amari_index(isa::multiply(w, a), isa::BlockStructure(m, d));
  std::cout << "r=" << isa::detail::format_double(rep.r) << " percent=" << isa::detail::format_double(rep.percent())
            << "%\n";
  return 0;
}

int cmd_plot(const std::string& results, const std::string& mode, const std::string& out) {
  const auto result = isa::load_result(results);
  const auto plot_mode = mode == "loglog" ? isa::PlotMode::LogLog : isa::PlotMode::Linear;
  if (out.empty()) {
    isa::emit_plot_data(std::cout, result, plot_mode);
  } else {
    std::ofstream os(out);
    if (!os) throw isa::ConfigError("cannot open '" + out + "' for writing");
    isa::emit_plot_data(os, result, plot_mode);
  }
  return 0;
}

// Greedy search with its trace as JSON lines, then the exhaustive optimum.
int cmd_oracle(const std::string& input, isa::Index m, isa::Index d, const std::string& fset_names,
               const isa::GreedyOptions& opts) {
  const isa::SampleMatrix s(isa::load_matrix(input));
  const isa::BlockStructure blocks(m, d);
  const isa::PairCost pc(s, isa::FunctionSet::parse(fset_names), blocks);
  const auto greedy = isa::greedy_permutation(pc, opts);
  std::cout << nlohmann::json{{"event", "start"}, {"cost", greedy.trace.cost_history.front()}}.dump() << '\n';
  std::size_t next = 0;
  for (int sweep = 1; sweep <= greedy.trace.sweeps; ++sweep) {
    for (; next < greedy.trace.swaps.size() && greedy.trace.swaps[next].sweep == sweep; ++next) {
      const auto& sw = greedy.trace.swaps[next];
      std::cout << nlohmann::json{{"event", "swap"}, {"sweep", sweep}, {"p", sw.p}, {"q", sw.q}, {"cost", sw.cost}}
                       .dump()
                << '\n';
    }
    std::cout << nlohmann::json{{"event", "sweep"},
                                {"sweep", sweep},
                                {"accepted", greedy.trace.accepted_swaps[sweep - 1]}}
                     .dump()
              << '\n';
  }
  const auto exhaustive = isa::exhaustive_permutation(pc);
  const bool equal = std::abs(greedy.cost - exhaustive.cost) <= 1e-9 * std::max(exhaustive.cost, 1e-300);
  std::cout << nlohmann::json{{"event", "result"},
                              {"greedy_cost", greedy.cost},
                              {"greedy_perm", greedy.perm.destinations()},
                              {"hit_sweep_cap", greedy.trace.hit_sweep_cap},
                              {"exhaustive_cost", exhaustive.cost},
                              {"exhaustive_perm", exhaustive.perm.destinations()},
                              {"greedy_optimal", equal}}
                   .dump()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Independent Subspace Analysis: ICA followed by greedy grouping of the components"};
  app.require_subcommand(1);

  SpecFlags gen_flags;
  std::string gen_out, gen_mixing_out, gen_sources_out, gen_mixing = "haar";
  std::optional<int> gen_trial;
  auto* gen = app.add_subcommand("gen", "Generate one observation matrix z = A s");
  gen_flags.add_to(*gen, false);
  gen->add_option("--out", gen_out, "Output matrix file (.csv, or .bin for binary)")->required();
  gen->add_option("--mixing-out", gen_mixing_out, "Also write the mixing matrix A");
  gen->add_option("--sources-out", gen_sources_out, "Also write the sources s");
  gen->add_option("--mixing", gen_mixing, "haar or identity")->check(CLI::IsMember({"haar", "identity"}));
  gen->add_option("--trial", gen_trial, "Reproduce the data of this trial index of an experiment (first T)");

  SpecFlags run_flags;
  int jobs = 1;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a multi-trial experiment; prints the per-T summary");
  run_flags.add_to(*run, true);
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("-q,--quiet", quiet, "No per-trial log on stderr");

  std::string w_path, a_path;
  isa::Index am = 0, ad = 0;
  auto* amari = app.add_subcommand("amari", "Score a separation matrix W against a mixing matrix A");
  amari->add_option("--W", w_path, "Separation matrix file")->required()->check(CLI::ExistingFile);
  amari->add_option("--A", a_path, "Mixing matrix file")->required()->check(CLI::ExistingFile);
  amari->add_option("--M", am, "Number of subspaces")->required()->check(CLI::PositiveNumber);
  amari->add_option("--d", ad, "Subspace dimension")->required()->check(CLI::PositiveNumber);

  std::string results, mode = "loglog", plot_out;
  auto* plot = app.add_subcommand("plot-data", "Per-T error table with a power-law fit");
  plot->add_option("--results", results, "Results directory of a run")->required()->check(CLI::ExistingDirectory);
  plot->add_option("--mode", mode, "linear or loglog")->check(CLI::IsMember({"linear", "loglog"}));
  plot->add_option("--out", plot_out, "Output CSV (default stdout)");

  std::string oracle_in, oracle_fset = "cos,cos2";
  isa::Index om = 0, od = 0;
  isa::GreedyOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Compare greedy grouping with the exhaustive optimum (D <= 8)");
  oracle->add_option("--input", oracle_in, "Separated coordinates, D x T matrix file")
      ->required()
      ->check(CLI::ExistingFile);
  oracle->add_option("--M", om, "Number of subspaces")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--d", od, "Subspace dimension")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--fset", oracle_fset, "Comma list of f functions");
  oracle->add_option("--max-sweeps", oracle_opts.max_sweeps, "Greedy sweep cap")->check(CLI::PositiveNumber);
  oracle->add_option("--swap-threshold", oracle_opts.swap_threshold, "Relative cost decrease a swap must achieve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) return cmd_gen(gen_flags, gen_out, gen_mixing_out, gen_sources_out, gen_mixing, gen_trial);
    if (*run) return cmd_run(run_flags, jobs, quiet);
    if (*amari) return cmd_amari(w_path, a_path, am, ad);
    if (*plot) return cmd_plot(results, mode, plot_out);
    if (*oracle) return cmd_oracle(oracle_in, om, od, oracle_fset, oracle_opts);
  } catch (const isa::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const isa::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const isa::FieldError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const isa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
