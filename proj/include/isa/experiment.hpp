#pragma once

// Multi-trial benchmark runs: configuration, seeding, resumable JSON-lines
// persistence, aggregation and plot tables.
//
// Output directory layout:
//   spec.ini       the configuration the results belong to
//   trials.jsonl   one record per (T, trial), sorted by (T, trial) at the end of a run
//   summary.csv    per-T mean and standard deviation
//   timings.jsonl  wall-clock times; kept apart so the files above are reproducible

#include <algorithm>
#include <atomic>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "isa/datagen.hpp"
#include "isa/error.hpp"
#include "isa/fcov.hpp"
#include "isa/metrics.hpp"
#include "isa/permsearch.hpp"
#include "isa/rng.hpp"

namespace isa {

struct ExperimentSpec {
  DatabaseSpec database = DSphericalDb{};
  std::vector<Index> t_list = {1000};
  int trials = 10;
  std::uint64_t seed = 1;
  std::vector<std::string> fset = {"cos", "cos2"};
  IcaOptions ica;
  GreedyOptions search;
  std::string out = "results";

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (t_list.empty()) throw ConfigError("at least one sample size T is required");
    for (Index t : t_list)
      if (t < 2) throw ConfigError("every T must be >= 2");
    if (ica.max_iter < 1 || !(ica.tol > 0)) throw ConfigError("invalid ICA options");
    if (search.max_sweeps < 1 || !(search.swap_threshold >= 0)) throw ConfigError("invalid search options");
    (void)FunctionSet::from_names(fset);
    if (const auto* sph = std::get_if<DSphericalDb>(&database)) {
      if (sph->subspaces < 1 || sph->dim < 1) throw ConfigError("d-spherical needs M >= 1 and d >= 1");
      if (static_cast<Index>(sph->rhos.size()) != sph->subspaces) throw ConfigError("need one rho per subspace");
      for (const auto& r : sph->rhos) r.validate();
    } else {
      const auto& letters = std::get<AOmegaDb>(database).letters;
      if (letters.empty()) throw ConfigError("letter subset is empty");
      for (const auto& l : letters) (void)default_glyphs().at(l);
    }
  }

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

namespace detail {

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    if constexpr (std::is_same_v<T, double>)
      os << format_double(xs[i]);
    else
      os << xs[i];
  }
  return os.str();
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto part : split(s, ',')) {
    std::string item(part);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

inline boost::property_tree::ptree to_ptree(const ExperimentSpec& spec, bool include_out = true) {
  boost::property_tree::ptree pt;
  const bool spherical = std::holds_alternative<DSphericalDb>(spec.database);
  pt.put("experiment.database", spherical ? "dspherical" : "aomega");
  pt.put("experiment.T", detail::join(spec.t_list));
  pt.put("experiment.trials", spec.trials);
  pt.put("experiment.seed", spec.seed);
  pt.put("experiment.fset", detail::join(spec.fset));
  if (include_out) pt.put("experiment.out", spec.out);
  if (spherical) {
    const auto& db = std::get<DSphericalDb>(spec.database);
    pt.put("dspherical.M", db.subspaces);
    pt.put("dspherical.d", db.dim);
    std::vector<std::string> rhos;
    for (const auto& r : db.rhos) rhos.push_back(to_string(r));
    pt.put("dspherical.rho", detail::join(rhos, ", "));
  } else {
    pt.put("aomega.letters", detail::join(std::get<AOmegaDb>(spec.database).letters));
  }
  pt.put("ica.tol", detail::format_double(spec.ica.tol));
  pt.put("ica.max_iter", spec.ica.max_iter);
  pt.put("search.max_sweeps", spec.search.max_sweeps);
  pt.put("search.swap_threshold", detail::format_double(spec.search.swap_threshold));
  return pt;
}

inline std::string to_config(const ExperimentSpec& spec, bool include_out = true) {
  std::ostringstream os;
  boost::property_tree::write_ini(os, to_ptree(spec, include_out));
  return os.str();
}

/// Reads the key = value sections written by to_config. Missing keys keep
/// their defaults.
inline ExperimentSpec parse_config(std::istream& is) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentSpec spec;
  try {
    const std::string db = tree.get<std::string>("experiment.database", "dspherical");
    if (auto t = tree.get_optional<std::string>("experiment.T")) {
      spec.t_list.clear();
      for (const auto& s : detail::split_list(*t)) spec.t_list.push_back(static_cast<Index>(detail::parse_double(s)));
    }
    spec.trials = tree.get<int>("experiment.trials", spec.trials);
    spec.seed = tree.get<std::uint64_t>("experiment.seed", spec.seed);
    if (auto f = tree.get_optional<std::string>("experiment.fset")) spec.fset = detail::split_list(*f);
    spec.out = tree.get<std::string>("experiment.out", spec.out);
    if (db == "dspherical") {
      DSphericalDb sph;
      sph.subspaces = tree.get<Index>("dspherical.M", sph.subspaces);
      sph.dim = tree.get<Index>("dspherical.d", sph.dim);
      if (auto r = tree.get_optional<std::string>("dspherical.rho"))
        sph.rhos = parse_rho_list(*r);
      else
        sph.rhos = default_rhos(sph.subspaces);
      spec.database = sph;
    } else if (db == "aomega") {
      AOmegaDb letters;
      letters.letters = resolve_letters(default_glyphs(), tree.get<std::string>("aomega.letters", "all"));
      spec.database = letters;
    } else {
      throw ConfigError("unknown database '" + db + "'");
    }
    if (auto v = tree.get_optional<std::string>("ica.tol")) spec.ica.tol = detail::parse_double(*v);
    spec.ica.max_iter = tree.get<int>("ica.max_iter", spec.ica.max_iter);
    spec.search.max_sweeps = tree.get<int>("search.max_sweeps", spec.search.max_sweeps);
    if (auto v = tree.get_optional<std::string>("search.swap_threshold"))
      spec.search.swap_threshold = detail::parse_double(*v);
  } catch (const pt::ptree_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  spec.validate();
  return spec;
}

inline ExperimentSpec load_config(const std::filesystem::path& p) {
  std::ifstream is(p);
  if (!is) throw ConfigError("cannot open config '" + p.string() + "'");
  return parse_config(is);
}

/// Hash of everything that determines the results (the output path excluded).
inline std::string spec_hash(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << detail::fnv1a(to_config(spec, false));
  return os.str();
}

/// Seed of one trial; depends only on (base seed, T, trial index).
inline std::uint64_t trial_seed(std::uint64_t base, Index samples, int trial) {
  return mix_seed(base, {static_cast<std::uint64_t>(samples), static_cast<std::uint64_t>(trial)});
}

struct TrialRecord {
  std::string spec_hash;
  Index samples = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> amari;
  int sweeps = 0;
  std::vector<int> accepted_swaps;
  int ica_iterations = 0;
  bool ica_converged = false;
  double final_cost = 0.0;
  std::string error;
  double wall_seconds = 0.0;  // not persisted in trials.jsonl

  bool ok() const { return amari.has_value(); }
};

inline nlohmann::json to_json(const TrialRecord& r) {
  nlohmann::json j;
  j["spec_hash"] = r.spec_hash;
  j["T"] = r.samples;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  if (r.ok()) {
    j["amari"] = *r.amari;
    j["sweeps"] = r.sweeps;
    j["accepted_swaps"] = r.accepted_swaps;
    j["ica_iterations"] = r.ica_iterations;
    j["ica_converged"] = r.ica_converged;
    j["final_cost"] = r.final_cost;
  } else {
    j["error"] = r.error;
  }
  return j;
}

inline TrialRecord trial_from_json(const nlohmann::json& j) {
  TrialRecord r;
  r.spec_hash = j.at("spec_hash").get<std::string>();
  r.samples = j.at("T").get<Index>();
  r.trial = j.at("trial").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("amari")) {
    r.amari = j.at("amari").get<double>();
    r.sweeps = j.at("sweeps").get<int>();
    r.accepted_swaps = j.at("accepted_swaps").get<std::vector<int>>();
    r.ica_iterations = j.at("ica_iterations").get<int>();
    r.ica_converged = j.at("ica_converged").get<bool>();
    r.final_cost = j.at("final_cost").get<double>();
  } else {
    r.error = j.value("error", std::string("unknown error"));
  }
  return r;
}

struct Aggregate {
  Index samples = 0;
  int ok = 0;
  int failed = 0;
  double mean_r = 0.0;
  double std_r = 0.0;  // sample standard deviation, 0 for a single trial
  int min_sweeps = 0;
  int max_sweeps = 0;
};

struct ExperimentResult {
  std::string spec_hash;
  std::vector<TrialRecord> trials;  // sorted by (T, trial)
  std::vector<Aggregate> aggregates;

  std::size_t failed() const {
    return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& r) { return !r.ok(); }));
  }
};

/// Per-T statistics in ascending T, from trials in (T, trial) order.
inline std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& trials) {
  std::map<Index, std::vector<const TrialRecord*>> by_t;
  for (const auto& r : trials) by_t[r.samples].push_back(&r);
  std::vector<Aggregate> out;
  for (const auto& [t, rows] : by_t) {
    Aggregate a;
    a.samples = t;
    double sum = 0.0;
    for (const auto* r : rows) {
      if (!r->ok()) {
        ++a.failed;
        continue;
      }
      if (a.ok == 0 || r->sweeps < a.min_sweeps) a.min_sweeps = r->sweeps;
      if (a.ok == 0 || r->sweeps > a.max_sweeps) a.max_sweeps = r->sweeps;
      ++a.ok;
      sum += *r->amari;
    }
    if (a.ok > 0) {
      a.mean_r = sum / a.ok;
      double ss = 0.0;
      for (const auto* r : rows)
        if (r->ok()) ss += (*r->amari - a.mean_r) * (*r->amari - a.mean_r);
      a.std_r = a.ok > 1 ? std::sqrt(ss / (a.ok - 1)) : 0.0;
    }
    out.push_back(a);
  }
  return out;
}

/// Generates, mixes, separates and scores one trial.
inline TrialRecord run_trial(const ExperimentSpec& spec, const std::string& hash, Index samples, int trial) {
  TrialRecord rec;
  rec.spec_hash = hash;
  rec.samples = samples;
  rec.trial = trial;
  rec.seed = trial_seed(spec.seed, samples, trial);
  const auto start = std::chrono::steady_clock::now();
  try {
    const BlockStructure blocks = blocks_of(spec.database);
    const Observation obs = make_observation(spec.database, samples, rec.seed);
    const IsaEstimate est =
        estimate_isa(obs.z, blocks, FunctionSet::from_names(spec.fset), rec.seed, IsaOptions{spec.ica, spec.search});
    rec.amari = amari_index(multiply(est.w_isa, obs.a.matrix()), blocks).r;
    rec.sweeps = est.trace.sweeps;
    rec.accepted_swaps = est.trace.accepted_swaps;
    rec.ica_iterations = est.ica->iterations;
    rec.ica_converged = est.ica->converged;
    rec.final_cost = est.cost;
  } catch (const std::exception& e) {
    rec.amari.reset();
    rec.error = e.what();
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

struct RunOptions {
  int jobs = 1;
  std::optional<std::size_t> stop_after;  // run at most this many new trials (simulated interruption)
  std::ostream* log = nullptr;
};

namespace detail {

/// Reads complete records; a torn last line from an interrupted run is
/// dropped and the file truncated to the last complete record.
inline std::vector<TrialRecord> read_trials(const std::filesystem::path& p, bool repair) {
  std::vector<TrialRecord> out;
  std::ifstream is(p, std::ios::binary);
  if (!is) return out;
  std::string content((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  is.close();
  std::size_t pos = 0, good_end = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    if (nl == std::string::npos) break;
    const std::string line = content.substr(pos, nl - pos);
    if (!line.empty()) {
      try {
        out.push_back(trial_from_json(nlohmann::json::parse(line)));
      } catch (const std::exception&) {
        break;
      }
    }
    pos = nl + 1;
    good_end = pos;
  }
  if (repair && good_end != content.size()) std::filesystem::resize_file(p, good_end);
  return out;
}

inline void write_text_atomically(const std::filesystem::path& p, const std::string& text) {
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write '" + tmp + "'");
    os << text;
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace detail

inline void write_summary_csv(std::ostream& os, const ExperimentResult& r) {
  os << "T,trials,failed,mean_r,std_r,min_sweeps,max_sweeps\n";
  for (const auto& a : r.aggregates)
    os << a.samples << ',' << a.ok << ',' << a.failed << ',' << detail::format_double(a.mean_r) << ','
       << detail::format_double(a.std_r) << ',' << a.min_sweeps << ',' << a.max_sweeps << '\n';
}

/// Loads trials.jsonl from a results directory.
inline ExperimentResult load_result(const std::filesystem::path& dir) {
  ExperimentResult r;
  r.trials = detail::read_trials(dir / "trials.jsonl", false);
  if (r.trials.empty()) throw ConfigError("no trial records in '" + dir.string() + "'");
  std::sort(r.trials.begin(), r.trials.end(),
            [](const auto& a, const auto& b) { return std::pair(a.samples, a.trial) < std::pair(b.samples, b.trial); });
  r.spec_hash = r.trials.front().spec_hash;
  r.aggregates = aggregate(r.trials);
  return r;
}

/// Runs every (T, trial) not already recorded in spec.out, appending records
/// as they complete in (T, trial) order.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {}) {
  spec.validate();
  namespace fs = std::filesystem;
  const std::string hash = spec_hash(spec);
  const fs::path dir(spec.out);
  fs::create_directories(dir);

  const fs::path spec_path = dir / "spec.ini";
  if (fs::exists(spec_path)) {
    if (spec_hash(load_config(spec_path)) != hash)
      throw ConfigError("output directory '" + dir.string() + "' holds results of a different configuration");
  } else {
    detail::write_text_atomically(spec_path, to_config(spec));
  }

  const fs::path trials_path = dir / "trials.jsonl";
  std::map<std::pair<Index, int>, TrialRecord> done;
  for (auto& r : detail::read_trials(trials_path, true)) {
    if (r.spec_hash != hash) throw ConfigError("trials.jsonl holds records of a different configuration");
    done[{r.samples, r.trial}] = std::move(r);
  }

  std::vector<std::pair<Index, int>> pending;
  for (Index t : spec.t_list)
    for (int k = 0; k < spec.trials; ++k)
      if (!done.count({t, k})) pending.emplace_back(t, k);
  if (opts.stop_after && pending.size() > *opts.stop_after) pending.resize(*opts.stop_after);
  if (opts.log && !done.empty()) *opts.log << "resuming: " << done.size() << " trials already recorded\n";

  std::vector<std::optional<TrialRecord>> slots(pending.size());
  std::mutex write_mutex;
  std::size_t next_to_write = 0;
  std::ofstream trials_out(trials_path, std::ios::binary | std::ios::app);
  std::ofstream timings_out(dir / "timings.jsonl", std::ios::binary | std::ios::app);
  if (!trials_out || !timings_out) throw ConfigError("cannot append to results in '" + dir.string() + "'");

  std::atomic<std::size_t> next_task{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= pending.size()) return;
      TrialRecord rec = run_trial(spec, hash, pending[i].first, pending[i].second);
      std::lock_guard lock(write_mutex);
      slots[i] = std::move(rec);
      while (next_to_write < slots.size() && slots[next_to_write]) {
        const TrialRecord& r = *slots[next_to_write];
        trials_out << to_json(r).dump() << '\n' << std::flush;
        timings_out << nlohmann::json{{"T", r.samples}, {"trial", r.trial}, {"wall_seconds", r.wall_seconds}}.dump()
                    << '\n'
                    << std::flush;
        if (opts.log) {
          *opts.log << "T=" << r.samples << " trial=" << r.trial;
          if (r.ok())
            *opts.log << " amari=" << 100.0 * *r.amari << "% sweeps=" << r.sweeps << " ica_iter=" << r.ica_iterations;
          else
            *opts.log << " error: " << r.error;
          *opts.log << " (" << r.wall_seconds << " s)\n";
        }
        ++next_to_write;
      }
    }
  };
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  trials_out.close();
  timings_out.close();

  for (auto& s : slots) done[{s->samples, s->trial}] = std::move(*s);
  ExperimentResult result;
  result.spec_hash = hash;
  for (auto& [key, rec] : done) result.trials.push_back(std::move(rec));
  result.aggregates = aggregate(result.trials);

  std::ostringstream sorted;
  for (const auto& r : result.trials) sorted << to_json(r).dump() << '\n';
  detail::write_text_atomically(trials_path, sorted.str());
  std::ostringstream summary;
  write_summary_csv(summary, result);
  detail::write_text_atomically(dir / "summary.csv", summary.str());
  return result;
}

enum class PlotMode { Linear, LogLog };

/// CSV of per-T mean/std (plus log10 columns in log-log mode) followed by a
/// "# power_law_fit" comment row.
inline void emit_plot_data(std::ostream& os, const ExperimentResult& result, PlotMode mode) {
  std::vector<const Aggregate*> rows;
  for (const auto& a : result.aggregates)
    if (a.ok > 0) rows.push_back(&a);
  if (rows.empty()) throw ConfigError("plot data: result has no successful trials");
  os << "T,mean_r,std_r";
  if (mode == PlotMode::LogLog) os << ",log10_T,log10_mean_r";
  os << '\n';
  std::vector<std::pair<double, double>> points;
  for (const auto* a : rows) {
    os << a->samples << ',' << detail::format_double(a->mean_r) << ',' << detail::format_double(a->std_r);
    if (mode == PlotMode::LogLog) {
      os << ',' << detail::format_double(std::log10(static_cast<double>(a->samples))) << ','
         << (a->mean_r > 0 ? detail::format_double(std::log10(a->mean_r)) : std::string("nan"));
    }
    os << '\n';
    points.emplace_back(static_cast<double>(a->samples), a->mean_r);
  }
  try {
    const PowerLawFit fit = power_law_fit(points);
    os << "# power_law_fit,c=" << detail::format_double(fit.c) << ",r2=" << detail::format_double(fit.r2)
       << ",points=" << fit.used << '\n';
    for (const auto& w : fit.warnings) os << "# warning: " << w << '\n';
  } catch (const ConfigError& e) {
    os << "# power_law_fit omitted: " << e.what() << '\n';
  }
}

}  // namespace isa
