// Command-line front end: replicate tables, multi-run analysis and slices.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fortify/kernels.hpp"
#include "fortify/reporting.hpp"

namespace {

struct CommonFlags {
  std::string function = "branin";
  int bump_optimum = 0;
  std::vector<double> epsilons;
  double amplitude = 10.0;
  std::optional<int> pop;
  std::optional<int> max_iter;
  std::optional<bool> polish;
  std::optional<std::size_t> runs;
  std::size_t m_max = 10;
  std::uint64_t seed = fortify::kDefaultSeed;
  unsigned workers = 1;
  std::string format = "csv";
  std::string out;
  std::string updating = "immediate";
  std::string kernel = "auto";
};

void add_common(CLI::App& app, CommonFlags& f) {
  app.add_option("--function", f.function, "Test function name")->capture_default_str();
  app.add_option("--bump-optimum", f.bump_optimum,
                 "Label of the optimum to fortify (0 = no bump)")
      ->capture_default_str();
  app.add_option("--epsilon", f.epsilons, "Bump width parameter(s)");
  app.add_option("--amplitude", f.amplitude, "Bump amplitude")->capture_default_str();
  app.add_option("--pop", f.pop, "Population multiplier");
  app.add_option("--max-iter", f.max_iter, "DE generations");
  app.add_flag("--polish,!--no-polish", f.polish, "Run the quasi-Newton polish");
  app.add_option("--runs", f.runs, "Replicate count");
  app.add_option("--m-max", f.m_max, "Largest group size for multirun")->capture_default_str();
  app.add_option("--seed", f.seed, "Master seed")->capture_default_str();
  app.add_option("--workers", f.workers, "Parallel workers")->capture_default_str();
  app.add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  app.add_option("--out", f.out, "Write output to this path instead of stdout");
  app.add_option("--updating", f.updating, "DE selection updating")
      ->check(CLI::IsMember({"immediate", "deferred"}))
      ->capture_default_str();
  app.add_option("--kernel", f.kernel, "Evaluation kernel variant")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
}

fortify::Format format_of(const CommonFlags& f) {
  return f.format == "md" ? fortify::Format::markdown : fortify::Format::csv;
}

fortify::ExperimentOptions options_of(const CommonFlags& f, fortify::DEConfig defaults,
                                      std::size_t default_runs) {
  fortify::ExperimentOptions o;
  o.function = f.function;
  if (f.bump_optimum != 0) {
    fortify::BumpOptions b;
    b.target_label = f.bump_optimum;
    b.epsilon = f.epsilons.empty() ? 1.0 : f.epsilons.front();
    b.amplitude = f.amplitude;
    o.bump = b;
  }
  o.de = defaults;
  if (f.pop) o.de.pop = *f.pop;
  if (f.max_iter) o.de.max_iter = *f.max_iter;
  if (f.polish) o.de.polish = *f.polish;
  o.de.updating = f.updating == "deferred" ? fortify::DEConfig::Updating::deferred
                                           : fortify::DEConfig::Updating::immediate;
  o.n_runs = f.runs.value_or(default_runs);
  o.master_seed = f.seed;
  o.workers = f.workers;
  return o;
}

void emit(const CommonFlags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw fortify::ConfigError("cannot open output file: " + f.out);
  file << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fortify::ConfigError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fortified test functions and replicate DE benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fortify::artifact_version());

  CommonFlags flags;

  auto* table = app.add_subcommand("table", "Replicate table over (pop, max_iter, polish) rows");
  std::string preset;
  table->add_option("--preset", preset,
                    "Row set: table1 (default without a bump) or table2 (default with one)")
      ->check(CLI::IsMember({"table1", "table2"}));
  add_common(*table, flags);

  auto* replicate = app.add_subcommand("replicate", "Replicate summary for one configuration");
  std::string outcomes_out;
  replicate->add_option("--outcomes-out", outcomes_out, "Persist the run outcomes to this path");
  add_common(*replicate, flags);

  auto* multirun = app.add_subcommand("multirun", "Group-size analysis of the multiple-runs strategy");
  multirun->add_option("--outcomes-out", outcomes_out, "Persist the run outcomes to this path");
  add_common(*multirun, flags);

  auto* analyze = app.add_subcommand("analyze", "Group-size analysis of a persisted outcome file");
  std::string outcomes_in;
  std::optional<double> mean_evals;
  analyze->add_option("--outcomes", outcomes_in, "Outcome file")->required();
  analyze->add_option("--mean-evals", mean_evals, "Per-run evaluations (overrides the file)");
  add_common(*analyze, flags);

  auto* slice = app.add_subcommand("slice", "1-D slice of the base and fortified functions");
  double fixed_value = -3.14159265358979323846;
  std::size_t fixed_dim = 0;
  std::size_t points = 151;
  slice->add_option("--fixed-value", fixed_value, "Value of the fixed coordinate")
      ->capture_default_str();
  slice->add_option("--fixed-dim", fixed_dim, "Index of the fixed coordinate")
      ->capture_default_str();
  slice->add_option("--points", points, "Number of samples")->capture_default_str();
  add_common(*slice, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (flags.kernel != "auto") {
      fortify::kernels::force_isa(flags.kernel == "avx2" ? fortify::kernels::Isa::avx2
                                                         : fortify::kernels::Isa::scalar);
    }

    if (table->parsed()) {
      fortify::ExperimentOptions o = options_of(flags, {}, 1000);
      std::vector<fortify::TableRowSpec> rows;
      if (flags.pop || flags.max_iter) {
        rows.push_back({o.de.pop, o.de.max_iter, o.de.polish});
      } else if (preset == "table2" || (preset.empty() && o.bump)) {
        rows = fortify::table2_rows();
      } else {
        rows = fortify::table1_rows();
      }
      emit(flags, fortify::cmd_table(rows, o, format_of(flags)));
    } else if (replicate->parsed()) {
      const fortify::ExperimentOptions o = options_of(flags, {}, 1000);
      const std::vector<fortify::TableRowSpec> rows = {{o.de.pop, o.de.max_iter, o.de.polish}};
      const auto results = fortify::run_table(rows, o);
      if (!results.front().summary) throw fortify::ConfigError(results.front().error);
      fortify::ExperimentManifest manifest;
      manifest.command = "replicate";
      manifest.function = o.function;
      manifest.bump = o.bump;
      manifest.de = o.de;
      manifest.n_runs = o.n_runs;
      manifest.master_seed = o.master_seed;
      const std::size_t n_optima = results.front().summary->per_optimum_percent.size();
      emit(flags, fortify::render_table(results, n_optima, manifest, format_of(flags)));
      if (!outcomes_out.empty()) {
        std::ofstream(outcomes_out, std::ios::binary)
            << fortify::outcome_file(*results.front().summary, manifest);
      }
    } else if (multirun->parsed()) {
      fortify::DEConfig defaults;
      defaults.pop = 2;
      defaults.max_iter = 2;
      defaults.polish = true;
      const fortify::ExperimentOptions o = options_of(flags, defaults, 100800);
      const auto report = fortify::run_multirun(o, flags.m_max);
      fortify::ExperimentManifest manifest;
      manifest.command = "multirun";
      manifest.function = o.function;
      manifest.bump = o.bump;
      manifest.de = o.de;
      manifest.n_runs = o.n_runs;
      manifest.master_seed = o.master_seed;
      manifest.extra.push_back("m_max=" + std::to_string(flags.m_max));
      emit(flags, fortify::render_multirun(report, manifest, format_of(flags)));
      if (!outcomes_out.empty()) {
        std::ofstream(outcomes_out, std::ios::binary) << fortify::outcome_file(report.runs, manifest);
      }
    } else if (analyze->parsed()) {
      const auto file = fortify::parse_outcome_file(read_file(outcomes_in));
      const double evals = mean_evals.value_or(file.mean_total_evals.value_or(0.0));
      const auto report = fortify::analyze_outcomes(file.outcomes, evals, flags.m_max);
      fortify::ExperimentManifest manifest;
      manifest.command = "analyze";
      manifest.n_runs = file.outcomes.size();
      manifest.extra.push_back("source=" + outcomes_in);
      manifest.extra.push_back("m_max=" + std::to_string(flags.m_max));
      emit(flags, fortify::render_multirun(report, manifest, format_of(flags)));
    } else if (slice->parsed()) {
      fortify::SliceOptions s;
      s.function = flags.function;
      s.target_label = flags.bump_optimum == 0 ? 1 : flags.bump_optimum;
      s.amplitude = flags.amplitude;
      s.epsilons = flags.epsilons;
      s.fixed_dim = fixed_dim;
      s.fixed_value = fixed_value;
      s.n_points = points;
      emit(flags, fortify::cmd_slice(s));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
