#include "fortify/reporting.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#ifndef FORTIFY_VERSION
#define FORTIFY_VERSION "0.0.0"
#endif

namespace fortify {

std::string artifact_version() { return FORTIFY_VERSION; }

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

namespace {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string updating_name(DEConfig::Updating u) {
  return u == DEConfig::Updating::immediate ? "immediate" : "deferred";
}

using Table = std::vector<std::vector<std::string>>;

std::string render_grid(const std::vector<std::string>& header, const Table& rows,
                        Format format) {
  std::ostringstream out;
  if (format == Format::csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
  std::vector<std::size_t> width(header.size(), 3);
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = std::max(width[i], header[i].size());
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << ' ' << cells[i] << std::string(width[i] - cells[i].size(), ' ') << " |";
    }
    out << '\n';
  };
  line(header);
  out << '|';
  for (std::size_t w : width) out << std::string(w + 2, '-') << '|';
  out << '\n';
  for (const auto& r : rows) line(r);
  return out.str();
}

}  // namespace

ExperimentSetup prepare_experiment(const std::string& function,
                                   const std::optional<BumpOptions>& bump) {
  TestProblem problem = make_problem(function);
  if (!bump) {
    double target = problem.optima.front().value;
    for (const auto& o : problem.optima) target = std::min(target, o.value);
    return {std::move(problem.objective), std::move(problem.optima), target};
  }
  auto [fortified, optima] = fortify(problem.objective, problem.optima, bump->target_label,
                                     bump->epsilon, bump->amplitude);
  return {std::move(fortified.objective), std::move(optima), fortified.fortified_optimum_value};
}

std::string ExperimentManifest::comment_block() const {
  std::ostringstream out;
  out << "# fortify " << artifact_version() << '\n';
  out << "# command=" << command << '\n';
  out << "# function=" << function << '\n';
  if (bump) {
    out << "# bump_optimum=" << bump->target_label << " epsilon=" << format_real(bump->epsilon)
        << " amplitude=" << format_real(bump->amplitude) << '\n';
  } else {
    out << "# bump_optimum=none\n";
  }
  out << "# strategy=best1bin updating=" << updating_name(de.updating)
      << " mutation=" << format_real(de.mutation_lo) << ".." << format_real(de.mutation_hi)
      << " crossover=" << format_real(de.crossover_prob) << '\n';
  if (command != "table") {
    out << "# pop=" << de.pop << " max_iter=" << de.max_iter
        << " polish=" << (de.polish ? "true" : "false") << '\n';
  }
  out << "# runs=" << n_runs << " seed=" << master_seed << '\n';
  out << "# value_tolerance=" << format_real(value_tolerance)
      << " near_radius=" << format_real(near_radius) << '\n';
  for (const auto& e : extra) out << "# " << e << '\n';
  return out.str();
}

std::vector<TableRowSpec> table1_rows() {
  return {{10, 20, false}, {10, 10, false}, {10, 10, true}, {5, 5, false},
          {5, 5, true},    {2, 2, false},   {2, 2, true}};
}

std::vector<TableRowSpec> table2_rows() {
  return {{10, 20, false}, {20, 10, false}, {20, 10, true}, {40, 5, false}, {40, 5, true},
          {50, 4, false},  {50, 4, true},   {80, 5, false}, {80, 5, true},  {100, 4, true},
          {125, 3, true},  {165, 2, true},  {330, 2, true}};
}

namespace {

ExperimentManifest manifest_for(const std::string& command, const ExperimentOptions& options) {
  ExperimentManifest m;
  m.command = command;
  m.function = options.function;
  m.bump = options.bump;
  m.de = options.de;
  m.n_runs = options.n_runs;
  m.master_seed = options.master_seed;
  m.value_tolerance = options.value_tolerance;
  m.near_radius = options.near_radius;
  return m;
}

SuccessCriterion criterion_for(const ExperimentOptions& options, double target) {
  SuccessCriterion c;
  c.value_tolerance = options.value_tolerance;
  c.near_radius = options.near_radius;
  c.target_value = target;
  return c;
}

}  // namespace

std::vector<TableRowResult> run_table(std::span<const TableRowSpec> rows,
                                      const ExperimentOptions& options) {
  const ExperimentSetup setup = prepare_experiment(options.function, options.bump);
  const SuccessCriterion criterion = criterion_for(options, setup.target_value);
  const ObjectiveFunction& prototype = setup.objective;
  std::vector<TableRowResult> results;
  for (const auto& row : rows) {
    TableRowResult result{row, std::nullopt, {}};
    DEConfig config = options.de;
    config.pop = row.pop;
    config.max_iter = row.max_iter;
    config.polish = row.polish;
    try {
      result.summary = run_replicates([&] { return prototype.fresh(); }, setup.optima, config,
                                      criterion, options.n_runs, options.master_seed,
                                      options.workers);
    } catch (const ConfigError& e) {
      result.error = e.what();
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::string render_table(std::span<const TableRowResult> rows, std::size_t n_optima,
                         const ExperimentManifest& manifest, Format format) {
  std::vector<std::string> header = {"algorithm", "pop", "max_iter", "percent_failures",
                                     "average_evals"};
  for (std::size_t j = 0; j < n_optima; ++j) header.push_back("near_opt_" + std::to_string(j + 1));
  header.push_back("note");

  Table table;
  for (const auto& r : rows) {
    std::vector<std::string> cells = {r.spec.polish ? "DE/BFGS" : "DE", std::to_string(r.spec.pop),
                                      std::to_string(r.spec.max_iter)};
    if (r.summary) {
      cells.push_back(format_fixed(r.summary->failure_percent, 1));
      cells.push_back(format_fixed(r.summary->mean_total_evals, 1));
      for (double p : r.summary->per_optimum_percent) cells.push_back(format_fixed(p, 1));
      cells.emplace_back();
    } else {
      for (std::size_t j = 0; j < 2 + n_optima; ++j) cells.emplace_back("-");
      std::string note = "invalid: " + r.error;
      std::replace(note.begin(), note.end(), ',', ';');
      cells.push_back(note);
    }
    table.push_back(std::move(cells));
  }
  return manifest.comment_block() + render_grid(header, table, format);
}

std::string cmd_table(std::span<const TableRowSpec> rows, const ExperimentOptions& options,
                      Format format) {
  const auto results = run_table(rows, options);
  const std::size_t n_optima = prepare_experiment(options.function, options.bump).optima.size();
  return render_table(results, n_optima, manifest_for("table", options), format);
}

MultirunReport analyze_outcomes(const std::vector<bool>& outcomes, double mean_evals,
                                std::size_t m_max) {
  if (m_max < 1) throw ConfigError("m_max must be at least 1");
  MultirunReport report;
  std::vector<std::size_t> ms(m_max);
  std::iota(ms.begin(), ms.end(), std::size_t{1});
  for (std::size_t m : ms) {
    if (m <= outcomes.size() && outcomes.size() % m != 0) {
      report.warnings.push_back("warning: " + std::to_string(outcomes.size()) +
                                " runs not divisible by m=" + std::to_string(m) + "; " +
                                std::to_string(outcomes.size() % m) + " trailing runs dropped");
    }
  }
  report.rows = multirun_table(outcomes, mean_evals, ms);
  return report;
}

MultirunReport run_multirun(const ExperimentOptions& options, std::size_t m_max) {
  const ExperimentSetup setup = prepare_experiment(options.function, options.bump);
  const SuccessCriterion criterion = criterion_for(options, setup.target_value);
  const ObjectiveFunction& prototype = setup.objective;
  ReplicateSummary runs =
      run_replicates([&] { return prototype.fresh(); }, setup.optima, options.de, criterion,
                     options.n_runs, options.master_seed, options.workers);
  MultirunReport report = analyze_outcomes(runs.outcome_bits, runs.mean_total_evals, m_max);
  report.runs = std::move(runs);
  return report;
}

std::string render_multirun(const MultirunReport& report, const ExperimentManifest& manifest,
                            Format format) {
  std::string out = manifest.comment_block();
  for (const auto& w : report.warnings) out += "# " + w + "\n";
  std::vector<std::string> header = {"m"};
  std::vector<std::string> observed = {"percent_failures"};
  std::vector<std::string> predicted = {"percent_expected_if_independent"};
  std::vector<std::string> evals = {"estimated_evals"};
  for (const auto& r : report.rows) {
    header.push_back(std::to_string(r.m));
    observed.push_back(format_fixed(r.observed_failure_percent, 1));
    predicted.push_back(format_fixed(r.predicted_failure_percent, 1));
    evals.push_back(format_fixed(r.evals_per_group, 1));
  }
  return out + render_grid(header, {observed, predicted, evals}, format);
}

std::string cmd_multirun(const ExperimentOptions& options, std::size_t m_max, Format format) {
  const MultirunReport report = run_multirun(options, m_max);
  ExperimentManifest manifest = manifest_for("multirun", options);
  manifest.extra.push_back("m_max=" + std::to_string(m_max));
  return render_multirun(report, manifest, format);
}

std::string outcome_file(const ReplicateSummary& summary, const ExperimentManifest& manifest) {
  return manifest.comment_block() + "# mean_total_evals=" + format_real(summary.mean_total_evals) +
         "\n" + format_outcome_bits(summary.outcome_bits) + "\n";
}

OutcomeFile parse_outcome_file(const std::string& text) {
  OutcomeFile file;
  std::istringstream in(text);
  std::string line;
  bool have_bits = false;
  const std::string key = "# mean_total_evals=";
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) {
      try {
        file.mean_total_evals = std::stod(line.substr(key.size()));
      } catch (const std::exception&) {
        throw ConfigError("malformed mean_total_evals comment");
      }
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (have_bits) throw ConfigError("outcome file holds more than one outcome line");
    file.outcomes = parse_outcome_bits(line);
    have_bits = true;
  }
  if (!have_bits) throw ConfigError("outcome file has no outcome line");
  return file;
}

std::string slice_csv(std::span<const SlicePoint> samples) {
  std::string out = "coordinate,value\n";
  for (const auto& s : samples) out += format_real(s.coordinate) + "," + format_real(s.value) + "\n";
  return out;
}

std::string cmd_slice(const SliceOptions& options) {
  TestProblem problem = make_problem(options.function);
  const BoxDomain& domain = problem.objective.domain();
  if (options.fixed_dim >= domain.dim()) throw ConfigError("fixed dimension out of range");
  const std::size_t free_dim = 1 - options.fixed_dim;
  const auto [lo, hi] = options.sweep.value_or(
      std::pair{domain.lower()[free_dim], domain.upper()[free_dim]});

  const auto base = slice_1d(problem.objective, options.fixed_dim, options.fixed_value, lo, hi,
                             options.n_points);
  if (options.epsilons.empty()) return slice_csv(base);

  std::vector<std::vector<SlicePoint>> columns;
  std::string out = "coordinate,base";
  for (double eps : options.epsilons) {
    auto [fortified, optima] =
        fortify(problem.objective, problem.optima, options.target_label, eps, options.amplitude);
    columns.push_back(slice_1d(fortified.objective, options.fixed_dim, options.fixed_value, lo, hi,
                               options.n_points));
    out += ",epsilon=" + format_real(eps);
  }
  out += '\n';
  for (std::size_t i = 0; i < base.size(); ++i) {
    out += format_real(base[i].coordinate) + "," + format_real(base[i].value);
    for (const auto& col : columns) out += "," + format_real(col[i].value);
    out += '\n';
  }
  return out;
}

}  // namespace fortify
