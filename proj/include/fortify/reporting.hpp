#pragma once
// Experiment manifests and table generators behind the command-line tool.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fortify/de_optimizer.hpp"
#include "fortify/fortification.hpp"
#include "fortify/multirun_analysis.hpp"
#include "fortify/replicate_harness.hpp"

namespace fortify {

std::string artifact_version();

inline constexpr std::uint64_t kDefaultSeed = 2019;

enum class Format { csv, markdown };

struct BumpOptions {
  int target_label = 1;
  double epsilon = 1.0;
  double amplitude = 10.0;
};

/// Objective, registered optima and the success target for one experiment.
struct ExperimentSetup {
  ObjectiveFunction objective;
  std::vector<KnownOptimum> optima;
  double target_value = 0.0;
};

/// The fortified target is base(center) - A*phi(0), recomputed from the
/// bump rather than hard-coded.
ExperimentSetup prepare_experiment(const std::string& function,
                                   const std::optional<BumpOptions>& bump);

struct ExperimentManifest {
  std::string command;
  std::string function = "branin";
  std::optional<BumpOptions> bump;
  DEConfig de;
  std::size_t n_runs = 0;
  std::uint64_t master_seed = kDefaultSeed;
  double value_tolerance = 0.01;
  double near_radius = 1.0;
  std::vector<std::string> extra;  // command-specific key=value entries

  /// '#'-prefixed lines; enough to re-run the experiment exactly.
  std::string comment_block() const;
};

struct TableRowSpec {
  int pop = 10;
  int max_iter = 20;
  bool polish = false;
};

std::vector<TableRowSpec> table1_rows();
std::vector<TableRowSpec> table2_rows();

struct ExperimentOptions {
  std::string function = "branin";
  std::optional<BumpOptions> bump;
  DEConfig de;  // pop/max_iter/polish are overridden per table row
  std::size_t n_runs = 1000;
  std::uint64_t master_seed = kDefaultSeed;
  unsigned workers = 1;
  double value_tolerance = 0.01;
  double near_radius = 1.0;
};

struct TableRowResult {
  TableRowSpec spec;
  std::optional<ReplicateSummary> summary;
  std::string error;  // set when the row's configuration was rejected
};

/// Runs every row; a rejected row is reported and the others still run.
std::vector<TableRowResult> run_table(std::span<const TableRowSpec> rows,
                                      const ExperimentOptions& options);

std::string render_table(std::span<const TableRowResult> rows, std::size_t n_optima,
                         const ExperimentManifest& manifest, Format format);

std::string cmd_table(std::span<const TableRowSpec> rows, const ExperimentOptions& options,
                      Format format);

struct MultirunReport {
  ReplicateSummary runs;
  std::vector<MultiRunSummary> rows;
  std::vector<std::string> warnings;
};

/// Group-size analysis for m = 1..m_max on one set of replicate outcomes.
MultirunReport analyze_outcomes(const std::vector<bool>& outcomes, double mean_evals,
                                std::size_t m_max);

MultirunReport run_multirun(const ExperimentOptions& options, std::size_t m_max);

std::string render_multirun(const MultirunReport& report, const ExperimentManifest& manifest,
                            Format format);

std::string cmd_multirun(const ExperimentOptions& options, std::size_t m_max, Format format);

/// Outcome file: manifest comments, a mean_total_evals comment, then one
/// '0'/'1' line ('1' = failure).
std::string outcome_file(const ReplicateSummary& summary, const ExperimentManifest& manifest);

struct OutcomeFile {
  std::vector<bool> outcomes;
  std::optional<double> mean_total_evals;
};
OutcomeFile parse_outcome_file(const std::string& text);

struct SliceOptions {
  std::string function = "branin";
  int target_label = 1;
  double amplitude = 10.0;
  std::vector<double> epsilons;
  std::size_t fixed_dim = 0;
  double fixed_value = -3.14159265358979323846;
  std::optional<std::pair<double, double>> sweep;  // defaults to the free axis bounds
  std::size_t n_points = 151;
};

/// "coordinate,value" rows for a single slice.
std::string slice_csv(std::span<const SlicePoint> samples);

/// Base column plus one column per epsilon. Without epsilons the output is
/// exactly slice_csv of the base function.
std::string cmd_slice(const SliceOptions& options);

std::string format_fixed(double value, int decimals);

}  // namespace fortify
