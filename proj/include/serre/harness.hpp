#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "serre/config.hpp"
#include "serre/diagnostics.hpp"
#include "serre/reference.hpp"
#include "serre/snapshot.hpp"
#include "serre/solvers.hpp"

namespace serre {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O or unexpected error
  kExitConfig = 2,   // unreadable or invalid config / manifest / arguments
  kExitSolver = 3,   // a simulation aborted; partial output is on disk
};

/// One row of diagnostics.csv. Optional fields are written as empty cells.
struct DiagnosticsRecord {
  double t = 0.0;
  Totals totals;
  std::optional<ConservationErrors> errors;  // needs x0 at the domain midpoint
  std::optional<Structure> structure;        // needs t > 0, h1 > h0, x_u2 inside
  std::optional<LeadingWave> leading;
  std::optional<BoreMeans> means;
};

DiagnosticsRecord diagnose(const SimConfig& config, const Snapshot& snapshot,
                           const ClassifierThresholds& thresholds = {});

std::string diagnostics_csv_header();
std::string format_diagnostics_row(const DiagnosticsRecord& record);

struct RunOptions {
  long report_every = 100;  // steps between rows of steps.csv
  ClassifierThresholds thresholds;
};

struct RunOutcome {
  RunResult result;
  std::vector<DiagnosticsRecord> diagnostics;
};

/// Runs one simulation to config.t_end and writes into `dir`:
///   config.txt, snapshot_<t>.csv per snapshot, diagnostics.csv, steps.csv.
RunOutcome run_simulation(const SimConfig& config, const std::filesystem::path& dir,
                          const RunOptions& options = {});

/// File name of the snapshot at time t, e.g. snapshot_30.csv.
std::string snapshot_file_name(double t);

/// A sweep over smoothing lengths and refinement levels sharing one base
/// config. Text format: the config keys (minus alpha and dx) plus
///   alphas = 40, 2          smoothing lengths
///   levels = 4, 5, 6, 7     k with dx = 10 / 2^k, strictly increasing
///   exclude_window = none | dagger | lo,hi     (optional, default none)
///   workers = N             (optional, default 1)
/// out_dir names the root of the output tree.
struct ExperimentManifest {
  SimConfig base;
  std::vector<double> alphas;
  std::vector<int> levels;
  std::optional<ExclusionWindow> exclude;
  int workers = 1;
  std::filesystem::path out_dir = "converge_out";
};

ExperimentManifest manifest_from_key_values(const KeyValues& kv);
ExperimentManifest load_manifest(const std::filesystem::path& path);

/// Parses "lo,hi" or the preset name "dagger"; "none" gives no window.
std::optional<ExclusionWindow> parse_exclude_window(std::string_view text);
std::string format_exclude_window(const std::optional<ExclusionWindow>& window);

/// Final snapshot of one sweep cell.
struct LevelResult {
  int level = 0;
  Snapshot final_snapshot;
  std::optional<std::string> failure;
};

struct ConvergenceRow {
  double alpha = 0.0;
  int level = 0;
  double dx = 0.0;
  std::optional<ConservationErrors> errors;
  double L1_h = 0.0;  // against the finest level
  double L1_u = 0.0;
  std::optional<ExclusionWindow> excluded;
};

/// Rate between consecutive levels k and k+1. `*_ref` uses the L1 columns
/// (finest level as reference); `*_successive` compares each level with the
/// next finer one, the Richardson triplet form.
struct ConvergenceRate {
  double alpha = 0.0;
  int level = 0;
  double rate_h_ref = 0.0;
  double rate_u_ref = 0.0;
  double rate_h_successive = 0.0;
  double rate_u_successive = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::vector<ConvergenceRate> rates;
  std::vector<std::string> failures;  // non-empty means the table is partial
};

/// Builds the rows and rates for one alpha from final snapshots ordered by
/// level. Levels only need to be non-decreasing here, so equal levels give
/// L1 = 0 rows. Every snapshot must have completed.
void tabulate_alpha(const SimConfig& base, double alpha, const std::vector<LevelResult>& levels,
                    const std::optional<ExclusionWindow>& exclude, ConvergenceTable& table);

/// Runs every (alpha, level) cell of the manifest on up to `workers` threads,
/// writing each cell under <out_dir>/<alpha>/<k>/, then tabulates.
ConvergenceTable run_convergence(const ExperimentManifest& manifest);

std::string convergence_csv_header();
std::string format_convergence_row(const ConvergenceRow& row);
std::string rates_csv_header();
std::string format_rate_row(const ConvergenceRate& rate);

/// Final-snapshot comparison against the shallow-water and Whitham
/// references. `bore` is false for a still basin (h1 <= h0).
struct ComparisonReport {
  bool bore = false;
  double t = 0.0;
  double h_mean = 0.0;
  double h2 = 0.0;
  double u_mean = 0.0;
  double u2 = 0.0;
  std::optional<LeadingWave> leading;  // empty when no crest qualifies
  double A_plus = 0.0;
  double x_S2 = 0.0;
  double x_S_plus = 0.0;
  bool means_clipped = false;
};

ComparisonReport compare_snapshot(const SimConfig& config, const Snapshot& snapshot);
std::string format_comparison(const ComparisonReport& report);

/// Latest snapshot_<t>.csv in a run directory.
Snapshot read_final_snapshot(const std::filesystem::path& run_dir);

/// CSV header and row for the reference constants at time t.
std::string reference_table(double h0, double h1, double g, double x0, double t);

struct RunCommand {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<Scheme> scheme;
  std::optional<Bootstrap> bootstrap;
  long report_every = 100;
};

struct ConvergeCommand {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> out;
  std::optional<Scheme> scheme;
  std::optional<int> workers;
  std::optional<std::string> exclude_window;
  std::optional<Bootstrap> bootstrap;
};

/// Subcommand bodies. Results go to `out`; failures produce one line
///   error,<kind>,<message>
/// on `err`, with kind in {config, solver, io}.
int cmd_run(const RunCommand& command, std::ostream& out, std::ostream& err);
int cmd_converge(const ConvergeCommand& command, std::ostream& out, std::ostream& err);
int cmd_compare(const std::filesystem::path& run_dir, std::ostream& out, std::ostream& err);
int cmd_reference(double h0, double h1, double g, double x0, double t, std::ostream& out,
                  std::ostream& err);

}  // namespace serre
