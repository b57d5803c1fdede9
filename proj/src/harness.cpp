#include "serre/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "serre/csv.hpp"
#include "serre/initial_conditions.hpp"

namespace serre {

namespace {

constexpr std::string_view kManifestKeys[] = {"alphas", "levels", "exclude_window", "workers"};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

/// Time label for file names: 12 significant digits, so step * dt rounding
/// noise does not leak into names ("30" rather than "29.999999999999996").
std::string time_label(double t) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, t, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::optional<SwweSolution> swwe_for(const SimConfig& c) {
  if (!(c.h1 > c.h0)) return std::nullopt;
  return solve_swwe_dambreak(c.h0, c.h1, c.g, c.x0);
}

}  // namespace

DiagnosticsRecord diagnose(const SimConfig& config, const Snapshot& snapshot,
                           const ClassifierThresholds& thresholds) {
  DiagnosticsRecord r;
  r.t = snapshot.t;
  r.totals = conserved_totals(snapshot, config.g);
  if (config.x0_is_midpoint()) {
    r.errors = conservation_error(analytic_totals(config), r.totals, snapshot, config.g);
  }
  const auto sol = swwe_for(config);
  if (!sol) return r;
  r.leading = leading_wave(snapshot, config.h0, config.h1);
  if (!(snapshot.t > 0.0)) return r;
  r.means = bore_means(snapshot, *sol, snapshot.t);
  const double xu = sol->x_u2(snapshot.t);
  if (xu >= config.domain_a && xu <= config.domain_b) {
    try {
      r.structure = classify_structure(snapshot, *sol, snapshot.t, thresholds);
    } catch (const DomainError&) {
      // No leading-wave prediction for this depth ratio; leave unlabelled.
    }
  }
  return r;
}

std::string diagnostics_csv_header() {
  return "t,C_star_h,C_star_uh,C_star_H,C1_h,C1_uh,C1_H,structure,x_A,A,h_mean,u_mean";
}

std::string format_diagnostics_row(const DiagnosticsRecord& r) {
  std::ostringstream out;
  out << format_double(r.t) << ',' << format_double(r.totals.h) << ','
      << format_double(r.totals.uh) << ',' << format_double(r.totals.H) << ',';
  if (r.errors) {
    out << format_double(r.errors->h) << ',' << format_double(r.errors->uh) << ','
        << format_double(r.errors->H) << ',';
  } else {
    out << ",,,";
  }
  out << (r.structure ? to_string(*r.structure) : std::string_view()) << ',';
  out << optional_cell(r.leading ? std::optional(r.leading->x) : std::nullopt) << ','
      << optional_cell(r.leading ? std::optional(r.leading->A) : std::nullopt) << ','
      << optional_cell(r.means ? std::optional(r.means->h_mean) : std::nullopt) << ','
      << optional_cell(r.means ? std::optional(r.means->u_mean) : std::nullopt);
  return out.str();
}

std::string snapshot_file_name(double t) { return "snapshot_" + time_label(t) + ".csv"; }

RunOutcome run_simulation(const SimConfig& config, const std::filesystem::path& dir,
                          const RunOptions& options) {
  config.validate();
  std::filesystem::create_directories(dir);
  std::string config_text = format_config(config);
  config_text += config.bootstrap == Bootstrap::ForwardEuler ? "# bootstrap: euler\n"
                                                              : "# bootstrap: copy\n";
  write_text(dir / "config.txt", config_text);

  Stepper stepper(config);
  State state = stepper.initial_state();
  RunOutcome outcome;
  outcome.result =
      run_to(stepper, state, config.t_end, config.snapshot_times, options.report_every);

  std::ostringstream diag;
  diag << diagnostics_csv_header() << '\n';
  for (const auto& s : outcome.result.snapshots) {
    write_snapshot_csv(s, dir / snapshot_file_name(s.t));
    outcome.diagnostics.push_back(diagnose(config, s, options.thresholds));
    diag << format_diagnostics_row(outcome.diagnostics.back()) << '\n';
  }
  write_text(dir / "diagnostics.csv", diag.str());

  std::ostringstream steps;
  steps << "step,t,min_h,max_abs_u\n";
  for (const auto& r : outcome.result.reports) {
    steps << r.step << ',' << format_double(r.t) << ',' << format_double(r.min_h) << ','
          << format_double(r.max_abs_u) << '\n';
  }
  write_text(dir / "steps.csv", steps.str());
  return outcome;
}

std::optional<ExclusionWindow> parse_exclude_window(std::string_view text) {
  const std::string t(text);
  if (t.empty() || t == "none") return std::nullopt;
  if (t == "dagger") return kDaggerWindow;
  const auto values = parse_number_list(t);
  if (values.size() != 2 || !(values[0] < values[1])) {
    throw ConfigError("exclude_window: expected 'lo,hi' with lo < hi, 'dagger' or 'none'");
  }
  return ExclusionWindow{values[0], values[1]};
}

std::string format_exclude_window(const std::optional<ExclusionWindow>& w) {
  if (!w) return "none";
  return format_short(w->lo) + ":" + format_short(w->hi);
}

ExperimentManifest manifest_from_key_values(const KeyValues& kv) {
  KeyValues config_kv;
  KeyValues own;
  for (const auto& [key, value] : kv) {
    if (key == "alpha" || key == "dx") {
      throw ConfigError("key not allowed in a manifest: " + key + " (use alphas / levels)");
    }
    const bool is_own = std::find(std::begin(kManifestKeys), std::end(kManifestKeys), key) !=
                        std::end(kManifestKeys);
    (is_own ? own : config_kv).emplace(key, value);
  }
  for (const char* key : {"alphas", "levels"}) {
    if (!own.count(key)) throw ConfigError(std::string("missing key: ") + key);
  }

  ExperimentManifest m;
  m.alphas = parse_number_list(own["alphas"]);
  if (m.alphas.empty()) throw ConfigError("alphas: need at least one value");
  for (double a : m.alphas) {
    if (!(a > 0.0)) throw ConfigError("alphas: values must be > 0");
  }
  for (double k : parse_number_list(own["levels"])) {
    if (k != std::floor(k) || k < 0.0 || k > 30.0) {
      throw ConfigError("levels: expected whole numbers in [0, 30]");
    }
    if (!m.levels.empty() && !(k > m.levels.back())) {
      throw ConfigError("levels: must be strictly increasing");
    }
    m.levels.push_back(static_cast<int>(k));
  }
  if (m.levels.size() < 2) throw ConfigError("levels: need at least two refinement levels");
  {
    auto sorted = m.alphas;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("alphas: duplicate value");
    }
  }
  if (own.count("exclude_window")) m.exclude = parse_exclude_window(own["exclude_window"]);
  if (own.count("workers")) {
    const double w = parse_number(own["workers"], "workers");
    if (w != std::floor(w) || w < 1.0) throw ConfigError("workers: expected an integer >= 1");
    m.workers = static_cast<int>(w);
  }

  config_kv["alpha"] = format_double(m.alphas.front());
  config_kv["dx"] = format_double(dx_for_level(m.levels.front()));
  const bool has_out = config_kv.count("out_dir") > 0;
  m.base = config_from_key_values(config_kv);
  for (int k : m.levels) {
    SimConfig probe = m.base;
    probe.dx = dx_for_level(k);
    probe.validate();
  }
  if (has_out) m.out_dir = m.base.out_dir;
  return m;
}

ExperimentManifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_key_values(read_key_values(path));
}

void tabulate_alpha(const SimConfig& base, double alpha, const std::vector<LevelResult>& levels,
                    const std::optional<ExclusionWindow>& exclude, ConvergenceTable& table) {
  if (levels.empty()) return;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].level < levels[i - 1].level) {
      throw std::invalid_argument("tabulate_alpha: levels must be non-decreasing");
    }
  }
  SimConfig config = base;
  config.alpha = alpha;
  const std::optional<AnalyticTotals> initial =
      config.x0_is_midpoint() ? std::optional(analytic_totals(config)) : std::nullopt;
  const Snapshot& ref = levels.back().final_snapshot;

  std::vector<double> l1_h, l1_u;
  for (const auto& lr : levels) {
    const Snapshot& s = lr.final_snapshot;
    ConvergenceRow row;
    row.alpha = alpha;
    row.level = lr.level;
    row.dx = dx_for_level(lr.level);
    if (initial) row.errors = conservation_error(*initial, s, config.g);
    row.L1_h = l1_difference(s, ref, Field::h, exclude);
    row.L1_u = l1_difference(s, ref, Field::u, exclude);
    row.excluded = exclude;
    l1_h.push_back(row.L1_h);
    l1_u.push_back(row.L1_u);
    table.rows.push_back(row);
  }

  std::vector<double> succ_h, succ_u;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& a = levels[i].final_snapshot;
    const auto& b = levels[i + 1].final_snapshot;
    succ_h.push_back(l1_difference(a, b, Field::h, exclude));
    succ_u.push_back(l1_difference(a, b, Field::u, exclude));
  }
  for (std::size_t i = 0; i + 2 < levels.size(); ++i) {
    ConvergenceRate r;
    r.alpha = alpha;
    r.level = levels[i].level;
    r.rate_h_ref = std::log2(l1_h[i] / l1_h[i + 1]);
    r.rate_u_ref = std::log2(l1_u[i] / l1_u[i + 1]);
    r.rate_h_successive = std::log2(succ_h[i] / succ_h[i + 1]);
    r.rate_u_successive = std::log2(succ_u[i] / succ_u[i + 1]);
    table.rates.push_back(r);
  }
}

ConvergenceTable run_convergence(const ExperimentManifest& m) {
  struct Cell {
    std::size_t alpha_index;
    std::size_t level_index;
  };
  std::vector<Cell> cells;
  for (std::size_t a = 0; a < m.alphas.size(); ++a) {
    for (std::size_t l = 0; l < m.levels.size(); ++l) cells.push_back({a, l});
  }
  std::vector<std::vector<LevelResult>> results(m.alphas.size(),
                                                std::vector<LevelResult>(m.levels.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto [a, l] = cells[i];
      LevelResult& out = results[a][l];
      out.level = m.levels[l];
      SimConfig c = m.base;
      c.alpha = m.alphas[a];
      c.dx = dx_for_level(out.level);
      c.out_dir = m.out_dir / format_short(c.alpha) / std::to_string(out.level);
      try {
        RunOutcome run = run_simulation(c, c.out_dir);
        if (run.result.failure) out.failure = *run.result.failure;
        out.final_snapshot = std::move(run.result.snapshots.back());
      } catch (const std::exception& e) {
        out.failure = e.what();
      }
    }
  };
  const std::size_t n_workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(m.workers), 1, cells.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  ConvergenceTable table;
  for (std::size_t a = 0; a < m.alphas.size(); ++a) {
    std::vector<LevelResult> done;
    for (auto& lr : results[a]) {
      if (lr.failure) {
        table.failures.push_back("alpha " + format_short(m.alphas[a]) + " level " +
                                 std::to_string(lr.level) + ": " + *lr.failure);
      } else {
        done.push_back(std::move(lr));
      }
    }
    tabulate_alpha(m.base, m.alphas[a], done, m.exclude, table);
  }
  return table;
}

std::string convergence_csv_header() {
  return "alpha,dx,C1_h,C1_uh,C1_H,L1_h,L1_u,excluded_window";
}

std::string format_convergence_row(const ConvergenceRow& r) {
  std::ostringstream out;
  out << format_short(r.alpha) << ',' << format_double(r.dx) << ',';
  if (r.errors) {
    out << format_double(r.errors->h) << ',' << format_double(r.errors->uh) << ','
        << format_double(r.errors->H) << ',';
  } else {
    out << ",,,";
  }
  out << format_double(r.L1_h) << ',' << format_double(r.L1_u) << ','
      << format_exclude_window(r.excluded);
  return out.str();
}

std::string rates_csv_header() {
  return "alpha,dx,rate_h_ref,rate_u_ref,rate_h_successive,rate_u_successive";
}

std::string format_rate_row(const ConvergenceRate& r) {
  std::ostringstream out;
  out << format_short(r.alpha) << ',' << format_double(dx_for_level(r.level)) << ','
      << format_double(r.rate_h_ref) << ',' << format_double(r.rate_u_ref) << ','
      << format_double(r.rate_h_successive) << ',' << format_double(r.rate_u_successive);
  return out.str();
}

ComparisonReport compare_snapshot(const SimConfig& config, const Snapshot& s) {
  ComparisonReport r;
  r.t = s.t;
  const auto sol = swwe_for(config);
  if (!sol) return r;
  r.bore = true;
  r.h2 = sol->h2;
  r.u2 = sol->u2;
  r.x_S2 = sol->x_S2(s.t);
  const auto w = whitham_leading_wave(config.h0, config.h1, config.g, config.x0);
  r.A_plus = w.A_plus;
  r.x_S_plus = w.x_S_plus(s.t);
  const auto means = bore_means(s, *sol, s.t);
  r.h_mean = means.h_mean;
  r.u_mean = means.u_mean;
  r.means_clipped = means.clipped;
  r.leading = leading_wave(s, config.h0, config.h1);
  return r;
}

std::string format_comparison(const ComparisonReport& r) {
  if (!r.bore) return "no bore\n";
  std::ostringstream out;
  out << "t,h_mean,h2,u_mean,u2,A,A_plus,x_A,x_S2,x_S_plus,means_clipped,leading_wave\n"
      << format_double(r.t) << ',' << format_double(r.h_mean) << ',' << format_double(r.h2)
      << ',' << format_double(r.u_mean) << ',' << format_double(r.u2) << ','
      << optional_cell(r.leading ? std::optional(r.leading->A) : std::nullopt) << ','
      << format_double(r.A_plus) << ','
      << optional_cell(r.leading ? std::optional(r.leading->x) : std::nullopt) << ','
      << format_double(r.x_S2) << ',' << format_double(r.x_S_plus) << ','
      << (r.means_clipped ? 1 : 0) << ',' << (r.leading ? "found" : "no bore") << '\n';
  return out.str();
}

Snapshot read_final_snapshot(const std::filesystem::path& run_dir) {
  std::optional<std::pair<double, std::filesystem::path>> latest;
  for (const auto& entry : std::filesystem::directory_iterator(run_dir)) {
    const std::string name = entry.path().filename().string();
    constexpr std::string_view prefix = "snapshot_";
    constexpr std::string_view suffix = ".csv";
    if (name.size() <= prefix.size() + suffix.size() || !name.starts_with(prefix) ||
        !name.ends_with(suffix)) {
      continue;
    }
    double t = 0.0;
    const std::string_view label = std::string_view(name).substr(
        prefix.size(), name.size() - prefix.size() - suffix.size());
    if (!parse_double(label, t)) continue;
    if (!latest || t > latest->first) latest.emplace(t, entry.path());
  }
  if (!latest) throw std::runtime_error("no snapshot_<t>.csv in " + run_dir.string());
  return read_snapshot_csv(latest->second, latest->first);
}

std::string reference_table(double h0, double h1, double g, double x0, double t) {
  const auto sol = solve_swwe_dambreak(h0, h1, g, x0);
  const auto w = whitham_leading_wave(h0, h1, g, x0);
  std::ostringstream out;
  out << "h2,u2,S2,h_b,delta,A_plus,S_plus,x_u2,x_S2,x_S_plus\n"
      << format_double(sol.h2) << ',' << format_double(sol.u2) << ','
      << format_double(sol.S2) << ',' << format_double(w.h_b) << ','
      << format_double(w.delta) << ',' << format_double(w.A_plus) << ','
      << format_double(w.S_plus) << ',' << format_double(sol.x_u2(t)) << ','
      << format_double(sol.x_S2(t)) << ',' << format_double(w.x_S_plus(t)) << '\n';
  return out.str();
}

int cmd_run(const RunCommand& cmd, std::ostream& out, std::ostream& err) {
  SimConfig config;
  try {
    config = load_config(cmd.config);
    if (cmd.out) config.out_dir = *cmd.out;
    if (cmd.scheme) config.scheme = *cmd.scheme;
    if (cmd.bootstrap) config.bootstrap = *cmd.bootstrap;
  } catch (const ConfigError& e) {
    err << "error,config," << e.what() << '\n';
    return kExitConfig;
  }
  try {
    RunOptions options;
    options.report_every = cmd.report_every;
    const RunOutcome run = run_simulation(config, config.out_dir, options);
    if (run.result.failure) {
      err << "error,solver," << *run.result.failure << '\n';
      return kExitSolver;
    }
    out << diagnostics_csv_header() << '\n'
        << format_diagnostics_row(run.diagnostics.back()) << '\n';
    if (run.result.shortened_final_step) {
      out << "# final step shortened: t_end is not a multiple of dt\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error,io," << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_converge(const ConvergeCommand& cmd, std::ostream& out, std::ostream& err) {
  ExperimentManifest m;
  try {
    m = load_manifest(cmd.manifest);
    if (cmd.out) m.out_dir = *cmd.out;
    if (cmd.scheme) m.base.scheme = *cmd.scheme;
    if (cmd.bootstrap) m.base.bootstrap = *cmd.bootstrap;
    if (cmd.workers) {
      if (*cmd.workers < 1) throw ConfigError("workers: expected an integer >= 1");
      m.workers = *cmd.workers;
    }
    if (cmd.exclude_window) m.exclude = parse_exclude_window(*cmd.exclude_window);
  } catch (const ConfigError& e) {
    err << "error,config," << e.what() << '\n';
    return kExitConfig;
  }
  try {
    std::filesystem::create_directories(m.out_dir);
    std::filesystem::copy_file(cmd.manifest, m.out_dir / "manifest.txt",
                               std::filesystem::copy_options::overwrite_existing);
    const ConvergenceTable table = run_convergence(m);

    std::ostringstream csv;
    csv << convergence_csv_header() << '\n';
    for (const auto& r : table.rows) csv << format_convergence_row(r) << '\n';
    for (const auto& f : table.failures) csv << "# partial: " << f << '\n';
    write_text(m.out_dir / "convergence.csv", csv.str());

    std::ostringstream rates;
    rates << rates_csv_header() << '\n';
    for (const auto& r : table.rates) rates << format_rate_row(r) << '\n';
    write_text(m.out_dir / "rates.csv", rates.str());

    out << csv.str() << rates.str();
    if (!table.failures.empty()) {
      for (const auto& f : table.failures) err << "error,solver," << f << '\n';
      return kExitSolver;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error,io," << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_compare(const std::filesystem::path& run_dir, std::ostream& out, std::ostream& err) {
  SimConfig config;
  try {
    config = load_config(run_dir / "config.txt");
  } catch (const ConfigError& e) {
    err << "error,config," << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const Snapshot s = read_final_snapshot(run_dir);
    const std::string report = format_comparison(compare_snapshot(config, s));
    write_text(run_dir / "compare.csv", report);
    out << report;
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error,config," << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error,io," << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_reference(double h0, double h1, double g, double x0, double t, std::ostream& out,
                  std::ostream& err) {
  try {
    out << reference_table(h0, h1, g, x0, t);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error,config," << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error,config," << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace serre
