#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "serre/harness.hpp"

namespace {

std::optional<serre::Scheme> scheme_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return serre::parse_scheme(text);
}

std::optional<serre::Bootstrap> bootstrap_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return text == "euler" ? serre::Bootstrap::ForwardEuler : serre::Bootstrap::CopyInitial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serre dam-break solvers, diagnostics and convergence sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string manifest_path;
  std::string out_dir;
  std::string scheme;
  std::string bootstrap;
  std::string exclude;
  int workers = 0;
  long report_every = 100;
  double h0 = 1.0, h1 = 1.8, g = 9.81, x0 = 500.0, t = 30.0;

  auto* run = app.add_subcommand("run", "Run one simulation from a config file");
  run->add_option("--config", config_path, "key = value config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides out_dir)");
  run->add_option("--scheme", scheme, "Method D or E (overrides scheme)")
      ->check(CLI::IsMember({"D", "E"}));
  run->add_option("--bootstrap", bootstrap, "First-step previous level: copy or euler")
      ->check(CLI::IsMember({"copy", "euler"}));
  run->add_option("--report-every", report_every, "Steps between rows of steps.csv")
      ->check(CLI::PositiveNumber);

  auto* converge = app.add_subcommand("converge", "Nested-grid convergence sweep");
  converge->add_option("--manifest", manifest_path, "Experiment manifest")->required();
  converge->add_option("--out", out_dir, "Output root (overrides out_dir)");
  converge->add_option("--workers", workers, "Concurrent simulations")
      ->check(CLI::PositiveNumber);
  converge->add_option("--scheme", scheme, "Method D or E (overrides scheme)")
      ->check(CLI::IsMember({"D", "E"}));
  converge->add_option("--bootstrap", bootstrap, "First-step previous level: copy or euler")
      ->check(CLI::IsMember({"copy", "euler"}));
  converge->add_option("--exclude-window", exclude, "L1 exclusion: lo,hi | dagger | none");

  auto* compare = app.add_subcommand("compare", "Compare a run's final snapshot to references");
  compare->add_option("run_dir", out_dir, "Directory written by `run`")->required();

  auto* reference = app.add_subcommand("reference", "Print reference constants as CSV");
  reference->add_option("--h0", h0, "Right depth (m)");
  reference->add_option("--h1", h1, "Left depth (m)");
  reference->add_option("--g", g, "Gravity (m/s^2)");
  reference->add_option("--x0", x0, "Dam position (m)");
  reference->add_option("--t", t, "Time for the front positions (s)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      serre::RunCommand cmd;
      cmd.config = config_path;
      if (!out_dir.empty()) cmd.out = out_dir;
      cmd.scheme = scheme_option(scheme);
      cmd.bootstrap = bootstrap_option(bootstrap);
      cmd.report_every = report_every;
      return serre::cmd_run(cmd, std::cout, std::cerr);
    }
    if (*converge) {
      serre::ConvergeCommand cmd;
      cmd.manifest = manifest_path;
      if (!out_dir.empty()) cmd.out = out_dir;
      cmd.scheme = scheme_option(scheme);
      if (workers > 0) cmd.workers = workers;
      if (!exclude.empty()) cmd.exclude_window = exclude;
      cmd.bootstrap = bootstrap_option(bootstrap);
      return serre::cmd_converge(cmd, std::cout, std::cerr);
    }
    if (*compare) return serre::cmd_compare(out_dir, std::cout, std::cerr);
    return serre::cmd_reference(h0, h1, g, x0, t, std::cout, std::cerr);
  } catch (const serre::ConfigError& e) {
    std::cerr << "error,config," << e.what() << '\n';
    return serre::kExitConfig;
  }
}
