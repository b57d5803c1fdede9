#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "serre/config.hpp"
#include "serre/grid.hpp"
#include "serre/snapshot.hpp"
#include "serre/tridiagonal.hpp"

namespace serre {

/// Fatal failure inside a time step. The state passed to the stepper is left
/// at the last good level.
class SolverError : public std::runtime_error {
 public:
  SolverError(long step, const std::string& what);
  long step() const { return step_; }

 private:
  long step_;
};

struct StepReport {
  long step = 0;
  double t = 0.0;
  double min_h = 0.0;
  double max_abs_u = 0.0;
  bool diagonally_dominant = true;
  double solve_residual = 0.0;  // relative residual of the momentum solve
};

/// Time levels consumed by one update. A leapfrog step advances from
/// (n-1, n) over 2 dt; a two-level step (bootstrap or a shortened final
/// step) advances from (n, n) over its own span.
struct Levels {
  std::span<const double> h;      // level n
  std::span<const double> u;      // level n
  std::span<const double> h_old;  // level n-1, or n for two-level steps
  std::span<const double> u_old;
  double span;  // time between the old level and n+1 (2 dt for leapfrog)
};

Levels leapfrog_levels(const State& state, double dt);
Levels two_level(const State& state, double tau);

/// Assembles the momentum system: for interior cell i,
///   h u_i - h^2 s (u_{i+1} - u_{i-1})/(2dx) - h^3/3 (u_{i+1} - 2u_i + u_{i-1})/dx^2 = -Y_i
/// with s = dh/dx (MomentumForm::Serre) or 1 (MomentumForm::AsPrinted) and
///   Y_i = span X_i - h u_old_i + h^2 s D1(u_old) + h^3/3 D2(u_old).
/// Ghost velocities are zero, so the Dirichlet closure adds nothing to rhs.
void assemble_momentum(const Levels& levels, const Grid& grid, const SimConfig& config,
                       TridiagonalSystem& system);

/// The spatial-derivative collection X at storage index j (level n).
double momentum_source(std::span<const double> h, std::span<const double> u, std::size_t j,
                       double dx, double g, MomentumForm form);

/// Leapfrog centred mass update, h_old - (span/2) (u Dh + h Du) with the
/// undivided differences taken over dx. Writes interior cells of h_next.
void centred_mass_update(const Levels& levels, const Grid& grid, std::span<double> h_next);

/// Two-step Lax-Wendroff mass update over `tau`, consuming the velocity at
/// the new level. Writes interior cells of h_next.
void lax_wendroff_mass_update(std::span<const double> h, std::span<const double> u,
                              std::span<const double> u_next, double tau, const Grid& grid,
                              std::span<double> h_next);

struct MomentumSolve {
  std::vector<double> u_next;  // storage-sized, ghosts zero
  TridiagonalSystem system;
  bool diagonally_dominant = true;
};

/// One leapfrog momentum update from the state's two levels.
MomentumSolve momentum_update(const State& state, const Grid& grid, const SimConfig& config);
std::vector<double> mass_update_centred(const State& state, const Grid& grid,
                                        const SimConfig& config);
std::vector<double> mass_update_lax_wendroff(const State& state, std::span<const double> u_next,
                                             const Grid& grid, const SimConfig& config);

/// Owns the grid and per-step workspace for one simulation.
class Stepper {
 public:
  explicit Stepper(SimConfig config);

  const SimConfig& config() const { return config_; }
  const Grid& grid() const { return grid_; }
  double dt() const { return config_.dt(); }

  /// Initial condition at t = 0.
  State initial_state();

  /// One step of the configured scheme: D applies the centred mass update
  /// then the momentum update, E the momentum update then Lax-Wendroff.
  /// Under Bootstrap::ForwardEuler the step from t = 0 is two-level.
  StepReport step(State& state);

  /// Two-level step of length tau (used for bootstrap and short final steps).
  StepReport partial_step(State& state, double tau);

 private:
  StepReport advance(State& state, const Levels& levels, double tau, long next_step,
                     double next_t);

  SimConfig config_;
  Grid grid_;
  TridiagonalSystem system_;
  std::vector<double> scratch_;
  std::vector<double> h_next_;
  std::vector<double> u_next_;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<StepReport> reports;
  bool shortened_final_step = false;
  std::optional<std::string> failure;  // set when the run aborted
  long failed_step = -1;
};

/// Steps until t_target, emitting a snapshot whenever the step counter hits
/// round(t / dt) for a requested time, plus one at the end. If t_target is
/// not a multiple of dt within 1e-9 the last step is shortened and flagged.
/// A solver failure stops the run and appends the last good snapshot.
RunResult run_to(Stepper& stepper, State& state, double t_target,
                 std::span<const double> snapshot_times, long report_every = 1);

}  // namespace serre
