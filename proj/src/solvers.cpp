#include "serre/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

#include "serre/initial_conditions.hpp"

namespace serre {

SolverError::SolverError(long step, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

Levels leapfrog_levels(const State& s, double dt) {
  return {s.h, s.u, s.h_prev, s.u_prev, 2.0 * dt};
}

Levels two_level(const State& s, double tau) { return {s.h, s.u, s.h, s.u, tau}; }

namespace {

/// Flushes subnormals to zero for the lifetime of the guard. Velocities ahead
/// of the front decay through the subnormal range, where arithmetic is
/// orders of magnitude slower; flushing them changes nothing above 1e-300.
class FlushDenormals {
 public:
#if defined(__SSE2__)
  FlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
  ~FlushDenormals() { _mm_setcsr(saved_); }

 private:
  unsigned int saved_;
#endif
};

struct Stencil {
  explicit Stencil(double dx)
      : inv_2dx(1.0 / (2.0 * dx)), inv_dx2(1.0 / (dx * dx)), inv_2dx3(1.0 / (2.0 * dx * dx * dx)) {}
  double inv_2dx;
  double inv_dx2;
  double inv_2dx3;
};

inline double source_at(const double* h, const double* u, const Stencil& st, double g,
                        bool serre_form) {
  const double hj = h[0];
  const double uj = u[0];
  const double hx = (h[1] - h[-1]) * st.inv_2dx;
  const double s = serre_form ? hx : 1.0;

  const double ux = (u[1] - u[-1]) * st.inv_2dx;
  const double uxx = (u[1] - 2.0 * uj + u[-1]) * st.inv_dx2;
  const double uxxx = (u[2] - 2.0 * u[1] + 2.0 * u[-1] - u[-2]) * st.inv_2dx3;

  const double h2 = hj * hj * s;
  const double h3 = hj * hj * hj * (1.0 / 3.0);
  return uj * hj * ux + g * hj * hx + h2 * ux * ux + h3 * ux * uxx - h2 * uj * uxx -
         h3 * uj * uxxx;
}

}  // namespace

double momentum_source(std::span<const double> h, std::span<const double> u, std::size_t j,
                       double dx, double g, MomentumForm form) {
  return source_at(h.data() + j, u.data() + j, Stencil(dx), g, form == MomentumForm::Serre);
}

void assemble_momentum(const Levels& lv, const Grid& grid, const SimConfig& config,
                       TridiagonalSystem& sys) {
  const Stencil st(grid.dx());
  const bool serre_form = config.momentum_form == MomentumForm::Serre;
  const std::size_t first = grid.first_interior();
  const std::size_t n = grid.n_cells();
  if (sys.size() != n) sys.resize(n);

  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t j = first + r;
    const double* h = lv.h.data() + j;
    const double* uo = lv.u_old.data() + j;
    const double hj = h[0];
    const double s = serre_form ? (h[1] - h[-1]) * st.inv_2dx : 1.0;
    const double h2 = hj * hj * s;
    const double h3 = hj * hj * hj * (1.0 / 3.0);

    const double x = source_at(h, lv.u.data() + j, st, config.g, serre_form);
    const double y = lv.span * x - hj * uo[0] + h2 * ((uo[1] - uo[-1]) * st.inv_2dx) +
                     h3 * ((uo[1] - 2.0 * uo[0] + uo[-1]) * st.inv_dx2);

    const double first_order = h2 * st.inv_2dx;
    const double second_order = h3 * st.inv_dx2;
    sys.sub[r] = first_order - second_order;
    sys.diag[r] = hj + 2.0 * second_order;
    sys.super[r] = -first_order - second_order;
    sys.rhs[r] = -y;
  }
  // Ghost velocities at the new level are the Dirichlet value 0.
  constexpr double u_ghost = 0.0;
  sys.rhs[0] -= sys.sub[0] * u_ghost;
  sys.rhs[n - 1] -= sys.super[n - 1] * u_ghost;
}

void centred_mass_update(const Levels& lv, const Grid& grid, std::span<double> h_next) {
  const double inv_dx = 1.0 / grid.dx();
  const double coeff = 0.5 * lv.span;  // dt for a leapfrog step
  for (std::size_t j = grid.first_interior(); j < grid.end_interior(); ++j) {
    h_next[j] = lv.h_old[j] - coeff * (lv.u[j] * (lv.h[j + 1] - lv.h[j - 1]) * inv_dx +
                                       lv.h[j] * (lv.u[j + 1] - lv.u[j - 1]) * inv_dx);
  }
}

void lax_wendroff_mass_update(std::span<const double> h, std::span<const double> u,
                              std::span<const double> u_next, double tau, const Grid& grid,
                              std::span<double> h_next) {
  const double half_ratio = tau / (2.0 * grid.dx());
  const double ratio = tau / grid.dx();
  // Flux through the face between storage cells j and j+1 at the half step.
  auto face_flux = [&](std::size_t j) {
    const double h_half =
        0.5 * (h[j + 1] + h[j]) - half_ratio * (u[j + 1] * h[j + 1] - h[j] * u[j]);
    const double u_half = (u_next[j + 1] + u[j + 1] + u_next[j] + u[j]) / 4.0;
    return u_half * h_half;
  };
  double left = face_flux(grid.first_interior() - 1);
  for (std::size_t j = grid.first_interior(); j < grid.end_interior(); ++j) {
    const double right = face_flux(j);
    h_next[j] = h[j] - ratio * (right - left);
    left = right;
  }
}

MomentumSolve momentum_update(const State& state, const Grid& grid, const SimConfig& config) {
  const FlushDenormals flush;
  MomentumSolve out;
  assemble_momentum(leapfrog_levels(state, config.dt()), grid, config, out.system);
  out.diagonally_dominant = out.system.strictly_diagonally_dominant();
  out.u_next.assign(grid.storage_size(), 0.0);
  std::vector<double> scratch;
  const auto interior =
      std::span<double>(out.u_next).subspan(grid.first_interior(), grid.n_cells());
  if (!solve_tridiagonal(out.system, interior, scratch)) {
    throw SolverError(state.step + 1, "momentum solve failed");
  }
  return out;
}

std::vector<double> mass_update_centred(const State& state, const Grid& grid,
                                        const SimConfig& config) {
  const FlushDenormals flush;
  std::vector<double> h_next = state.h;
  centred_mass_update(leapfrog_levels(state, config.dt()), grid, h_next);
  return h_next;
}

std::vector<double> mass_update_lax_wendroff(const State& state, std::span<const double> u_next,
                                             const Grid& grid, const SimConfig& config) {
  const FlushDenormals flush;
  std::vector<double> h_next = state.h;
  lax_wendroff_mass_update(state.h, state.u, u_next, config.dt(), grid, h_next);
  return h_next;
}

Stepper::Stepper(SimConfig config) : config_(std::move(config)), grid_(config_) {
  config_.validate();
  system_.resize(grid_.n_cells());
  h_next_.assign(grid_.storage_size(), 0.0);
  u_next_.assign(grid_.storage_size(), 0.0);
}

State Stepper::initial_state() { return smoothed_dambreak_ic(config_, grid_); }

StepReport Stepper::step(State& state) {
  const long next = state.step + 1;
  const double t_next = static_cast<double>(next) * dt();
  if (state.step == 0 && config_.bootstrap == Bootstrap::ForwardEuler) {
    return advance(state, two_level(state, dt()), dt(), next, t_next);
  }
  return advance(state, leapfrog_levels(state, dt()), dt(), next, t_next);
}

StepReport Stepper::partial_step(State& state, double tau) {
  return advance(state, two_level(state, tau), tau, state.step + 1, state.t + tau);
}

StepReport Stepper::advance(State& state, const Levels& levels, double tau, long next_step,
                            double next_t) {
  const FlushDenormals flush;
  if (config_.scheme == Scheme::D) centred_mass_update(levels, grid_, h_next_);

  assemble_momentum(levels, grid_, config_, system_);
  StepReport report;
  report.step = next_step;
  report.t = next_t;
  report.diagonally_dominant = system_.strictly_diagonally_dominant();
  const auto u_interior =
      std::span<double>(u_next_).subspan(grid_.first_interior(), grid_.n_cells());
  if (!solve_tridiagonal(system_, u_interior, scratch_)) {
    throw SolverError(next_step, "momentum solve failed or produced non-finite velocity");
  }
  report.solve_residual = system_.relative_residual(u_interior);
  for (std::size_t k = 0; k < Grid::ghost_layers; ++k) {
    u_next_[k] = 0.0;
    u_next_[grid_.storage_size() - 1 - k] = 0.0;
  }

  if (config_.scheme == Scheme::E) {
    lax_wendroff_mass_update(state.h, state.u, u_next_, tau, grid_, h_next_);
  }

  report.min_h = std::numeric_limits<double>::infinity();
  report.max_abs_u = 0.0;
  for (std::size_t j = grid_.first_interior(); j < grid_.end_interior(); ++j) {
    const double hj = h_next_[j];
    if (!(hj > 0.0) || !std::isfinite(hj)) {
      throw SolverError(next_step, "non-positive or non-finite depth at cell " +
                                       std::to_string(j - grid_.first_interior()));
    }
    report.min_h = std::min(report.min_h, hj);
    report.max_abs_u = std::max(report.max_abs_u, std::abs(u_next_[j]));
  }

  std::swap(state.h_prev, state.h);
  std::swap(state.h, h_next_);
  std::swap(state.u_prev, state.u);
  std::swap(state.u, u_next_);
  refresh_ghosts(state, grid_, config_);
  state.step = next_step;
  state.t = next_t;
  return report;
}

RunResult run_to(Stepper& stepper, State& state, double t_target,
                 std::span<const double> snapshot_times, long report_every) {
  if (t_target < state.t) {
    throw std::invalid_argument("run_to: t_target precedes the current time");
  }
  const double dt = stepper.dt();
  const double ratio = t_target / dt;
  long full_steps = static_cast<long>(std::floor(ratio + 1e-9));
  const bool shortened = std::abs(ratio - std::round(ratio)) > 1e-9;
  if (!shortened) full_steps = std::lround(ratio);
  report_every = std::max(1L, report_every);

  std::vector<long> wanted;
  for (double t : snapshot_times) {
    if (t <= t_target + 1e-12) wanted.push_back(std::lround(t / dt));
  }
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  auto next_wanted = std::lower_bound(wanted.begin(), wanted.end(), state.step);

  RunResult result;
  result.shortened_final_step = shortened;
  const Grid& grid = stepper.grid();

  auto emit_due = [&] {
    while (next_wanted != wanted.end() && *next_wanted <= state.step) {
      if (*next_wanted == state.step &&
          (result.snapshots.empty() || result.snapshots.back().t != state.t)) {
        result.snapshots.push_back(take_snapshot(state, grid));
      }
      ++next_wanted;
    }
  };

  emit_due();
  try {
    while (state.step < full_steps) {
      const StepReport r = stepper.step(state);
      if (r.step % report_every == 0 || r.step == full_steps) result.reports.push_back(r);
      emit_due();
    }
    if (shortened) {
      const double tau = t_target - static_cast<double>(state.step) * dt;
      if (tau > 0.0) result.reports.push_back(stepper.partial_step(state, tau));
    }
  } catch (const SolverError& e) {
    result.failure = e.what();
    result.failed_step = e.step();
  }
  if (result.snapshots.empty() || result.snapshots.back().t != state.t) {
    result.snapshots.push_back(take_snapshot(state, grid));
  }
  return result;
}

}  // namespace serre
