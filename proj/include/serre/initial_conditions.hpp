#pragma once

#include "serre/config.hpp"
#include "serre/grid.hpp"

namespace serre {

/// h(x, 0) = h0 + (h1 - h0)/2 * (1 + tanh((x0 - x)/alpha)).
double smoothed_dambreak_depth(const SimConfig& config, double x);

/// Initial state: depth from smoothed_dambreak_depth, u = 0, previous level
/// a copy of the current one, ghosts holding the Dirichlet data, t = 0.
/// A forward-Euler bootstrap (Bootstrap::ForwardEuler) is applied by the
/// stepper, not here.
State smoothed_dambreak_ic(const SimConfig& config, const Grid& grid);

/// Closed-form totals of h, uh and the Hamiltonian for the initial data on
/// [domain_a, domain_b]. Valid only when x0 is the domain midpoint.
struct AnalyticTotals {
  double mass = 0.0;      // m^2
  double momentum = 0.0;  // m^3/s
  double energy = 0.0;    // integral of g h^2 / 2
  /// The energy formula in its commonly printed form, which omits the
  /// (b - a) bulk term and flips h1^2 - h0^2. Not used for any diagnostic.
  double energy_as_printed = 0.0;
};

AnalyticTotals analytic_totals(const SimConfig& config);

}  // namespace serre
