#include "serre/initial_conditions.hpp"

#include <cmath>

namespace serre {

double smoothed_dambreak_depth(const SimConfig& c, double x) {
  return c.h0 + 0.5 * (c.h1 - c.h0) * (1.0 + std::tanh((c.x0 - x) / c.alpha));
}

State smoothed_dambreak_ic(const SimConfig& config, const Grid& grid) {
  config.validate();
  const std::size_t n = grid.storage_size();
  State s;
  s.h.resize(n);
  s.u.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) s.h[j] = smoothed_dambreak_depth(config, grid.x(j));
  s.h_prev = s.h;
  s.u_prev = s.u;
  refresh_ghosts(s, grid, config);
  return s;
}

AnalyticTotals analytic_totals(const SimConfig& c) {
  c.validate();
  if (!c.x0_is_midpoint()) {
    throw ConfigError("analytic totals require x0 at the domain midpoint");
  }
  const double length = c.domain_b - c.domain_a;
  const double jump = c.h1 - c.h0;
  const double tail = std::tanh((c.domain_a - c.domain_b) / (2.0 * c.alpha));

  AnalyticTotals totals;
  totals.mass = 0.5 * (c.h1 + c.h0) * length;
  totals.momentum = 0.0;
  totals.energy = 0.25 * c.g *
                  ((c.h0 * c.h0 + c.h1 * c.h1) * length + c.alpha * jump * jump * tail);
  totals.energy_as_printed =
      0.25 * c.g * (c.h0 * c.h0 - c.h1 * c.h1 + c.alpha * jump * jump * tail);
  return totals;
}

}  // namespace serre
