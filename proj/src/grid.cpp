#include "serre/grid.hpp"

#include <algorithm>
#include <cmath>

namespace serre {

Grid::Grid(double a, double b, double dx) : a_(a), b_(b), dx_(dx) {
  if (!(b > a) || !(dx > 0.0)) throw ConfigError("grid: need a < b and dx > 0");
  const double cells = (b - a) / dx;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    throw ConfigError("grid: dx does not divide [a, b] into whole cells");
  }
  n_cells_ = static_cast<std::size_t>(rounded);
}

Grid::Grid(const SimConfig& config) : Grid(config.domain_a, config.domain_b, config.dx) {}

double Grid::x(std::size_t storage_index) const {
  const double offset = static_cast<double>(storage_index) -
                        static_cast<double>(ghost_layers) + 0.5;
  return a_ + offset * dx_;
}

std::vector<double> Grid::interior_centres() const {
  std::vector<double> xs(n_cells_);
  for (std::size_t i = 0; i < n_cells_; ++i) xs[i] = interior_x(i);
  return xs;
}

std::span<const double> State::interior_h(const Grid& grid) const {
  return std::span<const double>(h).subspan(grid.first_interior(), grid.n_cells());
}

std::span<const double> State::interior_u(const Grid& grid) const {
  return std::span<const double>(u).subspan(grid.first_interior(), grid.n_cells());
}

void refresh_ghosts(State& state, const Grid& grid, const SimConfig& config) {
  const std::size_t last = grid.storage_size() - 1;
  for (std::size_t k = 0; k < Grid::ghost_layers; ++k) {
    for (auto* level : {&state.h, &state.h_prev}) {
      (*level)[k] = config.h1;
      (*level)[last - k] = config.h0;
    }
    for (auto* level : {&state.u, &state.u_prev}) {
      (*level)[k] = 0.0;
      (*level)[last - k] = 0.0;
    }
  }
}

}  // namespace serre
