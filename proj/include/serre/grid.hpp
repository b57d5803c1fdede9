#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "serre/config.hpp"

namespace serre {

/// Uniform cell-centred grid on [a, b] with two ghost cells at each end.
///
/// Storage index j covers ghosts and interior; interior cells are
/// j = ghost_layers .. ghost_layers + n_cells - 1. Centres are computed as
/// a + (j - ghost_layers + 1/2) dx, never by accumulation.
class Grid {
 public:
  static constexpr std::size_t ghost_layers = 2;

  Grid(double a, double b, double dx);
  explicit Grid(const SimConfig& config);

  std::size_t n_cells() const { return n_cells_; }
  std::size_t storage_size() const { return n_cells_ + 2 * ghost_layers; }
  std::size_t first_interior() const { return ghost_layers; }
  std::size_t end_interior() const { return ghost_layers + n_cells_; }

  double a() const { return a_; }
  double b() const { return b_; }
  double dx() const { return dx_; }

  double x(std::size_t storage_index) const;
  double interior_x(std::size_t cell) const { return x(cell + ghost_layers); }
  std::vector<double> interior_centres() const;

 private:
  double a_;
  double b_;
  double dx_;
  std::size_t n_cells_;
};

/// Two time levels of (h, u) on a Grid. Arrays include the ghost cells.
struct State {
  std::vector<double> h;
  std::vector<double> u;
  std::vector<double> h_prev;
  std::vector<double> u_prev;
  double t = 0.0;
  long step = 0;

  std::span<const double> interior_h(const Grid& grid) const;
  std::span<const double> interior_u(const Grid& grid) const;
};

/// Writes the Dirichlet data into the ghost cells of both levels:
/// u = 0 at both ends, h = h1 on the left and h = h0 on the right.
void refresh_ghosts(State& state, const Grid& grid, const SimConfig& config);

}  // namespace serre
