#include <doctest.h>

#include <cmath>

#include "serre/grid.hpp"
#include "serre/initial_conditions.hpp"
#include "serre/quadrature.hpp"
#include "serre/snapshot.hpp"
#include "test_support.hpp"

using namespace serre;
using serre::testing::dambreak_config;

TEST_SUITE("core") {
  TEST_CASE("grid centres are generated, not accumulated") {
    const Grid grid(0.0, 1000.0, dx_for_level(8));
    CHECK(grid.n_cells() == 25600);
    CHECK(grid.storage_size() == 25604);
    CHECK(Grid::ghost_layers == 2);
    CHECK(grid.interior_x(0) == 0.5 * grid.dx());
    for (std::size_t i = 1; i < grid.n_cells(); ++i) {
      REQUIRE(grid.interior_x(i) - grid.interior_x(i - 1) == grid.dx());
    }
    CHECK(grid.interior_x(grid.n_cells() - 1) == 1000.0 - 0.5 * grid.dx());
    CHECK(grid.x(0) == -1.5 * grid.dx());
  }

  TEST_CASE("non-dyadic grids keep uniform spacing to round-off") {
    const Grid grid(400.0, 560.0, 0.1);
    CHECK(grid.n_cells() == 1600);
    for (std::size_t i = 1; i < grid.n_cells(); ++i) {
      REQUIRE(std::abs(grid.interior_x(i) - grid.interior_x(i - 1) - 0.1) < 1e-12);
    }
  }

  TEST_CASE("initial depth at the transition centre is the mean depth") {
    const SimConfig c = dambreak_config(2.0, 6, 30.0);
    CHECK(smoothed_dambreak_depth(c, 500.0) == doctest::Approx(1.4).epsilon(1e-15));
  }

  TEST_CASE("initial depth two smoothing lengths right of centre") {
    // 1 + 0.4 (1 + tanh(-1)) evaluated to 40 digits.
    const SimConfig c = dambreak_config(2.0, 6, 30.0);
    CHECK(std::abs(smoothed_dambreak_depth(c, 502.0) - 1.0953623376176940448) < 1e-15);
  }

  TEST_CASE("initial depth limits") {
    const SimConfig c = dambreak_config(2.0, 6, 30.0);
    CHECK(smoothed_dambreak_depth(c, -1e6) == 1.8);
    CHECK(smoothed_dambreak_depth(c, 1e6) == 1.0);
  }

  TEST_CASE("initial depth is strictly decreasing and point-symmetric") {
    const SimConfig c = dambreak_config(2.0, 6, 30.0);
    double prev = smoothed_dambreak_depth(c, 480.0);
    for (double x = 480.05; x <= 520.0; x += 0.05) {
      const double h = smoothed_dambreak_depth(c, x);
      REQUIRE(h < prev);
      prev = h;
    }
    for (double s : {0.0, 0.3, 1.0, 2.5, 7.0, 40.0}) {
      CAPTURE(s);
      CHECK(smoothed_dambreak_depth(c, 500.0 + s) + smoothed_dambreak_depth(c, 500.0 - s) ==
            doctest::Approx(2.8).epsilon(1e-15));
    }
  }

  TEST_CASE("initial state: u zero, previous level a copy, Dirichlet ghosts") {
    const SimConfig c = dambreak_config(2.0, 4, 30.0);
    const Grid grid(c);
    const State s = smoothed_dambreak_ic(c, grid);
    REQUIRE(s.h.size() == grid.storage_size());
    REQUIRE(s.u.size() == grid.storage_size());
    REQUIRE(s.h_prev.size() == grid.storage_size());
    REQUIRE(s.u_prev.size() == grid.storage_size());
    CHECK(s.t == 0.0);
    CHECK(s.step == 0);
    for (std::size_t j = 0; j < grid.storage_size(); ++j) {
      CHECK(s.u[j] == 0.0);
      CHECK(s.u_prev[j] == 0.0);
      CHECK(s.h_prev[j] == s.h[j]);
    }
    for (std::size_t j = grid.first_interior(); j < grid.end_interior(); ++j) {
      CHECK(s.h[j] == smoothed_dambreak_depth(c, grid.x(j)));
    }
    CHECK(s.h[0] == 1.8);
    CHECK(s.h[1] == 1.8);
    CHECK(s.h[grid.storage_size() - 1] == 1.0);
    CHECK(s.h[grid.storage_size() - 2] == 1.0);
  }

  TEST_CASE("ghost refresh is idempotent and leaves the interior alone") {
    const SimConfig c = dambreak_config(2.0, 4, 30.0);
    const Grid grid(c);
    State s = smoothed_dambreak_ic(c, grid);
    for (std::size_t j = 0; j < grid.storage_size(); ++j) {
      s.u[j] = std::sin(0.1 * static_cast<double>(j));
      s.h[j] += 0.01 * std::cos(0.2 * static_cast<double>(j));
    }
    refresh_ghosts(s, grid, c);
    const State once = s;
    refresh_ghosts(s, grid, c);
    CHECK(s.h == once.h);
    CHECK(s.u == once.u);
    for (std::size_t j = grid.first_interior(); j < grid.end_interior(); ++j) {
      CHECK(s.u[j] == std::sin(0.1 * static_cast<double>(j)));
    }
    CHECK(s.u[0] == 0.0);
    CHECK(s.u[grid.storage_size() - 1] == 0.0);
  }

  TEST_CASE("analytic totals") {
    const SimConfig c = dambreak_config(2.0, 8, 30.0);
    const AnalyticTotals t = analytic_totals(c);
    CHECK(t.mass == doctest::Approx(1400.0).epsilon(1e-15));
    CHECK(t.momentum == 0.0);
    // (g/4) [(h0^2 + h1^2)(b - a) + alpha (h1 - h0)^2 tanh((a - b)/(2 alpha))]
    CHECK(t.energy == doctest::Approx(10395.4608).epsilon(1e-14));
    CHECK(t.energy_as_printed != doctest::Approx(t.energy));
  }

  TEST_CASE("analytic energy agrees with Gauss quadrature of the exact initial depth") {
    const SimConfig c = dambreak_config(2.0, 8, 30.0);
    const double dx = c.dx;
    const double nodes[3] = {-0.5 * std::sqrt(0.6), 0.0, 0.5 * std::sqrt(0.6)};
    const double weights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    long double total = 0.0L;
    for (int i = 0; i < 25600; ++i) {
      const double centre = (i + 0.5) * dx;
      for (int q = 0; q < 3; ++q) {
        const double h = smoothed_dambreak_depth(c, centre + nodes[q] * dx);
        total += static_cast<long double>(weights[q] * dx * 0.5 * c.g * h * h);
      }
    }
    CHECK(std::abs(static_cast<double>(total) - analytic_totals(c).energy) /
              analytic_totals(c).energy <
          1e-12);
  }

  TEST_CASE("analytic mass matches trapezoidal integration") {
    for (double alpha : {0.4, 2.0, 40.0}) {
      SimConfig c = dambreak_config(alpha, 8, 30.0);
      const double dx = std::min(alpha / 4.0, 0.1);
      const int n = static_cast<int>(std::lround(1000.0 / dx));
      long double sum = 0.5L * (smoothed_dambreak_depth(c, 0.0) + smoothed_dambreak_depth(c, 1000.0));
      for (int i = 1; i < n; ++i) sum += smoothed_dambreak_depth(c, i * dx);
      CAPTURE(alpha);
      CHECK(std::abs(static_cast<double>(sum * dx) - analytic_totals(c).mass) / 1400.0 < 1e-10);
    }
  }

  TEST_CASE("analytic totals need x0 at the midpoint") {
    SimConfig c = dambreak_config(2.0, 6, 30.0);
    c.x0 = 400.0;
    CHECK_THROWS_AS(analytic_totals(c), ConfigError);
  }
}
