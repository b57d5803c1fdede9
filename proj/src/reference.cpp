#include "serre/reference.hpp"

#include <cmath>

namespace serre {

double SwweSolution::x_fan_tail(double t) const {
  return x0 + (u2 - std::sqrt(g * h2)) * t;
}

double SwweSolution::x_fan_head(double t) const { return x0 - std::sqrt(g * h1) * t; }

double swwe_h2_residual(double h0, double h1, double h2) {
  const double z = 2.0 * h2 / (h2 - h0) * (std::sqrt(h1) - std::sqrt(h2)) / std::sqrt(h0);
  return h2 - 0.5 * h0 * (std::sqrt(1.0 + 8.0 * z * z) - 1.0);
}

SwweSolution solve_swwe_dambreak(double h0, double h1, double g, double x0) {
  if (!(h0 > 0.0) || !(h1 > h0) || !(g > 0.0)) {
    throw std::invalid_argument("solve_swwe_dambreak: need h1 > h0 > 0 and g > 0");
  }
  SwweSolution sol;
  sol.h0 = h0;
  sol.h1 = h1;
  sol.x0 = x0;
  sol.g = g;
  // The residual tends to -inf as h2 -> h0+ and equals h1 > 0 at h2 = h1.
  const double lo = std::nextafter(h0, h1);
  // Width 0: halve until the bracket is two adjacent doubles (well inside 1e-13).
  sol.h2 = bisect([&](double h2) { return swwe_h2_residual(h0, h1, h2); }, lo, h1, 0.0);
  sol.u2 = 2.0 * (std::sqrt(g * h1) - std::sqrt(g * sol.h2));
  sol.S2 = sol.h2 * sol.u2 / (sol.h2 - h0);
  return sol;
}

DepthVelocity swwe_profile(const SwweSolution& sol, double x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("swwe_profile: t must be > 0");
  const double c1 = std::sqrt(sol.g * sol.h1);
  if (x <= sol.x_fan_head(t)) return {sol.h1, 0.0};
  if (x < sol.x_fan_tail(t)) {
    const double xi = (x - sol.x0) / t;
    const double root = 2.0 * c1 - xi;
    return {root * root / (9.0 * sol.g), 2.0 / 3.0 * (xi + c1)};
  }
  if (x <= sol.x_S2(t)) return {sol.h2, sol.u2};
  return {sol.h0, 0.0};
}

double whitham_amplitude_residual(double delta, double a) {
  const double r = std::sqrt(a + 1.0);
  return delta / std::pow(a + 1.0, 0.25) - std::pow(3.0 / (4.0 - r), 2.1) *
                                               std::pow(2.0 / (1.0 + r), 0.4);
}

WhithamPrediction whitham_leading_wave(double h0, double h1, double g, double x0) {
  if (!(h0 > 0.0) || !(h1 > 0.0) || !(g > 0.0)) {
    throw std::invalid_argument("whitham_leading_wave: need positive depths and g");
  }
  WhithamPrediction p;
  p.h0 = h0;
  p.x0 = x0;
  const double root_ratio = std::sqrt(h1 / h0) + 1.0;
  p.h_b = 0.25 * h0 * root_ratio * root_ratio;
  p.delta = p.h_b / h0;

  double a = 0.0;
  if (p.delta > 1.0) {
    // sqrt(a + 1) -> 4 is singular; the residual tends to -inf there.
    const double hi = 15.0 - 1e-9;
    const auto f = [&](double x) { return whitham_amplitude_residual(p.delta, x); };
    if (f(hi) > 0.0) {
      throw DomainError("whitham_leading_wave: bore ratio beyond the amplitude relation's range");
    }
    a = bisect(f, 0.0, hi, 0.0);
  }
  p.a_plus_dimless = a;
  p.A_plus = h0 * (a + 1.0);
  p.S_plus = std::sqrt(g * p.A_plus);
  return p;
}

double phase_velocity(double h_bar, double u_bar, double k, double g, Branch branch) {
  if (!(h_bar > 0.0) || !(k >= 0.0)) {
    throw std::invalid_argument("phase_velocity: need h_bar > 0 and k >= 0");
  }
  if (std::isinf(k)) return u_bar;
  const double c = std::sqrt(g * h_bar) * std::sqrt(3.0 / (h_bar * h_bar * k * k + 3.0));
  return branch == Branch::Plus ? u_bar + c : u_bar - c;
}

}  // namespace serre
