#pragma once

#include <stdexcept>

namespace serre {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bisection on [lo, hi] for a sign change of f, stopping once the bracket
/// is no wider than `width` or after `max_iterations` halvings.
template <typename F>
double bisect(F&& f, double lo, double hi, double width = 1e-13, int max_iterations = 200) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  for (int it = 0; it < max_iterations && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Shallow-water dam-break (Riemann) solution between depths h1 (left) and
/// h0 (right), fluid at rest, gate at x0.
struct SwweSolution {
  double h0 = 0.0;
  double h1 = 0.0;
  double x0 = 0.0;
  double g = 0.0;
  double h2 = 0.0;  // depth between the rarefaction and the shock
  double u2 = 0.0;  // velocity there
  double S2 = 0.0;  // shock speed

  double x_u2(double t) const { return x0 + u2 * t; }
  double x_S2(double t) const { return x0 + S2 * t; }
  /// Right edge of the rarefaction fan.
  double x_fan_tail(double t) const;
  /// Left edge of the rarefaction fan.
  double x_fan_head(double t) const;
};

/// Residual of the implicit relation for h2; zero at the solution.
double swwe_h2_residual(double h0, double h1, double h2);

/// Throws std::invalid_argument unless h1 > h0 > 0.
SwweSolution solve_swwe_dambreak(double h0, double h1, double g, double x0 = 500.0);

struct DepthVelocity {
  double h;
  double u;
};

/// Piecewise profile: still water h1 left of the fan, the centred
/// rarefaction, the uniform (h2, u2) state, and still water h0 past the shock.
DepthVelocity swwe_profile(const SwweSolution& sol, double x, double t);

/// Leading-wave asymptotics of an undular bore.
struct WhithamPrediction {
  double h0 = 0.0;
  double x0 = 0.0;
  double h_b = 0.0;             // bore height
  double delta = 0.0;           // h_b / h0
  double a_plus_dimless = 0.0;  // leading-wave amplitude relative to h0
  double A_plus = 0.0;          // crest depth h0 (1 + a)
  double S_plus = 0.0;          // crest speed sqrt(g A_plus)

  double x_S_plus(double t) const { return x0 + S_plus * t; }
};

/// Residual of the amplitude relation at dimensionless amplitude a.
double whitham_amplitude_residual(double delta, double a);

/// Δ <= 1 gives the trivial prediction a = 0. Throws DomainError when the
/// root would sit past the singularity at sqrt(a + 1) = 4.
WhithamPrediction whitham_leading_wave(double h0, double h1, double g, double x0 = 500.0);

enum class Branch { Plus, Minus };

/// Phase velocity of the Serre equations linearised about (h_bar, u_bar).
double phase_velocity(double h_bar, double u_bar, double k, double g, Branch branch);

}  // namespace serre
