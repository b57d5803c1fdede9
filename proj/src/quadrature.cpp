#include "serre/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace serre {

namespace {

constexpr int kStencil = 5;
constexpr int kGauss = 3;

// Gauss-Legendre nodes on the cell in units of dx, relative to its centre.
const std::array<double, kGauss> kNodes = {-0.5 * std::sqrt(0.6), 0.0, 0.5 * std::sqrt(0.6)};
constexpr std::array<double, kGauss> kWeights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

/// Lagrange basis values and derivatives for stencil nodes at integer
/// offsets first, ..., first + 4 from the cell, evaluated at the Gauss nodes.
struct Basis {
  std::array<std::array<double, kStencil>, kGauss> value{};
  std::array<std::array<double, kStencil>, kGauss> slope{};  // d/dxi
};

Basis make_basis(int first) {
  Basis b;
  for (int q = 0; q < kGauss; ++q) {
    const double xi = kNodes[q];
    for (int k = 0; k < kStencil; ++k) {
      const double xk = first + k;
      double value = 1.0;
      double slope = 0.0;
      for (int m = 0; m < kStencil; ++m) {
        if (m == k) continue;
        const double xm = first + m;
        double term = 1.0 / (xk - xm);
        for (int l = 0; l < kStencil; ++l) {
          if (l == k || l == m) continue;
          term *= (xi - (first + l)) / (xk - (first + l));
        }
        slope += term;
        value *= (xi - xm) / (xk - xm);
      }
      b.value[q][k] = value;
      b.slope[q][k] = slope;
    }
  }
  return b;
}

// Index by first + 4: first ranges over -4 .. 0.
const std::array<Basis, 5> kBases = {make_basis(-4), make_basis(-3), make_basis(-2),
                                     make_basis(-1), make_basis(0)};

}  // namespace

double total_quantity(const Snapshot& s, Quantity quantity, double g) {
  const std::size_t n = s.size();
  if (n < kStencil) throw std::invalid_argument("total_quantity: need at least 5 cells");
  const double dx = s.dx();

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t start = j < 2 ? 0 : j - 2;
    if (start + kStencil > n) start = n - kStencil;
    const int first = static_cast<int>(start) - static_cast<int>(j);
    const Basis& basis = kBases[static_cast<std::size_t>(first + 4)];

    double cell = 0.0;
    for (int q = 0; q < kGauss; ++q) {
      double h = 0.0;
      double u = 0.0;
      double ux = 0.0;
      for (int k = 0; k < kStencil; ++k) {
        const std::size_t idx = start + static_cast<std::size_t>(k);
        h += basis.value[q][k] * s.h[idx];
        if (quantity != Quantity::h) {
          u += basis.value[q][k] * s.u[idx];
          ux += basis.slope[q][k] * s.u[idx];
        }
      }
      ux /= dx;
      double density = 0.0;
      switch (quantity) {
        case Quantity::h:
          density = h;
          break;
        case Quantity::uh:
          density = u * h;
          break;
        case Quantity::H:
          density = 0.5 * (h * u * u + h * h * h / 3.0 * ux * ux + g * h * h);
          break;
      }
      cell += kWeights[q] * density;
    }
    total += cell * dx;
  }
  return total;
}

}  // namespace serre
