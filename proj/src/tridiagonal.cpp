#include "serre/tridiagonal.hpp"

#include <algorithm>
#include <cmath>

namespace serre {

void TridiagonalSystem::resize(std::size_t n) {
  sub.assign(n, 0.0);
  diag.assign(n, 0.0);
  super.assign(n, 0.0);
  rhs.assign(n, 0.0);
}

bool TridiagonalSystem::strictly_diagonally_dominant() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const double off = (i > 0 ? std::abs(sub[i]) : 0.0) +
                       (i + 1 < n ? std::abs(super[i]) : 0.0);
    if (!(std::abs(diag[i]) > off)) return false;
  }
  return true;
}

double TridiagonalSystem::relative_residual(std::span<const double> x) const {
  const std::size_t n = size();
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ax = diag[i] * x[i];
    scale = std::max({scale, std::abs(rhs[i]), std::abs(ax)});
    if (i > 0) ax += sub[i] * x[i - 1];
    if (i + 1 < n) ax += super[i] * x[i + 1];
    worst = std::max(worst, std::abs(ax - rhs[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

bool solve_tridiagonal(const TridiagonalSystem& sys, std::span<double> x,
                       std::vector<double>& scratch) {
  const std::size_t n = sys.size();
  if (n == 0) return true;
  scratch.resize(n);
  auto& c = scratch;  // modified super-diagonal

  double pivot = sys.diag[0];
  if (pivot == 0.0) return false;
  double inv = 1.0 / pivot;
  c[0] = sys.super[0] * inv;
  x[0] = sys.rhs[0] * inv;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) return false;
    inv = 1.0 / pivot;
    c[i] = (i + 1 < n ? sys.super[i] : 0.0) * inv;
    x[i] = (sys.rhs[i] - sys.sub[i] * x[i - 1]) * inv;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];

  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace serre
