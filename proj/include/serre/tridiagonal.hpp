#pragma once

#include <span>
#include <vector>

namespace serre {

/// Row i reads sub[i] x[i-1] + diag[i] x[i] + super[i] x[i+1] = rhs[i].
/// sub[0] and super[n-1] are ignored.
struct TridiagonalSystem {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> rhs;

  void resize(std::size_t n);
  std::size_t size() const { return diag.size(); }

  /// |diag| > |sub| + |super| on every row.
  bool strictly_diagonally_dominant() const;

  /// max_i |(A x - rhs)_i| / max(max_i |rhs_i|, max_i |diag_i x_i|).
  double relative_residual(std::span<const double> x) const;
};

/// Thomas elimination without pivoting. `scratch` is resized as needed and
/// may be reused across calls. Returns false if a pivot vanishes or a
/// non-finite value appears.
bool solve_tridiagonal(const TridiagonalSystem& system, std::span<double> x,
                       std::vector<double>& scratch);

}  // namespace serre
