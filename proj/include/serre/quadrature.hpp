#pragma once

#include "serre/snapshot.hpp"

namespace serre {

enum class Quantity { h, uh, H };

/// Total of h, uh or the Hamiltonian density
///   H = (h u^2 + h^3/3 (du/dx)^2 + g h^2) / 2
/// over the snapshot's cells. Each cell fits quartics to h and u through
/// five neighbouring cell values (centred, one-sided at the two outermost
/// cells on each side) and integrates the resulting density with 3-point
/// Gauss-Legendre. Cells are summed left to right.
///
/// Throws std::invalid_argument for fewer than 5 cells.
double total_quantity(const Snapshot& snapshot, Quantity quantity, double g);

}  // namespace serre
