#pragma once

#include <filesystem>
#include <vector>

#include "serre/grid.hpp"

namespace serre {

/// Interior cell values at one time.
struct Snapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> h;
  std::vector<double> u;

  std::size_t size() const { return x.size(); }
  /// Cell width recovered from the centres.
  double dx() const;
  /// Left edge of the first cell.
  double left_edge() const { return x.front() - 0.5 * dx(); }
};

Snapshot take_snapshot(const State& state, const Grid& grid);

/// `x,h,u` header, one row per interior cell, 17 significant digits.
void write_snapshot_csv(const Snapshot& snapshot, const std::filesystem::path& path);
/// `t` is not stored in the file; the caller supplies it.
Snapshot read_snapshot_csv(const std::filesystem::path& path, double t);

}  // namespace serre
