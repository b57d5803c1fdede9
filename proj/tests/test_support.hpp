#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "serre/config.hpp"
#include "serre/grid.hpp"

namespace serre::testing {

/// The dam-break defaults on [0, 1000] at refinement level k.
inline SimConfig dambreak_config(double alpha, int k, double t_end, Scheme scheme = Scheme::D) {
  SimConfig c;
  c.alpha = alpha;
  c.dx = dx_for_level(k);
  c.t_end = t_end;
  c.scheme = scheme;
  return c;
}

/// Lake at rest of depth `depth` on a short domain.
inline SimConfig lake_config(double depth, double dx, double length, Scheme scheme) {
  SimConfig c;
  c.h0 = depth;
  c.h1 = depth;
  c.domain_a = 0.0;
  c.domain_b = length;
  c.x0 = 0.5 * length;
  c.alpha = 1.0;
  c.dx = dx;
  c.scheme = scheme;
  return c;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("serre_test_" + tag + "_" + std::to_string(counter()++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::filesystem::path path_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace serre::testing
