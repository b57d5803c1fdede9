#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace serre {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scheme { D, E };

/// How the n-1 level is produced before the first leapfrog step.
enum class Bootstrap {
  CopyInitial,   // previous level = initial condition
  ForwardEuler,  // one two-level step of length dt, leapfrog thereafter
};

/// Which form of the expanded momentum equation the implicit update uses.
///
/// `Serre` is the expansion of the conservative momentum equation, where the
/// h^2 coefficients carry a factor dh/dx. `AsPrinted` drops that factor
/// (dh/dx := 1); it is kept for comparison only and is linearly unstable
/// about a lake at rest.
enum class MomentumForm { Serre, AsPrinted };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

struct SimConfig {
  double h0 = 1.0;    // right depth (m)
  double h1 = 1.8;    // left depth (m)
  double x0 = 500.0;  // transition centre (m)
  double alpha = 2.0; // smoothing length (m)
  double domain_a = 0.0;
  double domain_b = 1000.0;
  double dx = 10.0 / 64.0;
  double dt_factor = 0.01;  // dt = dt_factor * dx
  double t_end = 30.0;
  double g = 9.81;
  Scheme scheme = Scheme::D;
  std::filesystem::path out_dir = "out";
  std::vector<double> snapshot_times;

  // Copying leaves the first velocity off by O(dt) and excites the leapfrog
  // computational mode, which makes the run first order in dx.
  Bootstrap bootstrap = Bootstrap::ForwardEuler;
  MomentumForm momentum_form = MomentumForm::Serre;

  double dt() const { return dt_factor * dx; }
  bool x0_is_midpoint() const;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

/// Cell width of refinement level k, dx = 10 / 2^k.
double dx_for_level(int k);

/// Ordered `key = value` pairs; `#` starts a comment.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::filesystem::path& path);

std::vector<double> parse_number_list(std::string_view text);
double parse_number(std::string_view text, std::string_view key);

/// Builds a config from exactly the keys h0, h1, x0, alpha, domain_a,
/// domain_b, dx, dt_factor, t_end, g, scheme, out_dir, snapshot_times.
/// `out_dir` and `snapshot_times` may be omitted; every other key is required.
/// Unknown keys are rejected.
SimConfig config_from_key_values(const KeyValues& kv);
SimConfig load_config(const std::filesystem::path& path);

std::string format_config(const SimConfig& config);

}  // namespace serre
