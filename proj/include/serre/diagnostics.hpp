#pragma once

#include <optional>
#include <string_view>

#include "serre/initial_conditions.hpp"
#include "serre/quadrature.hpp"
#include "serre/reference.hpp"
#include "serre/snapshot.hpp"

namespace serre {

struct Totals {
  double h = 0.0;
  double uh = 0.0;
  double H = 0.0;
};

Totals conserved_totals(const Snapshot& snapshot, double g);

struct ConservationErrors {
  double h = 0.0;   // relative
  double uh = 0.0;  // absolute, corrected for the boundary momentum flux
  double H = 0.0;   // relative
};

/// Errors of the snapshot's totals against the initial totals. The momentum
/// error subtracts g t (h(b)^2 - h(a)^2) / 2, with h(a), h(b) taken from the
/// outermost cells.
ConservationErrors conservation_error(const AnalyticTotals& initial, const Snapshot& snapshot,
                                      double g);
ConservationErrors conservation_error(const AnalyticTotals& initial, const Totals& current,
                                      const Snapshot& snapshot, double g);

enum class Field { h, u };

/// Interval left out of an L1 comparison.
struct ExclusionWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// The [520, 540] m window used for the node and growth structures.
constexpr ExclusionWindow kDaggerWindow{520.0, 540.0};

/// Relative L1 difference of a coarse solution against a finer one at the
/// coarse cell centres. The fine grid must come from halving the coarse dx
/// k >= 0 times over the same interval; for k >= 1 the fine value at a coarse
/// centre is the mean of the two fine cells straddling it.
///
/// Throws std::invalid_argument naming the first coarse index whose centre
/// has no matching fine pair.
double l1_difference(const Snapshot& coarse, const Snapshot& fine, Field field,
                     std::optional<ExclusionWindow> exclude = std::nullopt);

struct LeadingWave {
  double x = 0.0;  // crest position
  double A = 0.0;  // crest depth
};

/// Rightmost local maximum of h above h0 + (h1 - h0)/100, refined by a
/// three-point parabola. The crest must also rise at least (h1 - h0)/100
/// above the trough behind it. Empty when there is no such crest ("no bore").
std::optional<LeadingWave> leading_wave(const Snapshot& snapshot, double h0, double h1);

struct BoreMeans {
  double h_mean = 0.0;
  double u_mean = 0.0;
  std::size_t cells = 0;
  bool clipped = false;  // the window ran past the domain
};

/// Arithmetic means of h and u over cells in [x_u2 - 50, x_u2 + 50].
BoreMeans bore_means(const Snapshot& snapshot, const SwweSolution& sol, double t,
                     double half_width = 50.0);

enum class Structure { S1, S2, S3, S4, Unclassified };

std::string_view to_string(Structure structure);

struct ClassifierThresholds {
  double eps1 = 5e-3;          // m, oscillation floor
  double rho = 0.5;            // amplitude ratio between mid window and flanks
  double mid_half_width = 10.0;  // m, window around x_u2
  double flank_width = 20.0;     // m, each side of the mid window
};

struct StructureAnalysis {
  Structure structure = Structure::Unclassified;
  double mid_amplitude = 0.0;
  double left_flank_amplitude = 0.0;
  double right_flank_amplitude = 0.0;
  double max_amplitude = 0.0;  // anywhere in the bore
  double bore_left = 0.0;
  double bore_right = 0.0;
};

/// Labels the bore interior from crest/trough pairs of h between the tail
/// of the rarefaction fan and the leading front:
///   S1  no pair anywhere with half-height above eps1
///   S2  mid window below eps1 while the bore oscillates elsewhere
///   S3  mid amplitude below rho * the smaller flank amplitude
///   S4  mid amplitude above the larger flank amplitude / rho
/// Anything else is Unclassified. Requires t > 0.
StructureAnalysis analyse_structure(const Snapshot& snapshot, const SwweSolution& sol, double t,
                                    const ClassifierThresholds& thresholds = {});

Structure classify_structure(const Snapshot& snapshot, const SwweSolution& sol, double t,
                             const ClassifierThresholds& thresholds = {});

}  // namespace serre
