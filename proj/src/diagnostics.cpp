#include "serre/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace serre {

Totals conserved_totals(const Snapshot& s, double g) {
  return {total_quantity(s, Quantity::h, g), total_quantity(s, Quantity::uh, g),
          total_quantity(s, Quantity::H, g)};
}

ConservationErrors conservation_error(const AnalyticTotals& initial, const Totals& current,
                                      const Snapshot& s, double g) {
  const double ha = s.h.front();
  const double hb = s.h.back();
  ConservationErrors e;
  e.h = std::abs(initial.mass - current.h) / std::abs(initial.mass);
  e.H = std::abs(initial.energy - current.H) / std::abs(initial.energy);
  e.uh = std::abs(initial.momentum - current.uh - 0.5 * g * s.t * (hb * hb - ha * ha));
  return e;
}

ConservationErrors conservation_error(const AnalyticTotals& initial, const Snapshot& s,
                                      double g) {
  return conservation_error(initial, conserved_totals(s, g), s, g);
}

double l1_difference(const Snapshot& coarse, const Snapshot& fine, Field field,
                     std::optional<ExclusionWindow> exclude) {
  const auto& qc = field == Field::h ? coarse.h : coarse.u;
  const auto& qf = field == Field::h ? fine.h : fine.u;
  const double ratio = coarse.dx() / fine.dx();
  const double levels = std::round(std::log2(ratio));
  if (levels < 0.0 || std::abs(ratio - std::exp2(levels)) > 1e-9 * ratio) {
    throw std::invalid_argument("l1_difference: fine dx is not coarse dx / 2^k");
  }
  const std::size_t refine = static_cast<std::size_t>(std::exp2(levels));
  if (fine.size() != coarse.size() * refine) {
    throw std::invalid_argument("l1_difference: grids do not cover the same interval");
  }

  double diff = 0.0;
  double norm = 0.0;
  const double tol = 1e-9 * std::max(1.0, coarse.dx());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const double x = coarse.x[i];
    double q_fine = 0.0;
    double x_fine = 0.0;
    if (refine == 1) {
      q_fine = qf[i];
      x_fine = fine.x[i];
    } else {
      const std::size_t m = refine * i + refine / 2 - 1;
      q_fine = 0.5 * (qf[m] + qf[m + 1]);
      x_fine = 0.5 * (fine.x[m] + fine.x[m + 1]);
    }
    if (std::abs(x_fine - x) > tol * std::max(1.0, std::abs(x))) {
      throw std::invalid_argument("l1_difference: coarse centre " + std::to_string(i) +
                                  " has no matching fine cells");
    }
    if (exclude && exclude->contains(x)) continue;
    diff += std::abs(qc[i] - q_fine);
    norm += std::abs(q_fine);
  }
  if (norm == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / norm;
}

std::optional<LeadingWave> leading_wave(const Snapshot& s, double h0, double h1) {
  const double delta = 0.01 * (h1 - h0);
  const double threshold = h0 + delta;
  const auto& h = s.h;
  if (h.size() < 3) return std::nullopt;
  for (std::size_t i = h.size() - 2; i >= 1; --i) {
    if (!(h[i] > threshold && h[i] > h[i - 1] && h[i] >= h[i + 1])) continue;
    // A crest must stand above the trough behind it; this rejects round-off
    // bumps on an otherwise monotone profile.
    std::size_t j = i - 1;
    while (j > 0 && h[j - 1] <= h[j]) --j;
    if (h[i] - h[j] < delta) continue;

    const double curvature = h[i - 1] - 2.0 * h[i] + h[i + 1];
    const double slope = h[i + 1] - h[i - 1];
    LeadingWave w{s.x[i], h[i]};
    if (curvature < 0.0) {
      const double offset = -0.5 * slope / curvature;  // in cells, |offset| <= 1/2
      w.x = s.x[i] + offset * s.dx();
      w.A = h[i] - slope * slope / (8.0 * curvature);
    }
    return w;
  }
  return std::nullopt;
}

BoreMeans bore_means(const Snapshot& s, const SwweSolution& sol, double t, double half_width) {
  const double centre = sol.x_u2(t);
  const double lo = centre - half_width;
  const double hi = centre + half_width;
  BoreMeans m;
  const double dx = s.dx();
  m.clipped = lo < s.x.front() - 0.5 * dx || hi > s.x.back() + 0.5 * dx;
  // Deviations from the first cell in the window keep a uniform state exact.
  std::optional<std::size_t> first;
  double sum_h = 0.0;
  double sum_u = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.x[i] < lo || s.x[i] > hi) continue;
    if (!first) first = i;
    sum_h += s.h[i] - s.h[*first];
    sum_u += s.u[i] - s.u[*first];
    ++m.cells;
  }
  if (first) {
    m.h_mean = s.h[*first] + sum_h / static_cast<double>(m.cells);
    m.u_mean = s.u[*first] + sum_u / static_cast<double>(m.cells);
  }
  return m;
}

std::string_view to_string(Structure structure) {
  switch (structure) {
    case Structure::S1:
      return "S1";
    case Structure::S2:
      return "S2";
    case Structure::S3:
      return "S3";
    case Structure::S4:
      return "S4";
    case Structure::Unclassified:
      break;
  }
  return "Unclassified";
}

namespace {

struct Oscillation {
  double x;          // midpoint between a crest and the adjacent trough
  double amplitude;  // half the crest-to-trough height
};

/// Adjacent extremum pairs of h among cells with centres in [lo, hi].
std::vector<Oscillation> oscillations(const Snapshot& s, double lo, double hi) {
  std::vector<std::size_t> extrema;
  int last_sign = 0;
  std::size_t last_change = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s.x[i] < lo || s.x[i + 1] > hi) continue;
    const double d = s.h[i + 1] - s.h[i];
    const int sign = (d > 0.0) - (d < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) extrema.push_back(last_change);
    last_sign = sign;
    last_change = i + 1;
  }
  std::vector<Oscillation> out;
  for (std::size_t k = 0; k + 1 < extrema.size(); ++k) {
    const std::size_t a = extrema[k];
    const std::size_t b = extrema[k + 1];
    out.push_back({0.5 * (s.x[a] + s.x[b]), 0.5 * std::abs(s.h[a] - s.h[b])});
  }
  return out;
}

double window_amplitude(const std::vector<Oscillation>& osc, double lo, double hi) {
  double amp = 0.0;
  for (const auto& o : osc) {
    if (o.x >= lo && o.x <= hi) amp = std::max(amp, o.amplitude);
  }
  return amp;
}

}  // namespace

StructureAnalysis analyse_structure(const Snapshot& s, const SwweSolution& sol, double t,
                                    const ClassifierThresholds& th) {
  if (!(t > 0.0)) throw std::invalid_argument("analyse_structure: t must be > 0");
  StructureAnalysis r;
  const double half = th.mid_half_width;
  const double flank = th.flank_width;
  const double xu = sol.x_u2(t);

  const auto whitham = whitham_leading_wave(sol.h0, sol.h1, sol.g, sol.x0);
  r.bore_left = sol.x_fan_tail(t);
  r.bore_right = std::max(sol.x_S2(t), whitham.x_S_plus(t));

  const auto osc = oscillations(s, r.bore_left, r.bore_right);
  r.max_amplitude = window_amplitude(osc, r.bore_left, r.bore_right);
  r.mid_amplitude = window_amplitude(osc, xu - half, xu + half);
  r.left_flank_amplitude = window_amplitude(osc, xu - half - flank, xu - half);
  r.right_flank_amplitude = window_amplitude(osc, xu + half, xu + half + flank);

  const double flank_min = std::min(r.left_flank_amplitude, r.right_flank_amplitude);
  const double flank_max = std::max(r.left_flank_amplitude, r.right_flank_amplitude);
  if (r.max_amplitude < th.eps1) {
    r.structure = Structure::S1;
  } else if (r.mid_amplitude < th.eps1) {
    r.structure = Structure::S2;
  } else if (r.mid_amplitude < th.rho * flank_min) {
    r.structure = Structure::S3;
  } else if (r.mid_amplitude > flank_max / th.rho) {
    r.structure = Structure::S4;
  } else {
    r.structure = Structure::Unclassified;
  }
  return r;
}

Structure classify_structure(const Snapshot& s, const SwweSolution& sol, double t,
                             const ClassifierThresholds& th) {
  return analyse_structure(s, sol, t, th).structure;
}

}  // namespace serre
