#pragma once

// Hyperplane bounds for orthant walks in any dimension.
//
// For a unit normal p >= 0 the walks confined to {x : <x,p> >= 0} contain the orthant
// walks, and their growth K_S(p) is the half-plane growth of the projected steps.
// Along the ray t = s p one has K_S(p) = inf_{s >= 0} P(exp(s p)), so minimizing K_S
// over normals is minimizing the convex function t -> log P(exp t) over the closed
// cone t >= 0. Its minimizer lies in the relative interior of some face {t_k = 0 for
// k outside J}, where P restricts to the inventory of the steps projected onto the
// coordinates in J. Each face is therefore an unconstrained problem in |J| variables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/errors.hpp"
#include "walkgrowth/essential.hpp"
#include "walkgrowth/growth_bound.hpp"
#include "walkgrowth/halfplane.hpp"
#include "walkgrowth/parallel.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

struct HyperplaneBound {
  std::vector<double> normal;
  double growth;
  DriftRegime regime;
};

inline HyperplaneBound hyperplane_growth(const StepSet& s, std::span<const double> normal) {
  const auto a = project(s, normal);
  return {std::vector<double>(normal.begin(), normal.end()), half_plane_growth(a), regime_of(a)};
}

inline CriticalPoint min_inventory_orthant(const StepSet& s) { return critical_point(s); }

/// Unit vector from hyperspherical angles phi_1..phi_{m-1} in [0, pi/2]; every component is >= 0.
inline std::vector<double> spherical_point(std::span<const double> angles) {
  const std::size_t m = angles.size() + 1;
  std::vector<double> p(m, 1.0);
  double prefix = 1.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    p[k] = prefix * std::cos(angles[k]);
    prefix *= std::sin(angles[k]);
  }
  p[m - 1] = prefix;
  for (double& c : p) c = std::max(c, 0.0);
  double norm = 0.0;
  for (double c : p) norm += c * c;
  norm = std::sqrt(norm);
  for (double& c : p) c /= norm;
  return p;
}

struct GridMinimum {
  std::vector<double> normal;
  double growth;
  std::size_t evaluations;
};

namespace detail {

inline std::vector<double> embed(std::span<const double> face_normal, std::span<const std::size_t> face, std::size_t d) {
  std::vector<double> p(d, 0.0);
  for (std::size_t i = 0; i < face.size(); ++i) p[face[i]] = face_normal[i];
  return p;
}

inline std::vector<std::size_t> subset_axes(std::size_t mask, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < d; ++k)
    if (mask >> k & 1) out.push_back(k);
  return out;
}

/// Golden-section search of f on [lo, hi], assumed unimodal near the bracketed minimum.
template <class F>
double golden_section(F&& f, double lo, double hi, int iterations = 60) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-15; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace detail

/// Minimum of K_S over normals supported on `face`, by a regular angular grid and golden-section polish.
///
/// `points_per_axis` grid points cover [0, pi/2] for each of the |face|-1 angles.
inline GridMinimum grid_minimum_on_face(const StepSet& s, std::span<const std::size_t> face, std::size_t points_per_axis,
                                        bool refine = true) {
  const std::size_t d = s.dimension();
  const std::size_t m = face.size();
  if (m == 0) throw std::invalid_argument("empty face");
  if (points_per_axis < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  auto eval = [&](std::span<const double> angles) {
    const auto local = spherical_point(angles);
    return hyperplane_growth(s, detail::embed(local, face, d)).growth;
  };
  if (m == 1) {
    const double one = 1.0;
    const auto p = detail::embed(std::span<const double>(&one, 1), face, d);
    return {p, hyperplane_growth(s, p).growth, 1};
  }

  const std::size_t free = m - 1;
  const double h = kHalfPi / static_cast<double>(points_per_axis - 1);
  auto angle_at = [&](std::size_t i) { return i + 1 == points_per_axis ? kHalfPi : static_cast<double>(i) * h; };

  std::size_t rows = 1;
  for (std::size_t k = 1; k < free; ++k) rows *= points_per_axis;
  // Rows are independent: the first angle varies inside a row, the others index the row.
  struct Best {
    double value;
    std::vector<double> angles;
  };
  auto best_rows = parallel_map(rows, [&](std::size_t r) {
    std::vector<double> angles(free, 0.0);
    std::size_t rest = r;
    for (std::size_t k = 1; k < free; ++k) {
      angles[k] = angle_at(rest % points_per_axis);
      rest /= points_per_axis;
    }
    Best b{std::numeric_limits<double>::infinity(), angles};
    for (std::size_t i = 0; i < points_per_axis; ++i) {
      angles[0] = angle_at(i);
      const double v = eval(angles);
      if (v < b.value) b = {v, angles};
    }
    return b;
  });
  Best best = best_rows.front();
  for (const auto& b : best_rows)
    if (b.value < best.value) best = b;

  if (refine) {
    // Coordinate-wise golden-section inside the best cell, two sweeps.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t k = 0; k < free; ++k) {
        auto angles = best.angles;
        auto along = [&](double a) {
          angles[k] = a;
          return eval(angles);
        };
        const double lo = std::max(0.0, best.angles[k] - h), hi = std::min(kHalfPi, best.angles[k] + h);
        const double a = detail::golden_section(along, lo, hi);
        const double v = along(a);
        if (v < best.value) {
          best.value = v;
          best.angles[k] = a;
        }
      }
    }
  }
  return {detail::embed(spherical_point(best.angles), face, d), best.value, rows * points_per_axis};
}

/// Grid minimum over the whole spherical simplex.
inline GridMinimum grid_minimum(const StepSet& s, std::size_t points_per_axis, bool refine = false) {
  std::vector<std::size_t> all(s.dimension());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return grid_minimum_on_face(s, all, points_per_axis, refine);
}

struct ConjectureOptions {
  double grid_spacing = 1e-3;  // angular spacing for faces without a usable critical point
  std::size_t horizon = kOrthantEssentialHorizon;
};

/// Outcome of the face-by-face minimization.
struct FaceReport {
  std::vector<std::size_t> axes;
  bool converged = false;
  bool interior = false;  // every log coordinate >= 0
  bool gridded = false;
  std::optional<double> value;
};

struct ConjectureResult {
  GrowthBound bound;
  bool essential = false;
  std::vector<FaceReport> faces;
};

/// min over unit normals p >= 0 of K_S(p), with per-face diagnostics.
///
/// Rejects models without any orthant walk. Models that are not orthant-essential are
/// still bounded (the minimum is a valid upper bound) but flagged.
inline ConjectureResult conjectured_growth_report(const StepSet& s, const ConjectureOptions& opt = {}) {
  const std::size_t d = s.dimension();
  const auto diag = diagnose_orthant(s, opt.horizon);
  if (!diag.has_walk) throw inessential_model("model has no orthant walk: " + to_string(s));

  ConjectureResult out{{static_cast<double>(s.size()), BoundKind::upper,
                        {Certificate::Kind::hyperplane, "zero tilt: K_S(p) = |S|", std::nullopt, {}, {}}, s},
                       diag.essential(), {}};
  std::vector<double> best_normal(d, 0.0);
  best_normal[d - 1] = 1.0;
  double best = static_cast<double>(s.size());
  auto consider = [&](const std::vector<double>& normal, double value, const std::string& how) {
    if (value < best - 1e-15) {
      best = value;
      best_normal = normal;
      out.bound.certificate.description = how;
    }
  };

  const std::size_t points = static_cast<std::size_t>(std::ceil(kHalfPi / opt.grid_spacing)) + 1;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    FaceReport face;
    face.axes = detail::subset_axes(mask, d);
    const auto restricted = restrict_axes(s, face.axes);
    const auto cp = critical_point(restricted);
    face.converged = cp.converged;
    if (cp.converged) {
      std::vector<double> logs;
      bool interior = true, zero = true;
      for (double c : cp.coordinates) {
        double l = std::log(c);
        if (std::abs(l) <= kUnitLogTolerance) l = 0.0;
        interior &= l >= 0.0;
        zero &= l == 0.0;
        logs.push_back(l);
      }
      face.interior = interior;
      if (interior && !zero) {
        double norm = 0.0;
        for (double l : logs) norm += l * l;
        norm = std::sqrt(norm);
        for (double& l : logs) l /= norm;
        const auto normal = detail::embed(logs, face.axes, d);
        face.value = hyperplane_growth(s, normal).growth;
        consider(normal, *face.value, "critical point of the face inventory");
      }
    } else if (face.axes.size() == 1) {
      const auto normal = detail::embed(std::vector<double>{1.0}, face.axes, d);
      face.value = hyperplane_growth(s, normal).growth;
      consider(normal, *face.value, "coordinate hyperplane");
    } else {
      // No interior stationary point on this face: the infimum is approached toward infinity
      // inside the face cone or lies on a smaller face. Search the face numerically.
      face.gridded = true;
      const auto g = grid_minimum_on_face(s, face.axes, points);
      face.value = g.growth;
      consider(g.normal, g.growth, "angular grid with golden-section refinement");
    }
    out.faces.push_back(std::move(face));
  }
  out.bound.value = best;
  out.bound.certificate.normal = best_normal;
  return out;
}

inline GrowthBound conjectured_growth(const StepSet& s, const ConjectureOptions& opt = {}) {
  return conjectured_growth_report(s, opt).bound;
}

}  // namespace walkgrowth
