#pragma once

// Half-plane bounds for orthant walks.
//
// Walks confined to a half-space through the origin are in bijection with
// one-dimensional walks whose steps are the projections of the original steps
// onto the half-space normal. The exponential growth of those is |A| when the
// projected drift is nonnegative and chi(tau) otherwise, where chi(u) = sum u^a
// is the projected inventory and tau its unique positive critical point. Every
// half-plane containing the quarter plane gives an upper bound; this module
// finds the best one.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "walkgrowth/errors.hpp"
#include "walkgrowth/essential.hpp"
#include "walkgrowth/growth_bound.hpp"
#include "walkgrowth/logconvex.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// ---------------------------------------------------------------------------
// One-dimensional exponent multisets
// ---------------------------------------------------------------------------

struct Exponent {
  double value;
  std::int64_t mult;
};

/// A finite multiset of real exponents, sorted, with near-equal values merged.
class Exponent1D {
 public:
  explicit Exponent1D(std::vector<Exponent> terms, double merge_tol = 1e-14) {
    for (const auto& t : terms)
      if (t.mult < 1) throw std::invalid_argument("exponent multiplicity must be positive");
    std::sort(terms.begin(), terms.end(), [](const Exponent& a, const Exponent& b) { return a.value < b.value; });
    for (const auto& t : terms) {
      if (!terms_.empty() && std::abs(terms_.back().value - t.value) <= merge_tol * std::max(1.0, std::abs(t.value)))
        terms_.back().mult += t.mult;
      else
        terms_.push_back(t);
    }
  }

  static Exponent1D of(std::initializer_list<double> values) {
    std::vector<Exponent> t;
    for (double v : values) t.push_back({v, 1});
    return Exponent1D(std::move(t));
  }

  const std::vector<Exponent>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  std::int64_t size() const noexcept {
    std::int64_t n = 0;
    for (const auto& t : terms_) n += t.mult;
    return n;
  }

  double drift() const noexcept {
    double d = 0.0;
    for (const auto& t : terms_) d += static_cast<double>(t.mult) * t.value;
    return d;
  }

  /// Scale for drift comparisons: sum of m|a|.
  double magnitude() const noexcept {
    double d = 0.0;
    for (const auto& t : terms_) d += static_cast<double>(t.mult) * std::abs(t.value);
    return d;
  }

  bool has_positive() const noexcept { return !terms_.empty() && terms_.back().value > 0.0; }
  bool has_negative() const noexcept { return !terms_.empty() && terms_.front().value < 0.0; }
  bool nontrivial() const noexcept { return has_positive() && has_negative(); }

  std::int64_t zero_multiplicity() const noexcept {
    std::int64_t n = 0;
    for (const auto& t : terms_)
      if (t.value == 0.0) n += t.mult;
    return n;
  }

  /// chi(u) = sum m u^a.
  double chi(double u) const {
    if (!(u > 0.0)) throw std::domain_error("chi is evaluated at positive arguments only");
    return logconvex::value(log_terms(), std::log(u));
  }

  double chi_prime(double u) const {
    if (!(u > 0.0)) throw std::domain_error("chi is evaluated at positive arguments only");
    double s = 0.0;
    for (const auto& t : terms_) s += static_cast<double>(t.mult) * t.value * std::pow(u, t.value - 1.0);
    return s;
  }

  Exponent1D scaled(double r) const {
    std::vector<Exponent> t;
    for (const auto& e : terms_) t.push_back({e.value * r, e.mult});
    return Exponent1D(std::move(t));
  }

  std::vector<logconvex::Term1D> log_terms() const {
    std::vector<logconvex::Term1D> t;
    t.reserve(terms_.size());
    for (const auto& e : terms_) t.push_back({e.value, static_cast<double>(e.mult)});
    return t;
  }

 private:
  std::vector<Exponent> terms_;
};

/// Projection of every step onto a unit normal with nonnegative components.
inline Exponent1D project(const StepSet& s, std::span<const double> normal) {
  if (normal.size() != s.dimension()) throw invalid_normal("normal has wrong dimension");
  double norm2 = 0.0;
  bool nonzero = false;
  for (double c : normal) {
    if (c < 0.0 || !std::isfinite(c)) throw invalid_normal("normal components must be finite and nonnegative");
    nonzero |= c > 0.0;
    norm2 += c * c;
  }
  if (!nonzero) throw invalid_normal("normal must not be zero");
  if (std::abs(norm2 - 1.0) > 1e-12) throw invalid_normal("normal must have unit length");

  std::vector<Exponent> out;
  out.reserve(s.distinct());
  for (const auto& st : s.steps()) {
    double a = 0.0;
    for (std::size_t k = 0; k < normal.size(); ++k) a += st.v[k] * normal[k];
    out.push_back({a, st.mult});
  }
  return Exponent1D(std::move(out));
}

/// Unit normal (sin theta, cos theta) of the half-plane H_theta; the endpoints are exact.
inline std::array<double, 2> angle_normal(double theta) {
  if (theta == 0.0) return {0.0, 1.0};
  if (theta == kHalfPi) return {1.0, 0.0};
  return {std::sin(theta), std::cos(theta)};
}

struct CriticalValue1D {
  double tau;
  double value;  // chi(tau)
};

/// tau and chi(tau) for a multiset with exponents of both signs.
///
/// Solved in t = log u, where chi becomes a strictly convex sum of exponentials.
inline CriticalValue1D critical_value(const Exponent1D& a) {
  if (!a.nontrivial()) throw no_critical_point("chi has no positive critical point: exponents do not take both signs");
  const auto terms = a.log_terms();
  const auto m = logconvex::minimize_1d(terms);
  return {std::exp(m.t), logconvex::value(terms, m.t)};
}

inline double tau_of(const Exponent1D& a) { return critical_value(a).tau; }

enum class DriftRegime { nonnegative, negative };

inline const char* to_string(DriftRegime r) { return r == DriftRegime::negative ? "neg-drift" : "nonneg-drift"; }

/// Projected drifts within this relative distance of zero count as zero.
inline constexpr double kDriftEpsilon = 1e-12;

inline DriftRegime regime_of(const Exponent1D& a) {
  return a.drift() < -kDriftEpsilon * a.magnitude() ? DriftRegime::negative : DriftRegime::nonnegative;
}

/// Growth constant of one-dimensional walks staying nonnegative.
///
/// |A| when the drift is nonnegative, chi(tau) when it is negative. A multiset with
/// no positive exponent only admits its zero steps, whose count is then the growth.
inline double half_plane_growth(const Exponent1D& a) {
  if (a.empty()) throw std::invalid_argument("half_plane_growth of an empty multiset");
  if (!a.has_negative() || regime_of(a) == DriftRegime::nonnegative) return static_cast<double>(a.size());
  if (!a.has_positive()) {
    const auto zeros = a.zero_multiplicity();
    if (zeros == 0) throw bound_unavailable("no nonnegative walk of positive length exists");
    return static_cast<double>(zeros);
  }
  return critical_value(a).value;
}

// ---------------------------------------------------------------------------
// Planar angle family
// ---------------------------------------------------------------------------

struct AngleBound {
  double theta;
  double growth;
  DriftRegime regime;
  std::optional<double> tau;  // set in the negative-drift regime
};

inline AngleBound growth_at_angle(const StepSet& s, double theta) {
  if (s.dimension() != 2) throw unsupported_dimension("angle bounds need a planar step set");
  if (!(theta >= 0.0 && theta <= kHalfPi)) throw std::out_of_range("theta must lie in [0, pi/2]");
  const auto n = angle_normal(theta);
  const auto a = project(s, n);
  AngleBound b{theta, 0.0, regime_of(a), std::nullopt};
  if (b.regime == DriftRegime::negative && a.nontrivial()) {
    const auto cv = critical_value(a);
    b.growth = cv.value;
    b.tau = cv.tau;
  } else {
    b.growth = half_plane_growth(a);
  }
  return b;
}

/// Bounds at theta_k = k pi / (2 (gridsize - 1)), k = 0..gridsize-1.
inline std::vector<AngleBound> theta_sweep(const StepSet& s, std::size_t gridsize) {
  if (gridsize < 2) throw std::invalid_argument("theta sweep needs at least 2 grid points");
  std::vector<AngleBound> out;
  out.reserve(gridsize);
  for (std::size_t k = 0; k < gridsize; ++k) {
    const double theta = k + 1 == gridsize ? kHalfPi : static_cast<double>(k) * kHalfPi / static_cast<double>(gridsize - 1);
    out.push_back(growth_at_angle(s, theta));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Critical point of the inventory
// ---------------------------------------------------------------------------

struct CriticalPoint {
  std::vector<double> coordinates;  // alpha, beta, ...
  double inventory_value = 0.0;
  bool converged = false;
  double residual = 0.0;  // max |dP/dx_k| at the coordinates
  bool escaped = false;   // iterates left every bounded region: infimum on the boundary
  int iterations = 0;
};

/// Minimizer of P over the open positive orthant, found in log coordinates from the all-ones start.
inline CriticalPoint critical_point(const StepSet& s, const logconvex::Options& opt = {}) {
  const auto d = static_cast<Eigen::Index>(s.dimension());
  const auto n = static_cast<Eigen::Index>(s.distinct());
  Eigen::MatrixXd a(n, d);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& st = s.steps()[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < d; ++k) a(i, k) = st.v[static_cast<std::size_t>(k)];
    w(i) = static_cast<double>(st.mult);
  }
  const auto m = logconvex::minimize(a, w, opt);
  CriticalPoint cp;
  cp.converged = m.converged;
  cp.escaped = m.escaped;
  cp.iterations = m.iterations;
  for (Eigen::Index k = 0; k < d; ++k) cp.coordinates.push_back(std::exp(m.t(k)));
  if (!m.escaped) {
    const auto inv = eval_inventory(s, cp.coordinates, 1);
    cp.inventory_value = inv.value;
    for (double g : inv.gradient) cp.residual = std::max(cp.residual, std::abs(g));
  } else {
    cp.inventory_value = std::exp(m.log_value);
    cp.residual = m.gradient_norm;
  }
  return cp;
}

// ---------------------------------------------------------------------------
// Best half-plane
// ---------------------------------------------------------------------------

/// |log x| below this is treated as x == 1 when locating the minimizing angle.
inline constexpr double kUnitLogTolerance = 1e-9;

/// min over theta in [0, pi/2] of K_S(theta), without the essentiality check.
///
/// When the critical point (alpha, beta) satisfies alpha >= 1 and beta >= 1 the
/// minimum is P(alpha, beta), attained at theta* = arctan(log alpha / log beta).
/// Otherwise no interior angle is critical and the minimum sits at an endpoint.
inline GrowthBound best_angle_bound(const StepSet& s) {
  if (s.dimension() != 2) throw unsupported_dimension("angle bounds need a planar step set");
  const auto cp = critical_point(s);
  if (cp.converged) {
    double la = std::log(cp.coordinates[0]);
    double lb = std::log(cp.coordinates[1]);
    if (std::abs(la) <= kUnitLogTolerance) la = 0.0;
    if (std::abs(lb) <= kUnitLogTolerance) lb = 0.0;
    if (la >= 0.0 && lb >= 0.0) {
      Certificate c{Certificate::Kind::angle, "", std::nullopt, {}, {}};
      if (la == 0.0 && lb == 0.0) {
        c.theta = 0.0;
        c.description = "zero drift: K_S(theta) = |S| at every angle";
        return {static_cast<double>(s.size()), BoundKind::upper, c, s};
      }
      c.theta = lb == 0.0 ? kHalfPi : std::atan(la / lb);
      c.description = "interior critical point: theta* = arctan(log alpha / log beta)";
      return {cp.inventory_value, BoundKind::upper, c, s};
    }
  }
  const auto k0 = growth_at_angle(s, 0.0);
  const auto k90 = growth_at_angle(s, kHalfPi);
  const bool right = k90.growth < k0.growth;
  Certificate c{Certificate::Kind::angle,
                cp.converged ? "critical point outside [1,inf)^2: minimum at an endpoint"
                             : "no interior critical point: minimum at an endpoint",
                right ? kHalfPi : 0.0, {}, {}};
  return {right ? k90.growth : k0.growth, BoundKind::upper, c, s};
}

/// Best half-plane upper bound on the quarter-plane growth constant.
inline GrowthBound best_upper_bound(const StepSet& s) {
  if (s.dimension() != 2) throw unsupported_dimension("angle bounds need a planar step set");
  if (!is_quarterplane_essential(s))
    throw inessential_model("model not quarter-plane essential: " + to_compass_string(s));
  return best_angle_bound(s);
}

}  // namespace walkgrowth
