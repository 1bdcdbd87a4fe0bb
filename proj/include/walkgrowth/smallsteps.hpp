#pragma once

// Closed forms for planar small-step models and the census of non-trivial models.
//
// Write P(x,y) = a(x) y + b(x) + c(x) / y = A(y) x + B(y) + C(y) / x. The growth of a
// small-step quarter-plane model is one of
//   |S|,   rho0 = P(alpha, beta),   rhoY = b(1) + 2 sqrt(a(1) c(1)),   rhoX = B(1) + 2 sqrt(A(1) C(1)),
// selected by the signs of the drift and of the covariance gamma. rhoY is the half-plane
// value chi(tau) of the projection onto the y axis (theta = 0), rhoX that of the projection
// onto the x axis (theta = pi/2).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "walkgrowth/errors.hpp"
#include "walkgrowth/essential.hpp"
#include "walkgrowth/format.hpp"
#include "walkgrowth/growth_bound.hpp"
#include "walkgrowth/halfplane.hpp"
#include "walkgrowth/parallel.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(std::int64_t v) { return v < 0 ? Sign::negative : (v > 0 ? Sign::positive : Sign::zero); }

inline char sign_char(Sign s) { return s == Sign::negative ? '-' : (s == Sign::positive ? '+' : '0'); }

struct FRValues {
  std::int64_t cardinality = 0;
  std::optional<double> rho0_inv;  // P(alpha, beta), present iff the critical point is interior
  double rhoX_inv = 0.0;
  double rhoY_inv = 0.0;
  CriticalPoint critical;
};

inline void require_small(const StepSet& s) {
  if (s.dimension() != 2 || !s.is_small()) throw unsupported_dimension("closed forms need planar small steps");
}

/// Row sums of the small-step inventory at 1: index 0 <-> coordinate -1, 1 <-> 0, 2 <-> +1.
inline std::array<std::int64_t, 3> level_counts(const StepSet& s, std::size_t axis) {
  std::array<std::int64_t, 3> c{0, 0, 0};
  for (const auto& st : s.steps()) c[static_cast<std::size_t>(st.v[axis] + 1)] += st.mult;
  return c;
}

inline FRValues fr_values(const StepSet& s) {
  require_small(s);
  FRValues out;
  out.cardinality = s.size();
  const auto y = level_counts(s, 1);  // c(1), b(1), a(1)
  const auto x = level_counts(s, 0);
  out.rhoY_inv = static_cast<double>(y[1]) + 2.0 * std::sqrt(static_cast<double>(y[2] * y[0]));
  out.rhoX_inv = static_cast<double>(x[1]) + 2.0 * std::sqrt(static_cast<double>(x[2] * x[0]));
  out.critical = critical_point(s);
  if (out.critical.converged) out.rho0_inv = out.critical.inventory_value;
  return out;
}

enum class FRFormula { cardinality, rho0, rhoX, rhoY, ambiguous_equal };

inline const char* to_string(FRFormula f) {
  switch (f) {
    case FRFormula::cardinality: return "cardinality";
    case FRFormula::rho0: return "rho0";
    case FRFormula::rhoX: return "rhoX";
    case FRFormula::rhoY: return "rhoY";
    case FRFormula::ambiguous_equal: return "ambiguous_equal";
  }
  return "?";
}

struct FRPrediction {
  Sign drift_x = Sign::zero;
  Sign drift_y = Sign::zero;
  Sign covariance = Sign::zero;
  FRFormula chosen = FRFormula::cardinality;
  std::string detail;  // e.g. "rho0=rhoY" for the gamma = 0 rows
  double predicted_growth = 0.0;
  bool applicable = false;  // interior critical point exists
  FRValues values;
};

inline constexpr double kFormulaAgreement = 1e-9;

/// Formula choice by drift signs and covariance sign.
inline FRPrediction fr_classify(const StepSet& s) {
  FRPrediction p;
  p.values = fr_values(s);
  const auto d = drift(s);
  p.drift_x = sign_of(d[0]);
  p.drift_y = sign_of(d[1]);
  p.covariance = sign_of(covariance(s));
  p.applicable = p.values.rho0_inv.has_value();

  // Without an interior critical point rho0 is replaced by the infimum of P, reached on the boundary.
  const double rho0 = p.values.rho0_inv.value_or(p.values.critical.inventory_value);
  const double card = static_cast<double>(p.values.cardinality);

  auto pick = [&](FRFormula f, double v, std::string detail = {}) {
    p.chosen = f;
    p.predicted_growth = v;
    p.detail = std::move(detail);
  };
  auto tie = [&](double other, const char* name) {
    if (p.applicable && std::abs(rho0 - other) > kFormulaAgreement * std::max(1.0, other))
      throw integrity_error(std::string("rho0 and ") + name + " disagree on a gamma = 0 row for " + to_compass_string(s));
    pick(FRFormula::ambiguous_equal, rho0, std::string("rho0=") + name);
  };

  const Sign dx = p.drift_x, dy = p.drift_y, g = p.covariance;
  if (dx != Sign::negative && dy != Sign::negative) {
    pick(FRFormula::cardinality, card);
  } else if (dx == Sign::positive && dy == Sign::negative) {
    pick(FRFormula::rhoY, p.values.rhoY_inv);
  } else if (dx == Sign::zero && dy == Sign::negative) {
    if (g == Sign::negative)
      pick(FRFormula::rho0, rho0);
    else if (g == Sign::positive)
      pick(FRFormula::rhoY, p.values.rhoY_inv);
    else
      tie(p.values.rhoY_inv, "rhoY");
  } else if (dx == Sign::negative && dy == Sign::positive) {
    pick(FRFormula::rhoX, p.values.rhoX_inv);
  } else if (dx == Sign::negative && dy == Sign::zero) {
    if (g == Sign::negative)
      pick(FRFormula::rho0, rho0);
    else if (g == Sign::positive)
      pick(FRFormula::rhoX, p.values.rhoX_inv);
    else
      tie(p.values.rhoX_inv, "rhoX");
  } else {
    pick(FRFormula::rho0, rho0);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Location of the critical point
// ---------------------------------------------------------------------------

/// A small-step model reflected and transposed so that delta_x >= delta_y >= 0.
struct NormalizedModel {
  StepSet model;
  bool reflected_x = false;
  bool reflected_y = false;
  bool swapped = false;
};

inline NormalizedModel normalize_drift(const StepSet& s) {
  require_small(s);
  NormalizedModel n{s};
  auto d = drift(s);
  if (d[0] < 0) {
    n.model = negate_axis(n.model, 0);
    n.reflected_x = true;
  }
  if (d[1] < 0) {
    n.model = negate_axis(n.model, 1);
    n.reflected_y = true;
  }
  d = drift(n.model);
  if (d[1] > d[0]) {
    n.model = swap_axes(n.model);
    n.swapped = true;
  }
  return n;
}

/// Expected position of alpha and beta relative to 1 (negative = below, zero = equal, positive = above).
struct CriticalLocation {
  Sign alpha;
  Sign beta;
};

/// Expected location for a normalized model (delta_x >= delta_y >= 0).
inline CriticalLocation expected_location(const StepSet& normalized) {
  const auto d = drift(normalized);
  if (d[0] < d[1] || d[1] < 0) throw std::invalid_argument("model is not drift-normalized");
  if (d[0] == 0) return {Sign::zero, Sign::zero};
  if (d[1] > 0) return {Sign::negative, Sign::negative};
  const auto g = sign_of(covariance(normalized));
  if (g == Sign::positive) return {Sign::negative, Sign::positive};
  if (g == Sign::zero) return {Sign::negative, Sign::zero};
  return {Sign::negative, Sign::negative};
}

inline Sign location_of(double v, double margin) {
  if (std::abs(v - 1.0) <= margin) return Sign::zero;
  return v < 1.0 ? Sign::negative : Sign::positive;
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

struct ModelSurveyEntry {
  StepSet model;
  bool representative = true;
  bool essential = true;
  FRPrediction prediction;
  double min_theta_bound = 0.0;
  double theta_star = 0.0;
  bool fr_applicable = false;
};

/// The eight nonzero small steps in compass order.
inline std::vector<Vector> small_step_alphabet() {
  std::vector<Vector> out;
  for (const auto& [name, v] : detail::kCompass) out.push_back({v[0], v[1]});
  return out;
}

/// Essential classes of subsets of the nonzero small steps, up to x <-> y, in increasing order.
inline std::vector<StepSet> essential_small_models(unsigned workers = 0) {
  const auto alphabet = small_step_alphabet();
  const std::size_t total = std::size_t{1} << alphabet.size();
  auto keep = parallel_map(
      total - 1,
      [&](std::size_t i) -> std::optional<StepSet> {
        const std::size_t mask = i + 1;
        std::vector<Vector> steps;
        for (std::size_t k = 0; k < alphabet.size(); ++k)
          if (mask >> k & 1) steps.push_back(alphabet[k]);
        StepSet s(2, steps);
        if (!is_quarterplane_essential(s)) return std::nullopt;
        return std::min(s, swap_axes(s));
      },
      workers);
  std::vector<StepSet> out;
  for (auto& k : keep)
    if (k) out.push_back(std::move(*k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline ModelSurveyEntry survey_entry(const StepSet& s) {
  ModelSurveyEntry e{s};
  e.representative = !(swap_axes(s) < s);
  e.prediction = fr_classify(s);
  e.fr_applicable = e.prediction.applicable;
  const auto b = best_angle_bound(s);
  e.min_theta_bound = b.value;
  e.theta_star = b.certificate.theta.value_or(0.0);
  return e;
}

inline std::vector<ModelSurveyEntry> enumerate_small_models(unsigned workers = 0) {
  const auto models = essential_small_models(workers);
  return parallel_map(models.size(), [&](std::size_t i) { return survey_entry(models[i]); }, workers);
}

inline void write_survey_csv(std::ostream& os, const std::vector<ModelSurveyEntry>& rows) {
  os << "stepset,size,drift_x,drift_y,covariance,formula,predicted_growth,theta_star,min_bound,fr_applicable\n";
  for (const auto& r : rows) {
    const auto d = drift(r.model);
    os << csv_field(to_compass_string(r.model)) << ',' << r.model.size() << ',' << d[0] << ',' << d[1] << ','
       << covariance(r.model) << ',' << to_string(r.prediction.chosen) << ',' << format_number(r.prediction.predicted_growth)
       << ',' << format_number(r.theta_star) << ',' << format_number(r.min_theta_bound) << ','
       << (r.fr_applicable ? "true" : "false") << '\n';
  }
}

inline nlohmann::ordered_json survey_json(const std::vector<ModelSurveyEntry>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto d = drift(r.model);
    nlohmann::ordered_json j;
    j["stepset"] = to_compass_string(r.model);
    j["size"] = r.model.size();
    j["drift_x"] = d[0];
    j["drift_y"] = d[1];
    j["covariance"] = covariance(r.model);
    j["formula"] = to_string(r.prediction.chosen);
    j["predicted_growth"] = round_significant(r.prediction.predicted_growth);
    j["theta_star"] = round_significant(r.theta_star);
    j["min_bound"] = round_significant(r.min_theta_bound);
    j["fr_applicable"] = r.fr_applicable;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace walkgrowth
