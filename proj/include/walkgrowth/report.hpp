#pragma once

// Full analysis of one model and its JSON report.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "walkgrowth/bounds.hpp"
#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/errors.hpp"
#include "walkgrowth/essential.hpp"
#include "walkgrowth/format.hpp"
#include "walkgrowth/halfplane.hpp"
#include "walkgrowth/orthant.hpp"
#include "walkgrowth/smallsteps.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

// ---------------------------------------------------------------------------
// a + b sqrt(c) recognition
// ---------------------------------------------------------------------------

struct Radical {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 1;  // squarefree, >= 2 when b != 0

  double value() const { return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(static_cast<double>(c)); }

  std::string str() const {
    if (b == 0) return std::to_string(a);
    std::string rad = (std::abs(b) == 1 ? "" : std::to_string(std::abs(b)) + "*") + "sqrt(" + std::to_string(c) + ")";
    if (a == 0) return (b < 0 ? "-" : "") + rad;
    return std::to_string(a) + (b < 0 ? "-" : "+") + rad;
  }
};

inline bool squarefree(std::int64_t c) {
  for (std::int64_t p = 2; p * p <= c; ++p)
    if (c % (p * p) == 0) return false;
  return true;
}

/// Best-effort match of x against a + b sqrt(c) with small integers; smallest |b|, then smallest c.
inline std::optional<Radical> recognize_radical(double x, double tol = 1e-10, std::int64_t max_coeff = 24,
                                                std::int64_t max_c = 60) {
  if (!std::isfinite(x)) return std::nullopt;
  const double scale = std::max(1.0, std::abs(x));
  const double ra = std::round(x);
  if (std::abs(x - ra) <= tol * scale && std::abs(ra) <= static_cast<double>(max_coeff))
    return Radical{static_cast<std::int64_t>(ra), 0, 1};
  for (std::int64_t bb = 1; bb <= max_coeff; ++bb) {
    for (std::int64_t c = 2; c <= max_c; ++c) {
      if (!squarefree(c)) continue;
      for (std::int64_t b : {bb, -bb}) {
        const double a = std::round(x - static_cast<double>(b) * std::sqrt(static_cast<double>(c)));
        if (std::abs(a) > static_cast<double>(max_coeff)) continue;
        const Radical r{static_cast<std::int64_t>(a), b, c};
        if (std::abs(r.value() - x) <= tol * scale) return r;
      }
    }
  }
  return std::nullopt;
}

inline nlohmann::ordered_json number_json(double x) {
  nlohmann::ordered_json j;
  j["value"] = round_significant(x);
  if (auto r = recognize_radical(x)) {
    j["symbolic"] = r->str();
    j["symbolic_method"] = "heuristic";
  }
  return j;
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

struct AnalyzeOptions {
  std::size_t n_max = 0;       // 0: 24 in the plane, 16 in three dimensions, 10 beyond
  std::size_t grid = 1571;     // theta grid points (plane) or points per angle (higher dimension)
  double tolerance = 1e-9;     // ledger resolution tolerance
  bool force = false;          // analyze models that fail the essentiality test
  std::uint64_t max_states = 20'000'000;
};

inline std::size_t default_n_max(std::size_t dimension) {
  return dimension <= 2 ? 24 : (dimension == 3 ? 16 : 10);
}

struct AnalysisReport {
  StepSet model;
  bool essential = false;
  Vector drift_vector;
  std::optional<std::int64_t> covariance_value;
  std::optional<FRPrediction> prediction;
  CriticalPoint critical;
  GrowthBound upper;
  std::optional<double> grid_minimum;
  BoundLedger ledger;
  std::optional<CountSeries> series;
  std::optional<GrowthEstimate> estimate;
  std::string enumeration_note;
};

inline AnalysisReport analyze(const StepSet& s, const AnalyzeOptions& opt = {}) {
  const std::size_t d = s.dimension();
  const bool essential = d == 2 ? is_quarterplane_essential(s) : is_orthant_essential(s);
  if (!essential && !opt.force)
    throw inessential_model(d == 2 ? "model not quarter-plane essential" : "model not orthant essential");

  LedgerOptions lo;
  lo.tolerance = opt.tolerance;
  BoundLedger ledger = LedgerBuilder(lo).build(s);

  AnalysisReport r{s, essential, drift(s), std::nullopt, std::nullopt, critical_point(s), *ledger.best_upper(),
                   std::nullopt, std::move(ledger), std::nullopt, std::nullopt, {}};
  if (d == 2) {
    r.covariance_value = covariance(s);
    if (s.is_small()) r.prediction = fr_classify(s);
    if (opt.grid >= 2) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& b : theta_sweep(s, opt.grid)) m = std::min(m, b.growth);
      r.grid_minimum = m;
    }
  } else if (opt.grid >= 2 && d <= 3) {
    r.grid_minimum = grid_minimum(s, opt.grid).growth;
  }

  const std::size_t n_max = opt.n_max ? opt.n_max : default_n_max(d);
  try {
    EnumerationOptions eo;
    eo.max_states = opt.max_states;
    auto series = count_orthant(s, n_max, eo);
    r.ledger.register_series(series);
    try {
      r.estimate = estimate_growth(series);
    } catch (const std::invalid_argument& e) {
      r.enumeration_note = e.what();
    }
    r.series = std::move(series);
  } catch (const capacity_error& e) {
    r.enumeration_note = e.what();
  }
  r.ledger.resolve(opt.tolerance);
  return r;
}

inline nlohmann::ordered_json report_json(const AnalysisReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["model"] = {{"steps", to_string(r.model)}, {"label", model_label(r.model)}, {"dimension", r.model.dimension()},
                {"size", r.model.size()}, {"essential", r.essential}};
  j["drift"] = r.drift_vector;
  if (r.covariance_value) j["covariance"] = *r.covariance_value;

  json cp;
  auto coords = json::array();
  for (double c : r.critical.coordinates) coords.push_back(round_significant(c));
  cp["coordinates"] = coords;
  cp["converged"] = r.critical.converged;
  if (r.critical.converged) cp["inventory_value"] = number_json(r.critical.inventory_value);
  j["critical_point"] = cp;

  if (r.prediction) {
    const auto& p = *r.prediction;
    json fr;
    fr["cardinality"] = p.values.cardinality;
    fr["rho0_inv"] = p.values.rho0_inv ? number_json(*p.values.rho0_inv) : json(nullptr);
    fr["rhoX_inv"] = number_json(p.values.rhoX_inv);
    fr["rhoY_inv"] = number_json(p.values.rhoY_inv);
    fr["drift_signs"] = std::string{sign_char(p.drift_x), sign_char(p.drift_y)};
    fr["covariance_sign"] = std::string(1, sign_char(p.covariance));
    fr["chosen"] = to_string(p.chosen);
    if (!p.detail.empty()) fr["detail"] = p.detail;
    fr["predicted_growth"] = number_json(p.predicted_growth);
    fr["applicable"] = p.applicable;
    j["closed_form"] = fr;
  }

  json up = number_json(r.upper.value);
  up["certificate"] = certificate_json(r.upper.certificate);
  if (r.upper.certificate.theta) up["theta_over_pi"] = round_significant(*r.upper.certificate.theta / std::numbers::pi);
  j["upper_bound"] = up;
  if (r.grid_minimum) j["grid_minimum"] = round_significant(*r.grid_minimum);

  auto lowers = json::array();
  for (const auto& b : r.ledger.bounds())
    if (b.kind != BoundKind::upper) lowers.push_back(bound_json(b));
  j["lower_bounds"] = lowers;

  json en;
  if (r.series) {
    en["n_max"] = r.series->n_max();
    en["last_count"] = r.series->counts.back().str();
    en["fekete_floor"] = round_significant(fekete_floor(*r.series));
  }
  if (r.estimate) {
    en["growth_estimate"] = round_significant(r.estimate->estimate);
    en["polynomial_exponent"] = round_significant(r.estimate->alpha);
    en["fit_points"] = r.estimate->points;
  }
  if (!r.enumeration_note.empty()) en["note"] = r.enumeration_note;
  j["enumeration"] = en;

  json verdict;
  const auto lo = r.ledger.max_lower(), hi = r.ledger.min_upper();
  verdict["min_upper"] = hi ? json(round_significant(*hi)) : json(nullptr);
  verdict["max_lower"] = lo ? json(round_significant(*lo)) : json(nullptr);
  verdict["tolerance"] = r.ledger.tolerance();
  if (r.ledger.resolved()) {
    verdict["status"] = "exact";
    verdict["value"] = number_json(*r.ledger.resolved());
  } else {
    verdict["status"] = "bounded";
  }
  j["verdict"] = verdict;
  j["ledger"] = ledger_json(r.ledger);
  return j;
}

// ---------------------------------------------------------------------------
// Checking a claimed lower bound
// ---------------------------------------------------------------------------

struct ClaimCheck {
  double claimed = 0.0;
  double cardinality = 0.0;
  double upper = 0.0;       // best hyperplane bound
  double fekete = 0.0;      // enumeration floor
  std::size_t n_max = 0;
  bool exceeds_cardinality = false;
  bool exceeds_upper = false;
  std::string message;
};

/// Compares a claimed lower bound with |S|, the hyperplane bound and the enumeration floor.
inline ClaimCheck check_claimed_lower_bound(const StepSet& s, double claimed, std::size_t n_max) {
  ClaimCheck c;
  c.claimed = claimed;
  c.cardinality = static_cast<double>(s.size());
  c.upper = conjectured_growth(s).value;
  c.fekete = fekete_floor(count_orthant(s, n_max));
  c.n_max = n_max;
  c.exceeds_cardinality = claimed > c.cardinality + kIntegrityTolerance;
  c.exceeds_upper = claimed > c.upper + kIntegrityTolerance;
  if (c.exceeds_cardinality || c.exceeds_upper) {
    c.message = "claimed lower bound " + format_number(claimed) + " is inconsistent: |S| = " + format_number(c.cardinality) +
                ", hyperplane bound = " + format_number(c.upper) + ", enumeration floor (n<=" + std::to_string(n_max) +
                ") = " + format_number(c.fekete);
  } else {
    c.message = "claimed lower bound " + format_number(claimed) + " is compatible with the computed bounds";
  }
  return c;
}

inline nlohmann::ordered_json claim_json(const StepSet& s, const ClaimCheck& c) {
  return {{"model", to_string(s)},
          {"claimed_lower", round_significant(c.claimed)},
          {"cardinality", round_significant(c.cardinality)},
          {"hyperplane_upper", round_significant(c.upper)},
          {"fekete_floor", round_significant(c.fekete)},
          {"n_max", c.n_max},
          {"exceeds_cardinality", c.exceeds_cardinality},
          {"exceeds_upper", c.exceeds_upper},
          {"message", c.message}};
}

}  // namespace walkgrowth
