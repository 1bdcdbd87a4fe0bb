#pragma once

// Property suites shared by the command-line verifier and the acceptance runner.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "walkgrowth/bounds.hpp"
#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/halfplane.hpp"
#include "walkgrowth/oracle.hpp"
#include "walkgrowth/orthant.hpp"
#include "walkgrowth/parallel.hpp"
#include "walkgrowth/report.hpp"
#include "walkgrowth/smallsteps.hpp"

namespace walkgrowth::verify {

inline constexpr std::uint64_t kSeed = 20240611;

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
  std::string summary;
  double seconds = 0.0;

  void fail(std::string what) {
    passed = false;
    if (failures.size() < 20) failures.push_back(std::move(what));
  }
};

/// Shared census, computed once.
inline const std::vector<ModelSurveyEntry>& census() {
  static const auto rows = enumerate_small_models();
  return rows;
}

inline std::string fmt(double x) { return format_number(x); }

// ---------------------------------------------------------------------------

inline void worked_example_excursion_axis(SuiteResult& r) {
  const auto s = parse_stepset("N,SW,S,SE");
  const auto b = best_upper_bound(s);
  const double target = 2.0 * std::sqrt(3.0);
  if (std::abs(b.value - target) > 1e-9) r.fail("bound " + fmt(b.value) + " != 2*sqrt(3)");
  if (!b.certificate.theta || *b.certificate.theta != 0.0) r.fail("theta* != 0");
  const auto p = fr_classify(s);
  if (std::abs(p.predicted_growth - target) > 1e-9) r.fail("closed form " + fmt(p.predicted_growth));
  if (std::abs(p.values.rhoY_inv - target) > 1e-9) r.fail("rhoY " + fmt(p.values.rhoY_inv));
  if (!p.values.rho0_inv || std::abs(*p.values.rho0_inv - target) > 1e-9) r.fail("rho0 missing or wrong");
  if (p.chosen != FRFormula::ambiguous_equal) r.fail(std::string("formula ") + to_string(p.chosen));
  r.summary = "K = " + fmt(b.value) + ", theta* = 0, closed form " + fmt(p.predicted_growth);
}

inline void worked_example_interior(SuiteResult& r) {
  const auto s = parse_stepset("N,W,SE,S,SW");
  const auto cp = critical_point(s);
  const auto b = best_upper_bound(s);
  if (!cp.converged) r.fail("critical point did not converge");
  if (std::abs(cp.coordinates[0] - 1.6760) > 5e-4 || std::abs(cp.coordinates[1] - 1.8091) > 5e-4)
    r.fail("critical point (" + fmt(cp.coordinates[0]) + "," + fmt(cp.coordinates[1]) + ")");
  const double theta = b.certificate.theta.value_or(-1.0);
  if (std::abs(theta - 0.2281 * std::numbers::pi) > 5e-4 * std::numbers::pi) r.fail("theta* " + fmt(theta));
  if (std::abs(b.value - 4.2148) > 5e-4) r.fail("bound " + fmt(b.value));
  r.summary = "(alpha,beta) = (" + fmt(cp.coordinates[0]) + "," + fmt(cp.coordinates[1]) + "), theta*/pi = " +
              fmt(theta / std::numbers::pi) + ", K = " + fmt(b.value);
}

inline void worked_examples(SuiteResult& r) {
  worked_example_excursion_axis(r);
  const auto first = r.summary;
  worked_example_interior(r);
  r.summary = first + "; " + r.summary;
}

inline void census_suite(SuiteResult& r) {
  const auto& rows = census();
  std::size_t applicable = 0;
  double worst = 0.0;
  for (const auto& e : rows) {
    if (!e.fr_applicable) continue;
    ++applicable;
    const double gap = std::abs(e.prediction.predicted_growth - e.min_theta_bound);
    worst = std::max(worst, gap);
    if (gap > 1e-9)
      r.fail(to_compass_string(e.model) + ": closed form " + fmt(e.prediction.predicted_growth) + " vs min bound " +
             fmt(e.min_theta_bound));
  }
  if (rows.size() != 79) r.fail("census has " + std::to_string(rows.size()) + " models, expected 79");
  if (applicable != 74) r.fail(std::to_string(applicable) + " closed-form models, expected 74");
  r.summary = std::to_string(rows.size()) + " models, " + std::to_string(applicable) +
              " with closed form, max |closed form - min bound| = " + fmt(worst);
}

inline void rho_identities(SuiteResult& r) {
  double worst = 0.0;
  for (const auto& e : census()) {
    const auto v = fr_values(e.model);
    const double c0 = critical_value(project(e.model, angle_normal(0.0))).value;
    const double c1 = critical_value(project(e.model, angle_normal(kHalfPi))).value;
    worst = std::max({worst, std::abs(v.rhoY_inv - c0), std::abs(v.rhoX_inv - c1)});
    if (std::abs(v.rhoY_inv - c0) > 1e-9) r.fail(to_compass_string(e.model) + ": rhoY " + fmt(v.rhoY_inv) + " vs " + fmt(c0));
    if (std::abs(v.rhoX_inv - c1) > 1e-9) r.fail(to_compass_string(e.model) + ": rhoX " + fmt(v.rhoX_inv) + " vs " + fmt(c1));
  }
  r.summary = std::to_string(census().size()) + " models, max deviation " + fmt(worst);
}

inline void critpoint_identity(SuiteResult& r) {
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& e : census()) {
    const auto cp = critical_point(e.model);
    if (!cp.converged) continue;
    double la = std::log(cp.coordinates[0]), lb = std::log(cp.coordinates[1]);
    if (std::abs(la) <= kUnitLogTolerance) la = 0.0;
    if (std::abs(lb) <= kUnitLogTolerance) lb = 0.0;
    double theta;
    if (la == 0.0 && lb == 0.0)
      theta = 0.0;
    else if (lb == 0.0)
      theta = kHalfPi;
    else if (la / lb >= 0.0)
      theta = std::atan(la / lb);
    else
      continue;
    ++checked;
    const auto a = project(e.model, angle_normal(theta));
    const double chi = a.nontrivial() ? critical_value(a).value : static_cast<double>(a.size());
    const double gap = std::abs(cp.inventory_value - chi);
    worst = std::max(worst, gap);
    if (gap > 1e-9) r.fail(to_compass_string(e.model) + ": P = " + fmt(cp.inventory_value) + " vs chi(tau) = " + fmt(chi));
  }
  r.summary = std::to_string(checked) + " models checked, max deviation " + fmt(worst);
}

/// Models with resolved or well-separated growth used for enumeration cross-checks.
inline std::vector<std::string> oracle_models() {
  return {"N,E,S,W",  "N,SW,S,SE", "N,NE,S,SW,W", "N,W,SE,S,SW", "W,S,NE",
          "E,N,SW",   "E,W,NE,SW", "E,W,NW,SE",   "NE,SE,SW,NW", "W,N,SE"};
}

inline void oracle_suite(SuiteResult& r, std::size_t n_max = 24) {
  const auto models = oracle_models();
  struct Row {
    std::vector<std::string> failures;
    std::string line;
  };
  auto rows = parallel_map(models.size(), [&](std::size_t i) {
    Row row;
    const auto s = parse_stepset(models[i]);
    const auto q = count_orthant(s, n_max);
    for (std::size_t m = 1; m <= n_max; ++m)
      for (std::size_t n = 1; m + n <= n_max; ++n)
        if (q.counts[m + n] < q.counts[m] * q.counts[n])
          row.failures.push_back(models[i] + ": q_" + std::to_string(m + n) + " < q_" + std::to_string(m) + " q_" +
                                 std::to_string(n));
    auto ledger = build_ledger(s);
    const double upper = *ledger.min_upper();
    const double target = ledger.resolved().value_or(upper);
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (q.counts[n] == 0) continue;
      const double root = std::exp(log_of(q.counts[n]) / static_cast<double>(n));
      if (root > upper + 1e-9) row.failures.push_back(models[i] + ": q_n^(1/n) above bound at n=" + std::to_string(n));
    }
    const auto est = estimate_growth(q);
    const double rel = std::abs(est.estimate - target) / target;
    if (rel > 0.05) row.failures.push_back(models[i] + ": estimate " + fmt(est.estimate) + " vs " + fmt(target));
    const auto brute = oracle::brute_force_orthant(s, 8);
    for (std::size_t n = 0; n <= 8; ++n)
      if (brute[n] != q.counts[n]) row.failures.push_back(models[i] + ": DP differs from brute force at n=" + std::to_string(n));
    row.line = models[i] + " est " + fmt(est.estimate) + " target " + fmt(target) + " (" + fmt(100 * rel) + "%)";
    return row;
  });
  for (auto& row : rows)
    for (auto& f : row.failures) r.fail(std::move(f));
  r.summary = std::to_string(models.size()) + " models to n=" + std::to_string(n_max);
  for (const auto& row : rows) r.summary += "; " + row.line;
}

inline void shuffle_tightness(SuiteResult& r) {
  LedgerOptions opt;
  opt.rotation_search = false;
  struct Case {
    const char* model;
    double value;
  };
  std::string out;
  for (const auto& c : {Case{"N,NE,S,SW,W", 2.0 + 2.0 * std::sqrt(2.0)}, Case{"N,E,S,W", 4.0}}) {
    const auto l = build_ledger(parse_stepset(c.model), opt);
    if (!l.resolved() || std::abs(*l.resolved() - c.value) > 1e-9) {
      r.fail(std::string(c.model) + ": not resolved at " + fmt(c.value));
      continue;
    }
    const auto* lo = l.best_lower();
    out += std::string(out.empty() ? "" : "; ") + c.model + " resolved at " + fmt(*l.resolved()) + " by " +
           to_string(lo->certificate.kind);
  }
  // The shuffle certificate alone must close the gap for the five-step model.
  const auto s = parse_stepset("N,NE,S,SW,W");
  const auto l = build_ledger(s, opt);
  bool shuffle_tight = false;
  for (const auto& b : l.bounds())
    if (b.certificate.kind == Certificate::Kind::partition && std::abs(b.value - (2.0 + 2.0 * std::sqrt(2.0))) <= 1e-9)
      shuffle_tight = true;
  if (!shuffle_tight) r.fail("no shuffle bound equal to 2+2*sqrt(2)");
  r.summary = out;
}

inline void scaling_suite(SuiteResult& r, std::size_t samples = 200) {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_int_distribution<int> count(2, 7), mult(1, 3), num(1, 100), den(1, 10);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Exponent> terms;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) terms.push_back({value(rng), mult(rng)});
    terms.push_back({std::abs(value(rng)) + 0.05, 1});
    terms.push_back({-std::abs(value(rng)) - 0.05, 1});
    const Exponent1D a(terms);
    double scale;
    do {
      scale = static_cast<double>(num(rng)) / static_cast<double>(den(rng));
    } while (scale > 10.0);
    const double g0 = half_plane_growth(a), g1 = half_plane_growth(a.scaled(scale));
    worst = std::max(worst, std::abs(g0 - g1));
    if (std::abs(g0 - g1) > 1e-10) r.fail("sample " + std::to_string(i) + ": " + fmt(g0) + " vs " + fmt(g1) + " at r=" + fmt(scale));
  }
  r.summary = std::to_string(samples) + " samples, max deviation " + fmt(worst);
}

inline void continuity_suite(SuiteResult& r, double spacing = 1e-3) {
  const std::size_t points = static_cast<std::size_t>(std::ceil(kHalfPi / spacing)) + 1;
  double worst_jump = 0.0, worst_gap = 0.0;
  for (const auto& e : census()) {
    const auto sweep = theta_sweep(e.model, points);
    double m = sweep.front().growth, jump = 0.0;
    for (std::size_t k = 1; k < sweep.size(); ++k) {
      jump = std::max(jump, std::abs(sweep[k].growth - sweep[k - 1].growth));
      m = std::min(m, sweep[k].growth);
    }
    const double gap = std::abs(m - e.min_theta_bound);
    worst_jump = std::max(worst_jump, jump);
    worst_gap = std::max(worst_gap, gap);
    if (jump > 0.1) r.fail(to_compass_string(e.model) + ": adjacent jump " + fmt(jump));
    if (gap > 1e-6) r.fail(to_compass_string(e.model) + ": grid minimum " + fmt(m) + " vs bound " + fmt(e.min_theta_bound));
  }
  r.summary = std::to_string(points) + " grid points, max jump " + fmt(worst_jump) + ", max grid gap " + fmt(worst_gap);
}

inline void table_location(SuiteResult& r) {
  std::size_t checked = 0, skipped = 0;
  for (const auto& e : census()) {
    const auto n = normalize_drift(e.model);
    const auto cp = critical_point(n.model);
    if (!cp.converged) {
      ++skipped;
      continue;
    }
    ++checked;
    const auto want = expected_location(n.model);
    const auto a = location_of(cp.coordinates[0], 1e-9), b = location_of(cp.coordinates[1], 1e-9);
    if (a != want.alpha || b != want.beta)
      r.fail(to_compass_string(n.model) + ": (alpha,beta) = (" + fmt(cp.coordinates[0]) + "," + fmt(cp.coordinates[1]) + ")");
    // Strict inequalities hold with margin.
    for (auto [got, v] : {std::pair{a, cp.coordinates[0]}, std::pair{b, cp.coordinates[1]}})
      if (got != Sign::zero && std::abs(v - 1.0) <= 1e-9) r.fail(to_compass_string(n.model) + ": inequality within margin");
  }
  r.summary = std::to_string(checked) + " normalized models checked, " + std::to_string(skipped) +
              " without interior critical point";
}

/// Six-step three-dimensional model whose y constraint is implied by the x constraint.
inline StepSet orthant_example() { return parse_stepset("(1,1,1);(0,1,1);(0,1,-1);(-1,0,0);(-1,1,0);(-1,-1,0)"); }

inline void orthant_suite(SuiteResult& r, std::size_t n_max = 16) {
  const auto s = orthant_example();
  const auto q = count_orthant(s, n_max);
  const double floor = fekete_floor(q);
  const double bound = conjectured_growth(s).value;
  if (!(floor <= bound + 1e-9)) r.fail("floor " + fmt(floor) + " above bound " + fmt(bound));
  if (!(bound <= 6.0 + 1e-9)) r.fail("bound " + fmt(bound) + " above |S|");
  const auto claim = check_claimed_lower_bound(s, 4.0 + 2.0 * std::sqrt(2.0), n_max);
  if (!claim.exceeds_cardinality) r.fail("claimed constant not flagged");
  r.summary = "floor(n<=" + std::to_string(n_max) + ") " + fmt(floor) + " <= bound " + fmt(bound) + " <= 6; " + claim.message;
}

inline void fekete_suite(SuiteResult& r, std::size_t n_max = 24) {
  const auto& rows = census();
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < rows.size() && picks.size() < 10; i += 8) picks.push_back(i);
  auto bad = parallel_map(picks.size(), [&](std::size_t k) {
    const auto& e = rows[picks[k]];
    const double floor = fekete_floor(count_orthant(e.model, n_max));
    return floor > e.min_theta_bound + 1e-9 ? to_compass_string(e.model) + ": floor " + fmt(floor) : std::string{};
  });
  for (auto& b : bad)
    if (!b.empty()) r.fail(b);
  r.summary = std::to_string(picks.size()) + " models, n <= " + std::to_string(n_max);
}

inline void reflection_suite(SuiteResult& r) {
  for (const auto& e : census()) {
    const auto a = fr_classify(e.model), b = fr_classify(swap_axes(e.model));
    if (std::abs(a.predicted_growth - b.predicted_growth) > 1e-9) r.fail(to_compass_string(e.model));
  }
  r.summary = std::to_string(census().size()) + " models";
}

inline void orthant_reduction_suite(SuiteResult& r) {
  double worst = 0.0;
  for (const auto& e : census()) {
    const double c = conjectured_growth(e.model).value;
    worst = std::max(worst, std::abs(c - e.min_theta_bound));
    if (std::abs(c - e.min_theta_bound) > 1e-9) r.fail(to_compass_string(e.model) + ": " + fmt(c) + " vs " + fmt(e.min_theta_bound));
  }
  r.summary = "max deviation " + fmt(worst);
}

inline void excursion_suite(SuiteResult& r) {
  std::size_t checked = 0;
  for (const auto& e : census()) {
    const auto d = drift(e.model);
    if (d[0] >= 0 || d[1] >= 0) continue;
    ++checked;
    const auto l = build_ledger(e.model);
    const double ex = excursion_floor(e.model).value;
    if (std::abs(ex - e.min_theta_bound) > 1e-9) r.fail(to_compass_string(e.model) + ": excursion " + fmt(ex));
    if (!l.resolved()) r.fail(to_compass_string(e.model) + ": ledger unresolved");
  }
  r.summary = std::to_string(checked) + " negative-drift models";
}

inline void integrity_suite(SuiteResult& r) {
  std::size_t resolved = 0;
  const auto& rows = census();
  auto msgs = parallel_map(rows.size(), [&](std::size_t i) -> std::string {
    try {
      LedgerOptions opt;
      opt.n_max = 16;
      return build_ledger(rows[i].model, opt).resolved() ? "+" : "";
    } catch (const integrity_error& e) {
      return e.what();
    }
  });
  for (auto& m : msgs) {
    if (m == "+")
      ++resolved;
    else if (!m.empty())
      r.fail(m);
  }
  r.summary = std::to_string(rows.size()) + " ledgers consistent, " + std::to_string(resolved) + " resolved";
}

// ---------------------------------------------------------------------------

struct Suite {
  std::string name;
  std::function<void(SuiteResult&)> run;
};

inline std::vector<Suite> suites() {
  return {
      {"worked-examples", worked_examples},
      {"census", census_suite},
      {"rho-identities", rho_identities},
      {"critpoint-identity", critpoint_identity},
      {"oracle", [](SuiteResult& r) { oracle_suite(r); }},
      {"shuffle", shuffle_tightness},
      {"scaling", [](SuiteResult& r) { scaling_suite(r); }},
      {"continuity", [](SuiteResult& r) { continuity_suite(r); }},
      {"table-location", table_location},
      {"orthant-3d", [](SuiteResult& r) { orthant_suite(r); }},
      {"fekete", [](SuiteResult& r) { fekete_suite(r); }},
      {"reflection", reflection_suite},
      {"orthant-2d", orthant_reduction_suite},
      {"excursion", excursion_suite},
      {"ledger-integrity", integrity_suite},
  };
}

inline SuiteResult run(const Suite& s) {
  SuiteResult r;
  r.name = s.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    s.run(r);
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace walkgrowth::verify
