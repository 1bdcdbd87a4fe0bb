#pragma once

// Lower bounds and the ledger that combines them with upper bounds.
//
//   shuffle:   K_{S1} + K_{S2} <= K_{S1 + S2}   (interleavings of two walks)
//   rotation:  K_S <= K_T when T replaces a step v of S by v + e_k
//   excursion: P at the interior critical point is the excursion growth, hence <= K_S
//   floor:     q_n^{1/n} <= K_S for every n (supermultiplicativity)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/errors.hpp"
#include "walkgrowth/essential.hpp"
#include "walkgrowth/format.hpp"
#include "walkgrowth/growth_bound.hpp"
#include "walkgrowth/halfplane.hpp"
#include "walkgrowth/orthant.hpp"
#include "walkgrowth/smallsteps.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

inline std::string model_label(const StepSet& s) { return to_compass_string(s); }

inline constexpr double kIntegrityTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Individual bounds
// ---------------------------------------------------------------------------

inline GrowthBound shuffle_bound(const StepSet& s1, double k1, const StepSet& s2, double k2) {
  if (s1.dimension() != s2.dimension()) throw std::invalid_argument("shuffle of step sets of different dimension");
  if (!(k1 >= 0.0) || !(k2 >= 0.0)) throw std::invalid_argument("shuffle needs nonnegative growth values");
  std::vector<std::string> parts{model_label(s1) + " K=" + format_number(k1), model_label(s2) + " K=" + format_number(k2)};
  std::sort(parts.begin(), parts.end());
  // Sum in a fixed order so that swapping the arguments gives the identical double.
  const double value = std::min(k1, k2) + std::max(k1, k2);
  return {value, BoundKind::lower, {Certificate::Kind::partition, "shuffle of two sub-models", std::nullopt, {}, parts},
          merge(s1, s2)};
}

/// v + e_axis.
inline Vector rotate_step(Vector v, std::size_t axis) {
  v.at(axis) += 1;
  return v;
}

/// T = S with every copy of `step` replaced by rotate_step(step, axis).
inline StepSet rotated_model(const StepSet& s, const Vector& step, std::size_t axis) {
  if (step.size() != s.dimension()) throw std::invalid_argument("rotation step has wrong dimension");
  if (axis >= s.dimension()) throw std::invalid_argument("rotation axis out of range");
  if (!s.contains(step)) throw std::invalid_argument("rotated step is not in the model");
  const auto r = rotate_step(step, axis);
  if (s.contains(r)) throw std::invalid_argument("rotated step is already in the model");
  std::vector<Step> out;
  for (const auto& st : s.steps()) out.push_back({st.v == step ? r : st.v, st.mult});
  return StepSet(s.dimension(), std::move(out));
}

inline std::string vector_label(const Vector& v) {
  if (v.size() == 2)
    for (const auto& [name, c] : detail::kCompass)
      if (c[0] == v[0] && c[1] == v[1]) return std::string(name);
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out + ")";
}

/// Transfers a lower bound on S to T = S with `step` rotated along `axis`.
inline GrowthBound rotation_relation(const StepSet& s, const Vector& step, std::size_t axis, const GrowthBound& lower_on_s) {
  if (lower_on_s.kind == BoundKind::upper) throw std::invalid_argument("rotation transfers lower bounds only");
  if (lower_on_s.source_model != s) throw std::invalid_argument("bound does not belong to the rotated model");
  auto t = rotated_model(s, step, axis);
  const char axis_name = s.dimension() == 2 ? (axis == 0 ? 'x' : 'y') : static_cast<char>('0' + axis);
  Certificate c{Certificate::Kind::rotation, "rotation", std::nullopt, {}, {}};
  if (lower_on_s.certificate.kind == Certificate::Kind::rotation) {
    c.parts = lower_on_s.certificate.parts;
  } else {
    c.parts.push_back(model_label(s) + " K>=" + format_number(lower_on_s.value) + " [" +
                      to_string(lower_on_s.certificate.kind) + "]");
  }
  c.parts.push_back("r_" + std::string(1, axis_name) + "(" + vector_label(step) + ")=" +
                    vector_label(rotate_step(step, axis)) + " -> " + model_label(t));
  return {lower_on_s.value, BoundKind::lower, c, std::move(t)};
}

inline GrowthBound excursion_floor(const StepSet& s) {
  const auto cp = critical_point(s);
  if (!cp.converged) throw bound_unavailable("no interior critical point for " + model_label(s));
  std::string where;
  for (double c : cp.coordinates) where += (where.empty() ? "" : ",") + format_number(c);
  return {cp.inventory_value, BoundKind::lower,
          {Certificate::Kind::excursion, "P at the critical point (" + where + ")", std::nullopt, {}, {}}, s};
}

inline GrowthBound enumeration_floor(const CountSeries& series) {
  std::size_t arg = 0;
  double best = 0.0;
  for (std::size_t n = 1; n < series.counts.size(); ++n) {
    if (series.counts[n] == 0) continue;
    const double r = std::exp(log_of(series.counts[n]) / static_cast<double>(n));
    if (r > best) {
      best = r;
      arg = n;
    }
  }
  return {best, BoundKind::lower,
          {Certificate::Kind::enumeration_floor,
           "max q_n^(1/n) for n <= " + std::to_string(series.n_max()) + ", attained at n=" + std::to_string(arg),
           std::nullopt, {}, {}},
          series.steps};
}

// ---------------------------------------------------------------------------
// Ledger
// ---------------------------------------------------------------------------

class BoundLedger {
 public:
  explicit BoundLedger(StepSet model) : model_(std::move(model)) {}

  const StepSet& model() const noexcept { return model_; }
  const std::vector<GrowthBound>& bounds() const noexcept { return bounds_; }
  std::optional<double> resolved() const noexcept { return resolved_; }
  double tolerance() const noexcept { return tolerance_; }
  const std::optional<CountSeries>& series() const noexcept { return series_; }

  void add(GrowthBound b) {
    if (b.source_model != model_) throw std::invalid_argument("bound for " + model_label(b.source_model) +
                                                              " added to the ledger of " + model_label(model_));
    if (!std::isfinite(b.value)) throw std::invalid_argument("bound value must be finite");
    bounds_.push_back(std::move(b));
    resolved_.reset();
  }

  void register_series(CountSeries series) {
    if (series.steps != model_) throw std::invalid_argument("series belongs to another model");
    series_ = std::move(series);
    floor_added_ = false;
  }

  const GrowthBound* best_upper() const { return best(BoundKind::upper, std::less<>{}); }
  const GrowthBound* best_lower() const { return best(BoundKind::lower, std::greater<>{}); }

  std::optional<double> min_upper() const {
    const auto* b = best_upper();
    return b ? std::optional(b->value) : std::nullopt;
  }
  std::optional<double> max_lower() const {
    const auto* b = best_lower();
    return b ? std::optional(b->value) : std::nullopt;
  }

  /// Throws integrity_error when some lower bound exceeds some upper bound by more than 1e-9.
  void check_integrity() const {
    const auto lo = max_lower(), hi = min_upper();
    if (lo && hi && *lo > *hi + kIntegrityTolerance)
      throw integrity_error("ledger of " + model_label(model_) + ": lower bound " + format_number(*lo) + " [" +
                            to_string(best_lower()->certificate.kind) + "] exceeds upper bound " + format_number(*hi) +
                            " [" + to_string(best_upper()->certificate.kind) + "]");
  }

  /// Adds the enumeration floor of a registered series, checks integrity and sets the verdict.
  BoundLedger& resolve(double tolerance) {
    if (bounds_.empty() && !series_) throw std::invalid_argument("cannot resolve an empty ledger");
    if (series_ && !floor_added_) {
      bounds_.push_back(enumeration_floor(*series_));
      floor_added_ = true;
    }
    check_integrity();
    tolerance_ = tolerance;
    resolved_.reset();
    const auto lo = max_lower(), hi = min_upper();
    if (lo && hi && *hi - *lo <= tolerance) resolved_ = *hi;
    return *this;
  }

 private:
  template <class Better>
  const GrowthBound* best(BoundKind side, Better better) const {
    const GrowthBound* out = nullptr;
    for (const auto& b : bounds_) {
      if (b.kind != side && b.kind != BoundKind::exact) continue;
      if (!out || better(b.value, out->value)) out = &b;
    }
    return out;
  }

  StepSet model_;
  std::vector<GrowthBound> bounds_;
  std::optional<CountSeries> series_;
  bool floor_added_ = false;
  std::optional<double> resolved_;
  double tolerance_ = 0.0;
};

inline BoundLedger resolve(BoundLedger ledger, double tolerance) {
  ledger.resolve(tolerance);
  return ledger;
}

inline nlohmann::ordered_json certificate_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(c.kind);
  j["description"] = c.description;
  if (c.theta) j["theta"] = round_significant(*c.theta);
  if (!c.normal.empty()) {
    auto n = nlohmann::ordered_json::array();
    for (double x : c.normal) n.push_back(round_significant(x));
    j["normal"] = n;
  }
  if (!c.parts.empty()) j["parts"] = c.parts;
  return j;
}

inline nlohmann::ordered_json bound_json(const GrowthBound& b) {
  nlohmann::ordered_json j;
  j["value"] = round_significant(b.value);
  j["kind"] = to_string(b.kind);
  j["certificate"] = certificate_json(b.certificate);
  return j;
}

inline nlohmann::ordered_json ledger_json(const BoundLedger& l) {
  nlohmann::ordered_json j;
  j["model"] = model_label(l.model());
  auto arr = nlohmann::ordered_json::array();
  for (const auto& b : l.bounds()) arr.push_back(bound_json(b));
  j["bounds"] = arr;
  if (l.resolved())
    j["resolved"] = round_significant(*l.resolved());
  else
    j["resolved"] = nullptr;
  j["tolerance"] = l.tolerance();
  return j;
}

// ---------------------------------------------------------------------------
// Automatic ledger construction
// ---------------------------------------------------------------------------

struct LedgerOptions {
  double tolerance = 1e-9;
  bool shuffle_search = true;
  bool rotation_search = true;
  bool closed_form = false;  // add the small-step closed form as a lower bound
  int depth = 2;             // recursion depth when certifying sub-models
  std::size_t n_max = 0;     // enumerate and register a series when > 0
  std::size_t horizon = kPlanarEssentialHorizon;
  std::size_t max_partitions = 1 << 12;
};

/// True when every step satisfies v_k >= c v_j for one c >= 0, so x_j >= 0 forces x_k >= 0 on every walk.
inline bool constraint_implied(const StepSet& s, std::size_t k, std::size_t j) {
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (const auto& st : s.steps()) {
    const double vk = st.v[k], vj = st.v[j];
    if (vj > 0)
      hi = std::min(hi, vk / vj);
    else if (vj < 0)
      lo = std::max(lo, vk / vj);
    else if (vk < 0)
      return false;
  }
  return lo <= hi;
}

/// A growth value with provenance, usable as input to shuffle and rotation.
struct Certified {
  double value;
  std::string how;
};

class LedgerBuilder {
 public:
  explicit LedgerBuilder(LedgerOptions opt = {}) : opt_(opt) {}

  BoundLedger build(const StepSet& s) { return build_at(s, opt_.depth, true); }

  /// Exact growth of `s` when one of the certifying arguments applies, memoized.
  std::optional<Certified> certify(const StepSet& s, int depth) {
    const auto key = std::make_pair(s, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto r = certify_uncached(s, depth);
    memo_.emplace(key, r);
    return r;
  }

 private:
  /// Growth by a direct argument: no walks, no active constraint, or a single active constraint.
  /// `reduced` receives the model restricted to its usable steps.
  std::optional<Certified> direct_growth(const StepSet& s, std::optional<StepSet>& reduced) {
    const std::size_t d = s.dimension();
    const auto q = count_orthant(s, opt_.horizon);
    bool any = false;
    for (std::size_t n = 1; n <= opt_.horizon; ++n) any |= q.counts[n] > 0;
    if (!any) return Certified{0.0, "no walks"};

    const auto usable = usable_steps(s, opt_.horizon);
    std::vector<Step> kept;
    for (const auto& v : usable) kept.push_back({v, s.multiplicity(v)});
    reduced.emplace(d, std::move(kept));
    const StepSet& u = *reduced;

    std::vector<std::size_t> negative_axes;
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& st : u.steps())
        if (st.v[k] < 0) {
          negative_axes.push_back(k);
          break;
        }
    if (negative_axes.empty()) return Certified{static_cast<double>(u.size()), "unconstrained"};
    if (negative_axes.size() == 2 && d == 2) {
      // Drop a constraint implied by the other one.
      if (constraint_implied(u, negative_axes[1], negative_axes[0]))
        negative_axes.pop_back();
      else if (constraint_implied(u, negative_axes[0], negative_axes[1]))
        negative_axes.erase(negative_axes.begin());
    } else if (negative_axes.size() > 1 && d > 2) {
      const auto diag = diagnose_orthant(u, opt_.horizon);
      std::erase_if(negative_axes, [&](std::size_t k) { return !diag.binds[k]; });
      if (negative_axes.empty()) return std::nullopt;
    }
    if (negative_axes.size() == 1) {
      std::vector<double> normal(d, 0.0);
      normal[negative_axes[0]] = 1.0;
      return Certified{half_plane_growth(project(u, normal)), "half-plane"};
    }
    return std::nullopt;
  }

  std::optional<Certified> certify_uncached(const StepSet& s, int depth) {
    std::optional<StepSet> u;
    if (auto c = direct_growth(s, u)) return c;
    if (depth <= 0) return std::nullopt;
    auto ledger = build_at(*u, depth - 1, false);
    if (!ledger.resolved()) return std::nullopt;
    return Certified{*ledger.resolved(), "resolved"};
  }

  BoundLedger build_at(const StepSet& s, int depth, bool top) {
    BoundLedger ledger(s);
    if (s.dimension() == 2) {
      ledger.add(best_angle_bound(s));
    } else {
      ledger.add(conjectured_growth(s));
    }
    try {
      ledger.add(excursion_floor(s));
    } catch (const bound_unavailable&) {
    }
    {
      std::optional<StepSet> u;
      if (auto c = direct_growth(s, u); c && c->value > 0.0) {
        const auto kind = c->how == "half-plane" ? Certificate::Kind::half_plane : Certificate::Kind::trivial;
        ledger.add({c->value, BoundKind::lower, {kind, c->how, std::nullopt, {}, {}}, s});
      }
    }
    if (top && opt_.closed_form && s.dimension() == 2 && s.is_small()) {
      const auto p = fr_classify(s);
      if (p.applicable)
        ledger.add({p.predicted_growth, BoundKind::lower,
                    {Certificate::Kind::fr_formula, std::string("closed form ") + to_string(p.chosen), std::nullopt, {}, {}},
                    s});
    }
    if (opt_.shuffle_search && !resolved_now(ledger)) add_best_shuffle(ledger, depth);
    if (opt_.rotation_search && !resolved_now(ledger)) add_best_rotation(ledger, depth);
    if (top && opt_.n_max > 0) ledger.register_series(count_orthant(s, opt_.n_max));
    ledger.resolve(opt_.tolerance);
    return ledger;
  }

  bool resolved_now(const BoundLedger& l) const {
    const auto lo = l.max_lower(), hi = l.min_upper();
    return lo && hi && *hi - *lo <= opt_.tolerance;
  }

  void add_best_shuffle(BoundLedger& ledger, int depth) {
    const auto& s = ledger.model();
    const auto& steps = s.steps();
    std::size_t combos = 1;
    for (const auto& st : steps) {
      combos *= static_cast<std::size_t>(st.mult + 1);
      if (combos > opt_.max_partitions) return;
    }
    std::optional<GrowthBound> best;
    for (std::size_t c = 0; c < combos; ++c) {
      std::vector<Step> a, b;
      std::size_t rest = c;
      for (const auto& st : steps) {
        const auto base = static_cast<std::size_t>(st.mult + 1);
        const auto k = static_cast<std::int64_t>(rest % base);
        rest /= base;
        if (k > 0) a.push_back({st.v, k});
        if (st.mult - k > 0) b.push_back({st.v, st.mult - k});
      }
      if (a.empty() || b.empty()) continue;
      StepSet sa(s.dimension(), std::move(a)), sb(s.dimension(), std::move(b));
      if (sb < sa) continue;  // each unordered partition once
      const auto ka = certify(sa, depth - 1);
      if (!ka) continue;
      const auto kb = certify(sb, depth - 1);
      if (!kb) continue;
      auto bound = shuffle_bound(sa, ka->value, sb, kb->value);
      bound.certificate.parts = {model_label(sa) + " K=" + format_number(ka->value) + " [" + ka->how + "]",
                                 model_label(sb) + " K=" + format_number(kb->value) + " [" + kb->how + "]"};
      if (!best || bound.value > best->value) best = std::move(bound);
    }
    if (best && best->value > 0.0) ledger.add(std::move(*best));
  }

  void add_best_rotation(BoundLedger& ledger, int depth) {
    const auto& t = ledger.model();
    std::optional<GrowthBound> best;
    for (const auto& st : t.steps()) {
      for (std::size_t axis = 0; axis < t.dimension(); ++axis) {
        Vector pre = st.v;
        pre[axis] -= 1;
        if (t.contains(pre)) continue;
        std::vector<Step> steps;
        for (const auto& o : t.steps()) steps.push_back({o.v == st.v ? pre : o.v, o.mult});
        const StepSet s(t.dimension(), std::move(steps));
        const auto k = certify(s, depth - 1);
        if (!k || k->value <= 0.0) continue;
        GrowthBound on_s{k->value, BoundKind::lower,
                         {Certificate::Kind::trivial, k->how, std::nullopt, {}, {}}, s};
        auto bound = rotation_relation(s, pre, axis, on_s);
        bound.certificate.parts.front() = model_label(s) + " K=" + format_number(k->value) + " [" + k->how + "]";
        if (!best || bound.value > best->value) best = std::move(bound);
      }
    }
    if (best) ledger.add(std::move(*best));
  }

  LedgerOptions opt_;
  std::map<std::pair<StepSet, int>, std::optional<Certified>> memo_;
};

inline BoundLedger build_ledger(const StepSet& s, const LedgerOptions& opt = {}) { return LedgerBuilder(opt).build(s); }

}  // namespace walkgrowth
