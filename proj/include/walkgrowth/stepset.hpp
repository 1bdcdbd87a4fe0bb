#pragma once

// Step sets: finite multisets of integer vectors defining a lattice walk model.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walkgrowth/errors.hpp"

namespace walkgrowth {

using Vector = std::vector<int>;

struct Step {
  Vector v;
  std::int64_t mult = 1;

  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

/// A finite multiset of integer vectors of a common dimension.
///
/// Steps are kept sorted lexicographically by vector with equal vectors merged,
/// so two step sets describing the same multiset compare equal. The zero
/// vector is allowed; it contributes a constant term to the inventory.
class StepSet {
 public:
  StepSet(std::size_t dimension, std::vector<Step> steps) : dim_(dimension) {
    if (dim_ == 0) throw std::invalid_argument("step set dimension must be positive");
    for (const auto& s : steps) {
      if (s.v.size() != dim_)
        throw std::invalid_argument("step dimension " + std::to_string(s.v.size()) +
                                    " does not match set dimension " + std::to_string(dim_));
      if (s.mult < 1) throw std::invalid_argument("step multiplicity must be positive");
    }
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.v < b.v; });
    for (auto& s : steps) {
      if (!steps_.empty() && steps_.back().v == s.v)
        steps_.back().mult += s.mult;
      else
        steps_.push_back(std::move(s));
    }
    if (steps_.empty()) throw std::invalid_argument("step set must contain at least one step");
  }

  /// Each vector taken once.
  StepSet(std::size_t dimension, const std::vector<Vector>& vectors)
      : StepSet(dimension, to_steps(vectors)) {}

  std::size_t dimension() const noexcept { return dim_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::size_t distinct() const noexcept { return steps_.size(); }

  /// |S|, counted with multiplicity.
  std::int64_t size() const noexcept {
    std::int64_t n = 0;
    for (const auto& s : steps_) n += s.mult;
    return n;
  }

  std::int64_t multiplicity(const Vector& v) const noexcept {
    for (const auto& s : steps_)
      if (s.v == v) return s.mult;
    return 0;
  }
  bool contains(const Vector& v) const noexcept { return multiplicity(v) > 0; }

  /// All steps in {-1,0,1}^2.
  bool is_small() const noexcept {
    if (dim_ != 2) return false;
    return std::all_of(steps_.begin(), steps_.end(), [](const Step& s) {
      return std::abs(s.v[0]) <= 1 && std::abs(s.v[1]) <= 1;
    });
  }

  int max_abs_coordinate() const noexcept {
    int m = 0;
    for (const auto& s : steps_)
      for (int c : s.v) m = std::max(m, std::abs(c));
    return m;
  }

  friend bool operator==(const StepSet&, const StepSet&) = default;
  friend auto operator<=>(const StepSet& a, const StepSet& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.steps_ <=> b.steps_;
  }

 private:
  static std::vector<Step> to_steps(const std::vector<Vector>& vectors) {
    std::vector<Step> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) out.push_back({v, 1});
    return out;
  }

  std::size_t dim_;
  std::vector<Step> steps_;
};

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

/// Multiplicity-weighted vector sum of the steps.
inline Vector drift(const StepSet& s) {
  Vector d(s.dimension(), 0);
  for (const auto& st : s.steps())
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += static_cast<int>(st.mult * st.v[k]);
  return d;
}

/// Value of the inventory P(x) = sum m * prod x_k^{v_k}, with derivatives on demand.
struct InventoryValue {
  double value = 0.0;
  std::vector<double> gradient;                // empty unless order >= 1
  std::vector<std::vector<double>> hessian;    // empty unless order == 2
};

inline InventoryValue eval_inventory(const StepSet& s, std::span<const double> point, int order = 0) {
  const std::size_t d = s.dimension();
  if (point.size() != d) throw std::invalid_argument("evaluation point has wrong dimension");
  for (double x : point)
    if (!(x > 0.0)) throw std::domain_error("inventory is evaluated at strictly positive points only");
  if (order < 0 || order > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");

  InventoryValue out;
  if (order >= 1) out.gradient.assign(d, 0.0);
  if (order == 2) out.hessian.assign(d, std::vector<double>(d, 0.0));
  for (const auto& st : s.steps()) {
    // std::pow with integral exponents is exact at 1, so the all-ones point yields exact integers.
    double term = static_cast<double>(st.mult);
    for (std::size_t k = 0; k < d; ++k) term *= std::pow(point[k], st.v[k]);
    out.value += term;
    if (order >= 1) {
      for (std::size_t k = 0; k < d; ++k) {
        if (st.v[k] == 0) continue;
        out.gradient[k] += term * st.v[k] / point[k];
        if (order == 2) {
          for (std::size_t l = 0; l < d; ++l) {
            const double e = (l == k) ? st.v[k] * (st.v[k] - 1.0) : 1.0 * st.v[k] * st.v[l];
            if (e != 0.0) out.hessian[k][l] += term * e / (point[k] * point[l]);
          }
        }
      }
    }
  }
  return out;
}

/// gamma = P_xy(1,1) - delta_x * delta_y for planar models.
inline std::int64_t covariance(const StepSet& s) {
  if (s.dimension() != 2) throw unsupported_dimension("covariance is defined for 2-dimensional step sets");
  std::int64_t mixed = 0;
  for (const auto& st : s.steps()) mixed += st.mult * st.v[0] * st.v[1];
  const auto d = drift(s);
  return mixed - static_cast<std::int64_t>(d[0]) * d[1];
}

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

template <class F>
StepSet map_steps(const StepSet& s, F&& f) {
  std::vector<Step> out;
  out.reserve(s.distinct());
  for (const auto& st : s.steps()) out.push_back({f(st.v), st.mult});
  return StepSet(s.dimension(), std::move(out));
}

/// Exchange coordinates i and j of every step (x <-> y in the plane by default).
inline StepSet swap_axes(const StepSet& s, std::size_t i = 0, std::size_t j = 1) {
  return map_steps(s, [&](Vector v) {
    std::swap(v.at(i), v.at(j));
    return v;
  });
}

/// Negate coordinate k of every step.
inline StepSet negate_axis(const StepSet& s, std::size_t k) {
  return map_steps(s, [&](Vector v) {
    v.at(k) = -v.at(k);
    return v;
  });
}

/// Multiset union.
inline StepSet merge(const StepSet& a, const StepSet& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("cannot merge step sets of different dimension");
  auto steps = a.steps();
  steps.insert(steps.end(), b.steps().begin(), b.steps().end());
  return StepSet(a.dimension(), std::move(steps));
}

/// Keep only coordinates listed in `axes` (in that order). Steps that coincide merge.
inline StepSet restrict_axes(const StepSet& s, std::span<const std::size_t> axes) {
  std::vector<Step> out;
  for (const auto& st : s.steps()) {
    Vector v;
    for (auto k : axes) v.push_back(st.v.at(k));
    out.push_back({std::move(v), st.mult});
  }
  return StepSet(axes.size(), std::move(out));
}

// ---------------------------------------------------------------------------
// Text format
//
//   "(0,1)x1;(1,-1)x2"   vectors with optional multiplicity suffix
//   "N,SW,S,SE"          compass aliases for planar small steps
//
// Tokens are separated by ',' or ';' outside parentheses and the two forms mix.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::array<std::pair<std::string_view, std::array<int, 2>>, 8> kCompass{{
    {"N", {0, 1}}, {"NE", {1, 1}}, {"E", {1, 0}}, {"SE", {1, -1}},
    {"S", {0, -1}}, {"SW", {-1, -1}}, {"W", {-1, 0}}, {"NW", {-1, 1}},
}};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline long long parse_integer(std::string_view s, std::string_view context) {
  s = trim(s);
  if (s.empty()) throw parse_error("empty number in '" + std::string(context) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw parse_error("malformed number in '" + std::string(context) + "'");
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw parse_error("malformed number '" + std::string(s) + "' in '" + std::string(context) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > (1LL << 40)) throw parse_error("number out of range in '" + std::string(context) + "'");
  }
  return neg ? -v : v;
}

}  // namespace detail

inline StepSet parse_stepset(std::string_view text) {
  std::vector<std::string_view> tokens;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ';';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw parse_error("unbalanced ')' in step set");
    if (depth == 0 && (c == ',' || c == ';')) {
      auto tok = detail::trim(text.substr(start, i - start));
      if (!tok.empty()) tokens.push_back(tok);
      start = i + 1;
    }
  }
  if (depth != 0) throw parse_error("unbalanced '(' in step set");
  if (tokens.empty()) throw parse_error("empty step set");

  std::vector<Step> steps;
  std::optional<std::size_t> dim;
  for (auto tok : tokens) {
    std::int64_t mult = 1;
    std::string_view body = tok;
    // Optional multiplicity suffix "xM" after the vector or compass name.
    if (auto pos = tok.find_last_of("xX"); pos != std::string_view::npos && pos > 0) {
      body = detail::trim(tok.substr(0, pos));
      mult = detail::parse_integer(tok.substr(pos + 1), tok);
      if (mult < 1) throw parse_error("multiplicity must be positive in '" + std::string(tok) + "'");
    }
    Vector v;
    if (!body.empty() && body.front() == '(') {
      if (body.back() != ')') throw parse_error("missing ')' in '" + std::string(tok) + "'");
      auto inner = body.substr(1, body.size() - 2);
      std::size_t p = 0;
      while (true) {
        auto q = inner.find(',', p);
        v.push_back(static_cast<int>(detail::parse_integer(inner.substr(p, q - p), tok)));
        if (q == std::string_view::npos) break;
        p = q + 1;
      }
    } else {
      std::string name(body);
      for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      auto it = std::find_if(detail::kCompass.begin(), detail::kCompass.end(),
                             [&](const auto& e) { return e.first == name; });
      if (it == detail::kCompass.end()) throw parse_error("unknown step '" + std::string(tok) + "'");
      v = {it->second[0], it->second[1]};
    }
    if (dim && *dim != v.size()) throw parse_error("steps of mixed dimension in step set");
    dim = v.size();
    steps.push_back({std::move(v), mult});
  }
  return StepSet(*dim, std::move(steps));
}

/// Canonical vector form, e.g. "(-1,-1)x1;(0,1)x1". Round-trips through parse_stepset.
inline std::string to_string(const StepSet& s) {
  std::string out;
  for (const auto& st : s.steps()) {
    if (!out.empty()) out += ';';
    out += '(';
    for (std::size_t k = 0; k < st.v.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(st.v[k]);
    }
    out += ")x" + std::to_string(st.mult);
  }
  return out;
}

/// Compass form such as "SW,S,N,SE" for planar small steps, falling back to to_string.
inline std::string to_compass_string(const StepSet& s) {
  if (!s.is_small()) return to_string(s);
  std::string out;
  for (const auto& st : s.steps()) {
    auto it = std::find_if(detail::kCompass.begin(), detail::kCompass.end(), [&](const auto& e) {
      return e.second[0] == st.v[0] && e.second[1] == st.v[1];
    });
    if (!out.empty()) out += ',';
    out += it == detail::kCompass.end() ? std::string("(0,0)") : std::string(it->first);
    if (st.mult > 1) out += "x" + std::to_string(st.mult);
  }
  return out;
}

}  // namespace walkgrowth
