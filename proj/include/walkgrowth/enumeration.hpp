#pragma once

// Exact walk counts by forward dynamic programming over lattice positions.
//
// Counts are arbitrary precision and weighted by step multiplicities. These
// series are the independent oracle against which every analytic bound is
// checked, so nothing here depends on the analytic modules.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include "walkgrowth/errors.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

using BigInt = boost::multiprecision::cpp_int;

struct Region {
  enum class Kind { orthant, partial_orthant, halfspace, excursion };
  Kind kind = Kind::orthant;
  Vector normal;                 // halfspace only
  std::vector<bool> constrained;  // partial_orthant: which coordinates must stay >= 0

  std::string describe() const {
    switch (kind) {
      case Kind::orthant: return "orthant";
      case Kind::excursion: return "excursion";
      case Kind::halfspace: {
        std::string s = "halfspace(";
        for (std::size_t k = 0; k < normal.size(); ++k) s += (k ? "," : "") + std::to_string(normal[k]);
        return s + ")";
      }
      case Kind::partial_orthant: {
        std::string s = "partial_orthant(";
        for (std::size_t k = 0; k < constrained.size(); ++k) s += (k ? "," : "") + std::string(constrained[k] ? "1" : "0");
        return s + ")";
      }
    }
    return "?";
  }
};

/// Exact counts c_0..c_N of walks of each length in a region.
struct CountSeries {
  Region region;
  std::vector<BigInt> counts;
  StepSet steps;

  std::size_t n_max() const { return counts.empty() ? 0 : counts.size() - 1; }
};

struct EnumerationOptions {
  /// Upper limit on the number of lattice positions in the reachable box.
  std::uint64_t max_states = 20'000'000;
};

/// Natural logarithm of a positive big integer.
inline double log_of(const BigInt& q) {
  if (q <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(q);
  if (bits < 960) return std::log(q.convert_to<double>());
  const auto shift = bits - 900;
  BigInt top = q >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

namespace detail {

struct Box {
  std::vector<int> lo, hi;
  std::uint64_t cells = 1;
};

inline Box reachable_box(const StepSet& s, std::size_t n_max, const std::vector<bool>& constrained,
                         const EnumerationOptions& opt) {
  Box b;
  const std::size_t d = s.dimension();
  for (std::size_t k = 0; k < d; ++k) {
    int up = 0, down = 0;
    for (const auto& st : s.steps()) {
      up = std::max(up, st.v[k]);
      down = std::max(down, -st.v[k]);
    }
    const long long hi = static_cast<long long>(n_max) * up;
    const long long lo = constrained[k] ? 0 : -static_cast<long long>(n_max) * down;
    b.lo.push_back(static_cast<int>(lo));
    b.hi.push_back(static_cast<int>(hi));
    const auto width = static_cast<std::uint64_t>(hi - lo + 1);
    if (b.cells > opt.max_states / width)
      throw capacity_error("enumeration state space exceeds the configured cap of " +
                           std::to_string(opt.max_states) + " positions");
    b.cells *= width;
  }
  return b;
}

/// Runs the DP; `visit(n, position_count_pairs)` sees each layer.
template <class Visit>
void forward_dp(const StepSet& s, std::size_t n_max, const std::vector<bool>& constrained,
                const EnumerationOptions& opt, Visit&& visit) {
  const std::size_t d = s.dimension();
  const Box box = reachable_box(s, n_max, constrained, opt);
  auto admissible = [&](const Vector& p) {
    for (std::size_t k = 0; k < d; ++k)
      if (constrained[k] && p[k] < 0) return false;
    return true;
  };

  if (d <= 2) {
    // Dense layers over the reachable box.
    const int w0 = box.hi[0] - box.lo[0] + 1;
    auto index = [&](const Vector& p) {
      std::size_t i = static_cast<std::size_t>(p[0] - box.lo[0]);
      if (d == 2) i += static_cast<std::size_t>(p[1] - box.lo[1]) * static_cast<std::size_t>(w0);
      return i;
    };
    std::vector<BigInt> cur(box.cells), nxt(box.cells);
    std::vector<std::size_t> live{index(Vector(d, 0))};
    cur[live[0]] = 1;
    std::vector<char> mark(box.cells, 0);
    auto position = [&](std::size_t i) {
      Vector p(d);
      p[0] = static_cast<int>(i % static_cast<std::size_t>(w0)) + box.lo[0];
      if (d == 2) p[1] = static_cast<int>(i / static_cast<std::size_t>(w0)) + box.lo[1];
      return p;
    };
    visit(std::size_t{0}, [&](auto&& f) { f(Vector(d, 0), cur[live[0]]); });
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::vector<std::size_t> next_live;
      for (auto i : live) {
        const Vector p = position(i);
        for (const auto& st : s.steps()) {
          Vector q = p;
          for (std::size_t k = 0; k < d; ++k) q[k] += st.v[k];
          if (!admissible(q)) continue;
          const auto j = index(q);
          if (!mark[j]) {
            mark[j] = 1;
            next_live.push_back(j);
          }
          if (st.mult == 1)
            nxt[j] += cur[i];
          else
            nxt[j] += cur[i] * st.mult;
        }
      }
      for (auto i : live) cur[i] = 0;
      std::sort(next_live.begin(), next_live.end());
      for (auto j : next_live) {
        mark[j] = 0;
        std::swap(cur[j], nxt[j]);
      }
      live = std::move(next_live);
      visit(n, [&](auto&& f) {
        for (auto i : live) f(position(i), cur[i]);
      });
    }
  } else {
    // Sparse layers keyed by position.
    std::map<Vector, BigInt> cur{{Vector(d, 0), BigInt(1)}};
    visit(std::size_t{0}, [&](auto&& f) { f(Vector(d, 0), cur.begin()->second); });
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::map<Vector, BigInt> nxt;
      for (const auto& [p, c] : cur) {
        for (const auto& st : s.steps()) {
          Vector q = p;
          for (std::size_t k = 0; k < d; ++k) q[k] += st.v[k];
          if (!admissible(q)) continue;
          nxt[q] += c * st.mult;
        }
      }
      cur = std::move(nxt);
      visit(n, [&](auto&& f) {
        for (const auto& [p, c] : cur) f(p, c);
      });
    }
  }
}

}  // namespace detail

/// Walks whose coordinates flagged in `constrained` stay nonnegative.
inline CountSeries count_constrained(const StepSet& s, const std::vector<bool>& constrained, std::size_t n_max,
                                     const EnumerationOptions& opt = {}) {
  if (constrained.size() != s.dimension()) throw std::invalid_argument("constraint mask has wrong dimension");
  CountSeries out{{Region::Kind::partial_orthant, {}, constrained}, {}, s};
  detail::forward_dp(s, n_max, constrained, opt, [&](std::size_t, auto&& layer) {
    BigInt total = 0;
    layer([&](const Vector&, const BigInt& c) { total += c; });
    out.counts.push_back(std::move(total));
  });
  if (std::all_of(constrained.begin(), constrained.end(), [](bool b) { return b; })) out.region.kind = Region::Kind::orthant;
  return out;
}

/// q_0..q_N for walks confined to the nonnegative orthant.
inline CountSeries count_orthant(const StepSet& s, std::size_t n_max, const EnumerationOptions& opt = {}) {
  auto out = count_constrained(s, std::vector<bool>(s.dimension(), true), n_max, opt);
  out.region = {Region::Kind::orthant, {}, {}};
  return out;
}

/// Orthant walks that end at the origin.
inline CountSeries count_excursions(const StepSet& s, std::size_t n_max, const EnumerationOptions& opt = {}) {
  CountSeries out{{Region::Kind::excursion, {}, {}}, {}, s};
  const Vector origin(s.dimension(), 0);
  detail::forward_dp(s, n_max, std::vector<bool>(s.dimension(), true), opt, [&](std::size_t, auto&& layer) {
    BigInt at_origin = 0;
    layer([&](const Vector& p, const BigInt& c) {
      if (p == origin) at_origin = c;
    });
    out.counts.push_back(std::move(at_origin));
  });
  return out;
}

/// Walks whose running inner product with an integer normal stays nonnegative.
inline CountSeries count_halfspace(const StepSet& s, const Vector& normal, std::size_t n_max,
                                   const EnumerationOptions& opt = {}) {
  if (normal.size() != s.dimension()) throw std::invalid_argument("normal has wrong dimension");
  if (std::any_of(normal.begin(), normal.end(), [](int c) { return c < 0; }) ||
      std::all_of(normal.begin(), normal.end(), [](int c) { return c == 0; }))
    throw std::invalid_argument("half-space normal must be nonnegative and nonzero");

  // Project to heights and reuse the 1D dense DP.
  std::vector<Step> heights;
  for (const auto& st : s.steps()) {
    int h = 0;
    for (std::size_t k = 0; k < normal.size(); ++k) h += st.v[k] * normal[k];
    heights.push_back({Vector{h}, st.mult});
  }
  auto out = count_constrained(StepSet(1, std::move(heights)), {true}, n_max, opt);
  out.region = {Region::Kind::halfspace, normal, {}};
  out.steps = s;
  return out;
}

// ---------------------------------------------------------------------------
// Growth estimation
// ---------------------------------------------------------------------------

/// max_n c_n^{1/n} over n >= 1: a rigorous lower bound on the growth of any supermultiplicative sequence.
inline double fekete_floor(const CountSeries& series) {
  double best = 0.0;
  for (std::size_t n = 1; n < series.counts.size(); ++n)
    if (series.counts[n] > 0) best = std::max(best, std::exp(log_of(series.counts[n]) / static_cast<double>(n)));
  return best;
}

struct GrowthEstimate {
  double estimate = 0.0;  // exp(log_k)
  double log_k = 0.0;
  double alpha = 0.0;  // polynomial exponent
  double c = 0.0;
  double fekete = 0.0;
  std::size_t points = 0;
};

/// Least-squares fit of log c_n ~ n log K + alpha log n + c on the last ceil(N/2) lengths.
///
/// Zero terms in the window (periodic models such as excursions) are skipped, which
/// restricts the fit to the nonvanishing residue class.
inline GrowthEstimate estimate_growth(const CountSeries& series) {
  const std::size_t N = series.n_max();
  std::size_t nonzero = 0;
  for (std::size_t n = 1; n <= N; ++n) nonzero += series.counts[n] > 0;
  if (nonzero < 12) throw std::invalid_argument("growth estimate needs at least 12 nonzero terms");

  const std::size_t first = N - (N + 1) / 2 + 1;
  std::vector<std::size_t> idx;
  for (std::size_t n = std::max<std::size_t>(first, 1); n <= N; ++n)
    if (series.counts[n] > 0) idx.push_back(n);
  if (idx.size() < 3) throw std::invalid_argument("growth estimate window has fewer than 3 nonzero terms");

  Eigen::MatrixXd X(static_cast<Eigen::Index>(idx.size()), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto n = static_cast<double>(idx[i]);
    X(static_cast<Eigen::Index>(i), 0) = n;
    X(static_cast<Eigen::Index>(i), 1) = std::log(n);
    X(static_cast<Eigen::Index>(i), 2) = 1.0;
    y(static_cast<Eigen::Index>(i)) = log_of(series.counts[idx[i]]);
  }
  const Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
  GrowthEstimate g;
  g.log_k = beta(0);
  g.alpha = beta(1);
  g.c = beta(2);
  g.estimate = std::exp(beta(0));
  g.fekete = fekete_floor(series);
  g.points = idx.size();
  return g;
}

/// CSV rows "n,count,count^(1/n)".
inline void write_csv(std::ostream& os, const CountSeries& series) {
  os << "n,count,root\n";
  for (std::size_t n = 0; n < series.counts.size(); ++n) {
    os << n << ',' << series.counts[n].str() << ',';
    if (n == 0 || series.counts[n] == 0) {
      os << (n == 0 ? "" : "0");
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", std::exp(log_of(series.counts[n]) / static_cast<double>(n)));
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace walkgrowth
