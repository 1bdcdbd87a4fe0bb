#pragma once

// Non-triviality of orthant models, decided by exact enumeration to a fixed horizon.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

inline constexpr std::size_t kPlanarEssentialHorizon = 8;
inline constexpr std::size_t kOrthantEssentialHorizon = 6;

/// Distinct steps that occur in at least one orthant walk of length <= horizon.
inline std::vector<Vector> usable_steps(const StepSet& s, std::size_t horizon) {
  const std::size_t d = s.dimension();
  std::vector<char> used(s.distinct(), 0);
  std::vector<Vector> frontier{Vector(d, 0)};
  std::vector<Vector> seen = frontier;
  for (std::size_t n = 0; n < horizon && !frontier.empty(); ++n) {
    std::vector<Vector> next;
    for (const auto& p : frontier) {
      for (std::size_t i = 0; i < s.distinct(); ++i) {
        Vector q = p;
        bool ok = true;
        for (std::size_t k = 0; k < d; ++k) {
          q[k] += s.steps()[i].v[k];
          ok &= q[k] >= 0;
        }
        if (!ok) continue;
        used[i] = 1;
        next.push_back(std::move(q));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  std::vector<Vector> out;
  for (std::size_t i = 0; i < s.distinct(); ++i)
    if (used[i]) out.push_back(s.steps()[i].v);
  return out;
}

/// Per-model diagnosis behind the essentiality verdict.
struct Essentiality {
  bool has_walk = false;          // q_n > 0 for some 1 <= n <= horizon
  bool all_steps_usable = false;  // every step occurs in some orthant walk
  std::vector<bool> binds;        // constraint k changes the counts
  bool essential() const {
    if (!has_walk || !all_steps_usable) return false;
    for (bool b : binds)
      if (!b) return false;
    return true;
  }
};

/// Enumeration-difference test: constraint k binds when dropping it increases some count.
inline Essentiality diagnose_orthant(const StepSet& s, std::size_t horizon) {
  const std::size_t d = s.dimension();
  Essentiality e;
  const auto q = count_orthant(s, horizon);
  for (std::size_t n = 1; n <= horizon; ++n) e.has_walk |= q.counts[n] > 0;
  e.all_steps_usable = usable_steps(s, horizon).size() == s.distinct();
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<bool> mask(d, true);
    mask[k] = false;
    const auto h = count_constrained(s, mask, horizon);
    bool differs = false;
    for (std::size_t n = 1; n <= horizon; ++n) differs |= q.counts[n] < h.counts[n];
    e.binds.push_back(differs);
  }
  return e;
}

/// Quarter-plane non-triviality for planar models.
///
/// True when some walk exists, both coordinate constraints bind, and every step is
/// usable by some quarter-plane walk. The last condition removes models that only
/// differ from a smaller model by steps that can never be taken.
inline bool is_quarterplane_essential(const StepSet& s, std::size_t horizon = kPlanarEssentialHorizon) {
  if (s.dimension() != 2) throw unsupported_dimension("quarter-plane essentiality needs a planar step set");
  return diagnose_orthant(s, horizon).essential();
}

inline bool is_orthant_essential(const StepSet& s, std::size_t horizon = kOrthantEssentialHorizon) {
  return diagnose_orthant(s, horizon).essential();
}

}  // namespace walkgrowth
