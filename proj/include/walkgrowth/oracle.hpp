#pragma once

// Brute-force reference computations for cross-checking.

#include <cstdint>
#include <vector>

#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/stepset.hpp"

namespace walkgrowth::oracle {

/// Orthant walk counts by walking every step sequence of length <= n_max.
///
/// A sequence is abandoned as soon as a prefix leaves the orthant, which skips only
/// sequences that cannot be counted.
inline std::vector<BigInt> brute_force_orthant(const StepSet& s, std::size_t n_max) {
  std::vector<BigInt> counts(n_max + 1, 0);
  Vector pos(s.dimension(), 0);
  auto rec = [&](auto&& self, std::size_t n, const BigInt& weight) -> void {
    counts[n] += weight;
    if (n == n_max) return;
    for (const auto& st : s.steps()) {
      bool ok = true;
      for (std::size_t k = 0; k < pos.size(); ++k) {
        pos[k] += st.v[k];
        ok &= pos[k] >= 0;
      }
      if (ok) self(self, n + 1, weight * st.mult);
      for (std::size_t k = 0; k < pos.size(); ++k) pos[k] -= st.v[k];
    }
  };
  rec(rec, 0, BigInt(1));
  return counts;
}

/// |S|^n.
inline BigInt unconstrained_count(const StepSet& s, std::size_t n) {
  BigInt out = 1;
  for (std::size_t i = 0; i < n; ++i) out *= s.size();
  return out;
}

}  // namespace walkgrowth::oracle
