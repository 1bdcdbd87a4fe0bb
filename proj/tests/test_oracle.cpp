#include <gtest/gtest.h>

#include <random>

#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/oracle.hpp"

using namespace walkgrowth;

namespace {

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

}  // namespace

TEST(Oracle, DynamicProgrammingMatchesBruteForce) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n_steps = 1 + rng() % 5;
    std::vector<Step> steps;
    while (steps.size() < n_steps) {
      Vector v{coord(rng), coord(rng)};
      if (v == Vector{0, 0}) continue;
      steps.push_back({v, 1 + static_cast<std::int64_t>(rng() % 2)});
    }
    const StepSet s(2, steps);
    EXPECT_EQ(count_orthant(s, 8).counts, oracle::brute_force_orthant(s, 8)) << to_string(s);
  }
}

TEST(Oracle, ThreeDimensionalBruteForce) {
  const auto s = parse_stepset("(1,1,1);(0,1,1);(0,1,-1);(-1,0,0);(-1,1,0);(-1,-1,0)");
  EXPECT_EQ(count_orthant(s, 7).counts, oracle::brute_force_orthant(s, 7));
}

TEST(Oracle, SimpleWalkClosedForm) {
  // Quarter-plane walks with steps N,E,S,W.
  const auto q = count_orthant(parse_stepset("N,E,S,W"), 20).counts;
  for (unsigned n = 0; n <= 20; ++n) {
    EXPECT_EQ(q[n], binomial(n, n / 2) * binomial(n + 1, (n + 1) / 2)) << n;
  }
}

TEST(Oracle, DyckExcursions) {
  const auto e = count_excursions(parse_stepset("(1);(-1)"), 20).counts;
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(e[n], n % 2 ? BigInt(0) : catalan(n / 2)) << n;
}

TEST(Oracle, BallotNumbers) {
  // One-dimensional walks on the half-line: binom(n, floor(n/2)).
  const auto q = count_orthant(parse_stepset("(1);(-1)"), 30).counts;
  for (unsigned n = 0; n <= 30; ++n) EXPECT_EQ(q[n], binomial(n, n / 2)) << n;
}

TEST(Oracle, UnconstrainedCount) {
  EXPECT_EQ(oracle::unconstrained_count(parse_stepset("N,E,S"), 5), BigInt(243));
}
