#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/oracle.hpp"

using namespace walkgrowth;

namespace {
std::vector<BigInt> big(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}
}  // namespace

TEST(CountOrthant, Examples) {
  EXPECT_EQ(count_orthant(parse_stepset("N,E,S,W"), 5).counts, big({1, 2, 6, 18, 60, 200}));
  EXPECT_EQ(count_orthant(parse_stepset("N,E"), 4).counts, big({1, 2, 4, 8, 16}));
  // Only N survives the first step; from (0,1) the steps N, S and SE are all legal.
  EXPECT_EQ(count_orthant(parse_stepset("N,SW,S,SE"), 3).counts, oracle::brute_force_orthant(parse_stepset("N,SW,S,SE"), 3));
  EXPECT_EQ(count_orthant(parse_stepset("N,SW,S,SE"), 2).counts, big({1, 1, 3}));
}

TEST(CountOrthant, Multiplicities) {
  EXPECT_EQ(count_orthant(parse_stepset("Nx2,S"), 3).counts, big({1, 2, 6, 16}));
  EXPECT_EQ(count_orthant(parse_stepset("Nx2,S"), 3).counts, oracle::brute_force_orthant(parse_stepset("Nx2,S"), 3));
}

TEST(CountOrthant, ThreeDimensions) {
  const auto s = parse_stepset("(1,0,0);(-1,0,0);(0,1,0);(0,-1,0);(0,0,1);(0,0,-1)");
  EXPECT_EQ(count_orthant(s, 6).counts, oracle::brute_force_orthant(s, 6));
}

TEST(CountOrthant, CapacityError) {
  EnumerationOptions opt;
  opt.max_states = 100;
  EXPECT_THROW(count_orthant(parse_stepset("N,E,S,W"), 30, opt), capacity_error);
}

TEST(CountHalfspace, Examples) {
  EXPECT_EQ(count_halfspace(parse_stepset("N,S"), {0, 1}, 4).counts, big({1, 1, 2, 3, 6}));
  EXPECT_EQ(count_halfspace(parse_stepset("N,E"), {1, 0}, 3).counts, big({1, 2, 4, 8}));
  // Heights {1,1,-2}: after N or E only N or E may follow.
  EXPECT_EQ(count_halfspace(parse_stepset("N,E,SW"), {1, 1}, 2).counts, big({1, 2, 4}));
  EXPECT_THROW(count_halfspace(parse_stepset("N,S"), {0, 0}, 3), std::invalid_argument);
  EXPECT_THROW(count_halfspace(parse_stepset("N,S"), {-1, 1}, 3), std::invalid_argument);
}

TEST(CountExcursions, Examples) {
  EXPECT_EQ(count_excursions(parse_stepset("N,E,S,W"), 4).counts, big({1, 0, 2, 0, 10}));
  const auto up = count_excursions(parse_stepset("N,E"), 6).counts;
  for (std::size_t n = 1; n < up.size(); ++n) EXPECT_EQ(up[n], 0);
  EXPECT_EQ(count_excursions(parse_stepset("NE,SW"), 2).counts[2], 1);
}

TEST(Fekete, FloorOfGeometricSeries) {
  EXPECT_NEAR(fekete_floor(count_orthant(parse_stepset("N,E"), 10)), 2.0, 1e-14);
}

TEST(EstimateGrowth, Examples) {
  auto g = estimate_growth(count_orthant(parse_stepset("N,E"), 20));
  EXPECT_NEAR(g.estimate, 2.0, 1e-6);
  g = estimate_growth(count_orthant(parse_stepset("N,E,S,W"), 24));
  EXPECT_NEAR(g.estimate, 4.0, 0.02 * 4.0);
  g = estimate_growth(count_orthant(parse_stepset("N,SW,S,SE"), 24));
  EXPECT_NEAR(g.estimate, 2 * std::sqrt(3.0), 0.05 * 2 * std::sqrt(3.0));
}

TEST(EstimateGrowth, PeriodicSeriesUsesNonzeroTerms) {
  const auto g = estimate_growth(count_excursions(parse_stepset("N,E,S,W"), 30));
  EXPECT_NEAR(g.estimate, 4.0, 0.1);
}

TEST(EstimateGrowth, InsufficientData) {
  EXPECT_THROW(estimate_growth(count_orthant(parse_stepset("N,E"), 8)), std::invalid_argument);
  EXPECT_THROW(estimate_growth(count_excursions(parse_stepset("N,E"), 30)), std::invalid_argument);
}

TEST(LogOf, HugeIntegers) {
  BigInt q = 1;
  for (int i = 0; i < 2000; ++i) q *= 3;
  EXPECT_NEAR(log_of(q), 2000 * std::log(3.0), 1e-9);
}

TEST(Csv, Format) {
  std::ostringstream os;
  write_csv(os, count_orthant(parse_stepset("N,E,S,W"), 2));
  EXPECT_EQ(os.str(), "n,count,root\n0,1,\n1,2,2\n2,6,2.44948974278\n");
}
