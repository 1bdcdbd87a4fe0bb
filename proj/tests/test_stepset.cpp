#include <gtest/gtest.h>

#include <cmath>

#include "walkgrowth/essential.hpp"
#include "walkgrowth/stepset.hpp"

using namespace walkgrowth;

TEST(StepSet, MergesDuplicatesIntoMultiplicity) {
  StepSet s(2, std::vector<Step>{{{0, 1}, 1}, {{1, 0}, 2}, {{0, 1}, 3}});
  EXPECT_EQ(s.distinct(), 2u);
  EXPECT_EQ(s.multiplicity({0, 1}), 4);
  EXPECT_EQ(s.size(), 6);
}

TEST(StepSet, RejectsBadInput) {
  EXPECT_THROW(StepSet(2, std::vector<Step>{}), std::invalid_argument);
  EXPECT_THROW(StepSet(2, std::vector<Step>{{{0, 1, 2}, 1}}), std::invalid_argument);
  EXPECT_THROW(StepSet(2, std::vector<Step>{{{0, 1}, 0}}), std::invalid_argument);
  EXPECT_THROW(StepSet(0, std::vector<Step>{{{}, 1}}), std::invalid_argument);
}

TEST(StepSet, ZeroStepAllowed) {
  const auto s = parse_stepset("(0,0);N;S");
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(drift(s), (Vector{0, 0}));
  const double p[] = {1.0, 2.0};
  EXPECT_DOUBLE_EQ(eval_inventory(s, p).value, 1.0 + 2.0 + 0.5);
}

TEST(Drift, Examples) {
  EXPECT_EQ(drift(parse_stepset("N,SW,S,SE")), (Vector{0, -2}));
  EXPECT_EQ(drift(parse_stepset("N,E,S,W")), (Vector{0, 0}));
  EXPECT_EQ(drift(parse_stepset("N,W,SE,S,SW")), (Vector{-1, -2}));
  EXPECT_EQ(drift(parse_stepset("Nx3,S")), (Vector{0, 2}));
}

TEST(Inventory, ExcursionAxisExample) {
  const double p[] = {1.0, std::sqrt(3.0)};
  EXPECT_NEAR(eval_inventory(parse_stepset("N,SW,S,SE"), p).value, 2.0 * std::sqrt(3.0), 1e-14);
}

TEST(Inventory, AllOnesIsCardinalityAndDrift) {
  const auto s = parse_stepset("(2,-1)x3;(0,1);(-1,-1)x2");
  const double ones[] = {1.0, 1.0};
  const auto v = eval_inventory(s, ones, 2);
  EXPECT_EQ(v.value, 6.0);
  const auto d = drift(s);
  EXPECT_EQ(v.gradient[0], d[0]);
  EXPECT_EQ(v.gradient[1], d[1]);
}

TEST(Inventory, DerivativesByHand) {
  const double p[] = {1.0, 2.0};
  const auto v = eval_inventory(parse_stepset("N,S"), p, 2);
  EXPECT_DOUBLE_EQ(v.value, 2.5);
  EXPECT_DOUBLE_EQ(v.gradient[1], 0.75);
  EXPECT_DOUBLE_EQ(v.gradient[0], 0.0);
  // d2/dy2 (y + 1/y) = 2/y^3
  EXPECT_DOUBLE_EQ(v.hessian[1][1], 0.25);
}

TEST(Inventory, RejectsNonPositivePoint) {
  const double p[] = {0.0, 1.0};
  EXPECT_THROW(eval_inventory(parse_stepset("N,S"), p), std::domain_error);
  const double q[] = {1.0};
  EXPECT_THROW(eval_inventory(parse_stepset("N,S"), q), std::invalid_argument);
}

TEST(Covariance, Examples) {
  EXPECT_EQ(covariance(parse_stepset("N,SW,S,SE")), 0);
  EXPECT_EQ(covariance(parse_stepset("N,E,S,W")), 0);
  EXPECT_EQ(covariance(parse_stepset("NE,SW")), 2);
  EXPECT_THROW(covariance(parse_stepset("(1,0,0)")), unsupported_dimension);
}

TEST(Covariance, ReflectionBehaviour) {
  const auto s = parse_stepset("N,NE,W,SE,S");
  EXPECT_EQ(covariance(swap_axes(s)), covariance(s));
  EXPECT_EQ(covariance(negate_axis(s, 0)), -covariance(s));
  EXPECT_EQ(drift(negate_axis(s, 0))[0], -drift(s)[0]);
}

TEST(Parse, CompassAndVectorFormsAgree) {
  EXPECT_EQ(parse_stepset("N,SW,S,SE"), parse_stepset("(0,1);(-1,-1);(0,-1);(1,-1)"));
  EXPECT_EQ(parse_stepset("n; sw ;S,se"), parse_stepset("N,SW,S,SE"));
  EXPECT_EQ(parse_stepset("(0,1)x2;N"), parse_stepset("Nx3"));
}

TEST(Parse, RoundTrip) {
  for (const char* text : {"N,SW,S,SE", "(1,1,1);(0,1,-1)x4;(-1,0,0)", "(3,-7)x2;(0,0)"}) {
    const auto s = parse_stepset(text);
    EXPECT_EQ(parse_stepset(to_string(s)), s) << text;
    EXPECT_EQ(parse_stepset(to_compass_string(s)), s) << text;
  }
}

TEST(Parse, Errors) {
  for (const char* bad : {"", "(1,2", "1,2)", "Q", "(1,a)", "(1,2)x0", "(1,2);(1,2,3)", "()", "Nx"})
    EXPECT_THROW(parse_stepset(bad), parse_error) << bad;
}

TEST(Transforms, MergeAndRestrict) {
  const auto a = parse_stepset("N,S"), b = parse_stepset("N,E");
  const auto m = merge(a, b);
  EXPECT_EQ(m.multiplicity({0, 1}), 2);
  EXPECT_EQ(drift(m)[0], drift(a)[0] + drift(b)[0]);
  EXPECT_EQ(drift(m)[1], drift(a)[1] + drift(b)[1]);
  const std::size_t axes[] = {1};
  const auto r = restrict_axes(parse_stepset("NE,SE,E"), axes);
  EXPECT_EQ(r.dimension(), 1u);
  EXPECT_EQ(r.multiplicity({0}), 1);
  EXPECT_EQ(r.multiplicity({1}), 1);
  EXPECT_EQ(r.multiplicity({-1}), 1);
}

TEST(Essential, Examples) {
  EXPECT_TRUE(is_quarterplane_essential(parse_stepset("N,E,S,W")));
  EXPECT_FALSE(is_quarterplane_essential(parse_stepset("N,E")));
  EXPECT_FALSE(is_quarterplane_essential(parse_stepset("NE,SW")));
  EXPECT_THROW(is_quarterplane_essential(parse_stepset("(1,0,0)")), unsupported_dimension);
}

TEST(Essential, UnusableStepMakesModelInessential) {
  // SW can never be taken: nothing ever raises y.
  const auto s = parse_stepset("E,W,SW");
  const auto d = diagnose_orthant(s, kPlanarEssentialHorizon);
  EXPECT_TRUE(d.has_walk);
  EXPECT_FALSE(d.all_steps_usable);
  EXPECT_FALSE(d.essential());
}

TEST(Essential, ThreeDimensionalRedundantConstraint) {
  const auto s = parse_stepset("(1,1,1);(0,1,1);(0,1,-1);(-1,0,0);(-1,1,0);(-1,-1,0)");
  const auto d = diagnose_orthant(s, kOrthantEssentialHorizon);
  EXPECT_TRUE(d.has_walk);
  EXPECT_TRUE(d.binds[0]);
  EXPECT_FALSE(d.binds[1]);
  EXPECT_TRUE(d.binds[2]);
  EXPECT_TRUE(is_orthant_essential(parse_stepset("(1,0,0);(-1,0,0);(0,1,0);(0,-1,0);(0,0,1);(0,0,-1)")));
}
