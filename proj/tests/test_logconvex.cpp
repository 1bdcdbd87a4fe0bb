#include <gtest/gtest.h>

#include <cmath>

#include "walkgrowth/logconvex.hpp"

using namespace walkgrowth;
using namespace walkgrowth::logconvex;

TEST(Minimize1D, ClosedForms) {
  const Term1D zero_drift[] = {{1, 1}, {-1, 1}};
  EXPECT_NEAR(minimize_1d(zero_drift).t, 0.0, 1e-15);
  const Term1D three[] = {{1, 1}, {-1, 3}};
  EXPECT_NEAR(std::exp(minimize_1d(three).t), std::sqrt(3.0), 1e-13);
  const Term1D two[] = {{1, 1}, {-1, 2}};
  EXPECT_NEAR(std::exp(minimize_1d(two).t), std::sqrt(2.0), 1e-13);
}

TEST(Minimize1D, MixedMagnitudes) {
  // f(t) = e^{1000 t} + e^{-0.001 t}: minimizer t = log(1e-6)/1000.001
  const Term1D terms[] = {{1000, 1}, {-0.001, 1}};
  const auto m = minimize_1d(terms);
  EXPECT_NEAR(m.t, std::log(1e-6) / 1000.001, 1e-12);
}

TEST(Minimize1D, OneSignedThrows) {
  const Term1D pos[] = {{1, 1}, {2, 1}};
  EXPECT_THROW(minimize_1d(pos), no_critical_point);
  const Term1D zeros[] = {{0, 3}};
  EXPECT_THROW(minimize_1d(zeros), no_critical_point);
}

TEST(Evaluate, SlopeAndCurvature) {
  const Term1D terms[] = {{2, 1}, {-1, 2}};
  const double t = 0.3;
  const auto e = evaluate(terms, t);
  const double f = std::exp(2 * t) + 2 * std::exp(-t);
  const double f1 = 2 * std::exp(2 * t) - 2 * std::exp(-t);
  const double f2 = 4 * std::exp(2 * t) + 2 * std::exp(-t);
  EXPECT_NEAR(e.log_value, std::log(f), 1e-14);
  EXPECT_NEAR(e.slope, f1 / f, 1e-14);
  EXPECT_NEAR(e.curvature, f2 / f - (f1 / f) * (f1 / f), 1e-13);
  EXPECT_NEAR(value(terms, t), f, 1e-13);
}

TEST(Evaluate, NoOverflowAtLargeArguments) {
  const Term1D terms[] = {{1, 1}, {-1, 1}};
  const auto e = evaluate(terms, 800.0);
  EXPECT_TRUE(std::isfinite(e.log_value));
  EXPECT_NEAR(e.log_value, 800.0, 1e-12);
}

TEST(MinimizeND, SymmetricPlane) {
  Eigen::MatrixXd a(4, 2);
  a << 1, 0, -1, 0, 0, 1, 0, -1;
  const auto m = minimize(a, Eigen::VectorXd::Ones(4));
  EXPECT_TRUE(m.converged);
  EXPECT_FALSE(m.escaped);
  EXPECT_NEAR(m.t.norm(), 0.0, 1e-12);
  EXPECT_NEAR(std::exp(m.log_value), 4.0, 1e-12);
}

TEST(MinimizeND, InteriorMinimum) {
  // N, SW, S, SE: minimum at (1, sqrt 3)
  Eigen::MatrixXd a(4, 2);
  a << 0, 1, -1, -1, 0, -1, 1, -1;
  const auto m = minimize(a, Eigen::VectorXd::Ones(4));
  ASSERT_TRUE(m.converged);
  EXPECT_NEAR(m.t(0), 0.0, 1e-10);
  EXPECT_NEAR(m.t(1), 0.5 * std::log(3.0), 1e-10);
}

TEST(MinimizeND, EscapeWhenNoInteriorMinimum) {
  // E, W, N, S, and z^-1 only: P decreases forever in z.
  Eigen::MatrixXd a(5, 3);
  a << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, -1;
  const auto m = minimize(a, Eigen::VectorXd::Ones(5));
  EXPECT_FALSE(m.converged);
  EXPECT_TRUE(m.escaped);
}

TEST(MinimizeND, FlatDirectionIsNotConvergence) {
  // N, NW, SE: the infimum 2 is approached only as x, y -> 0 together.
  Eigen::MatrixXd a(3, 2);
  a << 0, 1, -1, 1, 1, -1;
  const auto m = minimize(a, Eigen::VectorXd::Ones(3));
  EXPECT_FALSE(m.converged);
  EXPECT_NEAR(std::exp(m.log_value), 2.0, 1e-6);
}
