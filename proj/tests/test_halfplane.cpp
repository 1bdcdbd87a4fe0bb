#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "walkgrowth/halfplane.hpp"

using namespace walkgrowth;

namespace {

std::vector<double> values(const Exponent1D& a) {
  std::vector<double> out;
  for (const auto& t : a.terms())
    for (std::int64_t k = 0; k < t.mult; ++k) out.push_back(t.value);
  return out;
}

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

TEST(Project, AxisNormals) {
  const auto s = parse_stepset("N,E,SW");
  EXPECT_EQ(values(project(s, angle_normal(0.0))), (std::vector<double>{-1, 0, 1}));
  EXPECT_EQ(values(project(s, angle_normal(kHalfPi))), (std::vector<double>{-1, 0, 1}));
  EXPECT_EQ(values(project(parse_stepset("N,SW,S,SE"), angle_normal(0.0))), (std::vector<double>{-1, -1, -1, 1}));
}

TEST(Project, MergesNearlyEqualExponents) {
  const auto a = Exponent1D({{1.0, 1}, {1.0 + 1e-16, 2}, {-0.5, 1}});
  ASSERT_EQ(a.terms().size(), 2u);
  EXPECT_EQ(a.terms()[1].mult, 3);
}

TEST(Project, InvalidNormals) {
  const auto s = parse_stepset("N,S");
  const double zero[] = {0.0, 0.0}, neg[] = {-0.6, 0.8}, longer[] = {1.0, 1.0}, short_[] = {1.0};
  EXPECT_THROW(project(s, zero), invalid_normal);
  EXPECT_THROW(project(s, neg), invalid_normal);
  EXPECT_THROW(project(s, longer), invalid_normal);
  EXPECT_THROW(project(s, short_), invalid_normal);
}

TEST(Tau, Examples) {
  EXPECT_NEAR(tau_of(Exponent1D::of({1, -1})), 1.0, 1e-15);
  EXPECT_NEAR(tau_of(Exponent1D::of({1, -1, -1, -1})), kSqrt3, 1e-13);
  EXPECT_NEAR(tau_of(Exponent1D::of({1, -1, -1})), std::sqrt(2.0), 1e-13);
  EXPECT_THROW(tau_of(Exponent1D::of({1, 2})), no_critical_point);
  EXPECT_THROW(tau_of(Exponent1D::of({0, 0})), no_critical_point);
}

TEST(Tau, RelativeSlopeTolerance) {
  const auto a = Exponent1D::of({2.5, -0.3, -1.7, 0.4});
  const double tau = tau_of(a);
  EXPECT_LE(std::abs(a.chi_prime(tau)) * tau / a.chi(tau), 1e-12);
}

TEST(HalfPlaneGrowth, Examples) {
  EXPECT_NEAR(half_plane_growth(Exponent1D::of({1, -1, -1, -1})), 2 * kSqrt3, 1e-13);
  EXPECT_EQ(half_plane_growth(Exponent1D::of({1, 1, -1})), 3.0);
  EXPECT_NEAR(half_plane_growth(Exponent1D::of({1, -1, -1})), 2 * std::sqrt(2.0), 1e-13);
  EXPECT_EQ(half_plane_growth(Exponent1D::of({1, 2})), 2.0);
  EXPECT_EQ(half_plane_growth(Exponent1D::of({0, 0, -1})), 2.0);
  EXPECT_THROW(half_plane_growth(Exponent1D::of({-1, -2})), bound_unavailable);
  EXPECT_THROW(half_plane_growth(Exponent1D({})), std::invalid_argument);
}

TEST(GrowthAtAngle, Examples) {
  const auto b = growth_at_angle(parse_stepset("N,SW,S,SE"), 0.0);
  EXPECT_NEAR(b.growth, 2 * kSqrt3, 1e-13);
  EXPECT_EQ(b.regime, DriftRegime::negative);
  ASSERT_TRUE(b.tau);
  EXPECT_NEAR(*b.tau, kSqrt3, 1e-13);
  for (double t : {0.0, 0.3, 1.0, kHalfPi}) EXPECT_EQ(growth_at_angle(parse_stepset("N,E,S,W"), t).growth, 4.0);
  EXPECT_NEAR(growth_at_angle(parse_stepset("N,W,SE,S,SW"), 0.2281 * std::numbers::pi).growth, 4.2148, 5e-4);
}

TEST(GrowthAtAngle, Errors) {
  EXPECT_THROW(growth_at_angle(parse_stepset("N,S"), -0.1), std::out_of_range);
  EXPECT_THROW(growth_at_angle(parse_stepset("N,S"), 1.6), std::out_of_range);
  EXPECT_THROW(growth_at_angle(parse_stepset("(1,0,0)"), 0.0), unsupported_dimension);
}

TEST(CriticalPoint, Examples) {
  auto cp = critical_point(parse_stepset("N,SW,S,SE"));
  ASSERT_TRUE(cp.converged);
  EXPECT_NEAR(cp.coordinates[0], 1.0, 1e-12);
  EXPECT_NEAR(cp.coordinates[1], kSqrt3, 1e-12);
  EXPECT_NEAR(cp.inventory_value, 2 * kSqrt3, 1e-13);
  EXPECT_LE(cp.residual, 1e-12 * cp.inventory_value);

  cp = critical_point(parse_stepset("N,E,S,W"));
  ASSERT_TRUE(cp.converged);
  EXPECT_EQ(cp.coordinates, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(cp.inventory_value, 4.0);

  cp = critical_point(parse_stepset("N,W,SE,S,SW"));
  ASSERT_TRUE(cp.converged);
  EXPECT_NEAR(cp.coordinates[0], 1.6760, 5e-4);
  EXPECT_NEAR(cp.coordinates[1], 1.8091, 5e-4);
}

TEST(CriticalPoint, SingularModelHasNone) {
  EXPECT_FALSE(critical_point(parse_stepset("N,NW,SE")).converged);
  EXPECT_FALSE(critical_point(parse_stepset("NW,SE,NE")).converged);
}

TEST(BestUpperBound, Examples) {
  auto b = best_upper_bound(parse_stepset("N,SW,S,SE"));
  EXPECT_NEAR(b.value, 2 * kSqrt3, 1e-12);
  EXPECT_EQ(b.kind, BoundKind::upper);
  EXPECT_EQ(*b.certificate.theta, 0.0);

  b = best_upper_bound(parse_stepset("N,W,SE,S,SW"));
  EXPECT_NEAR(b.value, 4.2148, 5e-4);
  EXPECT_NEAR(*b.certificate.theta / std::numbers::pi, 0.2281, 5e-4);
  EXPECT_NEAR(std::tan(*b.certificate.theta), 0.8712, 5e-4);

  b = best_upper_bound(parse_stepset("N,E,S,W"));
  EXPECT_EQ(b.value, 4.0);
  EXPECT_EQ(*b.certificate.theta, 0.0);
}

TEST(BestUpperBound, RejectsInessential) {
  EXPECT_THROW(best_upper_bound(parse_stepset("N,E")), inessential_model);
  EXPECT_THROW(best_upper_bound(parse_stepset("NE,SW")), inessential_model);
}

TEST(BestUpperBound, PositiveQuadrantDriftUsesEndpoint) {
  // Drift (+,+) puts the critical point below (1,1); the bound is |S| at an endpoint.
  const auto s = parse_stepset("N,E,SW,NE");
  const auto b = best_upper_bound(s);
  EXPECT_EQ(b.value, 4.0);
}

TEST(ThetaSweep, Examples) {
  for (const auto& b : theta_sweep(parse_stepset("N,E,S,W"), 5)) EXPECT_EQ(b.growth, 4.0);

  const auto sweep = theta_sweep(parse_stepset("N,SW,S,SE"), 3);
  ASSERT_EQ(sweep.size(), 3u);
  EXPECT_EQ(sweep[0].theta, 0.0);
  EXPECT_EQ(sweep[2].theta, kHalfPi);
  EXPECT_NEAR(sweep[0].growth, 2 * kSqrt3, 1e-12);
  EXPECT_GT(sweep[1].growth, sweep[0].growth);
  EXPECT_EQ(sweep[2].growth, 4.0);

  double m = 1e9;
  for (const auto& b : theta_sweep(parse_stepset("N,W,SE,S,SW"), 101)) m = std::min(m, b.growth);
  EXPECT_NEAR(m, 4.2148, 1e-3);
  EXPECT_THROW(theta_sweep(parse_stepset("N,S"), 1), std::invalid_argument);
}

TEST(ThetaSweep, FineGridMatchesBestBound) {
  for (const char* m : {"N,W,SE,S,SW", "N,SW,S,SE", "W,S,NE", "N,NE,S,SW,W"}) {
    const auto s = parse_stepset(m);
    double g = 1e9;
    for (const auto& b : theta_sweep(s, 10001)) g = std::min(g, b.growth);
    EXPECT_NEAR(g, best_upper_bound(s).value, 1e-6) << m;
  }
}
