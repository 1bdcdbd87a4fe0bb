#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "walkgrowth/smallsteps.hpp"

using namespace walkgrowth;

namespace {
const double kSqrt3 = std::sqrt(3.0);

const std::vector<ModelSurveyEntry>& census() {
  static const auto rows = enumerate_small_models();
  return rows;
}
}  // namespace

TEST(FRValues, ExcursionAxisModel) {
  const auto v = fr_values(parse_stepset("N,SW,S,SE"));
  EXPECT_EQ(v.cardinality, 4);
  ASSERT_TRUE(v.rho0_inv);
  EXPECT_NEAR(*v.rho0_inv, 2 * kSqrt3, 1e-12);
  EXPECT_NEAR(v.rhoY_inv, 2 * kSqrt3, 1e-15);
}

TEST(FRValues, SimpleWalk) {
  const auto v = fr_values(parse_stepset("N,E,S,W"));
  EXPECT_EQ(v.rhoX_inv, 4.0);
  EXPECT_EQ(v.rhoY_inv, 4.0);
  ASSERT_TRUE(v.rho0_inv);
  EXPECT_EQ(*v.rho0_inv, 4.0);
}

TEST(FRValues, RejectsLargeSteps) {
  EXPECT_THROW(fr_values(parse_stepset("(2,0);(0,-1)")), unsupported_dimension);
  EXPECT_THROW(fr_values(parse_stepset("(1,0,0)")), unsupported_dimension);
}

TEST(FRClassify, Examples) {
  auto p = fr_classify(parse_stepset("N,SW,S,SE"));
  EXPECT_EQ(p.drift_x, Sign::zero);
  EXPECT_EQ(p.drift_y, Sign::negative);
  EXPECT_EQ(p.covariance, Sign::zero);
  EXPECT_EQ(p.chosen, FRFormula::ambiguous_equal);
  EXPECT_EQ(p.detail, "rho0=rhoY");
  EXPECT_NEAR(p.predicted_growth, 2 * kSqrt3, 1e-12);

  p = fr_classify(parse_stepset("N,E,S,W"));
  EXPECT_EQ(p.chosen, FRFormula::cardinality);
  EXPECT_EQ(p.predicted_growth, 4.0);

  p = fr_classify(parse_stepset("N,NE,E"));
  EXPECT_EQ(p.chosen, FRFormula::cardinality);
  EXPECT_EQ(p.predicted_growth, 3.0);
}

TEST(FRClassify, MixedDriftRows) {
  // (+,-): rhoY
  auto p = fr_classify(parse_stepset("E,NE,S,SE"));
  EXPECT_EQ(p.chosen, FRFormula::rhoY);
  // (-,+): rhoX
  p = fr_classify(parse_stepset("N,NW,W,E"));
  EXPECT_EQ(p.drift_x, Sign::negative);
  EXPECT_EQ(p.drift_y, Sign::positive);
  EXPECT_EQ(p.chosen, FRFormula::rhoX);
  // (-,-): rho0
  p = fr_classify(parse_stepset("N,W,SE,S,SW"));
  EXPECT_EQ(p.chosen, FRFormula::rho0);
  EXPECT_NEAR(p.predicted_growth, 4.2148, 5e-4);
}

TEST(FRClassify, ReflectionCoherence) {
  for (const auto& e : census()) {
    const auto a = fr_classify(e.model), b = fr_classify(swap_axes(e.model));
    EXPECT_NEAR(a.predicted_growth, b.predicted_growth, 1e-9) << to_compass_string(e.model);
  }
}

TEST(Census, CountsAndOrder) {
  const auto& rows = census();
  EXPECT_EQ(rows.size(), 79u);
  std::size_t applicable = 0;
  for (const auto& e : rows) applicable += e.fr_applicable;
  EXPECT_EQ(applicable, 74u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i - 1].model, rows[i].model);
}

TEST(Census, RepresentativesAreLeastUnderTransposition) {
  std::set<StepSet> seen;
  for (const auto& e : census()) {
    EXPECT_TRUE(e.representative);
    EXPECT_FALSE(swap_axes(e.model) < e.model);
    EXPECT_TRUE(seen.insert(swap_axes(e.model)).second) << "two representatives of one class";
    EXPECT_FALSE(e.model.contains({0, 0}));
  }
  bool simple = false;
  for (const auto& e : census()) simple |= e.model == parse_stepset("N,E,S,W");
  EXPECT_TRUE(simple);
}

TEST(Census, SingularModelsLackInteriorCriticalPoint) {
  std::vector<StepSet> singular;
  for (const auto& e : census())
    if (!e.fr_applicable) singular.push_back(e.model);
  ASSERT_EQ(singular.size(), 5u);
  for (const auto& s : singular) {
    EXPECT_TRUE(s.contains({-1, 1}) && s.contains({1, -1}));
    for (const auto& st : s.steps()) EXPECT_GE(st.v[0] + st.v[1], 0);
  }
}

TEST(Census, ClosedFormEqualsBestAngle) {
  for (const auto& e : census())
    if (e.fr_applicable) EXPECT_NEAR(e.prediction.predicted_growth, e.min_theta_bound, 1e-9) << to_compass_string(e.model);
}

TEST(Location, NormalizationAndPattern) {
  const auto n = normalize_drift(parse_stepset("N,W,SE,S,SW"));
  const auto d = drift(n.model);
  EXPECT_GE(d[0], d[1]);
  EXPECT_GE(d[1], 0);
  EXPECT_TRUE(n.reflected_x && n.reflected_y && n.swapped);
  const auto loc = expected_location(n.model);
  EXPECT_EQ(loc.alpha, Sign::negative);
  EXPECT_EQ(loc.beta, Sign::negative);

  for (const auto& e : census()) {
    const auto m = normalize_drift(e.model);
    const auto cp = critical_point(m.model);
    if (!cp.converged) continue;
    const auto want = expected_location(m.model);
    EXPECT_EQ(location_of(cp.coordinates[0], 1e-9), want.alpha) << to_compass_string(m.model);
    EXPECT_EQ(location_of(cp.coordinates[1], 1e-9), want.beta) << to_compass_string(m.model);
  }
}

TEST(SurveyOutput, CsvAndJson) {
  std::ostringstream os;
  write_survey_csv(os, census());
  const auto text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 80);
  EXPECT_EQ(text.rfind("stepset,size,drift_x,drift_y,covariance,formula,predicted_growth,theta_star,min_bound,fr_applicable\n", 0), 0u);
  EXPECT_NE(text.find("\"SW,W,NW,E\",4,-2,0,0,ambiguous_equal,3.46410161514,1.57079632679,3.46410161514,true"), std::string::npos);

  const auto j = survey_json(census());
  ASSERT_EQ(j.size(), 79u);
  EXPECT_TRUE(j[0].contains("fr_applicable"));
}

TEST(SurveyOutput, Deterministic) {
  std::ostringstream a, b;
  write_survey_csv(a, enumerate_small_models(1));
  write_survey_csv(b, enumerate_small_models(4));
  EXPECT_EQ(a.str(), b.str());
}
