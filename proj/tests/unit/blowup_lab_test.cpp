#include "nfl/blowup_lab.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nfl/bounds.hpp"
#include "nfl/distributions.hpp"
#include "nfl/errors.hpp"

namespace nfl {
namespace {

constexpr double kPi = std::numbers::pi;
const LqExponent kL2 = LqExponent::finite(2.0);

TEST(HalfspaceTest, MassesAndBlowups) {
  const std::vector<double> w{1.0};
  EXPECT_DOUBLE_EQ(halfspace_mass(1, 1.0, w, 0.0), 0.5);
  EXPECT_NEAR(halfspace_mass(1, 1.0, w, 2.0), 0.022750131948179195, 1e-15);
  EXPECT_NEAR(halfspace_blowup_mass(1, 1.0, w, 0.0, 2.0, kL2), 0.9772498680518208, 1e-15);
  const std::vector<double> w3{1.0, -2.0, 2.0};
  EXPECT_DOUBLE_EQ(halfspace_blowup_mass(3, 1.5, w3, 0.7, 0.0, kL2), halfspace_mass(3, 1.5, w3, 0.7));
  EXPECT_NEAR(halfspace_blowup_mass(3, 1.5, w3, 0.7, 1e3, kL2), 1.0, 1e-15);
  EXPECT_NEAR(halfspace_blowup_mass(3, 1.0, w3, 3.0, 1.0, LqExponent::infinity()),
              std_normal_cdf((-3.0 + 5.0) / 3.0), 1e-15);
  EXPECT_THROW(halfspace_mass(2, 1.0, std::vector<double>{0.0, 0.0}, 0.0), DomainError);
}

TEST(HalfspaceTest, MonteCarloAgreement) {
  const std::vector<double> w{0.6, -0.8, 0.0};
  const ClassConditional cond(0, IsotropicGaussian{{0.0, 0.0, 0.0}, 1.3});
  RngStream rng(41, 0);
  const int n = 1000000;
  std::int64_t hits = 0;
  std::vector<double> x(3);
  for (int i = 0; i < n; ++i) {
    draw_into(cond, rng, x);
    hits += 0.6 * x[0] - 0.8 * x[1] >= 1.0;
  }
  const auto ci = wilson_interval(hits, n);
  const double exact = halfspace_mass(3, 1.3, w, 1.0);
  EXPECT_LE(ci.lo, exact);
  EXPECT_GE(ci.hi, exact);
}

TEST(CapTest, ClosedFormsOnS2) {
  EXPECT_NEAR(cap_mass(3, kPi / 2), 0.5, 1e-15);
  for (double theta = 0.0; theta <= kPi; theta += 0.01) {
    EXPECT_NEAR(cap_mass(3, theta), (1 - std::cos(theta)) / 2, 1e-12) << theta;
  }
  EXPECT_NEAR(cap_mass(3, kPi / 3), 0.25, 1e-14);
  EXPECT_EQ(cap_mass(5, 0.0), 0.0);
  EXPECT_EQ(cap_mass(5, kPi), 1.0);
  EXPECT_THROW(cap_mass(3, -0.1), DomainError);
  EXPECT_THROW(cap_mass(1, 1.0), DomainError);
}

TEST(CapTest, ReferenceValues) {
  EXPECT_NEAR(cap_mass(10, 1.0), 0.04309259558648775, 1e-13);
  EXPECT_NEAR(cap_mass(500, 1.4) / 6.599217485206818e-5, 1.0, 1e-10);
  EXPECT_NEAR(cap_mass(4, 2.5), 0.9483922538229255, 1e-13);
  EXPECT_NEAR(cap_mass(2, 1.0), 1.0 / kPi, 1e-13);
}

TEST(CapTest, MonteCarloAgreement) {
  RngStream rng(42, 0);
  const int n = 1000000;
  std::int64_t hits = 0;
  for (int i = 0; i < n; ++i) {
    const auto x = sample_sphere_uniform(1.0, 10, rng);
    hits += x[0] >= std::cos(1.0);
  }
  const auto ci = wilson_interval(hits, n);
  EXPECT_LE(ci.lo, cap_mass(10, 1.0));
  EXPECT_GE(ci.hi, cap_mass(10, 1.0));
}

TEST(CapTest, BlowupAndInverse) {
  EXPECT_NEAR(cap_blowup_mass(3, 1.0, kPi / 3, kPi / 6), 0.5, 1e-14);
  EXPECT_DOUBLE_EQ(cap_blowup_mass(3, 2.0, 1.0, 0.0), cap_mass(3, 1.0));
  EXPECT_DOUBLE_EQ(cap_blowup_mass(3, 1.0, 3.0, 1.0), 1.0);
  for (int p : {3, 10, 500}) {
    for (double m : {0.001, 0.1, 0.5, 0.9}) EXPECT_NEAR(cap_mass(p, cap_angle_for_mass(p, m)), m, 1e-12);
  }
}

TEST(BlowupCaseTest, ConstantsAndMasses) {
  const auto g = gaussian_halfspace_case(10, 2.0, 0.01);
  EXPECT_NEAR(g.mass(), 0.01, 1e-13);
  EXPECT_DOUBLE_EQ(g.c(), 4.0);
  const auto s = sphere_cap_case(11, 2.0, 0.1);
  EXPECT_NEAR(s.mass(), 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(s.c(), 0.4);
  EXPECT_GE(s.blowup_mass(0.5), s.mass());
}

TEST(LemmaTest, WorkedExampleHasPositiveSlack) {
  const auto bc = gaussian_halfspace_case(1, 1.0, 0.5);
  const auto rows = evaluate_blowup(bc, {2.0});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].exact, 0.9772498680518208, 1e-14);
  EXPECT_NEAR(rows[0].bound, 0.2870379854614194, 1e-14);
  EXPECT_GT(rows[0].slack, 0.0);
  EXPECT_TRUE(verify_blowup_lemma(bc, {2.0}).empty());
}

TEST(LemmaTest, GridStartsAtThreshold) {
  const auto bc = sphere_cap_case(500, 1.0, 0.1);
  const auto grid = blowup_eps_grid(bc);
  ASSERT_EQ(grid.size(), 50u);
  EXPECT_NEAR(grid.front(), blowup_threshold(bc.c(), bc.mass()), 1e-15);
  EXPECT_NEAR(grid.back(), grid.front() + 8 * std::sqrt(bc.c()), 1e-12);
  EXPECT_TRUE(verify_blowup_lemma(bc, grid).empty());
}

TEST(LemmaTest, FullMatrixHasNoViolations) {
  const auto cases = lemma_case_matrix();
  EXPECT_EQ(cases.size(), 24u);
  for (const auto& bc : cases) {
    const auto rows = evaluate_blowup(bc, blowup_eps_grid(bc));
    for (const auto& r : rows) EXPECT_GE(r.slack, -1e-12) << r.case_id << " eps=" << r.eps;
  }
}

TEST(LemmaTest, DetectsViolationWhenConstantIsTooSmall) {
  // Scoring a sigma = 2 half-space against the sigma = 1 constant must fail somewhere.
  const auto bc = gaussian_halfspace_case(1, 2.0, 0.1);
  bool violated = false;
  for (double eps = blowup_threshold(1.0, 0.1); eps < 10; eps += 0.1) {
    violated |= bc.blowup_mass(eps) < blowup_lower_bound(1.0, 0.1, eps) - 1e-12;
  }
  EXPECT_TRUE(violated);
}

}  // namespace
}  // namespace nfl
