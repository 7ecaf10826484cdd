#include "nfl/drobust.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "nfl/errors.hpp"

namespace nfl {
namespace {

DrInstance worked() { return DrInstance{{{0.5, 1.0}, {0.5, 3.0}}, 1.0}; }

DrInstance random_instance(RngStream& rng) {
  const int n = 1 + static_cast<int>(rng.next_u64() % 12);
  DrInstance inst;
  double total = 0;
  for (int i = 0; i < n; ++i) {
    DrAtom a;
    a.mass = 0.05 + rng.uniform();
    total += a.mass;
    const double u = rng.uniform();
    a.distance = u < 0.2 ? 0.0 : (u < 0.4 ? std::floor(4 * rng.uniform()) : 3 * rng.uniform());
    inst.atoms.push_back(a);
  }
  for (auto& a : inst.atoms) a.mass /= total;
  inst.eps = 2 * rng.uniform();
  return inst;
}

TEST(DrobustTest, WorkedInstance) {
  const auto inst = worked();
  EXPECT_NEAR(dual_objective(1.0 / 3.0, inst), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(dual_objective(1.0, inst), 1.0, 1e-15);
  EXPECT_NEAR(dual_objective(0.0, inst), 1.0, 1e-15);
  const auto sol = solve_dual(inst);
  EXPECT_NEAR(sol.lambda_star, 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(sol.radius, 3.0);
  EXPECT_NEAR(sol.dual_value, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(greedy_primal(inst), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(sol.duality_gap, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(adversarial_error(inst), 0.5);
}

TEST(DrobustTest, SingleAtomMovesHalfItsMass) {
  const DrInstance inst{{{1.0, 2.0}}, 1.0};
  EXPECT_NEAR(greedy_primal(inst), 0.5, 1e-15);
  EXPECT_NEAR(solve_dual(inst).dual_value, 0.5, 1e-15);
  EXPECT_EQ(adversarial_error(inst), 0.0);
}

TEST(DrobustTest, EdgeCases) {
  const DrInstance zero{{{0.4, 0.0}, {0.6, 2.0}}, 0.0};
  EXPECT_NEAR(greedy_primal(zero), 0.4, 1e-15);
  EXPECT_NEAR(solve_dual(zero).dual_value, 0.4, 1e-15);
  const DrInstance huge{{{0.4, 1.0}, {0.6, 2.0}}, 100.0};
  const auto sol = solve_dual(huge);
  EXPECT_NEAR(sol.dual_value, 1.0, 1e-15);
  EXPECT_EQ(sol.lambda_star, 0.0);
  EXPECT_TRUE(std::isinf(sol.radius));
  EXPECT_THROW(DrInstance({{{-0.1, 1.0}}, 1.0}).validate(), DomainError);
  EXPECT_THROW(DrInstance({{{0.7, 1.0}, {0.7, 1.0}}, 1.0}).validate(), DomainError);
  EXPECT_THROW(DrInstance({{{0.5, -1.0}}, 1.0}).validate(), DomainError);
  EXPECT_THROW(DrInstance({{{0.5, 1.0}}, -1.0}).validate(), DomainError);
}

TEST(DrobustTest, DualityAndDominanceOnRandomInstances) {
  RngStream rng(77, 0);
  for (int t = 0; t < 5000; ++t) {
    const auto inst = random_instance(rng);
    const auto sol = solve_dual(inst);
    EXPECT_NEAR(sol.dual_value, sol.primal_value, 1e-9);
    EXPECT_GE(sol.primal_value + 1e-12, adversarial_error(inst));
    EXPECT_LE(sol.primal_value, inst.total_mass() + 1e-12);
    for (double lam : {0.0, 0.1, 0.5, 1.0, 3.0}) EXPECT_GE(dual_objective(lam, inst) + 1e-12, sol.dual_value);
    if (sol.lambda_star > 0) {
      const auto br = dual_bracket(inst, sol.radius);
      EXPECT_LE(br.lo, sol.dual_value + 1e-12);
      EXPECT_GE(br.hi, sol.dual_value - 1e-12);
    }
  }
}

TEST(DrobustTest, ValueIsMonotoneInBudget) {
  RngStream rng(78, 0);
  for (int t = 0; t < 200; ++t) {
    auto inst = random_instance(rng);
    double prev = -1;
    for (double eps = 0; eps < 3; eps += 0.25) {
      inst.eps = eps;
      const double v = greedy_primal(inst);
      EXPECT_GE(v + 1e-12, prev);
      prev = v;
    }
  }
}

TEST(DrCurveTest, LinearGaussianCurve) {
  const auto h = LinearClassifier::make(std::vector<double>(10, 1.0), 0.0);
  const LabeledSampler s({ClassConditional(0, IsotropicGaussian{std::vector<double>(10, -0.2), 1.0}),
                          ClassConditional(1, IsotropicGaussian{std::vector<double>(10, 0.2), 1.0})});
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 2.0};
  const auto a = dr_error_curve(h, s, 1, grid, 2000, LqExponent::finite(2.0), 4, 1);
  const auto b = dr_error_curve(h, s, 1, grid, 2000, LqExponent::finite(2.0), 4, 3);
  ASSERT_EQ(a.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a[i].err_dr, b[i].err_dr);
    EXPECT_GE(a[i].err_dr + 1e-12, a[i].err_adv);
    EXPECT_TRUE(a[i].bracket_ok);
    if (i > 0) {
      EXPECT_GE(a[i].err_dr + 1e-12, a[i - 1].err_dr);
    }
  }
  EXPECT_NEAR(a[0].err_dr, a[0].err_adv, 1e-12);
}

}  // namespace
}  // namespace nfl
