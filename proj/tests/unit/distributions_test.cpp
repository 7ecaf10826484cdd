#include "nfl/distributions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nfl/bounds.hpp"
#include "nfl/errors.hpp"
#include "nfl/scalar.hpp"

namespace nfl {
namespace {

TEST(ClassConditionalTest, SigmaPerFamily) {
  EXPECT_DOUBLE_EQ(ClassConditional(0, IsotropicGaussian{{0, 0}, 2.5}).sigma(), 2.5);
  EXPECT_DOUBLE_EQ(ClassConditional(0, DiagonalGaussian{{0, 0, 0}, {0.5, 3.0, 1.0}}).sigma(), 3.0);
  EXPECT_DOUBLE_EQ(ClassConditional(0, SphereUniform{3.0, 10}).sigma(), 1.0);
  EXPECT_NEAR(ClassConditional(0, HypercubePushforward{5}).sigma(), 1 / std::sqrt(2 * std::numbers::pi),
              1e-15);
  EXPECT_DOUBLE_EQ(ClassConditional(1, ToyFeatureBlock{10, 0.1, 1}).sigma(), 1.0);
  EXPECT_EQ(ClassConditional(0, SphereUniform{1.0, 7}).support_dim(), 7);
}

TEST(ClassConditionalTest, RejectsBadParameters) {
  EXPECT_THROW(ClassConditional(0, IsotropicGaussian{{0.0}, 0.0}), DomainError);
  EXPECT_THROW(ClassConditional(0, DiagonalGaussian{{0.0, 0.0}, {1.0}}), DomainError);
  EXPECT_THROW(ClassConditional(0, ToyFeatureBlock{1, 0.1, 1}), DomainError);
  EXPECT_THROW(ClassConditional(0, ToyFeatureBlock{5, 0.1, 0}), DomainError);
}

TEST(SamplerTest, GaussianMomentsMatch) {
  const ClassConditional cond(0, DiagonalGaussian{{1.0, -2.0}, {0.5, 2.0}});
  RngStream rng(11, 0);
  const int n = 100000;
  double m0 = 0, m1 = 0, v0 = 0, v1 = 0;
  for (int i = 0; i < n; ++i) {
    const auto x = draw(cond, rng);
    m0 += x[0];
    m1 += x[1];
    v0 += (x[0] - 1) * (x[0] - 1);
    v1 += (x[1] + 2) * (x[1] + 2);
  }
  EXPECT_NEAR(m0 / n, 1.0, 5 * 0.5 / std::sqrt(n));
  EXPECT_NEAR(m1 / n, -2.0, 5 * 2.0 / std::sqrt(n));
  EXPECT_NEAR(v0 / n, 0.25, 0.01);
  EXPECT_NEAR(v1 / n, 4.0, 0.1);
}

TEST(SamplerTest, SpherePointsLieOnSphereAndAreCentered) {
  RngStream rng(12, 0);
  std::vector<double> mean(4, 0.0);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto x = sample_sphere_uniform(2.0, 4, rng);
    EXPECT_NEAR(lq_norm(x, LqExponent::finite(2.0)), 2.0, 1e-12);
    for (int j = 0; j < 4; ++j) mean[j] += x[j] / n;
  }
  for (double m : mean) EXPECT_NEAR(m, 0.0, 5 * 1.0 / std::sqrt(n));
}

TEST(SamplerTest, HypercubePushforwardIsUniform) {
  EXPECT_NEAR(hypercube_pushforward(std::vector<double>{0.0})[0], 0.5, 1e-16);
  const ClassConditional cond(0, HypercubePushforward{3});
  RngStream rng(13, 0);
  const int n = 50000;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    for (double v : draw(cond, rng)) {
      ASSERT_GT(v, 0.0);
      ASSERT_LT(v, 1.0);
      below += v < 0.25;
    }
  }
  EXPECT_NEAR(below / (3.0 * n), 0.25, 0.01);
}

TEST(SamplerTest, ToyBlockStatistics) {
  RngStream rng(14, 0);
  const int p = 50;
  const double eta = 0.3;
  const int n = 20000;
  int agree = 0;
  double mean = 0;
  std::vector<double> x(p);
  for (int i = 0; i < n; ++i) {
    sample_toy_given_label(p, eta, -1, rng, x);
    ASSERT_TRUE(x[0] == 1.0 || x[0] == -1.0);
    agree += x[0] == -1.0;
    for (int j = 1; j < p; ++j) mean += x[j] / (static_cast<double>(n) * (p - 1));
  }
  EXPECT_NEAR(agree / static_cast<double>(n), 0.7, 0.015);
  EXPECT_NEAR(mean, -eta, 0.01);
}

TEST(SamplerTest, ToyLabelsAreBalanced) {
  RngStream rng(15, 0);
  int plus = 0;
  for (int i = 0; i < 20000; ++i) plus += sample_toy(5, 0.1, rng).label == 1;
  EXPECT_NEAR(plus / 20000.0, 0.5, 0.02);
  EXPECT_EQ(toy_class_of(1), 1);
  EXPECT_EQ(toy_class_of(-1), 0);
  EXPECT_EQ(toy_sign_of(0), -1);
}

TEST(LabeledSamplerTest, PriorsAndValidation) {
  const LabeledSampler s({ClassConditional(0, IsotropicGaussian{{0.0}, 1.0}),
                          ClassConditional(1, IsotropicGaussian{{5.0}, 1.0})},
                         {0.2, 0.8});
  RngStream rng(16, 0);
  int ones = 0;
  for (int i = 0; i < 20000; ++i) ones += s.sample(rng).label == 1;
  EXPECT_NEAR(ones / 20000.0, 0.8, 0.02);
  EXPECT_EQ(s.conditional(1).label(), 1);
  EXPECT_ANY_THROW(LabeledSampler({ClassConditional(0, IsotropicGaussian{{0.0}, 1.0})}, {0.5, 0.5}));
  EXPECT_ANY_THROW(LabeledSampler({ClassConditional(0, IsotropicGaussian{{0.0}, 1.0}),
                                   ClassConditional(1, IsotropicGaussian{{0.0, 0.0}, 1.0})}));
}

TEST(T2Test, LipschitzConcentrationOfGaussianNorm) {
  // f(x) = ||x||_2 is 1-Lipschitz, so P(f - Ef >= t) <= exp(-t^2 / (2 sigma^2)).
  const double sigma = 1.5;
  const int p = 20;
  const ClassConditional cond(0, IsotropicGaussian{std::vector<double>(p, 0.0), sigma});
  RngStream rng(17, 0);
  const int n = 50000;
  std::vector<double> f(n);
  double mean = 0;
  for (int i = 0; i < n; ++i) {
    f[i] = lq_norm(draw(cond, rng), LqExponent::finite(2.0));
    mean += f[i] / n;
  }
  for (double t : {0.5, 1.0, 2.0}) {
    int exceed = 0;
    for (double v : f) exceed += v - mean >= t;
    const auto ci = wilson_interval(exceed, n);
    EXPECT_LE(ci.lo, std::exp(-t * t / (2 * sigma * sigma)));
  }
}

}  // namespace
}  // namespace nfl
