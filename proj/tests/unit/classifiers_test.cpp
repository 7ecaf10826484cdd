#include "nfl/classifiers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "nfl/errors.hpp"

namespace nfl {
namespace {

MlpClassifier small_mlp(std::uint64_t seed) { return MlpClassifier::initialize({4, 6, 5, 3}, 1.0, seed); }

std::vector<double> random_point(int p, std::uint64_t idx) {
  RngStream rng(99, idx);
  std::vector<double> x(p);
  for (double& v : x) v = rng.normal();
  return x;
}

double mlp_loss(const MlpClassifier& h, std::span<const double> x, int label) {
  return mlp_gradient(h, x, label).loss;
}

TEST(LinearClassifierTest, PredictsBySignWithTiesNegative) {
  const auto h = LinearClassifier::make({1.0, -1.0}, 0.5, 3, 7);
  EXPECT_EQ(predict(h, std::vector<double>{1.0, 0.0}), 3);
  EXPECT_EQ(predict(h, std::vector<double>{0.0, 1.0}), 7);
  EXPECT_EQ(predict(h, std::vector<double>{0.0, 0.5}), 7);
  EXPECT_THROW(h.score(std::vector<double>{1.0}), ShapeError);
}

TEST(LinearClassifierTest, ToyAverageWeights) {
  const auto h = make_toy_average_classifier(5);
  EXPECT_EQ(h.w, (std::vector<double>{0.0, 0.25, 0.25, 0.25, 0.25}));
  EXPECT_EQ(h.b, 0.0);
  EXPECT_THROW(make_toy_average_classifier(1), DomainError);
}

TEST(MlpTest, ArgmaxTiesGoToLowestIndex) {
  Eigen::VectorXd s(4);
  s << 1.0, 3.0, 3.0, -2.0;
  EXPECT_EQ(argmax_lowest(s), 1);
  s << 0.0, 0.0, 0.0, 0.0;
  EXPECT_EQ(argmax_lowest(s), 0);
}

TEST(MlpTest, ShapesAndBatchAgreement) {
  const auto h = small_mlp(1);
  EXPECT_EQ(h.input_dim(), 4);
  EXPECT_EQ(h.num_classes(), 3);
  EXPECT_EQ(h.widths(), (std::vector<int>{4, 6, 5, 3}));
  Eigen::MatrixXd inputs(4, 5);
  for (int c = 0; c < 5; ++c) {
    const auto x = random_point(4, c);
    for (int j = 0; j < 4; ++j) inputs(j, c) = x[j];
  }
  const Eigen::MatrixXd z = h.logits_batch(inputs);
  for (int c = 0; c < 5; ++c) {
    const auto single = h.logits(std::span<const double>(inputs.col(c).data(), 4));
    EXPECT_LT((z.col(c) - single).norm(), 1e-12);
  }
  EXPECT_THROW(h.logits(std::vector<double>{1.0}), ShapeError);
}

TEST(MlpTest, InputGradientMatchesFiniteDifferences) {
  const auto h = small_mlp(2);
  for (int t = 0; t < 20; ++t) {
    auto x = random_point(4, t);
    const int label = t % 3;
    const auto g = mlp_gradient(h, x, label);
    for (int j = 0; j < 4; ++j) {
      const double step = 1e-6;
      auto xp = x;
      auto xm = x;
      xp[j] += step;
      xm[j] -= step;
      const double fd = (mlp_loss(h, xp, label) - mlp_loss(h, xm, label)) / (2 * step);
      EXPECT_NEAR(g.input[j], fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(MlpTest, ParameterGradientMatchesFiniteDifferences) {
  auto h = small_mlp(3);
  const auto x = random_point(4, 50);
  const int label = 2;
  const auto g = mlp_gradient(h, x, label);
  for (std::size_t l = 0; l < h.layers().size(); ++l) {
    for (Eigen::Index r = 0; r < h.layers()[l].weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < h.layers()[l].weight.cols(); ++c) {
        double& w = h.mutable_layers()[l].weight(r, c);
        const double orig = w;
        w = orig + 1e-6;
        const double up = mlp_loss(h, x, label);
        w = orig - 1e-6;
        const double down = mlp_loss(h, x, label);
        w = orig;
        EXPECT_NEAR(g.params[l].weight(r, c), (up - down) / 2e-6, 1e-6);
      }
      double& bias = h.mutable_layers()[l].bias(r);
      const double orig = bias;
      bias = orig + 1e-6;
      const double up = mlp_loss(h, x, label);
      bias = orig - 1e-6;
      const double down = mlp_loss(h, x, label);
      bias = orig;
      EXPECT_NEAR(g.params[l].bias(r), (up - down) / 2e-6, 1e-6);
    }
  }
}

TEST(MlpTest, BatchInputGradientAgreesWithSingle) {
  const auto h = small_mlp(4);
  Eigen::MatrixXd inputs(4, 6);
  std::vector<int> labels;
  for (int c = 0; c < 6; ++c) {
    const auto x = random_point(4, 100 + c);
    for (int j = 0; j < 4; ++j) inputs(j, c) = x[j];
    labels.push_back(c % 3);
  }
  Eigen::MatrixXd logits;
  const Eigen::MatrixXd g = mlp_input_gradient_batch(h, inputs, labels, &logits);
  for (int c = 0; c < 6; ++c) {
    const auto single = mlp_gradient(h, std::span<const double>(inputs.col(c).data(), 4), labels[c]);
    EXPECT_LT((g.col(c) - single.input).norm(), 1e-12);
  }
  EXPECT_LT((logits - h.logits_batch(inputs)).norm(), 1e-12);
}

TEST(MlpTest, LossIsStableForHugeLogits) {
  std::vector<DenseLayer> layers(1);
  layers[0].weight = Eigen::MatrixXd::Identity(2, 2) * 1e4;
  layers[0].bias = Eigen::VectorXd::Zero(2);
  const MlpClassifier h(layers);
  const auto g = mlp_gradient(h, std::vector<double>{1.0, -1.0}, 1);
  EXPECT_TRUE(std::isfinite(g.loss));
  EXPECT_NEAR(g.loss, 2e4, 1e-6);
}

TEST(LinearGradientTest, LogisticLossGradient) {
  const Classifier h = LinearClassifier::make({2.0, -1.0}, 0.0);
  const auto g = loss_input_gradient(h, std::vector<double>{0.0, 0.0}, 1);
  ASSERT_EQ(g.grad.size(), 2u);
  EXPECT_LT(g.grad[0], 0.0);
  EXPECT_GT(g.grad[1], 0.0);
  EXPECT_NEAR(g.grad[0] / g.grad[1], -2.0, 1e-12);
}

TEST(TrainTest, LearnsSeparableGaussians) {
  const LabeledSampler s({ClassConditional(0, IsotropicGaussian{{-2.0, 0.0}, 0.5}),
                          ClassConditional(1, IsotropicGaussian{{2.0, 0.0}, 0.5})});
  const auto train = draw_dataset(s, 1000, 5);
  const auto test = draw_dataset(s, 1000, 6);
  TrainConfig cfg;
  cfg.hidden = {16};
  cfg.epochs = 5;
  cfg.batch_size = 32;
  const auto result = train_mlp(train, 2, cfg);
  EXPECT_EQ(result.epoch_loss.size(), 5u);
  EXPECT_LT(result.epoch_loss.back(), result.epoch_loss.front());
  EXPECT_GT(accuracy(result.model, test), 0.99);
}

TEST(TrainTest, DeterministicAcrossThreadCounts) {
  const LabeledSampler s({ClassConditional(0, IsotropicGaussian{{-1.0, 0.0, 0.0}, 1.0}),
                          ClassConditional(1, IsotropicGaussian{{1.0, 0.0, 0.0}, 1.0})});
  const auto a = draw_dataset(s, 300, 8, 1);
  const auto b = draw_dataset(s, 300, 8, 4);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.inputs, b.inputs);
  TrainConfig cfg;
  cfg.hidden = {8};
  cfg.epochs = 2;
  const auto m1 = train_mlp(a, 2, cfg).model;
  const auto m2 = train_mlp(b, 2, cfg).model;
  EXPECT_EQ(encode_checkpoint(m1), encode_checkpoint(m2));
}

TEST(TrainTest, DivergenceIsReported) {
  const LabeledSampler s({ClassConditional(0, IsotropicGaussian{{-1.0, 0.0}, 1.0}),
                          ClassConditional(1, IsotropicGaussian{{1.0, 0.0}, 1.0})});
  const auto data = draw_dataset(s, 200, 9);
  TrainConfig cfg;
  cfg.hidden = {8};
  cfg.epochs = 50;
  cfg.learning_rate = 1e6;
  EXPECT_THROW(train_mlp(data, 2, cfg), NumericalError);
}

TEST(EvalErrorTest, LinearClassifierOnGaussians) {
  const LabeledSampler s({ClassConditional(0, IsotropicGaussian{{-1.0}, 1.0}),
                          ClassConditional(1, IsotropicGaussian{{1.0}, 1.0})});
  const Classifier h = LinearClassifier::make({1.0}, 0.0);
  const auto e = eval_error(h, s, 1, 20000, 3, 2);
  EXPECT_LE(e.ci.lo, 0.15865525393145707);
  EXPECT_GE(e.ci.hi, 0.15865525393145707);
  const auto again = eval_error(h, s, 1, 20000, 3, 1);
  EXPECT_EQ(e.errors, again.errors);
  const Classifier constant = ConstantClassifier{1, 1};
  EXPECT_EQ(eval_error(constant, s, 1, 100, 3).errors, 0);
  EXPECT_EQ(eval_error(constant, s, 0, 100, 3).errors, 100);
}

TEST(CheckpointTest, RoundTripIsBitExact) {
  const auto h = small_mlp(10);
  const auto bytes = encode_checkpoint(h);
  const auto back = decode_checkpoint(bytes);
  EXPECT_EQ(encode_checkpoint(back), bytes);
  const auto x = random_point(4, 1);
  EXPECT_EQ(h.logits(x), back.logits(x));
  const auto path = std::filesystem::temp_directory_path() / "nfl_checkpoint_test.bin";
  save_checkpoint(h, path);
  EXPECT_EQ(encode_checkpoint(load_checkpoint(path)), bytes);
  std::filesystem::remove(path);
}

TEST(CheckpointTest, RejectsCorruptInput) {
  auto bytes = encode_checkpoint(small_mlp(11));
  auto truncated = bytes;
  truncated.resize(bytes.size() - 3);
  EXPECT_ANY_THROW(decode_checkpoint(truncated));
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_ANY_THROW(decode_checkpoint(trailing));
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_ANY_THROW(decode_checkpoint(magic));
  EXPECT_ANY_THROW(decode_checkpoint(std::vector<std::uint8_t>{}));
  EXPECT_ANY_THROW(load_checkpoint("/nonexistent/model.bin"));
}

}  // namespace
}  // namespace nfl
