#pragma once

// Label predictors: linear models with exact geometry, constant predictors,
// and a rectifier MLP trained by minibatch gradient descent.

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nfl/distributions.hpp"
#include "nfl/scalar.hpp"

namespace nfl {

/// h(x) = positive_label iff w.x + b > 0, else negative_label (ties go to
/// the negative side).
struct LinearClassifier {
  std::vector<double> w;
  double b = 0.0;
  int positive_label = 1;
  int negative_label = 0;

  /// Throws DomainError for w = 0 or non-finite entries.
  static LinearClassifier make(std::vector<double> w, double b, int positive_label = 1,
                               int negative_label = 0);

  double score(std::span<const double> x) const;
  int dim() const { return static_cast<int>(w.size()); }
};

/// Averaging classifier sign(w.x) of the toy problem, w = (0, 1/(p-1), ...).
LinearClassifier make_toy_average_classifier(int p);

/// Predicts the same label everywhere.
struct ConstantClassifier {
  int label = 0;
  int dim = 1;
};

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

/// Feed-forward network: affine layers with rectifiers between them, argmax
/// over the final scores (ties to the lowest class index).
class MlpClassifier {
 public:
  MlpClassifier() = default;
  /// Throws ShapeError if consecutive layers do not chain.
  explicit MlpClassifier(std::vector<DenseLayer> layers);

  /// He-initialized network with widths {input, hidden..., classes}.
  static MlpClassifier initialize(const std::vector<int>& widths, double init_scale_factor,
                                  std::uint64_t seed);

  int input_dim() const { return static_cast<int>(layers_.front().weight.cols()); }
  int num_classes() const { return static_cast<int>(layers_.back().weight.rows()); }
  std::vector<int> widths() const;
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& mutable_layers() { return layers_; }

  Eigen::VectorXd logits(std::span<const double> x) const;
  /// Column-per-sample batch evaluation.
  Eigen::MatrixXd logits_batch(const Eigen::MatrixXd& inputs) const;

  bool all_finite() const;

 private:
  std::vector<DenseLayer> layers_;
};

using Classifier = std::variant<LinearClassifier, MlpClassifier, ConstantClassifier>;

int input_dim(const Classifier& h);

/// Throws ShapeError on a dimension mismatch.
int predict(const Classifier& h, std::span<const double> x);
int predict(const MlpClassifier& h, std::span<const double> x);
int predict(const LinearClassifier& h, std::span<const double> x);

/// Index of the largest entry, lowest index among ties.
int argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& scores);

struct MlpGradient {
  double loss = 0.0;
  std::vector<DenseLayer> params;  // same shapes as the network
  Eigen::VectorXd input;           // d loss / d x
};

/// Exact gradient of the softmax cross-entropy at (x, label) with respect
/// to every parameter and to the input.
MlpGradient mlp_gradient(const MlpClassifier& h, std::span<const double> x, int label);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad;
};

/// Gradient of the attack loss with respect to x: softmax cross-entropy for
/// an MLP, logistic loss of the signed score for a linear model, zero for a
/// constant predictor.
LossGradient loss_input_gradient(const Classifier& h, std::span<const double> x, int label);

/// Batched cross-entropy input gradients, one column per sample. The
/// forward-pass scores are written to `logits` when it is non-null.
Eigen::MatrixXd mlp_input_gradient_batch(const MlpClassifier& h, const Eigen::MatrixXd& inputs,
                                         std::span<const int> labels,
                                         Eigen::MatrixXd* logits = nullptr);

struct TrainConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  int epochs = 30;
  int batch_size = 128;
  std::uint64_t seed = 1;
  /// Multiplier on the He scale sqrt(2 / fan_in).
  double init_scale = 1.0;
  std::vector<int> hidden = {200, 100};
};

/// Features stored one sample per column.
struct LabeledData {
  Eigen::MatrixXd inputs;
  std::vector<int> labels;

  int size() const { return static_cast<int>(labels.size()); }
  int dim() const { return static_cast<int>(inputs.rows()); }
  std::span<const double> sample(int i) const {
    return {inputs.col(i).data(), static_cast<std::size_t>(inputs.rows())};
  }
};

/// n labeled draws from the sampler, sample i from stream (seed, i).
LabeledData draw_dataset(const LabeledSampler& sampler, int n, std::uint64_t seed, int threads = 1);

struct TrainResult {
  MlpClassifier model;
  std::vector<double> epoch_loss;
};

/// Minibatch gradient descent with momentum on softmax cross-entropy.
/// Deterministic given cfg.seed. Throws NumericalError on a non-finite loss.
TrainResult train_mlp(const LabeledData& data, int num_classes, const TrainConfig& cfg);

double accuracy(const Classifier& h, const LabeledData& data);

struct ErrorEstimate {
  double err_hat = 0.0;
  ProportionInterval ci;
  std::int64_t errors = 0;
  std::int64_t n = 0;
};

/// Monte-Carlo err(h|k) from n draws of P_{X|k}, draw i from stream (seed, i).
ErrorEstimate eval_error(const Classifier& h, const LabeledSampler& sampler, int k,
                         std::int64_t n, std::uint64_t seed, int threads = 1);

/// Versioned checkpoint: "NFLM", u32 version, u32 layer count, then per layer
/// u32 rows, u32 cols, rows*cols f64 weights (row-major), rows f64 biases.
/// All integers and floats little-endian.
void save_checkpoint(const MlpClassifier& h, const std::filesystem::path& path);
MlpClassifier load_checkpoint(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_checkpoint(const MlpClassifier& h);
MlpClassifier decode_checkpoint(std::span<const std::uint8_t> bytes);

}  // namespace nfl
