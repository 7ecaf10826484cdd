#include "nfl/classifiers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string>

#include "nfl/errors.hpp"
#include "nfl/parallel.hpp"

namespace nfl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

// Softmax cross-entropy of one score column. Writes d loss / d scores into
// `grad` without cancellation in 1 - p_label.
double cross_entropy(const Eigen::Ref<const Eigen::VectorXd>& z, int label,
                     Eigen::Ref<Eigen::VectorXd> grad) {
  const double m = z.maxCoeff();
  const Eigen::VectorXd e = (z.array() - m).exp();
  const double total = e.sum();
  double others = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (j != label) others += e[j];
  }
  grad = e / total;
  grad[label] = -others / total;
  return m + std::log(total) - z[label];
}

void check_label(int label, int classes) {
  if (label < 0 || label >= classes) {
    throw ShapeError("label " + std::to_string(label) + " outside [0, " +
                     std::to_string(classes) + ")");
  }
}

}  // namespace

LinearClassifier LinearClassifier::make(std::vector<double> w, double b, int positive_label,
                                        int negative_label) {
  bool nonzero = false;
  for (double v : w) {
    if (!std::isfinite(v)) throw DomainError("linear classifier weights must be finite");
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) throw DomainError("linear classifier needs w != 0");
  if (!std::isfinite(b)) throw DomainError("linear classifier bias must be finite");
  return {std::move(w), b, positive_label, negative_label};
}

double LinearClassifier::score(std::span<const double> x) const {
  if (x.size() != w.size()) throw ShapeError("input dimension does not match the classifier");
  double s = b;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
  return s;
}

LinearClassifier make_toy_average_classifier(int p) {
  if (p < 2) throw DomainError("toy classifier requires p >= 2");
  std::vector<double> w(p, 1.0 / (p - 1));
  w[0] = 0.0;
  return LinearClassifier::make(std::move(w), 0.0, 1, 0);
}

MlpClassifier::MlpClassifier(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ShapeError("MLP needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].bias.size() != layers_[l].weight.rows()) {
      throw ShapeError("bias size does not match layer output width");
    }
    if (l > 0 && layers_[l].weight.cols() != layers_[l - 1].weight.rows()) {
      throw ShapeError("consecutive MLP layers do not chain");
    }
  }
}

MlpClassifier MlpClassifier::initialize(const std::vector<int>& widths, double init_scale_factor,
                                        std::uint64_t seed) {
  if (widths.size() < 2) throw ShapeError("MLP widths need input and output sizes");
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const int in = widths[l];
    const int out = widths[l + 1];
    if (in < 1 || out < 1) throw ShapeError("MLP widths must be positive");
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd::Zero(out)};
    const double scale = init_scale_factor * std::sqrt(2.0 / in);
    RngStream rng(seed, l);
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) layer.weight(r, c) = scale * rng.normal();
    }
    layers.push_back(std::move(layer));
  }
  return MlpClassifier(std::move(layers));
}

std::vector<int> MlpClassifier::widths() const {
  std::vector<int> w{input_dim()};
  for (const auto& l : layers_) w.push_back(static_cast<int>(l.weight.rows()));
  return w;
}

Eigen::VectorXd MlpClassifier::logits(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != input_dim()) {
    throw ShapeError("input dimension does not match the network");
  }
  Eigen::VectorXd a = as_vector(x);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::VectorXd z = layers_[l].weight * a + layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

Eigen::MatrixXd MlpClassifier::logits_batch(const Eigen::MatrixXd& inputs) const {
  if (inputs.rows() != input_dim()) throw ShapeError("batch rows do not match the network");
  Eigen::MatrixXd a = inputs;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weight * a;
    z.colwise() += layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

bool MlpClassifier::all_finite() const {
  for (const auto& l : layers_) {
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

int argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& scores) {
  int best = 0;
  for (Eigen::Index j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = static_cast<int>(j);
  }
  return best;
}

int input_dim(const Classifier& h) {
  return std::visit(Overloaded{[](const LinearClassifier& c) { return c.dim(); },
                               [](const MlpClassifier& c) { return c.input_dim(); },
                               [](const ConstantClassifier& c) { return c.dim; }},
                    h);
}

int predict(const LinearClassifier& h, std::span<const double> x) {
  return h.score(x) > 0.0 ? h.positive_label : h.negative_label;
}

int predict(const MlpClassifier& h, std::span<const double> x) {
  return argmax_lowest(h.logits(x));
}

int predict(const Classifier& h, std::span<const double> x) {
  return std::visit(Overloaded{[&](const LinearClassifier& c) { return predict(c, x); },
                               [&](const MlpClassifier& c) { return predict(c, x); },
                               [&](const ConstantClassifier& c) {
                                 if (static_cast<int>(x.size()) != c.dim) {
                                   throw ShapeError("input dimension does not match");
                                 }
                                 return c.label;
                               }},
                    h);
}

MlpGradient mlp_gradient(const MlpClassifier& h, std::span<const double> x, int label) {
  if (static_cast<int>(x.size()) != h.input_dim()) {
    throw ShapeError("input dimension does not match the network");
  }
  check_label(label, h.num_classes());
  const auto& layers = h.layers();
  const std::size_t depth = layers.size();
  std::vector<Eigen::VectorXd> acts{as_vector(x)};
  std::vector<Eigen::VectorXd> pre;
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::VectorXd z = layers[l].weight * acts.back() + layers[l].bias;
    pre.push_back(z);
    acts.push_back(l + 1 < depth ? Eigen::VectorXd(z.cwiseMax(0.0)) : z);
  }
  MlpGradient g;
  Eigen::VectorXd delta(h.num_classes());
  g.loss = cross_entropy(acts.back(), label, delta);
  g.params.resize(depth);
  for (std::size_t l = depth; l-- > 0;) {
    g.params[l].weight = delta * acts[l].transpose();
    g.params[l].bias = delta;
    Eigen::VectorXd back = layers[l].weight.transpose() * delta;
    if (l > 0) {
      for (Eigen::Index j = 0; j < back.size(); ++j) {
        if (pre[l - 1][j] <= 0.0) back[j] = 0.0;
      }
    }
    delta = std::move(back);
  }
  g.input = std::move(delta);
  return g;
}

Eigen::MatrixXd mlp_input_gradient_batch(const MlpClassifier& h, const Eigen::MatrixXd& inputs,
                                         std::span<const int> labels, Eigen::MatrixXd* logits) {
  if (inputs.rows() != h.input_dim()) throw ShapeError("batch rows do not match the network");
  if (static_cast<std::size_t>(inputs.cols()) != labels.size()) {
    throw ShapeError("one label per batch column required");
  }
  const auto& layers = h.layers();
  const std::size_t depth = layers.size();
  std::vector<Eigen::MatrixXd> pre;
  Eigen::MatrixXd a = inputs;
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::MatrixXd z = layers[l].weight * a;
    z.colwise() += layers[l].bias;
    if (l + 1 < depth) {
      a = z.cwiseMax(0.0);
      pre.push_back(std::move(z));
    } else {
      a = std::move(z);
    }
  }
  if (logits != nullptr) *logits = a;
  Eigen::MatrixXd delta(a.rows(), a.cols());
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    check_label(labels[c], h.num_classes());
    Eigen::VectorXd g(a.rows());
    cross_entropy(a.col(c), labels[c], g);
    delta.col(c) = g;
  }
  for (std::size_t l = depth; l-- > 0;) {
    Eigen::MatrixXd back = layers[l].weight.transpose() * delta;
    if (l > 0) back = (pre[l - 1].array() > 0.0).select(back, 0.0);
    delta = std::move(back);
  }
  return delta;
}

LossGradient loss_input_gradient(const Classifier& h, std::span<const double> x, int label) {
  return std::visit(
      Overloaded{
          [&](const LinearClassifier& c) {
            const double y = label == c.positive_label ? 1.0 : -1.0;
            const double m = y * c.score(x);
            // softplus(-m) and its derivative, stable for large |m|.
            const double loss = m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
            const double s = m > 0 ? std::exp(-m) / (1.0 + std::exp(-m)) : 1.0 / (1.0 + std::exp(m));
            LossGradient out{loss, std::vector<double>(c.w.size())};
            for (std::size_t j = 0; j < c.w.size(); ++j) out.grad[j] = -y * s * c.w[j];
            return out;
          },
          [&](const MlpClassifier& c) {
            MlpGradient g = mlp_gradient(c, x, label);
            return LossGradient{g.loss, std::vector<double>(g.input.begin(), g.input.end())};
          },
          [&](const ConstantClassifier& c) {
            if (static_cast<int>(x.size()) != c.dim) throw ShapeError("input dimension mismatch");
            return LossGradient{0.0, std::vector<double>(x.size(), 0.0)};
          }},
      h);
}

LabeledData draw_dataset(const LabeledSampler& sampler, int n, std::uint64_t seed, int threads) {
  if (n < 0) throw DomainError("dataset size must be >= 0");
  LabeledData data{Eigen::MatrixXd(sampler.dim(), n), std::vector<int>(n)};
  parallel_for(n, threads, [&](std::int64_t i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    auto d = sampler.sample(rng);
    data.inputs.col(i) = as_vector(d.x);
    data.labels[i] = d.label;
  });
  return data;
}

TrainResult train_mlp(const LabeledData& data, int num_classes, const TrainConfig& cfg) {
  if (data.size() == 0) throw DomainError("training data must be non-empty");
  if (cfg.learning_rate <= 0 || cfg.epochs <= 0 || cfg.batch_size <= 0 || cfg.init_scale <= 0 ||
      cfg.momentum < 0 || cfg.momentum >= 1) {
    throw DomainError("invalid training configuration");
  }
  for (int label : data.labels) check_label(label, num_classes);
  std::vector<int> widths{data.dim()};
  widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
  widths.push_back(num_classes);
  TrainResult result{MlpClassifier::initialize(widths, cfg.init_scale, cfg.seed), {}};
  auto& layers = result.model.mutable_layers();
  const std::size_t depth = layers.size();

  std::vector<DenseLayer> velocity;
  for (const auto& l : layers) {
    velocity.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                        Eigen::VectorXd::Zero(l.bias.size())});
  }

  const int n = data.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const RngStream shuffle_root(cfg.seed, 0xC0FFEEULL);

  std::vector<Eigen::MatrixXd> acts(depth + 1);
  std::vector<Eigen::MatrixXd> pre(depth);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    RngStream shuffle = shuffle_root.substream(static_cast<std::uint64_t>(epoch));
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(shuffle.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(order[i], order[j]);
    }
    double epoch_loss = 0.0;
    for (int start = 0; start < n; start += cfg.batch_size) {
      const int bsz = std::min(cfg.batch_size, n - start);
      acts[0].resize(data.dim(), bsz);
      for (int c = 0; c < bsz; ++c) acts[0].col(c) = data.inputs.col(order[start + c]);
      for (std::size_t l = 0; l < depth; ++l) {
        pre[l] = layers[l].weight * acts[l];
        pre[l].colwise() += layers[l].bias;
        acts[l + 1] = l + 1 < depth ? Eigen::MatrixXd(pre[l].cwiseMax(0.0)) : pre[l];
      }
      Eigen::MatrixXd delta(num_classes, bsz);
      for (int c = 0; c < bsz; ++c) {
        Eigen::VectorXd g(num_classes);
        epoch_loss += cross_entropy(acts[depth].col(c), data.labels[order[start + c]], g);
        delta.col(c) = g / bsz;
      }
      for (std::size_t l = depth; l-- > 0;) {
        Eigen::MatrixXd back;
        if (l > 0) {
          back = layers[l].weight.transpose() * delta;
          back = (pre[l - 1].array() > 0.0).select(back, 0.0);
        }
        velocity[l].weight = cfg.momentum * velocity[l].weight + delta * acts[l].transpose();
        velocity[l].bias = cfg.momentum * velocity[l].bias + delta.rowwise().sum();
        layers[l].weight -= cfg.learning_rate * velocity[l].weight;
        layers[l].bias -= cfg.learning_rate * velocity[l].bias;
        if (l > 0) delta = std::move(back);
      }
    }
    epoch_loss /= n;
    if (!std::isfinite(epoch_loss) || !result.model.all_finite()) {
      throw NumericalError("training diverged: non-finite loss at epoch " +
                           std::to_string(epoch + 1));
    }
    result.epoch_loss.push_back(epoch_loss);
  }
  return result;
}

double accuracy(const Classifier& h, const LabeledData& data) {
  if (data.size() == 0) return 0.0;
  std::int64_t correct = 0;
  if (const auto* mlp = std::get_if<MlpClassifier>(&h)) {
    constexpr int kChunk = 1024;
    for (int start = 0; start < data.size(); start += kChunk) {
      const int bsz = std::min(kChunk, data.size() - start);
      const Eigen::MatrixXd z = mlp->logits_batch(data.inputs.middleCols(start, bsz));
      for (int c = 0; c < bsz; ++c) correct += argmax_lowest(z.col(c)) == data.labels[start + c];
    }
  } else {
    for (int i = 0; i < data.size(); ++i) correct += predict(h, data.sample(i)) == data.labels[i];
  }
  return static_cast<double>(correct) / data.size();
}

ErrorEstimate eval_error(const Classifier& h, const LabeledSampler& sampler, int k,
                         std::int64_t n, std::uint64_t seed, int threads) {
  if (n < 1) throw DomainError("eval_error needs n >= 1");
  const ClassConditional& cond = sampler.conditional(k);
  std::vector<std::uint8_t> wrong(n, 0);
  parallel_for(n, threads, [&](std::int64_t i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const std::vector<double> x = draw(cond, rng);
    wrong[i] = predict(h, x) != k;
  });
  const std::int64_t errors = std::accumulate(wrong.begin(), wrong.end(), std::int64_t{0});
  const ProportionInterval ci = wilson_interval(errors, n);
  return {ci.estimate, ci, errors, n};
}

namespace {

constexpr char kMagic[4] = {'N', 'F', 'L', 'M'};
constexpr std::uint32_t kCheckpointVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw ShapeError("checkpoint truncated");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const MlpClassifier& h) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(h.layers().size()));
  for (const auto& l : h.layers()) {
    put_u32(out, static_cast<std::uint32_t>(l.weight.rows()));
    put_u32(out, static_cast<std::uint32_t>(l.weight.cols()));
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) put_f64(out, l.weight(r, c));
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) put_f64(out, l.bias[r]);
  }
  return out;
}

MlpClassifier decode_checkpoint(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    throw ShapeError("not a model checkpoint (bad magic)");
  }
  const std::uint32_t version = in.u32();
  if (version != kCheckpointVersion) {
    throw ShapeError("unsupported checkpoint version " + std::to_string(version));
  }
  const std::uint32_t count = in.u32();
  if (count == 0) throw ShapeError("checkpoint has no layers");
  std::vector<DenseLayer> layers;
  for (std::uint32_t l = 0; l < count; ++l) {
    const std::uint32_t rows = in.u32();
    const std::uint32_t cols = in.u32();
    const std::uint64_t values = static_cast<std::uint64_t>(rows) * cols + rows;
    if (rows == 0 || cols == 0 || values * 8 > in.remaining()) {
      throw ShapeError("checkpoint layer dimensions inconsistent with file size");
    }
    DenseLayer layer{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    for (std::uint32_t r = 0; r < rows; ++r) {
      for (std::uint32_t c = 0; c < cols; ++c) layer.weight(r, c) = in.f64();
    }
    for (std::uint32_t r = 0; r < rows; ++r) layer.bias[r] = in.f64();
    layers.push_back(std::move(layer));
  }
  if (!in.done()) throw ShapeError("trailing bytes after checkpoint");
  return MlpClassifier(std::move(layers));
}

void save_checkpoint(const MlpClassifier& h, const std::filesystem::path& path) {
  const auto bytes = encode_checkpoint(h);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

MlpClassifier load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace nfl
