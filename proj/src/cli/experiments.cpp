#include "nfl/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "nfl/bounds.hpp"
#include "nfl/errors.hpp"
#include "nfl/idx.hpp"

namespace nfl::cli {

namespace {

enum Stage : std::uint64_t { kTrainData = 1, kTestData, kTraining, kAttack, kDrobust };

TrainConfig train_config(const ExperimentConfig& cfg) {
  TrainConfig tc;
  tc.learning_rate = cfg.lr;
  tc.momentum = cfg.momentum;
  tc.epochs = cfg.epochs;
  tc.batch_size = cfg.batch;
  tc.seed = derive_seed(cfg.seed, kTraining);
  tc.init_scale = cfg.init_scale;
  tc.hidden = cfg.hidden;
  return tc;
}

PgdConfig pgd_config(const ExperimentConfig& cfg, bool clamp) {
  PgdConfig pc;
  pc.steps = cfg.attack_steps;
  pc.step_fraction = cfg.attack_step_fraction;
  pc.restarts = cfg.attack_restarts;
  pc.clamp_unit_box = clamp;
  return pc;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(i) = m.col(cols[i]);
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage) {
  return RngStream(seed, stage).substream(0).next_u64();
}

SimulationResult run_simulation(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.q.is_infinite()) throw ConfigError("simulate attacks with l_inf PGD; q must be inf");
  if (cfg.k != 0 && cfg.k != 1) throw ConfigError("toy classes are 0 (y = -1) and 1 (y = +1)");
  SimulationResult res;
  res.eta = cfg.toy_eta();
  const LabeledSampler sampler = make_toy_sampler(cfg.p, res.eta);
  const LabeledData train = draw_dataset(sampler, cfg.n_train, derive_seed(cfg.seed, kTrainData), cfg.threads);
  const LabeledData test = draw_dataset(sampler, cfg.n_test, derive_seed(cfg.seed, kTestData), cfg.threads);

  TrainResult trained = train_mlp(train, 2, train_config(cfg));
  res.model = std::move(trained.model);
  res.epoch_loss = std::move(trained.epoch_loss);
  const Classifier h = res.model;
  res.test_accuracy = accuracy(h, test);

  std::vector<Eigen::Index> cols;
  for (int i = 0; i < test.size(); ++i) {
    if (test.labels[i] == cfg.k) cols.push_back(i);
  }
  if (cols.empty()) throw ConfigError("test split has no points of the requested class");
  res.class_count = static_cast<std::int64_t>(cols.size());
  const Eigen::MatrixXd class_inputs = select_columns(test.inputs, cols);
  const Eigen::MatrixXd class_logits = res.model.logits_batch(class_inputs);
  std::int64_t wrong = 0;
  for (Eigen::Index c = 0; c < class_logits.cols(); ++c) wrong += argmax_lowest(class_logits.col(c)) != cfg.k;
  res.err_std = static_cast<double>(wrong) / res.class_count;

  double eps_max = 0.0;
  if (cfg.eps_max) {
    eps_max = *cfg.eps_max;
  } else {
    const double err_for_grid = std::max(res.err_std, 1.0 / static_cast<double>(res.class_count));
    eps_max = 4.0 * critical_epsilon_q(err_for_grid, 1.0, cfg.p, LqExponent::infinity());
  }
  const std::vector<double> grid = cfg.eps_grid(eps_max);

  const std::int64_t attacked = cfg.n_attack > 0 ? std::min<std::int64_t>(cfg.n_attack, res.class_count)
                                                 : res.class_count;
  const auto counts = linf_sweep(h, class_inputs.leftCols(attacked), cfg.k, grid, pgd_config(cfg, false),
                                 derive_seed(cfg.seed, kAttack), cfg.threads);
  // The toy conditional's Gaussian block is T2(1).
  res.curve = make_robustness_curve(counts, res.err_std, 1.0, cfg.p, LqExponent::infinity());
  return res;
}

MnistPaths resolve_mnist_paths(const ExperimentConfig& cfg) {
  MnistPaths paths{cfg.train_images, cfg.train_labels, cfg.test_images, cfg.test_labels, cfg.manifest};
  const std::filesystem::path dir = cfg.data_dir;
  const auto fill = [&](std::string& slot, const char* name) {
    if (slot.empty() && !cfg.data_dir.empty()) slot = (dir / name).string();
  };
  fill(paths.train_images, "train-images-idx3-ubyte");
  fill(paths.train_labels, "train-labels-idx1-ubyte");
  fill(paths.test_images, "t10k-images-idx3-ubyte");
  fill(paths.test_labels, "t10k-labels-idx1-ubyte");
  if (paths.train_images.empty() || paths.train_labels.empty() || paths.test_images.empty() ||
      paths.test_labels.empty()) {
    throw ConfigError("mnist needs data_dir or all four of train_images, train_labels, test_images, test_labels");
  }
  return paths;
}

MnistResult run_mnist(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.q.is_infinite()) throw ConfigError("mnist attacks with l_inf PGD; q must be inf");
  const MnistPaths paths = resolve_mnist_paths(cfg);
  const ImageDataset train = load_idx_dataset(paths.train_images, paths.train_labels, "train", paths.manifest);
  const ImageDataset test = load_idx_dataset(paths.test_images, paths.test_labels, "test", paths.manifest);
  if (train.images.rows() != test.images.rows()) throw ConfigError("train and test image sizes differ");
  if (train.labels.empty() || test.labels.empty()) throw ConfigError("mnist splits must be non-empty");

  MnistResult res;
  TrainResult trained = train_mlp(LabeledData{train.images, train.labels}, 10, train_config(cfg));
  res.epoch_loss = std::move(trained.epoch_loss);
  const Classifier h = std::move(trained.model);
  const LabeledData test_data{test.images, test.labels};
  res.test_accuracy = accuracy(h, test_data);

  const std::int64_t n = static_cast<std::int64_t>(test.labels.size());
  const std::int64_t attacked = cfg.n_attack > 0 ? std::min<std::int64_t>(cfg.n_attack, n) : n;
  const std::vector<double> grid = cfg.eps_grid(cfg.eps_max.value_or(0.5));
  const auto counts = linf_sweep(h, test.images.leftCols(attacked),
                                 std::span<const int>(test.labels.data(), attacked), grid,
                                 pgd_config(cfg, true), derive_seed(cfg.seed, kAttack), cfg.threads);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  res.curve.err_std = 1.0 - res.test_accuracy;
  res.curve.eps_crit = nan;
  for (const RobustCount& c : counts) {
    res.curve.points.push_back({c.eps, c.n, c.ci.estimate, c.ci.lo, c.ci.hi, nan, false});
  }
  return res;
}

DrobustResult run_drobust(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.k != 0 && cfg.k != 1) throw ConfigError("drobust classes are 0 and 1");
  const double eta = cfg.toy_eta();
  const LabeledSampler sampler({ClassConditional(0, IsotropicGaussian{std::vector<double>(cfg.p, -eta), cfg.sigma}),
                                ClassConditional(1, IsotropicGaussian{std::vector<double>(cfg.p, eta), cfg.sigma})});
  const LinearClassifier h = LinearClassifier::make(std::vector<double>(cfg.p, 1.0), 0.0, 1, 0);
  DrobustResult res;
  const ClassConditional& cond = sampler.conditional(cfg.k);
  res.err_closed_form = 1.0 - linear_robust_acc_closed_form(h, cond, 0.0, cfg.q);
  double eps_max = 0.0;
  if (cfg.eps_max) {
    eps_max = *cfg.eps_max;
  } else {
    eps_max = 4.0 * critical_epsilon_q(std::max(res.err_closed_form, 1e-300), cfg.sigma, cfg.p, cfg.q);
  }
  res.curve = dr_error_curve(h, sampler, cfg.k, cfg.eps_grid(eps_max), cfg.n_test, cfg.q,
                             derive_seed(cfg.seed, kDrobust), cfg.threads);
  return res;
}

}  // namespace nfl::cli
