#pragma once

// End-to-end experiments behind the simulate, mnist and drobust commands.

#include <cstdint>
#include <string>
#include <vector>

#include "nfl/attacks.hpp"
#include "nfl/classifiers.hpp"
#include "nfl/cli/config.hpp"
#include "nfl/drobust.hpp"

namespace nfl::cli {

/// Independent seed for a named stage of an experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage);

struct SimulationResult {
  double eta = 0.0;
  double test_accuracy = 0.0;
  std::int64_t class_count = 0;  // class-k test points
  double err_std = 0.0;          // err(h|k) on the test split
  std::vector<double> epoch_loss;
  MlpClassifier model;
  RobustnessCurve curve;
};

/// Toy-problem experiment: train the MLP, measure err(h|k) on the test split
/// and sweep l_inf PGD over the eps grid on class-k test points. The grid
/// defaults to [eps_min, 4 eps_inf(h|k)]; with no test errors eps_inf uses
/// err = 1 / (class-k count). Throws NumericalError if training diverges.
SimulationResult run_simulation(const ExperimentConfig& cfg);

struct MnistResult {
  double test_accuracy = 0.0;
  std::vector<double> epoch_loss;
  RobustnessCurve curve;  // bounds are NaN: no T2 constant is known for MNIST
};

/// Resolved file locations of the MNIST pair of splits.
struct MnistPaths {
  std::string train_images, train_labels, test_images, test_labels, manifest;
};
MnistPaths resolve_mnist_paths(const ExperimentConfig& cfg);

/// Trains on the training split and sweeps l_inf PGD with the [0,1] clamp on
/// the first n_attack test images. Throws IdxError on unreadable data.
MnistResult run_mnist(const ExperimentConfig& cfg);

struct DrobustResult {
  double err_closed_form = 0.0;
  std::vector<DrCurvePoint> curve;
};

/// Linear classifier sign(sum x_j) on classes N(+-eta 1, sigma^2 I), class-k
/// distributional error curve on n_test draws.
DrobustResult run_drobust(const ExperimentConfig& cfg);

}  // namespace nfl::cli
