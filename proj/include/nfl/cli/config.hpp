#pragma once

// Experiment configuration: flat "key = value" files with '#' comments, and
// the same keys given as command-line flags (flags win).

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfl/scalar.hpp"

namespace nfl::cli {

/// Malformed config text or values; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int p = 1000;
  /// Toy signal level; derived from delta when absent.
  std::optional<double> eta;
  double delta = 0.01;
  double sigma = 1.0;
  int n_train = 10000;
  int n_test = 10000;
  /// Class-k test points attacked (the first ones by index); 0 attacks all.
  int n_attack = 2000;
  int k = 0;
  /// eps grid; eps_max absent means 4 eps_inf(h|k).
  double eps_min = 0.0;
  std::optional<double> eps_max;
  int eps_steps = 40;
  LqExponent q = LqExponent::infinity();
  int attack_steps = 40;
  double attack_step_fraction = 2.5;
  int attack_restarts = 1;
  std::vector<int> hidden = {200, 100};
  double lr = 0.01;
  double momentum = 0.9;
  int epochs = 30;
  int batch = 128;
  double init_scale = 1.0;
  int threads = 1;
  std::string data_dir;
  std::string train_images;
  std::string train_labels;
  std::string test_images;
  std::string test_labels;
  std::string manifest;
  std::string out;
  std::string save_model;

  /// eta or sqrt(2 log(1/delta) / (p - 1)).
  double toy_eta() const;
  /// eps_steps points from eps_min to eps_max (a single point is eps_min).
  std::vector<double> eps_grid(double eps_max_value) const;
  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

/// Defaults of the MNIST experiment: 784 inputs, 10 epochs, eps grid [0, 0.5].
ExperimentConfig mnist_defaults();

/// Parses "key = value" lines. Throws ConfigError naming the line on
/// malformed input.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Reads and parses a config file. Throws ConfigError if it cannot be read.
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Applies key/value pairs in order. Throws ConfigError on unknown keys or
/// values that do not parse.
void apply_config(const std::map<std::string, std::string>& values, ExperimentConfig& cfg);

/// Every key apply_config accepts.
const std::vector<std::string>& config_keys();

}  // namespace nfl::cli
