#include "nfl/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "nfl/errors.hpp"

namespace nfl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < INT32_MIN || x > INT32_MAX) throw ConfigError(key + ": value out of range");
  return static_cast<int>(x);
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"seed", [](auto& c, auto& k, auto& v) {
         const long long s = to_integer(k, v);
         if (s < 0) throw ConfigError("seed must be >= 0");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"p", [](auto& c, auto& k, auto& v) { c.p = to_int(k, v); }},
      {"eta", [](auto& c, auto& k, auto& v) { c.eta = to_double(k, v); }},
      {"delta", [](auto& c, auto& k, auto& v) { c.delta = to_double(k, v); }},
      {"sigma", [](auto& c, auto& k, auto& v) { c.sigma = to_double(k, v); }},
      {"n_train", [](auto& c, auto& k, auto& v) { c.n_train = to_int(k, v); }},
      {"n_test", [](auto& c, auto& k, auto& v) { c.n_test = to_int(k, v); }},
      {"n_attack", [](auto& c, auto& k, auto& v) { c.n_attack = to_int(k, v); }},
      {"class", [](auto& c, auto& k, auto& v) { c.k = to_int(k, v); }},
      {"eps_min", [](auto& c, auto& k, auto& v) { c.eps_min = to_double(k, v); }},
      {"eps_max", [](auto& c, auto& k, auto& v) { c.eps_max = to_double(k, v); }},
      {"eps_steps", [](auto& c, auto& k, auto& v) { c.eps_steps = to_int(k, v); }},
      {"q", [](auto& c, auto& k, auto& v) {
         try {
           c.q = LqExponent::parse(v);
         } catch (const std::exception& e) {
           throw ConfigError(k + ": " + e.what());
         }
       }},
      {"attack_steps", [](auto& c, auto& k, auto& v) { c.attack_steps = to_int(k, v); }},
      {"attack_step_fraction", [](auto& c, auto& k, auto& v) { c.attack_step_fraction = to_double(k, v); }},
      {"attack_restarts", [](auto& c, auto& k, auto& v) { c.attack_restarts = to_int(k, v); }},
      {"hidden", [](auto& c, auto& k, auto& v) {
         std::vector<int> widths;
         std::stringstream in(v);
         std::string item;
         while (std::getline(in, item, ',')) {
           item = trim(item);
           if (!item.empty()) widths.push_back(to_int(k, item));
         }
         c.hidden = widths;
       }},
      {"lr", [](auto& c, auto& k, auto& v) { c.lr = to_double(k, v); }},
      {"momentum", [](auto& c, auto& k, auto& v) { c.momentum = to_double(k, v); }},
      {"epochs", [](auto& c, auto& k, auto& v) { c.epochs = to_int(k, v); }},
      {"batch", [](auto& c, auto& k, auto& v) { c.batch = to_int(k, v); }},
      {"init_scale", [](auto& c, auto& k, auto& v) { c.init_scale = to_double(k, v); }},
      {"threads", [](auto& c, auto& k, auto& v) { c.threads = to_int(k, v); }},
      {"data_dir", [](auto& c, auto&, auto& v) { c.data_dir = v; }},
      {"train_images", [](auto& c, auto&, auto& v) { c.train_images = v; }},
      {"train_labels", [](auto& c, auto&, auto& v) { c.train_labels = v; }},
      {"test_images", [](auto& c, auto&, auto& v) { c.test_images = v; }},
      {"test_labels", [](auto& c, auto&, auto& v) { c.test_labels = v; }},
      {"manifest", [](auto& c, auto&, auto& v) { c.manifest = v; }},
      {"out", [](auto& c, auto&, auto& v) { c.out = v; }},
      {"save_model", [](auto& c, auto&, auto& v) { c.save_model = v; }},
  };
  return table;
}

}  // namespace

double ExperimentConfig::toy_eta() const {
  if (eta) return *eta;
  return std::sqrt(2.0 * std::log(1.0 / delta) / (p - 1));
}

std::vector<double> ExperimentConfig::eps_grid(double eps_max_value) const {
  std::vector<double> grid;
  for (int i = 0; i < eps_steps; ++i) {
    grid.push_back(eps_steps == 1 ? eps_min
                                  : eps_min + (eps_max_value - eps_min) * i / (eps_steps - 1));
  }
  return grid;
}

void ExperimentConfig::validate() const {
  if (p < 2) throw ConfigError("p must be >= 2");
  if (eta && !(*eta > 0.0)) throw ConfigError("eta must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (n_train < 1 || n_test < 1) throw ConfigError("sample counts must be positive");
  if (n_attack < 0) throw ConfigError("n_attack must be >= 0");
  if (eps_steps < 1) throw ConfigError("eps_steps must be >= 1");
  if (!(eps_min >= 0.0)) throw ConfigError("eps_min must be >= 0");
  if (eps_max && eps_steps > 1 && !(*eps_max > eps_min)) {
    throw ConfigError("eps_max must exceed eps_min");
  }
  if (attack_steps < 1 || attack_restarts < 0 || !(attack_step_fraction > 0.0)) {
    throw ConfigError("invalid attack settings");
  }
  for (int w : hidden) {
    if (w < 1) throw ConfigError("hidden widths must be positive");
  }
  if (!(lr > 0.0) || epochs < 1 || batch < 1 || !(init_scale > 0.0)) {
    throw ConfigError("invalid training settings");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("momentum must lie in [0,1)");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

ExperimentConfig mnist_defaults() {
  ExperimentConfig cfg;
  cfg.p = 784;
  cfg.epochs = 10;
  cfg.eps_max = 0.5;
  cfg.eps_steps = 11;
  cfg.n_attack = 1000;
  return cfg;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    values[key] = value;
  }
  return values;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_config(const std::map<std::string, std::string>& values, ExperimentConfig& cfg) {
  const auto& table = setters();
  for (const auto& [key, value] : values) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(cfg, key, value);
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [key, setter] : setters()) out.push_back(key);
    return out;
  }();
  return keys;
}

}  // namespace nfl::cli
