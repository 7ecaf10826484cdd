#include "nfl/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "nfl/blowup_lab.hpp"
#include "nfl/bounds.hpp"
#include "nfl/cli/config.hpp"
#include "nfl/cli/experiments.hpp"
#include "nfl/cli/verify.hpp"
#include "nfl/errors.hpp"
#include "nfl/idx.hpp"

namespace nfl::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Config keys registered as flags on an experiment subcommand.
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Config file of 'key = value' lines");
    for (const std::string& key : config_keys()) {
      std::string names = "--" + key;
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      if (dashed != key) names += ",--" + dashed;
      options[key] = app->add_option(names, values[key]);
    }
  }

  ExperimentConfig resolve(ExperimentConfig cfg) const {
    if (!config_path.empty()) apply_config(load_config_file(config_path), cfg);
    std::map<std::string, std::string> given;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) given[key] = values.at(key);
    }
    apply_config(given, cfg);
    cfg.validate();
    return cfg;
  }
};

// Writes to the configured file, or to `out` when none is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : stream_(&out) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IdxError(IdxError::Kind::Io, "cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_curve_csv(std::ostream& os, const RobustnessCurve& curve) {
  os << "epsilon,n,acc_hat,ci_lo,ci_hi,bound,err_std,eps_crit\n";
  for (const CurvePoint& pt : curve.points) {
    os << num(pt.eps) << ',' << pt.n << ',' << num(pt.acc_hat) << ',' << num(pt.ci_lo) << ','
       << num(pt.ci_hi) << ',' << num(pt.bound) << ',' << num(curve.err_std) << ','
       << num(curve.eps_crit) << '\n';
  }
}

int cmd_bounds(double err_std, double sigma, int p, const std::string& q_text, double eps_min,
               double eps_max, int eps_steps, std::ostream& out) {
  std::optional<int> pp;
  std::optional<LqExponent> qq;
  if (p > 0) pp = p;
  if (!q_text.empty()) qq = LqExponent::parse(q_text);
  const bool euclidean = !qq || (!qq->is_infinite() && qq->value() == 2.0);
  if (qq && !pp && !euclidean) throw ConfigError("--q other than 2 requires --p");
  if (pp && !qq) qq = LqExponent::finite(2.0);
  if (eps_steps < 1) throw ConfigError("--eps_steps must be >= 1");

  const double eps_crit = pp ? critical_epsilon_q(err_std, sigma, *pp, *qq) : critical_epsilon(err_std, sigma);
  // Grid spans 4 effective noise scales past the critical tolerance.
  const double scale = pp ? sigma * std::pow(*pp, qq->reciprocal() - 0.5) : sigma;
  const double lo = eps_min >= 0 ? eps_min : eps_crit;
  const double hi = eps_max >= 0 ? eps_max : eps_crit + 4.0 * scale;
  std::vector<double> grid;
  for (int i = 0; i < eps_steps; ++i) grid.push_back(eps_steps == 1 ? lo : lo + (hi - lo) * i / (eps_steps - 1));
  const BoundReport r = make_bound_report(err_std, sigma, pp, qq, grid);

  out << "err_std = " << num(r.err_std) << '\n';
  out << "sigma = " << num(r.sigma) << '\n';
  if (r.p) out << "p = " << *r.p << '\n';
  if (r.q) out << "q = " << r.q->to_string() << '\n';
  out << "eps_crit = " << num(r.eps_crit) << '\n';
  out << "dist_bound = " << num(r.dist_bound) << '\n';
  out << "eps,acc_bound\n";
  for (const auto& [eps, b] : r.curve) out << num(eps) << ',' << num(b) << '\n';
  return kOk;
}

int cmd_toy(int p, double delta, double eta_flag, double eps_flag, std::ostream& out) {
  if (p < 2) throw ConfigError("--p must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("--delta must lie in (0,1)");
  const double eta = eta_flag > 0 ? eta_flag : std::sqrt(2.0 * std::log(1.0 / delta) / (p - 1));
  const double eps = eps_flag >= 0 ? eps_flag : 2.0 * eta;
  const ExactWithBound s = toy_std_acc(p, eta);
  const ExactWithBound a = toy_adv_acc(p, eta, eps);
  const FlaggedProbability nfl = basic_nfl_bound(delta);
  out << "p = " << p << '\n';
  out << "eta = " << num(eta) << '\n';
  out << "eps = " << num(eps) << '\n';
  out << "std_acc = " << num(s.exact) << '\n';
  out << "std_acc_lower_bound = " << num(s.bound) << '\n';
  out << "adv_acc = " << num(a.exact) << '\n';
  out << "adv_acc_upper_bound = " << num(a.bound) << '\n';
  out << "mutual_information = " << num(toy_mutual_information(eta)) << '\n';
  out << "mutual_information_upper = " << num(eta * eta) << '\n';
  out << "basic_bound = " << num(nfl.value) << (nfl.vacuous ? " (vacuous)" : "") << '\n';
  return kOk;
}

int cmd_blowup(const std::string& space, int p, double scale, double mass, int points,
               bool violations_only, const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<BlowupCase> cases;
  if (mass > 0) {
    if (space == "gaussian") {
      cases.push_back(gaussian_halfspace_case(p, scale, mass));
    } else if (space == "sphere") {
      cases.push_back(sphere_cap_case(p, scale, mass));
    } else {
      throw ConfigError("--space must be gaussian or sphere");
    }
  } else {
    cases = lemma_case_matrix();
  }
  Sink sink(out_path, out);
  sink.get() << "case_id,eps,exact,bound,slack\n";
  std::size_t violations = 0;
  for (const BlowupCase& bc : cases) {
    const auto grid = blowup_eps_grid(bc, points);
    const auto rows = violations_only ? verify_blowup_lemma(bc, grid) : evaluate_blowup(bc, grid);
    violations += violations_only ? rows.size() : verify_blowup_lemma(bc, grid).size();
    for (const BlowupRow& r : rows) {
      sink.get() << r.case_id << ',' << num(r.eps) << ',' << num(r.exact) << ',' << num(r.bound) << ','
                 << num(r.slack) << '\n';
    }
  }
  err << cases.size() << " cases, " << violations << " violations\n";
  return violations == 0 ? kOk : kFailure;
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const SimulationResult res = run_simulation(cfg);
  if (!cfg.save_model.empty()) save_checkpoint(res.model, cfg.save_model);
  Sink sink(cfg.out, out);
  write_curve_csv(sink.get(), res.curve);
  err << "eta " << num(res.eta) << ", test accuracy " << num(res.test_accuracy) << ", err(h|"
      << cfg.k << ") " << num(res.err_std) << " over " << res.class_count << " points, eps_crit "
      << num(res.curve.eps_crit) << '\n';
  return kOk;
}

int cmd_mnist(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const MnistResult res = run_mnist(cfg);
  Sink sink(cfg.out, out);
  write_curve_csv(sink.get(), res.curve);
  err << "test accuracy " << num(res.test_accuracy) << '\n';
  return kOk;
}

int cmd_drobust(const ExperimentConfig& cfg, const std::string& model, std::ostream& out, std::ostream& err) {
  if (model != "linear") {
    throw ConfigError("drobust needs exact distances and supports --model linear only");
  }
  const DrobustResult res = run_drobust(cfg);
  Sink sink(cfg.out, out);
  sink.get() << "eps,err_adv,err_dr,bound,lambda_star\n";
  std::size_t failures = 0;
  for (const DrCurvePoint& pt : res.curve) {
    sink.get() << num(pt.eps) << ',' << num(pt.err_adv) << ',' << num(pt.err_dr) << ',' << num(pt.bound)
               << ',' << num(pt.lambda_star) << '\n';
    if (pt.err_dr < pt.err_adv - 1e-12 || !pt.bracket_ok) ++failures;
  }
  if (failures > 0) err << failures << " rows violate err_dr >= err_adv or the dual bracket\n";
  return failures == 0 ? kOk : kFailure;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
      throw ConfigError("unknown suite '" + suite + "'");
    }
    names.push_back(suite);
  }
  bool all = true;
  for (const std::string& n : names) {
    const SuiteResult r = run_suite(n, opt);
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? kOk : kFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concentration-of-measure bounds on adversarial robustness", "nfl"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* bounds = app.add_subcommand("bounds", "Tabulate critical tolerance and bound curves");
  double err_std = 0.0, sigma = 1.0, b_eps_min = -1.0, b_eps_max = -1.0;
  int b_p = 0, b_steps = 9;
  std::string b_q;
  bounds->add_option("--err", err_std, "Standard error err(h|k)")->required();
  bounds->add_option("--sigma", sigma, "T2 scale sigma_k");
  bounds->add_option("--p", b_p, "Dimension (enables l_q forms)");
  bounds->add_option("--q", b_q, "Threat norm exponent: number >= 1 or inf");
  bounds->add_option("--eps_min,--eps-min", b_eps_min, "First grid point (default eps_crit)");
  bounds->add_option("--eps_max,--eps-max", b_eps_max, "Last grid point");
  bounds->add_option("--eps_steps,--eps-steps", b_steps, "Grid points");
  bounds->callback([&] {
    action = [&] { return cmd_bounds(err_std, sigma, b_p, b_q, b_eps_min, b_eps_max, b_steps, out); };
  });

  auto* toy = app.add_subcommand("toy", "Closed forms of the toy problem");
  int t_p = 1001;
  double t_delta = 0.01, t_eta = -1.0, t_eps = -1.0;
  toy->add_option("--p", t_p, "Dimension");
  toy->add_option("--delta", t_delta, "Target error level fixing eta");
  toy->add_option("--eta", t_eta, "Signal level (overrides --delta)");
  toy->add_option("--eps", t_eps, "l_inf tolerance (default 2 eta)");
  toy->callback([&] { action = [&] { return cmd_toy(t_p, t_delta, t_eta, t_eps, out); }; });

  auto* blowup = app.add_subcommand("blowup", "Blowup lemma check on exact set families");
  std::string u_space = "gaussian", u_out;
  int u_p = 1, u_points = 50;
  double u_scale = 1.0, u_mass = -1.0;
  bool u_violations = false;
  blowup->add_option("--space", u_space, "gaussian or sphere");
  blowup->add_option("--p", u_p, "Dimension");
  blowup->add_option("--scale", u_scale, "sigma (gaussian) or radius (sphere)");
  blowup->add_option("--mass", u_mass, "Base mass of a single case (default: full case matrix)");
  blowup->add_option("--points", u_points, "Grid points per case");
  blowup->add_flag("--violations-only", u_violations, "Emit violating rows only");
  blowup->add_option("--out", u_out, "CSV path (default stdout)");
  blowup->callback([&] {
    action = [&] { return cmd_blowup(u_space, u_p, u_scale, u_mass, u_points, u_violations, u_out, out, err); };
  });

  auto* simulate = app.add_subcommand("simulate", "Toy-problem robustness curve of a trained MLP");
  ConfigFlags sim_flags;
  sim_flags.attach(simulate);
  simulate->callback([&] {
    action = [&] { return cmd_simulate(sim_flags.resolve(ExperimentConfig{}), out, err); };
  });

  auto* mnist = app.add_subcommand("mnist", "MNIST robustness curve of a trained MLP");
  ConfigFlags mnist_flags;
  mnist_flags.attach(mnist);
  mnist->callback([&] { action = [&] { return cmd_mnist(mnist_flags.resolve(mnist_defaults()), out, err); }; });

  auto* drobust = app.add_subcommand("drobust", "Distributional robustness error curve");
  ConfigFlags dr_flags;
  std::string dr_model = "linear";
  dr_flags.attach(drobust);
  drobust->add_option("--model", dr_model, "Classifier family (linear only)");
  drobust->callback([&] {
    action = [&] {
      ExperimentConfig defaults;
      defaults.p = 100;
      defaults.q = LqExponent::finite(2.0);
      return cmd_drobust(dr_flags.resolve(defaults), dr_model, out, err);
    };
  });

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  std::string v_suite = "all";
  VerifyOptions v_opt;
  verify->add_option("--suite", v_suite, "all, blowup, dominance, duality, gradient or numerics");
  verify->add_option("--sigma-scale,--sigma_scale", v_opt.sigma_scale, "Multiplier on sigma in the dominance suite");
  verify->add_option("--seed", v_opt.seed, "Seed of the random configurations");
  verify->callback([&] { action = [&] { return cmd_verify(v_suite, v_opt, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const VacuousBoundError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IdxError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace nfl::cli
