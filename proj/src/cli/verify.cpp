#include "nfl/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nfl/attacks.hpp"
#include "nfl/blowup_lab.hpp"
#include "nfl/bounds.hpp"
#include "nfl/classifiers.hpp"
#include "nfl/drobust.hpp"
#include "nfl/rng.hpp"
#include "nfl/scalar.hpp"

namespace nfl::cli {

namespace {

constexpr double kTol = 1e-12;

SuiteResult blowup_suite() {
  std::size_t cases = 0;
  std::size_t points = 0;
  std::size_t violations = 0;
  for (const BlowupCase& bc : lemma_case_matrix()) {
    const auto grid = blowup_eps_grid(bc);
    violations += verify_blowup_lemma(bc, grid).size();
    points += grid.size();
    ++cases;
  }
  std::ostringstream d;
  d << cases << " cases, " << points << " grid points, " << violations << " violations";
  return {"blowup", violations == 0, d.str()};
}

// Random linear classifier on a Gaussian class conditional whose standardized
// margin is z, so err(h|k) = Phi(-z).
struct LinearCase {
  LinearClassifier h;
  ClassConditional cond;
  double sigma;
  LqExponent q;
};

LinearCase random_linear_case(RngStream& rng, int p, double sigma, bool diagonal, LqExponent q,
                              bool sign_weights, double z) {
  std::vector<double> w(p), mean(p), scales(p, sigma);
  for (int j = 0; j < p; ++j) {
    w[j] = sign_weights ? rng.sign() : rng.normal();
    mean[j] = sigma * rng.normal();
    if (diagonal) scales[j] = sigma * (0.25 + 0.75 * rng.uniform());
  }
  if (diagonal) scales[rng.next_u64() % p] = sigma;
  const int k = rng.sign() > 0 ? 1 : 0;
  const double y = k == 1 ? 1.0 : -1.0;
  double wm = 0.0, var = 0.0;
  for (int j = 0; j < p; ++j) {
    wm += w[j] * mean[j];
    var += w[j] * w[j] * scales[j] * scales[j];
  }
  const double b = z * std::sqrt(var) / y - wm;
  LinearClassifier h = LinearClassifier::make(w, b, 1, 0);
  ClassConditional cond = diagonal ? ClassConditional(k, DiagonalGaussian{mean, scales})
                                   : ClassConditional(k, IsotropicGaussian{mean, sigma});
  return {std::move(h), std::move(cond), sigma, q};
}

SuiteResult dominance_suite(const VerifyOptions& opt) {
  RngStream rng(opt.seed, 11);
  std::size_t configs = 0, checks = 0, failures = 0;
  std::string first_failure;
  const auto fail = [&](const std::string& what) {
    if (failures++ == 0) first_failure = what;
  };
  for (int p : {10, 100}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      for (bool diagonal : {false, true}) {
        // l_1 and l_2 for any weights; l_inf for sign vectors, whose l_1 norm
        // equals sqrt(p) times their l_2 norm.
        const std::vector<std::pair<LqExponent, bool>> geometries = {
            {LqExponent::finite(1.0), false}, {LqExponent::finite(2.0), false},
            {LqExponent::infinity(), true}};
        for (const auto& [q, sign_weights] : geometries) {
          for (int rep = 0; rep < 3; ++rep) {
            const double z = 0.25 + 3.25 * rng.uniform();
            const LinearCase c = random_linear_case(rng, p, sigma, diagonal, q, sign_weights, z);
            ++configs;
            const double acc = linear_robust_acc_closed_form(c.h, c.cond, 0.0, q);
            const double err = 1.0 - acc;
            const double s = c.sigma * opt.sigma_scale;
            const double eps_q = critical_epsilon_q(err, s, p, q);
            for (int j = 0; j <= 40; ++j) {
              const double eps = eps_q * (1.0 + 0.1 * j);
              const double exact = linear_robust_acc_closed_form(c.h, c.cond, eps, q);
              const double bound = adv_acc_bound_lq(acc, s, p, q, eps);
              ++checks;
              if (exact > bound + kTol) {
                std::ostringstream d;
                d << "acc " << exact << " > bound " << bound << " at eps " << eps << " (p " << p
                  << ", q " << q.to_string() << ")";
                fail(d.str());
              }
              if (eps >= 2.0 * eps_q) {
                ++checks;
                if (exact > err + kTol) fail("acc above err beyond 2 eps_q");
              }
            }
            ++checks;
            const double d = linear_distance_closed_form(c.h, c.cond, q);
            if (d > distance_bound_lq(err, s, p, q) + kTol) fail("distance above its bound");
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << configs << " configurations, " << checks << " checks, " << failures << " failures";
  if (failures > 0) d << "; first: " << first_failure;
  return {"dominance", failures == 0, d.str()};
}

SuiteResult duality_suite(const VerifyOptions& opt) {
  RngStream rng(opt.seed, 12);
  double worst_gap = 0.0;
  std::size_t dominance_failures = 0;
  const int instances = 1000;
  for (int t = 0; t < instances; ++t) {
    DrInstance inst;
    const int n = 1 + static_cast<int>(rng.next_u64() % 200);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double m = -std::log(rng.uniform());
      const double d = rng.uniform() < 0.1 ? 0.0 : std::pow(10.0, -3.0 + 6.0 * rng.uniform());
      inst.atoms.push_back({m, d});
      total += m;
    }
    for (auto& a : inst.atoms) a.mass /= total * (1.0 + 1e-12);
    inst.eps = std::pow(10.0, -3.0 + 5.0 * rng.uniform());
    const DrSolution sol = solve_dual(inst);
    worst_gap = std::max(worst_gap, std::abs(sol.duality_gap));
    if (sol.primal_value < adversarial_error(inst) - kTol) ++dominance_failures;
  }
  std::ostringstream d;
  d << instances << " instances, max |dual - primal| " << worst_gap << ", " << dominance_failures
    << " dominance failures";
  return {"duality", worst_gap <= 1e-9 && dominance_failures == 0, d.str()};
}

SuiteResult gradient_suite(const VerifyOptions& opt) {
  const MlpClassifier net = MlpClassifier::initialize({6, 8, 5, 3}, 1.0, opt.seed);
  RngStream rng(opt.seed, 13);
  double worst = 0.0;
  const int points = 200;
  const double h = 1e-6;
  for (int t = 0; t < points; ++t) {
    std::vector<double> x(6);
    for (double& v : x) v = rng.normal();
    const int label = static_cast<int>(rng.next_u64() % 3);
    const MlpGradient g = mlp_gradient(net, x, label);
    const auto loss_at = [&](const std::vector<double>& xx) { return mlp_gradient(net, xx, label).loss; };
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      std::vector<double> up = x, down = x;
      up[j] += h;
      down[j] -= h;
      const double fd = (loss_at(up) - loss_at(down)) / (2 * h);
      num += (fd - g.input[j]) * (fd - g.input[j]);
      den = std::max(den, std::abs(g.input[j]));
    }
    worst = std::max(worst, std::sqrt(num) / std::max(den, 1e-8));
  }
  std::ostringstream d;
  d << points << " points, max relative input-gradient error " << worst;
  return {"gradient", worst < 1e-5, d.str()};
}

SuiteResult numerics_suite() {
  double roundtrip = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double a = i / 1000.0;
    roundtrip = std::max(roundtrip, std::abs(std_normal_cdf(std_normal_quantile(a)) - a));
  }
  double cap = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double theta = std::numbers::pi * i / 100.0;
    cap = std::max(cap, std::abs(cap_mass(3, theta) - (1.0 - std::cos(theta)) / 2.0));
  }
  std::ostringstream d;
  d << "Phi round trip " << roundtrip << ", S^2 cap error " << cap;
  return {"numerics", roundtrip < 1e-12 && cap < 1e-10, d.str()};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"blowup", "dominance", "duality", "gradient",
                                                 "numerics"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
  if (name == "blowup") return blowup_suite();
  if (name == "dominance") return dominance_suite(opt);
  if (name == "duality") return duality_suite(opt);
  if (name == "gradient") return gradient_suite(opt);
  if (name == "numerics") return numerics_suite();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace nfl::cli
