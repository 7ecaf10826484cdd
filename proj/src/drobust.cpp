#include "nfl/drobust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nfl/bounds.hpp"
#include "nfl/errors.hpp"

namespace nfl {

namespace {

constexpr double kTieTolerance = 1e-13;

std::vector<DrAtom> sorted_by_distance(const DrInstance& inst) {
  std::vector<DrAtom> atoms = inst.atoms;
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const DrAtom& a, const DrAtom& b) { return a.distance < b.distance; });
  return atoms;
}

}  // namespace

void DrInstance::validate() const {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("transport budget must be finite and >= 0");
  for (const DrAtom& a : atoms) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw DomainError("atom masses must be positive");
    if (!(a.distance >= 0.0) || !std::isfinite(a.distance)) {
      throw DomainError("atom distances must be finite and >= 0");
    }
  }
  if (total_mass() > 1.0 + 1e-12) throw DomainError("atom masses sum to more than 1");
}

double DrInstance::total_mass() const {
  double m = 0.0;
  for (const DrAtom& a : atoms) m += a.mass;
  return m;
}

double dual_objective(double lambda, const DrInstance& inst) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  if (std::isinf(lambda)) {
    if (inst.eps > 0.0) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (const DrAtom& a : inst.atoms) m += a.distance == 0.0 ? a.mass : 0.0;
    return m;
  }
  double g = lambda * inst.eps;
  for (const DrAtom& a : inst.atoms) g += a.mass * std::max(0.0, 1.0 - lambda * a.distance);
  return g;
}

DrSolution solve_dual(const DrInstance& inst) {
  inst.validate();
  const std::vector<DrAtom> atoms = sorted_by_distance(inst);
  const std::size_t n = atoms.size();
  // Prefix sums over ascending distance: mass and first moment of atoms [0, i).
  std::vector<double> mass(n + 1, 0.0), moment(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    mass[i + 1] = mass[i] + atoms[i].mass;
    moment[i + 1] = moment[i] + atoms[i].mass * atoms[i].distance;
  }

  DrSolution sol;
  sol.lambda_star = 0.0;
  sol.radius = std::numeric_limits<double>::infinity();
  sol.dual_value = mass[n];
  // Breakpoints lambda = 1/D in increasing order, i.e. D descending. At
  // lambda = 1/D exactly the atoms with d < D contribute.
  std::size_t i = n;
  while (i > 0) {
    const double d = atoms[i - 1].distance;
    if (d == 0.0) break;
    std::size_t below = i - 1;
    while (below > 0 && atoms[below - 1].distance == d) --below;
    const double g = mass[below] - moment[below] / d + inst.eps / d;
    if (g < sol.dual_value - kTieTolerance * std::max(1.0, std::abs(sol.dual_value))) {
      sol.dual_value = g;
      sol.lambda_star = 1.0 / d;
      sol.radius = d;
    }
    i = below;
  }
  sol.dual_value = std::clamp(sol.dual_value, 0.0, 1.0);
  sol.primal_value = greedy_primal(inst);
  sol.duality_gap = sol.dual_value - sol.primal_value;
  return sol;
}

double greedy_primal(const DrInstance& inst) {
  inst.validate();
  double err = 0.0;
  double budget = inst.eps;
  for (const DrAtom& a : sorted_by_distance(inst)) {
    if (a.distance == 0.0) {
      err += a.mass;
      continue;
    }
    const double cost = a.mass * a.distance;
    if (cost <= budget) {
      err += a.mass;
      budget -= cost;
    } else {
      err += budget / a.distance;
      break;
    }
  }
  return std::clamp(err, 0.0, 1.0);
}

double adversarial_error(const DrInstance& inst) {
  double m = 0.0;
  for (const DrAtom& a : inst.atoms) m += a.distance <= inst.eps ? a.mass : 0.0;
  return m;
}

DrBracket dual_bracket(const DrInstance& inst, double radius) {
  DrBracket b;
  for (const DrAtom& a : inst.atoms) {
    if (a.distance < radius) b.lo += a.mass;
    if (a.distance <= radius) b.hi += a.mass;
  }
  return b;
}

std::vector<DrCurvePoint> dr_error_curve(const LinearClassifier& h, const LabeledSampler& sampler,
                                         int k, const std::vector<double>& eps_grid,
                                         std::int64_t n, LqExponent q, std::uint64_t seed,
                                         int threads) {
  if (n < 1) throw DomainError("dr_error_curve needs n >= 1");
  const DistanceSamples ds =
      distance_samples(h, sampler, k, ThreatModel::lq(q, 0.0), n, seed, threads);
  DrInstance inst;
  for (double d : ds.d) inst.atoms.push_back({1.0 / static_cast<double>(n), d});

  const ClassConditional& cond = sampler.conditional(k);
  inst.eps = 0.0;
  const double err = adversarial_error(inst);
  const double sigma = cond.sigma();
  const int p = cond.support_dim();
  double eps_crit = std::numeric_limits<double>::quiet_NaN();
  if (err > 0.0) eps_crit = critical_epsilon_q(err, sigma, p, q);

  std::vector<DrCurvePoint> curve;
  for (double eps : eps_grid) {
    inst.eps = eps;
    const DrSolution sol = solve_dual(inst);
    DrCurvePoint pt{eps, adversarial_error(inst), sol.dual_value, sol.lambda_star,
                    std::numeric_limits<double>::quiet_NaN()};
    if (sol.lambda_star > 0.0) {
      const DrBracket b = dual_bracket(inst, sol.radius);
      pt.bracket_ok = b.lo - 1e-12 <= sol.dual_value && sol.dual_value <= b.hi + 1e-12;
    }
    if (err > 0.0) {
      pt.bound = eps >= eps_crit ? 1.0 - adv_acc_bound_lq(1.0 - err, sigma, p, q, eps) : err;
    }
    curve.push_back(pt);
  }
  return curve;
}

}  // namespace nfl
