#pragma once

// Worst-case error over test distributions within Wasserstein-1 distance eps
// of an empirical distribution, with labels held fixed. Each atom carries its
// distance to the error set of its own label, so the problem is a fractional
// knapsack whose convex piecewise-linear dual is minimized exactly.

#include <cstdint>
#include <vector>

#include "nfl/attacks.hpp"
#include "nfl/classifiers.hpp"
#include "nfl/distributions.hpp"

namespace nfl {

struct DrAtom {
  double mass = 0.0;      // > 0
  double distance = 0.0;  // >= 0, zero for misclassified atoms
};

struct DrInstance {
  std::vector<DrAtom> atoms;
  double eps = 0.0;

  /// Throws DomainError unless masses are positive and sum to at most
  /// 1 + 1e-12, distances are finite and >= 0, and eps >= 0.
  void validate() const;
  double total_mass() const;
};

struct DrSolution {
  double lambda_star = 0.0;
  /// 1 / lambda_star, exactly the breakpoint distance; infinite at lambda_star = 0.
  double radius = 0.0;
  double dual_value = 0.0;
  double primal_value = 0.0;
  double duality_gap = 0.0;  // dual_value - primal_value
};

/// sum_i m_i (1 - lambda d_i)_+ + lambda eps.
double dual_objective(double lambda, const DrInstance& inst);

/// Minimizes the dual over the breakpoints {0} and {1/d_i}, smallest
/// minimizer among ties, and attaches the greedy primal value.
DrSolution solve_dual(const DrInstance& inst);

/// Misclassified mass plus greedy transport of the cheapest atoms within the
/// budget, fractional at the cutoff.
double greedy_primal(const DrInstance& inst);

/// Adversarial error sum of masses with d_i <= eps.
double adversarial_error(const DrInstance& inst);

/// Masses of {d < radius} and {d <= radius}. At radius = 1/lambda_star > 0
/// the dual value lies between them.
struct DrBracket {
  double lo = 0.0;
  double hi = 0.0;
};
DrBracket dual_bracket(const DrInstance& inst, double radius);

struct DrCurvePoint {
  double eps = 0.0;
  double err_adv = 0.0;
  double err_dr = 0.0;
  double lambda_star = 0.0;
  /// Error-side bound 1 - acc bound; NaN when err = 0.
  double bound = 0.0;
  /// dual_bracket at 1/lambda_star contains the dual value (true at lambda_star = 0).
  bool bracket_ok = true;
};

/// Builds an instance from n class-k draws (mass 1/n each, exact distances
/// to B(h, k) in l_q) and solves it at each eps. h must be linear.
std::vector<DrCurvePoint> dr_error_curve(const LinearClassifier& h, const LabeledSampler& sampler,
                                         int k, const std::vector<double>& eps_grid,
                                         std::int64_t n, LqExponent q, std::uint64_t seed,
                                         int threads = 1);

}  // namespace nfl
