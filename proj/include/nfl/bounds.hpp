#pragma once

// Closed-form impossibility bounds and T2 noise-scale constructors.
//
// Notation: err = err(h|k) is the class-conditional standard error of a
// classifier, sigma = sigma_k the T2 scale of the class-conditional law
// (P_{X|k} satisfies T2(sigma^2)), p the ambient dimension and q the l_q
// exponent of the threat model.

#include <optional>
#include <utility>
#include <vector>

#include "nfl/scalar.hpp"

namespace nfl {

/// Critical tolerance sigma * sqrt(2 log(1/err)).
/// Throws VacuousBoundError for err = 0, DomainError outside (0,1].
double critical_epsilon(double err_std, double sigma);

/// Adversarial accuracy upper bound for the geodesic (or l2) threat model,
/// min(acc, exp(-(eps - eps_crit)^2 / (2 sigma^2))).
/// Throws BelowPhaseTransitionError for eps < critical_epsilon(1 - acc, sigma).
double adv_acc_bound_geodesic(double acc_std, double sigma, double eps);

/// Mean distance-to-error-set bound eps_crit + sigma * sqrt(pi/2).
double distance_bound_geodesic(double err_std, double sigma);

/// eps_crit * p^(1/q - 1/2).
double critical_epsilon_q(double err_std, double sigma, int p, LqExponent q);

/// min(acc, exp(-p^(1-2/q) (eps - eps_q)^2 / (2 sigma^2))).
double adv_acc_bound_lq(double acc_std, double sigma, int p, LqExponent q, double eps);

/// distance_bound_geodesic * p^(1/q - 1/2).
double distance_bound_lq(double err_std, double sigma, int p, LqExponent q);

/// Uniform measure on the sphere of radius r in R^p is T2(r^2/(p-1)).
double sphere_t2_sigma(double r, int p);

/// Volume measure on a manifold with Ricci curvature >= ricci_min > 0.
double ricci_uniform_sigma(double ricci_min);

/// An L-Lipschitz pushforward of a T2(s^2) law is T2(L^2 s^2).
double pushforward_sigma(double lipschitz, double sigma_base);

/// A bounded log-density perturbation u degrades sigma to sigma * e^osc(u).
double holley_stroock_sigma(double sigma, double osc);

struct FlaggedProbability {
  double value = 0.0;
  bool vacuous = false;
};

/// 7 delta / 3, clamped to 1 (and flagged) once delta > 3/7.
FlaggedProbability basic_nfl_bound(double delta);

struct ExactWithBound {
  double exact = 0.0;
  /// Exponential tail bound on `exact`: a lower bound for standard accuracy,
  /// an upper bound for adversarial accuracy.
  double bound = 0.0;
};

/// Standard accuracy Phi(eta sqrt(p-1)) of the averaging classifier on the
/// toy problem, with the lower bound 1 - exp(-(p-1) eta^2 / 2).
ExactWithBound toy_std_acc(int p, double eta);

/// l_inf adversarial accuracy Phi((eta - eps) sqrt(p-1)) of the averaging
/// classifier, with the upper bound exp(-(p-1)(eps - eta)^2 / 2). eps >= eta.
ExactWithBound toy_adv_acc(int p, double eta, double eps);

/// Mutual information (nats) between one Gaussian feature and the label in the
/// toy problem, eta^2 - r, with r by adaptive quadrature.
double toy_mutual_information(double eta);

/// The integral correction r(eta) >= 0 of toy_mutual_information.
double toy_mi_correction(double eta);

/// Marton blowup lower bound 1 - exp(-(eps - sqrt(2c log(1/mass)))^2 / (2c)).
/// Throws BelowPhaseTransitionError below the threshold sqrt(2c log(1/mass)).
double blowup_lower_bound(double c, double mass, double eps);

/// sqrt(2c log(1/mass)), the smallest eps for which blowup_lower_bound applies.
double blowup_threshold(double c, double mass);

struct BoundReport {
  double sigma = 0.0;
  double err_std = 0.0;
  double eps_crit = 0.0;
  std::optional<int> p;
  std::optional<LqExponent> q;
  /// (eps, acc upper bound) for grid points at or above eps_crit.
  std::vector<std::pair<double, double>> curve;
  double dist_bound = 0.0;
};

/// Tabulates every bound for one (err, sigma[, p, q]) configuration. Without
/// p and q the geodesic forms are used.
BoundReport make_bound_report(double err_std, double sigma, std::optional<int> p,
                              std::optional<LqExponent> q, const std::vector<double>& eps_grid);

}  // namespace nfl
