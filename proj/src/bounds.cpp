#include "nfl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nfl/errors.hpp"

namespace nfl {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_err(double err_std) {
  if (err_std == 0.0) {
    throw VacuousBoundError(
        "vacuous bound: err(h|k) = 0, the critical tolerance is infinite");
  }
  if (!(err_std > 0.0 && err_std <= 1.0)) {
    throw DomainError("err(h|k) must lie in (0,1], got " + std::to_string(err_std));
  }
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be positive and finite, got " + std::to_string(sigma));
  }
}

void check_dim(int p) {
  if (p < 1) throw DomainError("dimension p must be >= 1, got " + std::to_string(p));
}

// Evaluations at exactly the critical tolerance are common (eps computed by
// the same formula); accept a relative rounding slack.
constexpr double kThresholdSlack = 1e-12;

double excess_over(double eps, double threshold) {
  if (eps < threshold * (1.0 - kThresholdSlack)) {
    throw BelowPhaseTransitionError("below phase transition: eps = " + std::to_string(eps) +
                                    " < critical " + std::to_string(threshold));
  }
  return std::max(0.0, eps - threshold);
}

double scale_q(int p, LqExponent q) {
  return std::pow(static_cast<double>(p), q.reciprocal() - 0.5);
}

}  // namespace

double critical_epsilon(double err_std, double sigma) {
  check_err(err_std);
  check_sigma(sigma);
  return sigma * std::sqrt(-2.0 * std::log(err_std));
}

double adv_acc_bound_geodesic(double acc_std, double sigma, double eps) {
  const double crit = critical_epsilon(1.0 - acc_std, sigma);
  const double d = excess_over(eps, crit);
  return clamp01(std::min(acc_std, std::exp(-d * d / (2.0 * sigma * sigma))));
}

double distance_bound_geodesic(double err_std, double sigma) {
  return critical_epsilon(err_std, sigma) + sigma * std::sqrt(std::numbers::pi / 2.0);
}

double critical_epsilon_q(double err_std, double sigma, int p, LqExponent q) {
  check_dim(p);
  return critical_epsilon(err_std, sigma) * scale_q(p, q);
}

double adv_acc_bound_lq(double acc_std, double sigma, int p, LqExponent q, double eps) {
  const double crit = critical_epsilon_q(1.0 - acc_std, sigma, p, q);
  const double d = excess_over(eps, crit);
  const double rate = std::pow(static_cast<double>(p), 1.0 - 2.0 * q.reciprocal());
  return clamp01(std::min(acc_std, std::exp(-rate * d * d / (2.0 * sigma * sigma))));
}

double distance_bound_lq(double err_std, double sigma, int p, LqExponent q) {
  check_dim(p);
  return distance_bound_geodesic(err_std, sigma) * scale_q(p, q);
}

double sphere_t2_sigma(double r, int p) {
  if (p < 2) throw DomainError("sphere_t2_sigma requires p >= 2");
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  return r / std::sqrt(static_cast<double>(p - 1));
}

double ricci_uniform_sigma(double ricci_min) {
  if (!(ricci_min > 0.0)) throw DomainError("Ricci lower bound must be positive");
  return 1.0 / std::sqrt(ricci_min);
}

double pushforward_sigma(double lipschitz, double sigma_base) {
  if (!(lipschitz > 0.0) || !(sigma_base > 0.0)) {
    throw DomainError("pushforward_sigma requires positive arguments");
  }
  return lipschitz * sigma_base;
}

double holley_stroock_sigma(double sigma, double osc) {
  check_sigma(sigma);
  if (!(osc >= 0.0)) throw DomainError("oscillation sup u - inf u must be >= 0");
  return sigma * std::exp(osc);
}

FlaggedProbability basic_nfl_bound(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0,1]");
  const double v = 7.0 * delta / 3.0;
  if (v > 1.0) return {1.0, true};
  return {v, false};
}

ExactWithBound toy_std_acc(int p, double eta) {
  if (p < 2) throw DomainError("toy problem requires p >= 2");
  if (!(eta > 0.0)) throw DomainError("toy problem requires eta > 0");
  const double n = static_cast<double>(p - 1);
  return {std_normal_cdf(eta * std::sqrt(n)), clamp01(-std::expm1(-n * eta * eta / 2.0))};
}

ExactWithBound toy_adv_acc(int p, double eta, double eps) {
  if (p < 2) throw DomainError("toy problem requires p >= 2");
  if (!(eta > 0.0)) throw DomainError("toy problem requires eta > 0");
  if (eps < eta) {
    throw DomainError("outside proof regime: toy adversarial accuracy needs eps >= eta");
  }
  const double n = static_cast<double>(p - 1);
  const double gap = eps - eta;
  return {std_normal_cdf(-gap * std::sqrt(n)), clamp01(std::exp(-n * gap * gap / 2.0))};
}

double toy_mi_correction(double eta) {
  if (!(eta > 0.0)) return 0.0;
  // e^{-eta^2/2} e^{-z^2/(2 eta^2)} cosh(z) folds into a Gaussian bump centred
  // at z = eta^2 times (1 + e^{-2z})/2. Integrating in t = (z - eta^2)/eta
  // gives the bump unit width for every eta.
  const double e2 = eta * eta;
  auto log_cosh = [](double z) {
    if (z < 1.0) {
      const double s = std::sinh(0.5 * z);
      return std::log1p(2.0 * s * s);
    }
    return z + std::log1p(std::exp(-2.0 * z)) - std::numbers::ln2;
  };
  auto integrand = [eta, e2, &log_cosh](double t) {
    const double z = e2 + eta * t;
    return std::exp(-0.5 * t * t) * 0.5 * (1.0 + std::exp(-2.0 * z)) * log_cosh(z);
  };
  const double prefactor = 2.0 / std::sqrt(2.0 * std::numbers::pi);
  const double tol = 1e-14 * std::max(e2, 1e-200);
  return prefactor * integrate_adaptive(integrand, -eta, 40.0, tol).value;
}

double toy_mutual_information(double eta) {
  if (!(eta >= 0.0)) throw DomainError("eta must be >= 0");
  if (eta == 0.0) return 0.0;
  const double e2 = eta * eta;
  return std::clamp(e2 - toy_mi_correction(eta), 0.0, e2);
}

double blowup_threshold(double c, double mass) {
  if (!(c > 0.0)) throw DomainError("T2 constant c must be positive");
  if (!(mass > 0.0 && mass <= 1.0)) throw DomainError("mass must lie in (0,1]");
  return std::sqrt(-2.0 * c * std::log(mass));
}

double blowup_lower_bound(double c, double mass, double eps) {
  const double thr = blowup_threshold(c, mass);
  if (eps < thr * (1.0 - kThresholdSlack)) {
    throw BelowPhaseTransitionError("below blowup threshold: eps = " + std::to_string(eps) +
                                    " < " + std::to_string(thr));
  }
  const double d = std::max(0.0, eps - thr);
  return clamp01(-std::expm1(-d * d / (2.0 * c)));
}

BoundReport make_bound_report(double err_std, double sigma, std::optional<int> p,
                              std::optional<LqExponent> q, const std::vector<double>& eps_grid) {
  BoundReport r;
  r.sigma = sigma;
  r.err_std = err_std;
  r.p = p;
  r.q = q;
  const bool flat = p.has_value() && q.has_value();
  if (flat) {
    r.eps_crit = critical_epsilon_q(err_std, sigma, *p, *q);
    r.dist_bound = distance_bound_lq(err_std, sigma, *p, *q);
  } else {
    r.eps_crit = critical_epsilon(err_std, sigma);
    r.dist_bound = distance_bound_geodesic(err_std, sigma);
  }
  for (double eps : eps_grid) {
    if (eps < r.eps_crit) continue;
    const double b = flat ? adv_acc_bound_lq(1.0 - err_std, sigma, *p, *q, eps)
                          : adv_acc_bound_geodesic(1.0 - err_std, sigma, eps);
    r.curve.emplace_back(eps, b);
  }
  return r;
}

}  // namespace nfl
