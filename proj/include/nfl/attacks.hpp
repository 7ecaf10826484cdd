#pragma once

// Adversarial perturbation search and robust accuracy / distance estimation.
// Linear classifiers get exact answers from their margin; networks are
// attacked with l_inf projected gradient ascent, which can only over-estimate
// robust accuracy.

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "nfl/classifiers.hpp"
#include "nfl/distributions.hpp"
#include "nfl/scalar.hpp"

namespace nfl {

struct ThreatModel {
  enum class Kind { Lq, Geodesic };

  Kind kind = Kind::Lq;
  LqExponent q = LqExponent::infinity();
  double radius = 1.0;  // sphere radius, geodesic kind only
  double eps = 0.0;

  /// Throw DomainError for eps < 0 or radius <= 0.
  static ThreatModel lq(LqExponent q, double eps);
  static ThreatModel geodesic(double radius, double eps);
};

/// (w.x + b)_+ / ||w||_{q*}: l_q distance from x to the negative side of h.
double linear_margin_distance(const LinearClassifier& h, std::span<const double> x, LqExponent q);

/// l_q distance from x to the error set B(h, k) = {x' : h(x') != k}.
double linear_distance_to_error(const LinearClassifier& h, std::span<const double> x, int k,
                                LqExponent q);

/// Geodesic distance on the sphere of radius r from x to B(h, k). The
/// negative side of h meets the sphere in a cap around -w, so the distance is
/// r (angle - cap angle)_+.
double linear_geodesic_distance_to_error(const LinearClassifier& h, std::span<const double> x,
                                         int k, double r);

/// Worst l_inf perturbation x - eps y sign(w) of a point with sign label
/// y in {+1, -1}; coordinates with w_j = 0 are left alone.
std::vector<double> linear_optimal_attack(const LinearClassifier& h, std::span<const double> x,
                                          int y, double eps);

/// Exact robust accuracy of linear h on a Gaussian class conditional,
/// Phi((y (w.m + b) - eps ||w||_{q*}) / ||w . s||_2) with y the sign of class k.
/// Throws ShapeError for non-Gaussian conditionals or mismatched dimensions.
double linear_robust_acc_closed_form(const LinearClassifier& h, const ClassConditional& cond,
                                     double eps, LqExponent q);

/// Exact mean l_q distance E[(a + sZ)_+] / ||w||_{q*} for a Gaussian
/// conditional, where a = y (w.m + b) and s = ||w . s||_2.
double linear_distance_closed_form(const LinearClassifier& h, const ClassConditional& cond,
                                   LqExponent q);

/// r arccos(x.x' / r^2). Throws DomainError if either point is off the
/// sphere by more than 1e-9 (relative to r).
double geodesic_distance_sphere(std::span<const double> x, std::span<const double> x2, double r);

struct PgdConfig {
  int steps = 40;
  /// alpha = step_fraction * eps / steps unless step_size > 0.
  double step_fraction = 2.5;
  double step_size = 0.0;
  /// Extra attempts started from a uniform point of the eps-ball.
  int restarts = 1;
  /// Keep iterates inside [0,1]^p (image data).
  bool clamp_unit_box = false;

  double alpha(double eps) const { return step_size > 0 ? step_size : step_fraction * eps / steps; }
};

struct PgdResult {
  bool found = false;
  std::vector<double> x_adv;  // the misclassified iterate when found
};

/// l_inf projected gradient ascent on the attack loss of h at (x, label).
/// Attempt 0 starts at x, attempt r >= 1 at a uniform point of the ball drawn
/// from rng.substream(r). Throws NumericalError on a non-finite gradient.
PgdResult pgd_linf(const Classifier& h, std::span<const double> x, int label, double eps,
                   const PgdConfig& cfg, const RngStream& rng);

/// Batched PGD on an MLP, one column per sample. Sample i draws its random
/// starts from streams[i]. Returns found flags.
std::vector<bool> pgd_linf_batch(const MlpClassifier& h, const Eigen::MatrixXd& inputs,
                                 std::span<const int> labels, double eps, const PgdConfig& cfg,
                                 std::span<const RngStream> streams);

struct RobustCount {
  double eps = 0.0;
  std::int64_t n = 0;
  std::int64_t robust = 0;
  ProportionInterval ci;
};

/// Robust counts of class-k samples (columns of `inputs`) over an ascending
/// l_inf grid. Linear h uses exact distances; an MLP is attacked by PGD with
/// per-sample streams (seed, i), and a sample broken at one eps counts as
/// broken at every larger eps, so counts are non-increasing by construction.
/// Results do not depend on `threads`.
std::vector<RobustCount> linf_sweep(const Classifier& h, const Eigen::MatrixXd& inputs, int k,
                                    const std::vector<double>& eps_grid, const PgdConfig& cfg,
                                    std::uint64_t seed, int threads = 1);

/// As above with one label per column.
std::vector<RobustCount> linf_sweep(const Classifier& h, const Eigen::MatrixXd& inputs,
                                    std::span<const int> labels,
                                    const std::vector<double>& eps_grid, const PgdConfig& cfg,
                                    std::uint64_t seed, int threads = 1);

struct AccuracyEstimate {
  double acc_hat = 0.0;
  ProportionInterval ci;
  std::int64_t robust = 0;
  std::int64_t n = 0;
};

/// Fraction of n class-k draws (draw i from stream (seed, i)) with no
/// misclassified point in the threat ball, with a Wilson interval. Exact for
/// linear and constant h; PGD (l_inf only) for an MLP.
AccuracyEstimate empirical_adv_accuracy(const Classifier& h, const LabeledSampler& sampler, int k,
                                        const ThreatModel& threat, std::int64_t n,
                                        const PgdConfig& cfg, std::uint64_t seed,
                                        int threads = 1);

struct DistanceEstimate {
  double d_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::int64_t n = 0;
  std::int64_t censored = 0;
  /// True when distances come from an attack and over-estimate the truth.
  bool upper_bound_estimate = false;
};

/// Per-sample distances to B(h, k) for class-k draws (seed, i). Exact for
/// linear h (l_q or geodesic); for an MLP, bisection on eps of PGD success in
/// [0, eps_max] to tolerance 1e-3, samples never broken counted at eps_max as
/// censored. Mean with a normal-approximation 95% interval.
DistanceEstimate empirical_distance_to_error(const Classifier& h, const LabeledSampler& sampler,
                                             int k, const ThreatModel& threat, std::int64_t n,
                                             std::uint64_t seed, int threads = 1,
                                             const PgdConfig& cfg = {}, double eps_max = 1.0);

/// Distances behind empirical_distance_to_error, index-ordered.
struct DistanceSamples {
  std::vector<double> d;
  std::vector<bool> censored;
};
DistanceSamples distance_samples(const Classifier& h, const LabeledSampler& sampler, int k,
                                 const ThreatModel& threat, std::int64_t n, std::uint64_t seed,
                                 int threads = 1, const PgdConfig& cfg = {},
                                 double eps_max = 1.0);

struct CurvePoint {
  double eps = 0.0;
  std::int64_t n = 0;
  double acc_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  /// Upper bound on acc_eps(h|k); NaN when the bound is vacuous (err = 0).
  double bound = 0.0;
  bool below_bound = true;
};

struct RobustnessCurve {
  std::vector<CurvePoint> points;
  double err_std = 0.0;
  /// NaN when err_std = 0.
  double eps_crit = 0.0;
};

/// Attaches the l_q bound of a T2(sigma^2) conditional to robust counts. Below
/// eps_crit the bound is the standard accuracy 1 - err_std.
RobustnessCurve make_robustness_curve(const std::vector<RobustCount>& counts, double err_std,
                                      double sigma, int p, LqExponent q);

}  // namespace nfl
