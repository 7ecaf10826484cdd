#pragma once

// Special functions and norm machinery shared by every other module.

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace nfl {

/// Exponent q of an l_q norm, q in [1, inf]. Infinity is a distinct state,
/// never a large sentinel value.
class LqExponent {
 public:
  /// Throws DomainError unless q >= 1 and finite.
  static LqExponent finite(double q);
  static LqExponent infinity() { return LqExponent(); }
  /// Accepts "inf", "infinity" or a number >= 1.
  static LqExponent parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  /// Finite value of q. Throws DomainError for q = inf.
  double value() const;
  /// 1/q, with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / q_; }
  std::string to_string() const;

  friend bool operator==(const LqExponent& a, const LqExponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.q_ == b.q_);
  }

 private:
  LqExponent() : q_(0.0), infinite_(true) {}
  explicit LqExponent(double q) : q_(q), infinite_(false) {}

  double q_;
  bool infinite_;
};

/// Conjugate exponent: 1/q + 1/q* = 1, with 1 <-> inf.
LqExponent dual_exponent(LqExponent q);

double lq_norm(std::span<const double> x, LqExponent q);

double std_normal_pdf(double x);

/// Phi(x). Saturates smoothly to 0 and 1 in the far tails.
double std_normal_cdf(double x);

/// Phi^{-1}(a) for a in (0,1), accurate to a round-trip error below 1e-12.
double std_normal_quantile(double a);

/// Unrefined rational approximation of Phi^{-1} (relative error ~1e-9).
/// Cheap enough for bulk sampling; use std_normal_quantile elsewhere.
double std_normal_quantile_fast(double a);

/// sqrt(2 log(1/(1-a))): the crude tail approximation of Phi^{-1}(a).
/// It overestimates Phi^{-1}(a) for a >= 0.5.
double crude_quantile_approx(double a);

/// Regularized incomplete beta I_x(a, b), continued fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);
/// Same, with 1 - x supplied by the caller when it is known more accurately
/// than the subtraction would give (e.g. cos^2 next to sin^2).
double regularized_incomplete_beta(double a, double b, double x, double one_minus_x);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi] to the given
/// absolute tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    int max_depth = 50);

struct ProportionInterval {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

/// 95% Wilson score interval for `successes` out of `trials`.
ProportionInterval wilson_interval(std::int64_t successes, std::int64_t trials);

inline constexpr double kZ95 = 1.959963984540054;

}  // namespace nfl
