#include "nfl/scalar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nfl/errors.hpp"

namespace nfl {

LqExponent LqExponent::finite(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("l_q exponent must satisfy 1 <= q < inf, got " + std::to_string(q));
  }
  return LqExponent(q);
}

LqExponent LqExponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") {
    return infinity();
  }
  std::size_t used = 0;
  double q = 0.0;
  try {
    q = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse l_q exponent '" + text + "'");
  }
  if (used != text.size()) throw DomainError("cannot parse l_q exponent '" + text + "'");
  if (std::isinf(q) && q > 0) return infinity();
  return finite(q);
}

double LqExponent::value() const {
  if (infinite_) throw DomainError("q = inf has no finite value");
  return q_;
}

std::string LqExponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << q_;
  return os.str();
}

LqExponent dual_exponent(LqExponent q) {
  if (q.is_infinite()) return LqExponent::finite(1.0);
  if (q.value() == 1.0) return LqExponent::infinity();
  return LqExponent::finite(q.value() / (q.value() - 1.0));
}

double lq_norm(std::span<const double> x, LqExponent q) {
  if (q.is_infinite()) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  const double e = q.value();
  if (e == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // Scale by the largest magnitude so that |x|^q neither overflows nor
  // underflows.
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  if (e == 2.0) {
    for (double v : x) {
      const double r = v / m;
      s += r * r;
    }
    return m * std::sqrt(s);
  }
  for (double v : x) s += std::pow(std::abs(v) / m, e);
  return m * std::pow(s, 1.0 / e);
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

// Rational approximation of the normal quantile (P. J. Acklam, 2003).
constexpr std::array<double, 6> kA = {-3.969683028665376e+01, 2.209460984245205e+02,
                                      -2.759285104469687e+02, 1.383577518672690e+02,
                                      -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB = {-5.447609879822406e+01, 1.615858368580409e+02,
                                      -1.556989798598866e+02, 6.680131188771972e+01,
                                      -1.328068155288572e+01};
constexpr std::array<double, 6> kC = {-7.784894002430293e-03, -3.223964580411365e-01,
                                      -2.400758277161838e+00, -2.549732539343734e+00,
                                      4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD = {7.784695709041462e-03, 3.224671290700398e-01,
                                      2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowTail = 0.02425;

double lower_tail_rational(double a) {
  const double q = std::sqrt(-2.0 * std::log(a));
  return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
         ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
}

double acklam(double a) {
  if (a < kLowTail) return lower_tail_rational(a);
  if (a > 1.0 - kLowTail) return -lower_tail_rational(1.0 - a);
  const double q = a - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

// One Halley step on Phi(x) = a, valid for a <= 0.5 where a carries full
// relative precision.
double refine_lower(double x, double a) {
  const double e = std_normal_cdf(x) - a;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double std_normal_quantile_fast(double a) { return acklam(a); }

double std_normal_quantile(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw DomainError("std_normal_quantile requires a in (0,1), got " + std::to_string(a));
  }
  if (a == 0.5) return 0.0;
  if (a < 0.5) return refine_lower(acklam(a), a);
  // 1 - a is exact for a >= 0.5.
  const double c = 1.0 - a;
  return -refine_lower(acklam(c), c);
}

double crude_quantile_approx(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw DomainError("crude_quantile_approx requires a in [0,1), got " + std::to_string(a));
  }
  return std::sqrt(-2.0 * std::log1p(-a));
}

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 100000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

double incomplete_beta_impl(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete beta requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta requires x in [0,1]");
  return std::clamp(incomplete_beta_impl(a, b, x, 1.0 - x), 0.0, 1.0);
}

double regularized_incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete beta requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0) || !(one_minus_x >= 0.0 && one_minus_x <= 1.0)) {
    throw DomainError("incomplete beta requires x in [0,1]");
  }
  return std::clamp(incomplete_beta_impl(a, b, x, one_minus_x), 0.0, 1.0);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double error;
};

Panel gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

void adapt(const std::function<double(double)>& f, double lo, double hi, double tol,
           int depth, QuadratureResult& out) {
  const Panel p = gauss_kronrod_15(f, lo, hi);
  out.evaluations += 15;
  if (p.error <= tol || depth <= 0) {
    out.value += p.kronrod;
    out.error_estimate += p.error;
    return;
  }
  const double mid = 0.5 * (lo + hi);
  adapt(f, lo, mid, 0.5 * tol, depth - 1, out);
  adapt(f, mid, hi, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                                    double hi, double abs_tol, int max_depth) {
  QuadratureResult out;
  if (hi == lo) return out;
  if (hi < lo) {
    out = integrate_adaptive(f, hi, lo, abs_tol, max_depth);
    out.value = -out.value;
    return out;
  }
  adapt(f, lo, hi, abs_tol, max_depth, out);
  return out;
}

ProportionInterval wilson_interval(std::int64_t successes, std::int64_t trials) {
  if (trials <= 0) throw DomainError("wilson_interval requires at least one trial");
  if (successes < 0 || successes > trials) {
    throw DomainError("wilson_interval: successes outside [0, trials]");
  }
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {phat, std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace nfl
