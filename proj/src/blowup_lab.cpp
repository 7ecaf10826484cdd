#include "nfl/blowup_lab.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nfl/bounds.hpp"
#include "nfl/errors.hpp"

namespace nfl {

namespace {

constexpr double kSlackTolerance = 1e-12;

double checked_scale(int p, double sigma, std::span<const double> w) {
  if (p < 1 || static_cast<int>(w.size()) != p) throw DomainError("w must have p >= 1 entries");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const double wn = lq_norm(w, LqExponent::finite(2.0));
  if (!(wn > 0.0)) throw DomainError("half-space normal w must be nonzero");
  return sigma * wn;
}

std::string format_id(const char* kind, int p, double mass) {
  std::ostringstream out;
  out << kind << "_p" << p << "_m" << mass;
  return out.str();
}

}  // namespace

double halfspace_mass(int p, double sigma, std::span<const double> w, double t) {
  return std_normal_cdf(-t / checked_scale(p, sigma, w));
}

double halfspace_blowup_mass(int p, double sigma, std::span<const double> w, double t, double eps,
                             LqExponent q) {
  if (!(eps >= 0.0)) throw DomainError("eps must be >= 0");
  const double scale = checked_scale(p, sigma, w);
  if (std::isinf(eps)) return 1.0;
  return std_normal_cdf((-t + eps * lq_norm(w, dual_exponent(q))) / scale);
}

double cap_mass(int p, double theta) {
  if (p < 2) throw DomainError("cap_mass requires p >= 2");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("cap angle outside [0, pi]");
  if (theta > std::numbers::pi / 2) return 1.0 - cap_mass(p, std::numbers::pi - theta);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return 0.5 * regularized_incomplete_beta(0.5 * (p - 1), 0.5, s * s, c * c);
}

double cap_blowup_mass(int p, double r, double theta, double eps) {
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  if (!(eps >= 0.0)) throw DomainError("eps must be >= 0");
  cap_mass(p, theta);
  return cap_mass(p, std::min(theta + eps / r, std::numbers::pi));
}

double cap_angle_for_mass(int p, double mass) {
  if (!(mass > 0.0 && mass < 1.0)) throw DomainError("cap mass must lie in (0,1)");
  double lo = 0.0;
  double hi = std::numbers::pi;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cap_mass(p, mid) < mass ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double BlowupCase::mass() const {
  if (const auto* g = std::get_if<GaussianSpace>(&space)) {
    const auto& h = std::get<HalfSpaceSet>(set);
    return halfspace_mass(g->p, g->sigma, h.w, h.t);
  }
  const auto& s = std::get<SphereSpace>(space);
  return cap_mass(s.p, std::get<CapSet>(set).theta);
}

double BlowupCase::c() const {
  if (const auto* g = std::get_if<GaussianSpace>(&space)) return g->sigma * g->sigma;
  const auto& s = std::get<SphereSpace>(space);
  const double sigma = sphere_t2_sigma(s.r, s.p);
  return sigma * sigma;
}

double BlowupCase::blowup_mass(double eps) const {
  if (const auto* g = std::get_if<GaussianSpace>(&space)) {
    const auto& h = std::get<HalfSpaceSet>(set);
    return halfspace_blowup_mass(g->p, g->sigma, h.w, h.t, eps, LqExponent::finite(2.0));
  }
  const auto& s = std::get<SphereSpace>(space);
  return cap_blowup_mass(s.p, s.r, std::get<CapSet>(set).theta, eps);
}

BlowupCase gaussian_halfspace_case(int p, double sigma, double mass) {
  if (!(mass > 0.0 && mass < 1.0)) throw DomainError("half-space mass must lie in (0,1)");
  if (p < 1 || !(sigma > 0.0)) throw DomainError("need p >= 1 and sigma > 0");
  std::vector<double> w(p, 0.0);
  w[0] = 1.0;
  const double t = sigma * std_normal_quantile(1.0 - mass);
  return {format_id("gauss", p, mass), GaussianSpace{p, sigma}, HalfSpaceSet{std::move(w), t}};
}

BlowupCase sphere_cap_case(int p, double r, double mass) {
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  return {format_id("sphere", p, mass), SphereSpace{p, r}, CapSet{cap_angle_for_mass(p, mass)}};
}

std::vector<double> blowup_eps_grid(const BlowupCase& bc, int points) {
  if (points < 1) throw DomainError("grid needs at least one point");
  const double c = bc.c();
  const double start = blowup_threshold(c, bc.mass());
  const double span = 8.0 * std::sqrt(c);
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    grid.push_back(points == 1 ? start : start + span * i / (points - 1));
  }
  return grid;
}

std::vector<BlowupRow> evaluate_blowup(const BlowupCase& bc, const std::vector<double>& eps_grid) {
  const double mass = bc.mass();
  const double c = bc.c();
  std::vector<BlowupRow> rows;
  for (double eps : eps_grid) {
    BlowupRow row{bc.id, eps, bc.blowup_mass(eps), blowup_lower_bound(c, mass, eps), 0.0};
    row.slack = row.exact - row.bound;
    rows.push_back(row);
  }
  return rows;
}

std::vector<BlowupRow> verify_blowup_lemma(const BlowupCase& bc, const std::vector<double>& eps_grid) {
  std::vector<BlowupRow> bad;
  for (const BlowupRow& row : evaluate_blowup(bc, eps_grid)) {
    if (row.slack < -kSlackTolerance) bad.push_back(row);
  }
  return bad;
}

std::vector<BlowupCase> lemma_case_matrix() {
  const double masses[] = {0.001, 0.01, 0.1, 0.5};
  std::vector<BlowupCase> cases;
  for (int p : {1, 10, 100}) {
    for (double m : masses) cases.push_back(gaussian_halfspace_case(p, 1.0, m));
  }
  for (int p : {3, 10, 500}) {
    for (double m : masses) cases.push_back(sphere_cap_case(p, 1.0, m));
  }
  return cases;
}

}  // namespace nfl
