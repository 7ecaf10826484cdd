#pragma once

// Exact blowup masses of half-spaces under Gaussian measure and of geodesic
// caps under the uniform measure on a sphere, checked against the Marton
// lower bound.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nfl/scalar.hpp"

namespace nfl {

/// N(0, sigma^2 I) mass of {x : w.x >= t}, Phi(-t / (sigma ||w||_2)).
/// Throws DomainError for w = 0 or sigma <= 0.
double halfspace_mass(int p, double sigma, std::span<const double> w, double t);

/// Mass of the l_q eps-blowup {w.x >= t - eps ||w||_{q*}} of the half-space.
double halfspace_blowup_mass(int p, double sigma, std::span<const double> w, double t, double eps,
                             LqExponent q);

/// Uniform mass of a geodesic cap of polar angle theta on S^{p-1}.
/// Throws DomainError for p < 2 or theta outside [0, pi].
double cap_mass(int p, double theta);

/// Geodesic eps-blowup of a cap on the radius-r sphere: cap_mass(p, min(theta + eps/r, pi)).
double cap_blowup_mass(int p, double r, double theta, double eps);

/// Polar angle whose cap has the given mass in (0,1), by bisection.
double cap_angle_for_mass(int p, double mass);

struct GaussianSpace {
  int p = 1;
  double sigma = 1.0;
};

struct SphereSpace {
  int p = 3;
  double r = 1.0;
};

struct HalfSpaceSet {
  std::vector<double> w;
  double t = 0.0;
};

struct CapSet {
  double theta = 0.0;
};

/// A set B in a T2(c) space whose blowups have exact masses.
struct BlowupCase {
  std::string id;
  std::variant<GaussianSpace, SphereSpace> space;
  std::variant<HalfSpaceSet, CapSet> set;

  /// mu(B).
  double mass() const;
  /// T2 constant: sigma^2, or r^2/(p-1) on the sphere.
  double c() const;
  /// mu(B^eps) in the l_2 (Gaussian) or geodesic (sphere) metric.
  double blowup_mass(double eps) const;
};

/// Half-space {x_1 >= t} of N(0, sigma^2 I_p) with the given mass.
BlowupCase gaussian_halfspace_case(int p, double sigma, double mass);
/// Cap of S^{p-1}(r) with the given mass.
BlowupCase sphere_cap_case(int p, double r, double mass);

struct BlowupRow {
  std::string case_id;
  double eps = 0.0;
  double exact = 0.0;
  double bound = 0.0;
  /// exact - bound; negative values beyond -1e-12 are violations.
  double slack = 0.0;
};

/// `points` equally spaced eps values from the blowup threshold up to
/// threshold + 8 sqrt(c).
std::vector<double> blowup_eps_grid(const BlowupCase& bc, int points = 50);

/// Exact mass and lower bound at every grid point. Grid points must lie at or
/// above the threshold sqrt(2c log(1/mu(B))).
std::vector<BlowupRow> evaluate_blowup(const BlowupCase& bc, const std::vector<double>& eps_grid);

/// Rows of evaluate_blowup with slack < -1e-12; empty when the lemma holds.
std::vector<BlowupRow> verify_blowup_lemma(const BlowupCase& bc, const std::vector<double>& eps_grid);

/// Gaussian half-spaces p in {1, 10, 100} and sphere caps p in {3, 10, 500},
/// each with masses {0.001, 0.01, 0.1, 0.5}.
std::vector<BlowupCase> lemma_case_matrix();

}  // namespace nfl
