#pragma once

// Labeled samplers for the distribution families the bounds apply to. Each
// class-conditional law carries its T2 scale sigma_k.

#include <span>
#include <variant>
#include <vector>

#include "nfl/rng.hpp"

namespace nfl {

struct IsotropicGaussian {
  std::vector<double> mean;
  double scale = 1.0;
};

/// Axis-aligned Gaussian; sigma_k is the largest coordinate scale.
struct DiagonalGaussian {
  std::vector<double> mean;
  std::vector<double> scales;
};

/// Uniform law on the sphere of radius `radius` centred at 0 in R^dim.
struct SphereUniform {
  double radius = 1.0;
  int dim = 2;
};

/// Uniform law on [0,1]^dim seen as the image of N(0, I) under
/// z -> (Phi(z_1), ..., Phi(z_dim)).
struct HypercubePushforward {
  int dim = 1;
};

/// Features of the toy problem given the label y in {+1, -1}: X^1 = y w.p.
/// 0.7 (else -y) and X^j ~ N(eta y, 1) for j >= 2.
struct ToyFeatureBlock {
  int dim = 2;
  double eta = 0.1;
  int y = 1;
};

using DistributionKind = std::variant<IsotropicGaussian, DiagonalGaussian, SphereUniform,
                                      HypercubePushforward, ToyFeatureBlock>;

/// Conditional law P_{X|k} of the features given class k.
class ClassConditional {
 public:
  /// Validates the kind (positive scales, p >= 2 for spheres, ...) and
  /// computes sigma. Throws DomainError on invalid parameters.
  ClassConditional(int label, DistributionKind kind);

  int label() const { return label_; }
  const DistributionKind& kind() const { return kind_; }
  /// T2 scale: P_{X|k} satisfies T2(sigma^2).
  double sigma() const { return sigma_; }
  int support_dim() const { return dim_; }

  bool is_gaussian() const;

 private:
  int label_;
  DistributionKind kind_;
  double sigma_;
  int dim_;
};

double t2_sigma_of(const ClassConditional& cond);

/// Mixture of class conditionals with priors pi_k.
class LabeledSampler {
 public:
  /// Priors must be strictly positive and sum to 1 (within 1e-12).
  LabeledSampler(std::vector<ClassConditional> conditionals, std::vector<double> priors);

  /// Equal priors.
  explicit LabeledSampler(std::vector<ClassConditional> conditionals);

  const std::vector<ClassConditional>& conditionals() const { return conditionals_; }
  const std::vector<double>& priors() const { return priors_; }
  /// The conditional with the given label. Throws ShapeError if absent.
  const ClassConditional& conditional(int label) const;
  int dim() const { return conditionals_.front().support_dim(); }

  struct Draw {
    std::vector<double> x;
    int label;
  };
  Draw sample(RngStream& rng) const;

 private:
  std::vector<ClassConditional> conditionals_;
  std::vector<double> priors_;
};

struct ToySample {
  std::vector<double> features;
  int label;  // +1 or -1
};

/// Draws Y ~ Bern(1/2) on {+1,-1} and then the toy features given Y.
ToySample sample_toy(int p, double eta, RngStream& rng);

/// Toy features given the label, written into `out` (size p).
void sample_toy_given_label(int p, double eta, int y, RngStream& rng, std::span<double> out);

/// Gaussian draw; throws ShapeError for non-Gaussian kinds.
std::vector<double> sample_gaussian(const ClassConditional& cond, RngStream& rng);

std::vector<double> sample_sphere_uniform(double r, int p, RngStream& rng);

/// Componentwise Phi; a (2 pi)^{-1/2}-Lipschitz map onto [0,1]^p.
std::vector<double> hypercube_pushforward(std::span<const double> z);

/// Draw from any conditional into `out` (size support_dim()).
void draw_into(const ClassConditional& cond, RngStream& rng, std::span<double> out);
std::vector<double> draw(const ClassConditional& cond, RngStream& rng);

/// Label convention for the toy problem: y = +1 is class 1, y = -1 class 0.
inline int toy_class_of(int y) { return y > 0 ? 1 : 0; }
inline int toy_sign_of(int cls) { return cls == 1 ? 1 : -1; }

/// Two-class toy sampler with classes {0: y=-1, 1: y=+1} and equal priors.
LabeledSampler make_toy_sampler(int p, double eta);

}  // namespace nfl
