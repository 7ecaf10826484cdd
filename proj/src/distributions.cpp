#include "nfl/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "nfl/bounds.hpp"
#include "nfl/errors.hpp"
#include "nfl/scalar.hpp"

namespace nfl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kToyFlipProbability = 0.3;

}  // namespace

ClassConditional::ClassConditional(int label, DistributionKind kind)
    : label_(label), kind_(std::move(kind)), sigma_(0.0), dim_(0) {
  std::visit(
      Overloaded{
          [this](const IsotropicGaussian& g) {
            if (g.mean.empty()) throw DomainError("Gaussian mean must be non-empty");
            if (!(g.scale > 0.0)) throw DomainError("Gaussian scale must be positive");
            sigma_ = g.scale;
            dim_ = static_cast<int>(g.mean.size());
          },
          [this](const DiagonalGaussian& g) {
            if (g.mean.empty() || g.mean.size() != g.scales.size()) {
              throw DomainError("diagonal Gaussian needs matching non-empty mean and scales");
            }
            for (double s : g.scales) {
              if (!(s > 0.0)) throw DomainError("Gaussian scales must be positive");
            }
            sigma_ = *std::max_element(g.scales.begin(), g.scales.end());
            dim_ = static_cast<int>(g.mean.size());
          },
          [this](const SphereUniform& s) {
            sigma_ = sphere_t2_sigma(s.radius, s.dim);
            dim_ = s.dim;
          },
          [this](const HypercubePushforward& h) {
            if (h.dim < 1) throw DomainError("hypercube dimension must be >= 1");
            sigma_ = pushforward_sigma(1.0 / std::sqrt(2.0 * std::numbers::pi), 1.0);
            dim_ = h.dim;
          },
          [this](const ToyFeatureBlock& t) {
            if (t.dim < 2) throw DomainError("toy problem requires p >= 2");
            if (!(t.eta > 0.0)) throw DomainError("toy problem requires eta > 0");
            if (t.y != 1 && t.y != -1) throw DomainError("toy label must be +1 or -1");
            // The unit-variance Gaussian block carries the T2 constant.
            sigma_ = 1.0;
            dim_ = t.dim;
          },
      },
      kind_);
}

bool ClassConditional::is_gaussian() const {
  return std::holds_alternative<IsotropicGaussian>(kind_) ||
         std::holds_alternative<DiagonalGaussian>(kind_);
}

double t2_sigma_of(const ClassConditional& cond) { return cond.sigma(); }

LabeledSampler::LabeledSampler(std::vector<ClassConditional> conditionals,
                               std::vector<double> priors)
    : conditionals_(std::move(conditionals)), priors_(std::move(priors)) {
  if (conditionals_.empty()) throw DomainError("sampler needs at least one class");
  if (priors_.size() != conditionals_.size()) {
    throw DomainError("one prior per class conditional required");
  }
  for (double p : priors_) {
    if (!(p > 0.0)) throw DomainError("priors must be strictly positive");
  }
  const double total = std::accumulate(priors_.begin(), priors_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("priors must sum to 1");
  const int d = conditionals_.front().support_dim();
  for (const auto& c : conditionals_) {
    if (c.support_dim() != d) throw DomainError("class conditionals differ in dimension");
  }
}

LabeledSampler::LabeledSampler(std::vector<ClassConditional> conditionals)
    : LabeledSampler(conditionals,
                     std::vector<double>(conditionals.size(), 1.0 / conditionals.size())) {}

const ClassConditional& LabeledSampler::conditional(int label) const {
  for (const auto& c : conditionals_) {
    if (c.label() == label) return c;
  }
  throw ShapeError("no class conditional with label " + std::to_string(label));
}

LabeledSampler::Draw LabeledSampler::sample(RngStream& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t pick = conditionals_.size() - 1;
  for (std::size_t i = 0; i < priors_.size(); ++i) {
    acc += priors_[i];
    if (u < acc) {
      pick = i;
      break;
    }
  }
  return {draw(conditionals_[pick], rng), conditionals_[pick].label()};
}

void sample_toy_given_label(int p, double eta, int y, RngStream& rng, std::span<double> out) {
  if (p < 2) throw DomainError("toy problem requires p >= 2");
  if (out.size() != static_cast<std::size_t>(p)) throw ShapeError("toy output size mismatch");
  const double yy = static_cast<double>(y);
  out[0] = rng.bernoulli(kToyFlipProbability) ? -yy : yy;
  const double mean = eta * yy;
  for (int j = 1; j < p; ++j) out[j] = mean + rng.normal();
}

ToySample sample_toy(int p, double eta, RngStream& rng) {
  ToySample s;
  s.label = rng.sign();
  s.features.resize(p);
  sample_toy_given_label(p, eta, s.label, rng, s.features);
  return s;
}

std::vector<double> sample_gaussian(const ClassConditional& cond, RngStream& rng) {
  if (!cond.is_gaussian()) throw ShapeError("sample_gaussian requires a Gaussian conditional");
  return draw(cond, rng);
}

std::vector<double> sample_sphere_uniform(double r, int p, RngStream& rng) {
  if (p < 2) throw DomainError("sphere sampler requires p >= 2");
  std::vector<double> x(p);
  draw_into(ClassConditional(0, SphereUniform{r, p}), rng, x);
  return x;
}

std::vector<double> hypercube_pushforward(std::span<const double> z) {
  std::vector<double> out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), std_normal_cdf);
  return out;
}

void draw_into(const ClassConditional& cond, RngStream& rng, std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(cond.support_dim())) {
    throw ShapeError("draw_into: output size does not match the support dimension");
  }
  std::visit(Overloaded{
                 [&](const IsotropicGaussian& g) {
                   for (std::size_t j = 0; j < out.size(); ++j) {
                     out[j] = g.mean[j] + g.scale * rng.normal();
                   }
                 },
                 [&](const DiagonalGaussian& g) {
                   for (std::size_t j = 0; j < out.size(); ++j) {
                     out[j] = g.mean[j] + g.scales[j] * rng.normal();
                   }
                 },
                 [&](const SphereUniform& s) {
                   // Normalized Gaussian; redraw in the (measure-zero) event of
                   // an all-zero vector.
                   double norm = 0.0;
                   while (norm == 0.0) {
                     for (double& v : out) v = rng.normal();
                     norm = lq_norm(out, LqExponent::finite(2.0));
                   }
                   for (double& v : out) v *= s.radius / norm;
                 },
                 [&](const HypercubePushforward&) {
                   for (double& v : out) v = std_normal_cdf(rng.normal());
                 },
                 [&](const ToyFeatureBlock& t) {
                   sample_toy_given_label(t.dim, t.eta, t.y, rng, out);
                 },
             },
             cond.kind());
}

std::vector<double> draw(const ClassConditional& cond, RngStream& rng) {
  std::vector<double> x(cond.support_dim());
  draw_into(cond, rng, x);
  return x;
}

LabeledSampler make_toy_sampler(int p, double eta) {
  return LabeledSampler({ClassConditional(0, ToyFeatureBlock{p, eta, -1}),
                         ClassConditional(1, ToyFeatureBlock{p, eta, 1})});
}

}  // namespace nfl
