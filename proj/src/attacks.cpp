#include "nfl/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nfl/bounds.hpp"
#include "nfl/errors.hpp"
#include "nfl/parallel.hpp"

namespace nfl {

namespace {

constexpr int kChunk = 256;
constexpr double kBisectionTolerance = 1e-3;

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

double dual_norm(const LinearClassifier& h, LqExponent q) {
  return lq_norm(h.w, dual_exponent(q));
}

void check_eps(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("eps must be finite and >= 0");
}

void check_grid(const std::vector<double>& grid) {
  for (std::size_t j = 0; j < grid.size(); ++j) {
    check_eps(grid[j]);
    if (j > 0 && !(grid[j] > grid[j - 1])) throw DomainError("eps grid must be increasing");
  }
}

// Mean and standard deviation of the Gaussian score y (w.X + b) of class k.
struct ScoreLaw {
  double mean;
  double sd;
};

ScoreLaw linear_score_law(const LinearClassifier& h, const ClassConditional& cond) {
  if (cond.support_dim() != h.dim()) throw ShapeError("classifier and conditional differ in dimension");
  const double y = cond.label() == h.positive_label ? 1.0 : -1.0;
  double mean = h.b;
  double var = 0.0;
  if (const auto* g = std::get_if<IsotropicGaussian>(&cond.kind())) {
    for (int j = 0; j < h.dim(); ++j) {
      mean += h.w[j] * g->mean[j];
      var += h.w[j] * h.w[j] * g->scale * g->scale;
    }
  } else if (const auto* g = std::get_if<DiagonalGaussian>(&cond.kind())) {
    for (int j = 0; j < h.dim(); ++j) {
      mean += h.w[j] * g->mean[j];
      var += h.w[j] * h.w[j] * g->scales[j] * g->scales[j];
    }
  } else if (const auto* t = std::get_if<ToyFeatureBlock>(&cond.kind())) {
    // Gaussian exactly when the discrete first feature carries no weight.
    if (h.w[0] != 0.0) throw ShapeError("toy score is Gaussian only for w_1 = 0");
    for (int j = 1; j < h.dim(); ++j) {
      mean += h.w[j] * t->eta * t->y;
      var += h.w[j] * h.w[j];
    }
  } else {
    throw ShapeError("closed form requires a Gaussian class conditional");
  }
  return {y * mean, std::sqrt(var)};
}

bool is_robust(bool correct, double distance, double eps) {
  return correct && (eps == 0.0 || distance > eps);
}

bool mlp_misclassified(const Eigen::Ref<const Eigen::VectorXd>& logits, int label) {
  return argmax_lowest(logits) != label;
}

// Robust counts for one chunk of MLP samples (columns), first sample index
// `first`, over the whole grid with carry-forward of broken samples.
std::vector<std::int64_t> mlp_chunk_sweep(const MlpClassifier& h, const Eigen::MatrixXd& inputs,
                                          std::int64_t first, std::span<const int> labels,
                                          const std::vector<double>& grid, const PgdConfig& cfg,
                                          std::uint64_t seed) {
  std::vector<std::int64_t> robust(grid.size(), 0);
  std::vector<Eigen::Index> alive(inputs.cols());
  for (Eigen::Index c = 0; c < inputs.cols(); ++c) alive[c] = c;
  for (std::size_t j = 0; j < grid.size() && !alive.empty(); ++j) {
    Eigen::MatrixXd x(inputs.rows(), static_cast<Eigen::Index>(alive.size()));
    std::vector<RngStream> streams;
    for (std::size_t a = 0; a < alive.size(); ++a) {
      x.col(a) = inputs.col(alive[a]);
      streams.push_back(RngStream(seed, first + alive[a]).substream(j));
    }
    std::vector<int> lab(alive.size());
    for (std::size_t a = 0; a < alive.size(); ++a) lab[a] = labels[alive[a]];
    const std::vector<bool> found = pgd_linf_batch(h, x, lab, grid[j], cfg, streams);
    std::vector<Eigen::Index> next;
    for (std::size_t a = 0; a < alive.size(); ++a) {
      if (!found[a]) next.push_back(alive[a]);
    }
    alive = std::move(next);
    robust[j] = static_cast<std::int64_t>(alive.size());
  }
  return robust;
}

double constant_distance(const ConstantClassifier& c, int k, double eps_max, bool& censored) {
  censored = c.label == k;
  return censored ? eps_max : 0.0;
}

}  // namespace

ThreatModel ThreatModel::lq(LqExponent q, double eps) {
  check_eps(eps);
  ThreatModel t;
  t.kind = Kind::Lq;
  t.q = q;
  t.eps = eps;
  return t;
}

ThreatModel ThreatModel::geodesic(double radius, double eps) {
  check_eps(eps);
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  ThreatModel t;
  t.kind = Kind::Geodesic;
  t.radius = radius;
  t.eps = eps;
  return t;
}

double linear_margin_distance(const LinearClassifier& h, std::span<const double> x, LqExponent q) {
  return std::max(0.0, h.score(x)) / dual_norm(h, q);
}

double linear_distance_to_error(const LinearClassifier& h, std::span<const double> x, int k,
                                LqExponent q) {
  const double s = h.score(x);
  if (k == h.positive_label) return std::max(0.0, s) / dual_norm(h, q);
  if (k == h.negative_label) return std::max(0.0, -s) / dual_norm(h, q);
  return 0.0;
}

double linear_geodesic_distance_to_error(const LinearClassifier& h, std::span<const double> x,
                                         int k, double r) {
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  if (x.size() != h.w.size()) throw ShapeError("input dimension does not match the classifier");
  const double wn = lq_norm(h.w, LqExponent::finite(2.0));
  double wx = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) wx += h.w[j] * x[j];
  const double phi = std::acos(std::clamp(-wx / (wn * r), -1.0, 1.0));
  const double cap = std::acos(std::clamp(h.b / (wn * r), -1.0, 1.0));
  if (k == h.positive_label) return r * std::max(0.0, phi - cap);
  if (k == h.negative_label) return r * std::max(0.0, cap - phi);
  return 0.0;
}

std::vector<double> linear_optimal_attack(const LinearClassifier& h, std::span<const double> x,
                                          int y, double eps) {
  check_eps(eps);
  if (x.size() != h.w.size()) throw ShapeError("input dimension does not match the classifier");
  if (y != 1 && y != -1) throw DomainError("sign label must be +1 or -1");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= eps * y * sgn(h.w[j]);
  return out;
}

double linear_robust_acc_closed_form(const LinearClassifier& h, const ClassConditional& cond,
                                     double eps, LqExponent q) {
  check_eps(eps);
  const ScoreLaw law = linear_score_law(h, cond);
  return std_normal_cdf((law.mean - eps * dual_norm(h, q)) / law.sd);
}

double linear_distance_closed_form(const LinearClassifier& h, const ClassConditional& cond,
                                   LqExponent q) {
  const ScoreLaw law = linear_score_law(h, cond);
  const double z = law.mean / law.sd;
  const double positive_part = law.mean * std_normal_cdf(z) + law.sd * std_normal_pdf(z);
  return positive_part / dual_norm(h, q);
}

double geodesic_distance_sphere(std::span<const double> x, std::span<const double> x2, double r) {
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  if (x.size() != x2.size()) throw ShapeError("points differ in dimension");
  const LqExponent two = LqExponent::finite(2.0);
  const double tol = 1e-9 * std::max(1.0, r);
  if (std::abs(lq_norm(x, two) - r) > tol || std::abs(lq_norm(x2, two) - r) > tol) {
    throw DomainError("geodesic distance needs points on the sphere of radius " + std::to_string(r));
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) dot += x[j] * x2[j];
  return r * std::acos(std::clamp(dot / (r * r), -1.0, 1.0));
}

PgdResult pgd_linf(const Classifier& h, std::span<const double> x, int label, double eps,
                   const PgdConfig& cfg, const RngStream& rng) {
  check_eps(eps);
  if (cfg.steps < 1) throw DomainError("PGD needs steps >= 1");
  if (cfg.restarts < 0) throw DomainError("PGD restarts must be >= 0");
  const auto misclassified = [&](std::span<const double> v) { return predict(h, v) != label; };
  if (misclassified(x)) return {true, std::vector<double>(x.begin(), x.end())};
  if (eps == 0.0) return {};
  const double alpha = cfg.alpha(eps);
  const std::size_t p = x.size();
  std::vector<double> lo(p), hi(p);
  for (std::size_t j = 0; j < p; ++j) {
    lo[j] = x[j] - eps;
    hi[j] = x[j] + eps;
    if (cfg.clamp_unit_box) {
      lo[j] = std::max(lo[j], 0.0);
      hi[j] = std::min(hi[j], 1.0);
    }
  }
  std::vector<double> xa(p);
  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    std::copy(x.begin(), x.end(), xa.begin());
    if (attempt > 0) {
      RngStream start = rng.substream(static_cast<std::uint64_t>(attempt));
      for (std::size_t j = 0; j < p; ++j) {
        xa[j] = std::clamp(x[j] + eps * (2.0 * start.uniform() - 1.0), lo[j], hi[j]);
      }
      if (misclassified(xa)) return {true, xa};
    }
    for (int t = 0; t < cfg.steps; ++t) {
      const LossGradient g = loss_input_gradient(h, xa, label);
      for (std::size_t j = 0; j < p; ++j) {
        if (!std::isfinite(g.grad[j])) {
          throw NumericalError("PGD: non-finite gradient at step " + std::to_string(t + 1));
        }
        xa[j] = std::clamp(xa[j] + alpha * sgn(g.grad[j]), lo[j], hi[j]);
      }
      if (misclassified(xa)) return {true, xa};
    }
  }
  return {};
}

std::vector<bool> pgd_linf_batch(const MlpClassifier& h, const Eigen::MatrixXd& inputs,
                                 std::span<const int> labels, double eps, const PgdConfig& cfg,
                                 std::span<const RngStream> streams) {
  check_eps(eps);
  if (cfg.steps < 1) throw DomainError("PGD needs steps >= 1");
  if (cfg.restarts < 0) throw DomainError("PGD restarts must be >= 0");
  const Eigen::Index m = inputs.cols();
  if (static_cast<std::size_t>(m) != labels.size() || static_cast<std::size_t>(m) != streams.size()) {
    throw ShapeError("PGD batch needs one label and one stream per column");
  }
  std::vector<bool> found(m, false);
  if (m == 0) return found;
  const Eigen::MatrixXd clean = h.logits_batch(inputs);
  for (Eigen::Index c = 0; c < m; ++c) found[c] = mlp_misclassified(clean.col(c), labels[c]);
  if (eps == 0.0) return found;
  const double alpha = cfg.alpha(eps);

  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index c = 0; c < m; ++c) {
      if (!found[c]) idx.push_back(c);
    }
    if (idx.empty()) break;
    // Box [lo, hi] of the feasible set and labels for the given columns.
    auto gather = [&](const std::vector<Eigen::Index>& cols, Eigen::MatrixXd& lo,
                      Eigen::MatrixXd& hi, std::vector<int>& lab) {
      const Eigen::Index n = static_cast<Eigen::Index>(cols.size());
      lo.resize(inputs.rows(), n);
      hi.resize(inputs.rows(), n);
      lab.resize(cols.size());
      for (Eigen::Index a = 0; a < n; ++a) {
        lo.col(a) = inputs.col(cols[a]).array() - eps;
        hi.col(a) = inputs.col(cols[a]).array() + eps;
        lab[a] = labels[cols[a]];
      }
      if (cfg.clamp_unit_box) {
        lo = lo.cwiseMax(0.0);
        hi = hi.cwiseMin(1.0);
      }
    };
    Eigen::MatrixXd lo, hi, x;
    std::vector<int> lab;
    gather(idx, lo, hi, lab);
    x.resize(inputs.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
      x.col(a) = inputs.col(idx[a]);
      if (attempt > 0) {
        RngStream start = streams[idx[a]].substream(static_cast<std::uint64_t>(attempt));
        for (Eigen::Index j = 0; j < x.rows(); ++j) x(j, a) += eps * (2.0 * start.uniform() - 1.0);
      }
    }
    x = x.cwiseMax(lo).cwiseMin(hi);

    // Each pass scores the current iterates, retires the misclassified ones
    // and steps the rest along the sign of their gradient.
    for (int t = 0; t <= cfg.steps && !idx.empty(); ++t) {
      Eigen::MatrixXd logits;
      Eigen::MatrixXd grad = mlp_input_gradient_batch(h, x, lab, &logits);
      std::vector<Eigen::Index> keep;
      for (std::size_t a = 0; a < idx.size(); ++a) {
        if (mlp_misclassified(logits.col(a), lab[a])) {
          found[idx[a]] = true;
        } else {
          keep.push_back(static_cast<Eigen::Index>(a));
        }
      }
      if (t == cfg.steps || keep.empty()) break;
      if (keep.size() != idx.size()) {
        std::vector<Eigen::Index> idx2(keep.size());
        Eigen::MatrixXd x2(x.rows(), static_cast<Eigen::Index>(keep.size()));
        Eigen::MatrixXd g2(x.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t a = 0; a < keep.size(); ++a) {
          idx2[a] = idx[keep[a]];
          x2.col(a) = x.col(keep[a]);
          g2.col(a) = grad.col(keep[a]);
        }
        idx = std::move(idx2);
        x = std::move(x2);
        grad = std::move(g2);
        gather(idx, lo, hi, lab);
      }
      if (!grad.allFinite()) {
        throw NumericalError("PGD: non-finite gradient at step " + std::to_string(t + 1));
      }
      x += alpha * grad.unaryExpr([](double v) { return sgn(v); });
      x = x.cwiseMax(lo).cwiseMin(hi);
    }
  }
  return found;
}

std::vector<RobustCount> linf_sweep(const Classifier& h, const Eigen::MatrixXd& inputs, int k,
                                    const std::vector<double>& eps_grid, const PgdConfig& cfg,
                                    std::uint64_t seed, int threads) {
  const std::vector<int> labels(inputs.cols(), k);
  return linf_sweep(h, inputs, labels, eps_grid, cfg, seed, threads);
}

std::vector<RobustCount> linf_sweep(const Classifier& h, const Eigen::MatrixXd& inputs,
                                    std::span<const int> labels,
                                    const std::vector<double>& eps_grid, const PgdConfig& cfg,
                                    std::uint64_t seed, int threads) {
  check_grid(eps_grid);
  if (inputs.rows() != input_dim(h)) throw ShapeError("inputs do not match the classifier");
  const std::int64_t n = inputs.cols();
  if (labels.size() != static_cast<std::size_t>(n)) throw ShapeError("one label per column required");
  std::vector<std::int64_t> robust(eps_grid.size(), 0);

  if (const auto* mlp = std::get_if<MlpClassifier>(&h)) {
    const std::int64_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::vector<std::int64_t>> partial(chunks);
    parallel_for(chunks, threads, [&](std::int64_t c) {
      const std::int64_t first = c * kChunk;
      const std::int64_t size = std::min<std::int64_t>(kChunk, n - first);
      partial[c] = mlp_chunk_sweep(*mlp, inputs.middleCols(first, size), first,
                                   labels.subspan(first, size), eps_grid, cfg, seed);
    });
    for (const auto& part : partial) {
      for (std::size_t j = 0; j < robust.size(); ++j) robust[j] += part[j];
    }
  } else {
    const LqExponent inf = LqExponent::infinity();
    for (std::int64_t i = 0; i < n; ++i) {
      const std::span<const double> x(inputs.col(i).data(), static_cast<std::size_t>(inputs.rows()));
      const bool correct = predict(h, x) == labels[i];
      double d = 0.0;
      if (const auto* lin = std::get_if<LinearClassifier>(&h)) {
        d = linear_distance_to_error(*lin, x, labels[i], inf);
      } else {
        d = correct ? std::numeric_limits<double>::infinity() : 0.0;
      }
      for (std::size_t j = 0; j < eps_grid.size(); ++j) robust[j] += is_robust(correct, d, eps_grid[j]);
    }
  }

  std::vector<RobustCount> out;
  for (std::size_t j = 0; j < eps_grid.size(); ++j) {
    out.push_back({eps_grid[j], n, robust[j], n > 0 ? wilson_interval(robust[j], n) : ProportionInterval{}});
  }
  return out;
}

AccuracyEstimate empirical_adv_accuracy(const Classifier& h, const LabeledSampler& sampler, int k,
                                        const ThreatModel& threat, std::int64_t n,
                                        const PgdConfig& cfg, std::uint64_t seed, int threads) {
  if (n < 1) throw DomainError("empirical_adv_accuracy needs n >= 1");
  check_eps(threat.eps);
  const ClassConditional& cond = sampler.conditional(k);
  if (cond.support_dim() != input_dim(h)) throw ShapeError("classifier and sampler differ in dimension");
  if (threat.kind == ThreatModel::Kind::Geodesic && !std::holds_alternative<SphereUniform>(cond.kind())) {
    throw ShapeError("geodesic threat model requires a sphere-supported conditional");
  }
  std::int64_t robust = 0;

  if (const auto* mlp = std::get_if<MlpClassifier>(&h)) {
    if (threat.kind != ThreatModel::Kind::Lq || !threat.q.is_infinite()) {
      throw ShapeError("network attacks support the l_inf threat model only");
    }
    const std::int64_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::int64_t> partial(chunks);
    const std::vector<double> grid{threat.eps};
    parallel_for(chunks, threads, [&](std::int64_t c) {
      const std::int64_t first = c * kChunk;
      const std::int64_t size = std::min<std::int64_t>(kChunk, n - first);
      Eigen::MatrixXd x(cond.support_dim(), size);
      for (std::int64_t a = 0; a < size; ++a) {
        RngStream rng(seed, static_cast<std::uint64_t>(first + a));
        draw_into(cond, rng, std::span<double>(x.col(a).data(), x.rows()));
      }
      // Attack streams are keyed off a derived seed so they never overlap the
      // sample streams.
      const std::vector<int> labels(size, k);
      partial[c] = mlp_chunk_sweep(*mlp, x, first, labels, grid, cfg, seed ^ 0x9E3779B97F4A7C15ULL)[0];
    });
    for (auto v : partial) robust += v;
  } else {
    std::vector<std::uint8_t> ok(n, 0);
    parallel_for(n, threads, [&](std::int64_t i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      const std::vector<double> x = draw(cond, rng);
      const bool correct = predict(h, x) == k;
      double d = std::numeric_limits<double>::infinity();
      if (const auto* lin = std::get_if<LinearClassifier>(&h)) {
        d = threat.kind == ThreatModel::Kind::Lq
                ? linear_distance_to_error(*lin, x, k, threat.q)
                : linear_geodesic_distance_to_error(*lin, x, k, threat.radius);
      }
      ok[i] = is_robust(correct, d, threat.eps);
    });
    for (auto v : ok) robust += v;
  }
  const ProportionInterval ci = wilson_interval(robust, n);
  return {ci.estimate, ci, robust, n};
}

DistanceSamples distance_samples(const Classifier& h, const LabeledSampler& sampler, int k,
                                 const ThreatModel& threat, std::int64_t n, std::uint64_t seed,
                                 int threads, const PgdConfig& cfg, double eps_max) {
  if (n < 1) throw DomainError("distance estimation needs n >= 1");
  if (!(eps_max > 0.0)) throw DomainError("eps_max must be positive");
  const ClassConditional& cond = sampler.conditional(k);
  if (cond.support_dim() != input_dim(h)) throw ShapeError("classifier and sampler differ in dimension");
  const bool geodesic = threat.kind == ThreatModel::Kind::Geodesic;
  if (geodesic && !std::holds_alternative<SphereUniform>(cond.kind())) {
    throw ShapeError("geodesic threat model requires a sphere-supported conditional");
  }
  if (std::holds_alternative<MlpClassifier>(h) && (geodesic || !threat.q.is_infinite())) {
    throw ShapeError("network distances support the l_inf threat model only");
  }
  DistanceSamples out{std::vector<double>(n), std::vector<bool>(n)};
  std::vector<std::uint8_t> censored(n, 0);
  parallel_for(n, threads, [&](std::int64_t i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const std::vector<double> x = draw(cond, rng);
    if (const auto* lin = std::get_if<LinearClassifier>(&h)) {
      out.d[i] = geodesic ? linear_geodesic_distance_to_error(*lin, x, k, threat.radius)
                          : linear_distance_to_error(*lin, x, k, threat.q);
    } else if (const auto* c = std::get_if<ConstantClassifier>(&h)) {
      bool cens = false;
      out.d[i] = constant_distance(*c, k, eps_max, cens);
      censored[i] = cens;
    } else {
      const RngStream attack = rng.substream(0);
      if (predict(h, x) != k) {
        out.d[i] = 0.0;
        return;
      }
      std::uint64_t trial = 1;
      if (!pgd_linf(h, x, k, eps_max, cfg, attack.substream(trial++)).found) {
        out.d[i] = eps_max;
        censored[i] = 1;
        return;
      }
      double lo = 0.0;
      double hi = eps_max;
      while (hi - lo > kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (pgd_linf(h, x, k, mid, cfg, attack.substream(trial++)).found) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      out.d[i] = hi;
    }
  });
  for (std::int64_t i = 0; i < n; ++i) out.censored[i] = censored[i] != 0;
  return out;
}

DistanceEstimate empirical_distance_to_error(const Classifier& h, const LabeledSampler& sampler,
                                             int k, const ThreatModel& threat, std::int64_t n,
                                             std::uint64_t seed, int threads, const PgdConfig& cfg,
                                             double eps_max) {
  const DistanceSamples s = distance_samples(h, sampler, k, threat, n, seed, threads, cfg, eps_max);
  DistanceEstimate est;
  est.n = n;
  est.upper_bound_estimate = std::holds_alternative<MlpClassifier>(h);
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    sum += s.d[i];
    est.censored += s.censored[i];
  }
  est.d_hat = sum / n;
  double ss = 0.0;
  for (double d : s.d) ss += (d - est.d_hat) * (d - est.d_hat);
  const double half = n > 1 ? kZ95 * std::sqrt(ss / (n - 1) / n) : 0.0;
  est.ci_lo = est.d_hat - half;
  est.ci_hi = est.d_hat + half;
  return est;
}

RobustnessCurve make_robustness_curve(const std::vector<RobustCount>& counts, double err_std,
                                      double sigma, int p, LqExponent q) {
  RobustnessCurve curve;
  curve.err_std = err_std;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  curve.eps_crit = err_std > 0.0 ? critical_epsilon_q(err_std, sigma, p, q) : nan;
  for (const RobustCount& c : counts) {
    CurvePoint pt;
    pt.eps = c.eps;
    pt.n = c.n;
    pt.acc_hat = c.ci.estimate;
    pt.ci_lo = c.ci.lo;
    pt.ci_hi = c.ci.hi;
    if (err_std <= 0.0) {
      pt.bound = nan;
      pt.below_bound = false;
    } else {
      pt.bound = c.eps >= curve.eps_crit ? adv_acc_bound_lq(1.0 - err_std, sigma, p, q, c.eps)
                                         : 1.0 - err_std;
      pt.below_bound = pt.acc_hat <= pt.bound + 1e-12;
    }
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace nfl
