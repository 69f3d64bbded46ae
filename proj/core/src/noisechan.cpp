#include "gradpriv/noisechan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gradpriv/specfn.hpp"

namespace gradpriv {

double l2_norm(const GradientVector& g) {
  double s = 0.0;
  for (double v : g) s += v * v;
  return std::sqrt(s);
}

double dot(const GradientVector& a, const GradientVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double RandomSource::uniform01() {
  // 53 random bits mapped to the open interval (0, 1).
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomSource::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RandomSource::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be > 0");
  if (shape < 1.0) {
    // Boost to shape+1 and scale back.
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform01(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomSource::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

GradientVector clip(const GradientVector& g, double bound) {
  if (!(bound > 0.0)) throw std::domain_error("clip: bound must be > 0");
  const double norm = l2_norm(g);
  const double scale = 1.0 / std::max(1.0, norm / bound);
  GradientVector out(g);
  for (double& v : out) v *= scale;
  return out;
}

GradientVector average(std::span<const GradientVector> batch) {
  if (batch.empty()) throw std::invalid_argument("average: empty batch");
  const std::size_t p = batch.front().size();
  GradientVector out(p, 0.0);
  for (const auto& g : batch) {
    if (g.size() != p) throw std::invalid_argument("average: length mismatch");
    for (std::size_t i = 0; i < p; ++i) out[i] += g[i];
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& v : out) v *= inv;
  return out;
}

GradientVector gaussian_perturb(const GradientVector& g, double sigma,
                                double bound, double group_size,
                                RandomSource& rng) {
  if (!(sigma > 0.0) || !(bound > 0.0) || !(group_size >= 1.0)) {
    throw std::domain_error("gaussian_perturb: invalid parameters");
  }
  const double noise_std = bound * sigma / group_size;
  GradientVector out(g);
  for (double& v : out) v += noise_std * rng.normal();
  return out;
}

GradientVector normalize(const GradientVector& g) {
  const double norm = l2_norm(g);
  if (!(norm > 0.0)) {
    throw std::domain_error("normalize: zero vector");
  }
  GradientVector out(g);
  for (double& v : out) v /= norm;
  return out;
}

namespace {

void check_unit_mean(const GradientVector& mean_dir) {
  if (mean_dir.size() < 2) {
    throw std::invalid_argument("vmf: dimension must be >= 2");
  }
  if (std::abs(l2_norm(mean_dir) - 1.0) > 1e-9) {
    throw std::invalid_argument("vmf: mean direction must be unit length");
  }
}

}  // namespace

GradientVector vmf_sample(const GradientVector& mean_dir, double kappa,
                          RandomSource& rng) {
  check_unit_mean(mean_dir);
  if (!(kappa >= 0.0)) throw std::domain_error("vmf_sample: kappa must be >= 0");
  const std::size_t p = mean_dir.size();
  const double pm1 = static_cast<double>(p) - 1.0;

  // Cosine w of the angle to the mean: rejection sampling with a wrapped
  // beta envelope.  b is written to avoid cancellation for small kappa; at
  // kappa = 0 it degenerates to the exact uniform-sphere cosine law.
  const double b = pm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + pm1 * pm1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double log_c = kappa * x0 + pm1 * std::log1p(-x0 * x0);
  double w = 0.0;
  while (true) {
    const double z = rng.beta(0.5 * pm1, 0.5 * pm1);
    w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = rng.uniform01();
    if (kappa * w + pm1 * std::log1p(-x0 * w) - log_c >= std::log(u)) break;
  }

  // Tangent direction: project a Gaussian vector off the mean.
  GradientVector tangent(p);
  while (true) {
    for (double& v : tangent) v = rng.normal();
    const double along = dot(tangent, mean_dir);
    for (std::size_t i = 0; i < p; ++i) tangent[i] -= along * mean_dir[i];
    const double norm = l2_norm(tangent);
    if (norm > 1e-12) {
      for (double& v : tangent) v /= norm;
      break;
    }
  }

  const double sin_part = std::sqrt(std::max(0.0, 1.0 - w * w));
  GradientVector out(p);
  for (std::size_t i = 0; i < p; ++i) {
    out[i] = w * mean_dir[i] + sin_part * tangent[i];
  }
  const double norm = l2_norm(out);
  for (double& v : out) v /= norm;
  return out;
}

double vmf_log_density(const GradientVector& mean_dir, double kappa,
                       const GradientVector& y) {
  check_unit_mean(mean_dir);
  if (y.size() != mean_dir.size()) {
    throw std::invalid_argument("vmf_log_density: length mismatch");
  }
  if (std::abs(l2_norm(y) - 1.0) > 1e-9) {
    throw std::invalid_argument("vmf_log_density: y must be unit length");
  }
  if (!(kappa >= 0.0)) {
    throw std::domain_error("vmf_log_density: kappa must be >= 0");
  }
  const auto p = static_cast<std::int64_t>(mean_dir.size());
  if (kappa == 0.0) return -log_sphere_area(p);
  const double nu = 0.5 * static_cast<double>(p) - 1.0;
  const double log_norm = (nu + 1.0) * std::log(2.0 * std::numbers::pi) +
                          log_bessel_i(nu, kappa) - nu * std::log(kappa);
  return kappa * dot(mean_dir, y) - log_norm;
}

}  // namespace gradpriv
