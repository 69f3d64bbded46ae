#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

// Gradient perturbation channels: clipping, averaging, Gaussian noising,
// sphere normalisation and VMF sampling.  All sampling draws from an
// explicit RandomSource; identical seeds give identical outputs.

namespace gradpriv {

using GradientVector = std::vector<double>;

// Seedable deterministic stream.  The engine is the standardised mt19937_64;
// the variate transforms are implemented here rather than taken from
// <random> distributions, whose sequences vary across standard libraries.
// A single source must not be shared across concurrent calls.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform01();              // (0, 1)
  double normal();                 // standard normal, Box-Muller
  double gamma(double shape);      // shape > 0, unit scale, Marsaglia-Tsang
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

// g / max(1, |g|/bound): output norm is min(|g|, bound).
GradientVector clip(const GradientVector& g, double bound);

// Elementwise mean of a nonempty batch of equal-length vectors.
GradientVector average(std::span<const GradientVector> batch);

// g + (1/group_size) * N(0, bound^2 sigma^2 I): per-coordinate noise std is
// bound * sigma / group_size.
GradientVector gaussian_perturb(const GradientVector& g, double sigma,
                                double bound, double group_size,
                                RandomSource& rng);

// g / |g|; a zero vector is an error, not a substituted direction.
GradientVector normalize(const GradientVector& g);

// Draw from the VMF density on S^{p-1} centred at mean_dir (unit length,
// p >= 2) with concentration kappa >= 0.  Tangent-normal decomposition with
// the rejection sampler of Ulrich/Wood for the cosine; the acceptance test
// runs in log-domain so large kappa and p stay inside double range.
GradientVector vmf_sample(const GradientVector& mean_dir, double kappa,
                          RandomSource& rng);

// ln f(y | mean_dir, kappa) on the sphere; kappa = 0 is the uniform density
// -ln A(S^{p-1}).
double vmf_log_density(const GradientVector& mean_dir, double kappa,
                       const GradientVector& y);

double l2_norm(const GradientVector& g);
double dot(const GradientVector& a, const GradientVector& b);

}  // namespace gradpriv
