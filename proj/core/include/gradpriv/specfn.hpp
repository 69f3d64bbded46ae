#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

// Log-domain special functions.  Everything downstream (RDP curves, the
// accountant, the capacity formulas) works at dimensions around 10^4 and
// concentrations in the hundreds, where the underlying quantities overflow
// double long before the final answer does.  All functions here return
// natural logarithms and stay finite over the supported ranges:
// nu in [0, ~10^4], x in [0, ~10^6].

namespace gradpriv {

// Signed sum of positive quantities held in log-domain collapsed to zero or
// below where a positive value is required.
class CancellationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ln Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// ln I_nu(x) for nu >= 0, x >= 0.  I_nu(0) is 1 for nu = 0 and 0 for nu > 0;
// the latter is reported as -infinity.  Evaluation switches between the
// ascending series, the large-argument expansion and the uniform
// large-order expansion; the regimes overlap and the hand-offs are covered
// by continuity tests.
double log_bessel_i(double nu, double x);

// ln( I_nu(x_num) / I_nu(x_den) ).  Both arguments tiny follows the leading
// series term, i.e. nu * ln(x_num/x_den).  x_den = 0 with x_num > 0 and
// nu > 0 has no finite value and throws CancellationError.
double log_bessel_ratio(double nu, double x_num, double x_den);

// I_{nu+1}(x) / I_nu(x), in (0, 1) for all x > 0, nu >= 0.  Evaluated with
// the continued fraction of Gauss (modified Lentz).
double bessel_ratio_consecutive(double nu, double x);

// ln of the surface area of the unit sphere S^{p-1} in R^p, p >= 1.
double log_sphere_area(std::int64_t p);

// ln of the volume of the radius-R ball in R^p, p >= 1, R > 0.
double log_ball_volume(std::int64_t p, double radius);

// A quantity y = sign * exp(log_abs).  sign is -1, 0 or +1; sign 0 means
// y = 0 and log_abs is ignored.
struct SignedLog {
  double log_abs;
  int sign;
};

// ln|sum| and sign of a signed sum, computed by factoring out the largest
// magnitude.  Exact for single-element input.
SignedLog log_sum_exp_signed(std::span<const SignedLog> terms);

// ln(sum of exp(term)) for terms representing positive quantities.
double log_sum_exp(std::span<const double> log_terms);

// Variant of log_sum_exp_signed that requires a strictly positive sum and
// throws CancellationError when rounding or true cancellation drives the
// sum to zero or below.
double log_sum_exp_positive(std::span<const SignedLog> terms);

namespace specfn_detail {

enum class BesselRegime { series, large_argument, uniform_large_order };

BesselRegime bessel_regime(double nu, double x);

// ln of the normalised series factor
//   M(nu, x) = I_nu(x) * Gamma(nu+1) * (x/2)^{-nu},
// which tends to 1 as x -> 0.  Differences of this factor at fixed nu give
// Bessel log-ratios without the nu*ln(x) cancellation.
double log_bessel_m(double nu, double x);
double log_bessel_m_series(double nu, double x);

double log_bessel_i_series(double nu, double x);
double log_bessel_i_large_argument(double nu, double x);
double log_bessel_i_uniform(double nu, double x);

}  // namespace specfn_detail

}  // namespace gradpriv
