#include "gradpriv/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gradpriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Regime thresholds.  The uniform large-order expansion with six correction
// terms is good to ~1e-13 from nu ~ 100 upward; the large-argument expansion
// needs 4*nu^2 <= x to converge before its divergent tail.  The series works
// everywhere and covers the remaining wedge.
constexpr double kUniformMinNu = 150.0;
constexpr double kLargeArgMinX = 35.0;

double sq(double v) { return v * v; }

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
  return std::lgamma(x);
}

namespace specfn_detail {

BesselRegime bessel_regime(double nu, double x) {
  if (nu >= kUniformMinNu) return BesselRegime::uniform_large_order;
  if (x >= kLargeArgMinX && 4.0 * nu * nu <= x) {
    return BesselRegime::large_argument;
  }
  return BesselRegime::series;
}

// Ascending series of the normalised factor M(nu, x) = sum_s q^s / (s! (nu+1)_s)
// with q = x^2/4.  All terms are positive; the running sum is rescaled when it
// approaches overflow.
double log_bessel_m_series(double nu, double x) {
  const double q = 0.25 * x * x;
  if (q == 0.0) return 0.0;
  double rest = 0.0;   // sum of terms s >= 1, valid while log_scale == 0
  double total = 1.0;  // includes the s = 0 term
  double term = 1.0;
  double log_scale = 0.0;
  constexpr double kRescaleAt = 1e280;
  constexpr std::int64_t kMaxTerms = 2'000'000;
  for (std::int64_t s = 1; s <= kMaxTerms; ++s) {
    term *= q / (static_cast<double>(s) * (nu + static_cast<double>(s)));
    rest += term;
    total += term;
    if (total >= kRescaleAt) {
      total *= 1e-280;
      term *= 1e-280;
      log_scale += std::log(1e280);
    }
    if (term < total * 1e-18 && static_cast<double>(s) * (nu + static_cast<double>(s)) > q) {
      if (log_scale == 0.0) return std::log1p(rest);
      return log_scale + std::log(total);
    }
  }
  throw std::runtime_error("log_bessel_m_series: no convergence");
}

double log_bessel_i_series(double nu, double x) {
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) +
         log_bessel_m_series(nu, x);
}

// I_nu(x) ~ e^x / sqrt(2 pi x) * [1 - (mu-1)/(8x) + ...], mu = 4 nu^2.
// Asymptotic: summed to the smallest term.
double log_bessel_i_large_argument(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double sum = 1.0;
  double term = 1.0;
  double prev_abs = kInf;
  for (int k = 1; k <= 200; ++k) {
    term *= -(mu - sq(2.0 * k - 1.0)) / (8.0 * k * x);
    const double abs_term = std::abs(term);
    if (abs_term >= prev_abs) break;  // divergent tail reached
    sum += term;
    prev_abs = abs_term;
    if (abs_term < 1e-18 * std::abs(sum)) break;
  }
  return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
}

namespace {

// Olver correction sum 1 + sum_k u_k(t)/nu^k, t = 1/sqrt(1+z^2), truncated
// after u_6.  u_k(t) = t^k * poly_k(t^2) with the exact coefficients of the
// DLMF 10.41 recurrence.
double olver_correction(double t, double nu) {
  const double t2 = t * t;
  const double u1 = t * (1.0 / 8.0 + t2 * (-5.0 / 24.0));
  const double u2 = t2 * (9.0 / 128.0 + t2 * (-77.0 / 192.0 + t2 * (385.0 / 1152.0)));
  const double u3 =
      t * t2 *
      (75.0 / 1024.0 +
       t2 * (-4563.0 / 5120.0 + t2 * (17017.0 / 9216.0 + t2 * (-85085.0 / 82944.0))));
  const double t4 = t2 * t2;
  const double u4 =
      t4 * (3675.0 / 32768.0 +
            t2 * (-96833.0 / 40960.0 +
                  t2 * (144001.0 / 16384.0 +
                        t2 * (-7436429.0 / 663552.0 + t2 * (37182145.0 / 7962624.0)))));
  const double u5 =
      t * t4 *
      (59535.0 / 262144.0 +
       t2 * (-67608983.0 / 9175040.0 +
             t2 * (250881631.0 / 5898240.0 +
                   t2 * (-108313205.0 / 1179648.0 +
                         t2 * (5391411025.0 / 63700992.0 +
                               t2 * (-5391411025.0 / 191102976.0))))));
  const double u6 =
      t2 * t4 *
      (2401245.0 / 4194304.0 +
       t2 * (-388895895.0 / 14680064.0 +
             t2 * (1441372804469.0 / 6606028800.0 +
                   t2 * (-33010308331.0 / 47185920.0 +
                         t2 * (4445922195.0 / 4194304.0 +
                               t2 * (-1169936192425.0 / 1528823808.0 +
                                     t2 * (5849680962125.0 / 27518828544.0)))))));
  const double inv = 1.0 / nu;
  return ((((((u6 * inv + u5) * inv + u4) * inv + u3) * inv + u2) * inv + u1) * inv);
}

}  // namespace

double log_bessel_i_uniform(double nu, double x) {
  const double z = x / nu;
  const double s = std::hypot(1.0, z);
  const double eta = s + std::log(z / (1.0 + s));
  const double t = 1.0 / s;
  const double corr = olver_correction(t, nu);
  return nu * eta - 0.5 * std::log(2.0 * std::numbers::pi * nu) -
         0.25 * std::log1p(z * z) + std::log1p(corr);
}

double log_bessel_m(double nu, double x) {
  switch (bessel_regime(nu, x)) {
    case BesselRegime::series:
      return log_bessel_m_series(nu, x);
    case BesselRegime::large_argument:
      return log_bessel_i_large_argument(nu, x) - nu * std::log(0.5 * x) +
             std::lgamma(nu + 1.0);
    case BesselRegime::uniform_large_order: {
      // nu*eta - nu*ln(x/2) + lgamma(nu+1) rearranged so that the O(nu)
      // pieces are evaluated without cancellation: the bracket below is
      // O(z^2) for small z.
      const double z = x / nu;
      const double s = std::hypot(1.0, z);
      const double sq1 = z * z / (1.0 + s);        // sqrt(1+z^2) - 1
      const double l2 = std::log1p(0.5 * sq1);     // ln((1+sqrt(1+z^2))/2)
      const double stirling_rest =
          std::lgamma(nu + 1.0) -
          ((nu + 0.5) * std::log(nu) - nu + 0.5 * std::log(2.0 * std::numbers::pi));
      return nu * (sq1 - l2) + stirling_rest - 0.25 * std::log1p(z * z) +
             std::log1p(olver_correction(1.0 / s, nu));
    }
  }
  throw std::logic_error("log_bessel_m: unreachable");
}

}  // namespace specfn_detail

double log_bessel_i(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0)) {
    throw std::domain_error("log_bessel_i: requires nu >= 0 and x >= 0");
  }
  if (x == 0.0) return nu == 0.0 ? 0.0 : -kInf;
  using namespace specfn_detail;
  switch (bessel_regime(nu, x)) {
    case BesselRegime::series:
      return log_bessel_i_series(nu, x);
    case BesselRegime::large_argument:
      return log_bessel_i_large_argument(nu, x);
    case BesselRegime::uniform_large_order:
      return log_bessel_i_uniform(nu, x);
  }
  throw std::logic_error("log_bessel_i: unreachable");
}

double log_bessel_ratio(double nu, double x_num, double x_den) {
  if (!(nu >= 0.0) || !(x_num >= 0.0) || !(x_den >= 0.0)) {
    throw std::domain_error("log_bessel_ratio: negative argument");
  }
  if (x_num == x_den) {
    if (x_num == 0.0 && nu > 0.0) {
      throw CancellationError("log_bessel_ratio: 0/0 is indeterminate");
    }
    return 0.0;
  }
  if (x_den == 0.0) {
    if (nu > 0.0) {
      throw CancellationError("log_bessel_ratio: ratio diverges at x_den = 0");
    }
    return log_bessel_i(0.0, x_num);
  }
  if (x_num == 0.0) {
    return nu > 0.0 ? -kInf : -log_bessel_i(0.0, x_den);
  }
  using namespace specfn_detail;
  return nu * (std::log(x_num) - std::log(x_den)) +
         (log_bessel_m(nu, x_num) - log_bessel_m(nu, x_den));
}

double bessel_ratio_consecutive(double nu, double x) {
  if (!(nu >= 0.0) || !(x > 0.0)) {
    throw std::domain_error("bessel_ratio_consecutive: requires nu >= 0, x > 0");
  }
  if (x > 1e6) {
    // The continued fraction needs ~x iterations here.  Far outside the
    // accuracy-contract range, so a log-difference of the uniform/large
    // argument evaluations (relative error ~1e-8) is sufficient.
    const double r = std::exp(log_bessel_i(nu + 1.0, x) - log_bessel_i(nu, x));
    return std::clamp(r, std::numeric_limits<double>::min(), 1.0);
  }
  // I_{nu+1}/I_nu = 1/(b_1 + 1/(b_2 + ...)), b_k = 2(nu+k)/x.  Modified
  // Lentz; the fraction needs O(x - nu) iterations once x outgrows nu.
  constexpr double kTiny = 1e-290;
  double f = kTiny;
  double c = f;
  double d = 0.0;
  for (std::int64_t k = 1; k <= 4'000'000; ++k) {
    const double b = 2.0 * (nu + static_cast<double>(k)) / x;
    d = b + d;
    if (d == 0.0) d = kTiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-15) {
      return std::clamp(f, std::numeric_limits<double>::min(), 1.0);
    }
  }
  throw std::runtime_error("bessel_ratio_consecutive: no convergence");
}

double log_sphere_area(std::int64_t p) {
  if (p < 1) throw std::domain_error("log_sphere_area: requires p >= 1");
  const double half_p = 0.5 * static_cast<double>(p);
  return std::log(2.0) + half_p * std::log(std::numbers::pi) -
         std::lgamma(half_p);
}

double log_ball_volume(std::int64_t p, double radius) {
  if (p < 1 || !(radius > 0.0)) {
    throw std::domain_error("log_ball_volume: requires p >= 1 and radius > 0");
  }
  const double half_p = 0.5 * static_cast<double>(p);
  return half_p * std::log(std::numbers::pi) +
         static_cast<double>(p) * std::log(radius) - std::lgamma(half_p + 1.0);
}

SignedLog log_sum_exp_signed(std::span<const SignedLog> terms) {
  if (terms.empty()) {
    throw std::domain_error("log_sum_exp_signed: empty input");
  }
  double max_log = -kInf;
  for (const auto& t : terms) {
    if (t.sign != 0 && t.log_abs > max_log) max_log = t.log_abs;
  }
  if (max_log == -kInf) return {-kInf, 0};
  if (max_log == kInf) return {kInf, +1};
  // Neumaier-compensated accumulation of sign * exp(log - max).
  double sum = 0.0, comp = 0.0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const double v = static_cast<double>(t.sign) * std::exp(t.log_abs - max_log);
    const double s = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - s) + v;
    } else {
      comp += (v - s) + sum;
    }
    sum = s;
  }
  sum += comp;
  if (sum == 0.0) return {-kInf, 0};
  if (sum > 0.0) return {max_log + std::log(sum), +1};
  return {max_log + std::log(-sum), -1};
}

double log_sum_exp(std::span<const double> log_terms) {
  if (log_terms.empty()) {
    throw std::domain_error("log_sum_exp: empty input");
  }
  double max_log = -kInf;
  for (double t : log_terms) max_log = std::max(max_log, t);
  if (max_log == -kInf) return -kInf;
  if (max_log == kInf) return kInf;
  double sum = 0.0, comp = 0.0;
  for (double t : log_terms) {
    const double v = std::exp(t - max_log);
    const double s = sum + v;
    if (sum >= v) {
      comp += (sum - s) + v;
    } else {
      comp += (v - s) + sum;
    }
    sum = s;
  }
  sum += comp;
  return max_log + std::log(sum);
}

double log_sum_exp_positive(std::span<const SignedLog> terms) {
  const SignedLog r = log_sum_exp_signed(terms);
  if (r.sign <= 0) {
    throw CancellationError("log_sum_exp_positive: sum is not positive");
  }
  return r.log_abs;
}

}  // namespace gradpriv
