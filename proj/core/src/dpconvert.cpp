#include "gradpriv/dpconvert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gradpriv/specfn.hpp"

namespace gradpriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_delta_term(double alpha, double tau, double epsilon) {
  // (a-1)(tau - eps) - ln(a-1) + a ln(1 - 1/a)
  const double am1 = alpha - 1.0;
  return am1 * (tau - epsilon) - std::log(am1) + alpha * std::log1p(-1.0 / alpha);
}

double epsilon_term(double alpha, double tau, double log_delta) {
  // (a/(a-1)) ln(1 - 1/a) + tau - [ln(a-1) + ln delta]/(a-1)
  const double am1 = alpha - 1.0;
  return (alpha / am1) * std::log1p(-1.0 / alpha) + tau -
         (std::log(am1) + log_delta) / am1;
}

}  // namespace

RdpConverter::RdpConverter(const RdpCurve& curve, AlphaSearchOptions opts)
    : curve_(&curve), opts_(opts) {
  opts_.alpha_max = std::min(opts_.alpha_max, curve.alpha_domain_max());
  if (!(opts_.alpha_max > opts_.alpha_min)) {
    throw std::invalid_argument("RdpConverter: empty order interval");
  }
  const double lo = std::log(opts_.alpha_min - 1.0);
  const double hi = std::log(opts_.alpha_max - 1.0);
  const int n = std::max(opts_.grid_points, 8);
  alpha_grid_.reserve(n);
  tau_grid_.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    const double alpha = std::clamp(1.0 + std::exp(lo + f * (hi - lo)),
                                    opts_.alpha_min, opts_.alpha_max);
    alpha_grid_.push_back(alpha);
    tau_grid_.push_back(curve_->tau(alpha));
  }
}

double RdpConverter::refine(double lo, double hi,
                            const std::function<double(double)>& objective) const {
  // Golden-section on ln(alpha - 1); returns the best abscissa seen.
  constexpr double kGolden = 0.6180339887498949;
  const auto to_alpha = [&](double x) {
    return std::clamp(1.0 + std::exp(x), opts_.alpha_min, opts_.alpha_max);
  };
  double a = std::log(lo - 1.0);
  double b = std::log(hi - 1.0);
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = objective(to_alpha(x1));
  double f2 = objective(to_alpha(x2));
  for (int i = 0; i < opts_.refine_iterations; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = objective(to_alpha(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = objective(to_alpha(x2));
    }
  }
  return f1 <= f2 ? to_alpha(x1) : to_alpha(x2);
}

DpGuarantee RdpConverter::delta_given_epsilon(double epsilon) const {
  if (!(epsilon >= 0.0)) {
    throw std::domain_error("delta_given_epsilon: epsilon must be >= 0");
  }
  std::size_t best = alpha_grid_.size();
  double best_val = kInf;
  for (std::size_t i = 0; i < alpha_grid_.size(); ++i) {
    const double v = log_delta_term(alpha_grid_[i], tau_grid_[i], epsilon);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == alpha_grid_.size()) {
    throw OptimizationError("delta_given_epsilon: no finite candidate");
  }
  const auto objective = [&](double alpha) {
    return log_delta_term(alpha, curve_->tau(alpha), epsilon);
  };
  const double lo = alpha_grid_[best > 0 ? best - 1 : 0];
  const double hi = alpha_grid_[std::min(best + 1, alpha_grid_.size() - 1)];
  double alpha_star = alpha_grid_[best];
  if (hi > lo) {
    const double refined = refine(lo, hi, objective);
    if (objective(refined) < best_val) {
      alpha_star = refined;
      best_val = objective(refined);
    }
  }
  DpGuarantee g;
  g.epsilon = epsilon;
  g.log_delta = std::min(best_val, 0.0);  // clamp at delta = 1
  g.delta = std::exp(g.log_delta);
  g.alpha_star = alpha_star;
  return g;
}

DpGuarantee RdpConverter::epsilon_given_delta(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("epsilon_given_delta: delta must be in (0,1)");
  }
  const double log_delta = std::log(delta);
  std::size_t best = alpha_grid_.size();
  double best_val = kInf;
  for (std::size_t i = 0; i < alpha_grid_.size(); ++i) {
    const double v = epsilon_term(alpha_grid_[i], tau_grid_[i], log_delta);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == alpha_grid_.size()) {
    throw OptimizationError("epsilon_given_delta: no finite candidate");
  }
  const auto objective = [&](double alpha) {
    return epsilon_term(alpha, curve_->tau(alpha), log_delta);
  };
  const double lo = alpha_grid_[best > 0 ? best - 1 : 0];
  const double hi = alpha_grid_[std::min(best + 1, alpha_grid_.size() - 1)];
  double alpha_star = alpha_grid_[best];
  if (hi > lo) {
    const double refined = refine(lo, hi, objective);
    if (objective(refined) < best_val) {
      alpha_star = refined;
      best_val = objective(refined);
    }
  }
  DpGuarantee g;
  g.epsilon = std::max(best_val, 0.0);
  g.delta = delta;
  g.log_delta = log_delta;
  g.alpha_star = alpha_star;
  return g;
}

DpGuarantee delta_given_epsilon(const RdpCurve& curve, double epsilon) {
  return RdpConverter(curve).delta_given_epsilon(epsilon);
}

DpGuarantee epsilon_given_delta(const RdpCurve& curve, double delta) {
  return RdpConverter(curve).epsilon_given_delta(delta);
}

double vmf_optimal_alpha(const VmfParams& params, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::domain_error("vmf_optimal_alpha: epsilon must be > 0");
  }
  if (!(params.kappa > 0.0)) {
    throw std::domain_error("vmf_optimal_alpha: kappa must be > 0");
  }
  const double nu = params.order_nu();
  const double kappa = params.kappa;
  if (epsilon >= 2.0 * kappa) {
    // 2k * ratio < 2k and ln(1-1/a) < 0, so the condition stays negative.
    throw NoRootError("vmf_optimal_alpha: stationarity condition has no root");
  }
  const auto condition = [&](double alpha) {
    return -epsilon +
           2.0 * kappa *
               bessel_ratio_consecutive(nu, (2.0 * alpha - 1.0) * kappa) +
           std::log1p(-1.0 / alpha);
  };
  double lo = 1.0 + 1e-12;
  double f_lo = condition(lo);
  if (f_lo >= 0.0) {
    // The minimiser hugs the alpha -> 1 boundary; no interior sign change.
    throw NoRootError("vmf_optimal_alpha: condition positive at the boundary");
  }
  double hi = 2.0;
  double f_hi = condition(hi);
  while (f_hi < 0.0) {
    if (hi > 1e12) {
      throw NoRootError("vmf_optimal_alpha: no sign change found");
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = condition(hi);
  }
  // The condition is strictly increasing in alpha; bisect until the residual
  // meets the contract.
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 400; ++i) {
    mid = 0.5 * (lo + hi);
    const double f_mid = condition(mid);
    if (std::abs(f_mid) <= 1e-9) return mid;
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double residual = condition(mid);
  if (std::abs(residual) <= 1e-9) return mid;
  throw NoRootError("vmf_optimal_alpha: bisection did not reach tolerance");
}

}  // namespace gradpriv
