#include "gradpriv/accountant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "gradpriv/specfn.hpp"

namespace gradpriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const AccountingScenario& s) {
  if (!(s.gamma > 0.0 && s.gamma <= 1.0)) {
    throw std::domain_error("scenario: gamma must be in (0, 1]");
  }
  if (!(s.compositions >= 1.0)) {
    throw std::domain_error("scenario: composition count must be >= 1");
  }
  if (!(s.delta_target > 0.0 && s.delta_target < 1.0)) {
    throw std::domain_error("scenario: delta target must be in (0, 1)");
  }
}

// k * log_value with the convention 0 * (-inf) = 0, needed at gamma = 1.
double weighted_log(double k, double log_value) {
  return k == 0.0 ? 0.0 : k * log_value;
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

std::pair<double, double> amplify_dp_by_subsampling(double epsilon,
                                                    double delta,
                                                    double gamma) {
  if (!(epsilon >= 0.0) || !(delta >= 0.0 && delta < 1.0) ||
      !(gamma > 0.0 && gamma <= 1.0)) {
    throw std::domain_error("amplify_dp_by_subsampling: invalid arguments");
  }
  double eps_s;
  if (epsilon > 30.0) {
    // 1 + gamma(e^eps - 1) = gamma e^eps (1 + (1-gamma) e^-eps / gamma)
    eps_s = std::log(gamma) + epsilon +
            std::log1p((1.0 - gamma) * std::exp(-epsilon) / gamma);
  } else {
    eps_s = std::log1p(gamma * std::expm1(epsilon));
  }
  return {std::max(0.0, eps_s), gamma * delta};
}

ComposeResult compose_dp(double eps_s, double delta_s, double compositions,
                         double delta_tilde, KairouzBranch variant) {
  if (!(eps_s >= 0.0) || !(delta_s >= 0.0 && delta_s < 1.0) ||
      !(delta_tilde > 0.0 && delta_tilde < 1.0) || !(compositions >= 1.0)) {
    throw std::domain_error("compose_dp: invalid arguments");
  }
  const double n = compositions;
  const double head_base = std::tanh(0.5 * eps_s);  // (e^x - 1)/(e^x + 1)
  const double head =
      variant == KairouzBranch::original ? head_base * eps_s * n : head_base;
  const double b1 = n * eps_s;
  const double b2 =
      head + eps_s * std::sqrt(2.0 * n *
                               std::log(std::exp(1.0) +
                                        std::sqrt(n) * eps_s / delta_tilde));
  const double b3 = head + eps_s * std::sqrt(2.0 * n * std::log(1.0 / delta_tilde));
  ComposeResult r;
  r.eps_tilde = std::min({b1, b2, b3});
  r.branch = r.eps_tilde == b1 ? 1 : (r.eps_tilde == b2 ? 2 : 3);
  r.delta_total = -std::expm1(n * std::log1p(-delta_s) + std::log1p(-delta_tilde));
  return r;
}

double subsampled_rdp(const RdpCurve& curve, double gamma, std::int64_t alpha,
                      ZhuPrefactor variant) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::domain_error("subsampled_rdp: gamma must be in [0, 1]");
  }
  if (alpha < 2) {
    throw std::domain_error("subsampled_rdp: integer order must be >= 2");
  }
  if (gamma == 0.0) return 0.0;
  const double a = static_cast<double>(alpha);
  const double log_gamma_s = std::log(gamma);
  const double log_1m = std::log1p(-gamma);  // -inf at gamma = 1
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(alpha));
  terms.push_back(weighted_log(a - 1.0, log_1m) +
                  std::log1p((a - 1.0) * gamma));
  terms.push_back(log_choose(a, 2.0) + 2.0 * log_gamma_s +
                  weighted_log(a - 2.0, log_1m) + curve.tau(2.0));
  for (std::int64_t l = 3; l <= alpha; ++l) {
    const double ld = static_cast<double>(l);
    terms.push_back(std::log(3.0) + log_choose(a, ld) + ld * log_gamma_s +
                    weighted_log(a - ld, log_1m) +
                    (ld - 1.0) * curve.tau(ld));
  }
  const double log_arg = log_sum_exp(terms);
  const double prefactor =
      variant == ZhuPrefactor::original ? 1.0 / (a - 1.0) : 1.0 / a;
  return std::max(0.0, prefactor * log_arg);
}

RdpCurve subsampled_curve(const RdpCurve& curve, double gamma,
                          std::int64_t alpha_max, ZhuPrefactor variant) {
  if (alpha_max < 2) {
    throw std::domain_error("subsampled_curve: alpha_max must be >= 2");
  }
  auto table = std::make_shared<std::vector<double>>();
  table->resize(static_cast<std::size_t>(alpha_max) + 1, 0.0);
  (*table)[1] = gamma * curve.tau(1.0);
  for (std::int64_t a = 2; a <= alpha_max; ++a) {
    (*table)[static_cast<std::size_t>(a)] =
        subsampled_rdp(curve, gamma, a, variant);
  }
  const std::string label = "subsampled(" + curve.label() + ")";
  return RdpCurve(
      label,
      [table](double alpha) {
        const double max_a = static_cast<double>(table->size() - 1);
        if (alpha >= max_a) return table->back();
        const double fl = std::floor(alpha);
        const auto k = static_cast<std::size_t>(fl);
        if (alpha == fl) return (*table)[k];
        const double w = alpha - fl;
        return (1.0 - w) * (*table)[k] + w * (*table)[k + 1];
      },
      static_cast<double>(alpha_max));
}

RdpCurve compose_rdp(const RdpCurve& curve, double compositions) {
  if (!(compositions >= 1.0)) {
    throw std::domain_error("compose_rdp: composition count must be >= 1");
  }
  auto inner = std::make_shared<RdpCurve>(curve);
  const std::string label = "composed(" + curve.label() + ")";
  return RdpCurve(
      label,
      [inner, compositions](double alpha) {
        return compositions * inner->tau(alpha);
      },
      curve.alpha_domain_max());
}

double approach1(const MechanismSpec& mechanism,
                 const AccountingScenario& scenario,
                 const AccountantVariants& variants,
                 Approach1Diagnostics* diag) {
  validate(scenario);
  const RdpCurve curve = make_curve(mechanism);
  const RdpConverter converter(curve);
  const double log_gamma_s = std::log(scenario.gamma);
  const double n = scenario.compositions;
  const double delta_t = scenario.delta_target;

  // Base-epsilon sweep grid: 0 plus 400 log-spaced points.
  std::vector<double> base_eps;
  base_eps.push_back(0.0);
  {
    const double lo = std::log(1e-4), hi = std::log(1e3);
    for (int i = 0; i < 400; ++i) {
      const double f = static_cast<double>(i) / 399.0;
      base_eps.push_back(std::exp(lo + f * (hi - lo)));
    }
  }
  std::vector<DpGuarantee> base(base_eps.size());
  for (std::size_t i = 0; i < base_eps.size(); ++i) {
    try {
      base[i] = converter.delta_given_epsilon(base_eps[i]);
    } catch (const OptimizationError&) {
      base[i].epsilon = base_eps[i];
      base[i].log_delta = kInf;  // never admissible
    }
  }

  double best = kInf;
  for (int j = 0; j < 100; ++j) {
    const double f = static_cast<double>(j) / 99.0;
    const double delta_tilde =
        std::exp(std::log(delta_t / 100.0) +
                 f * (std::log(delta_t) - std::log(delta_t / 100.0)));
    // Largest admissible per-invocation delta_s:
    //   (1 - delta_s)^N (1 - delta_tilde) >= 1 - delta_t.
    const double inner =
        (std::log1p(-delta_t) - std::log1p(-delta_tilde)) / n;
    const double delta_s_max = -std::expm1(inner);
    if (!(delta_s_max > 0.0)) continue;
    const double bound = std::log(delta_s_max) - log_gamma_s;

    std::size_t first = base.size();
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i].log_delta <= bound) {
        first = i;
        break;
      }
    }
    if (first == base.size()) continue;

    double eps_star = base_eps[first];
    DpGuarantee g_star = base[first];
    if (first > 0) {
      double lo = base_eps[first - 1], hi = base_eps[first];
      DpGuarantee g_hi = base[first];
      for (int it = 0; it < 80 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const DpGuarantee g_mid = converter.delta_given_epsilon(mid);
        if (g_mid.log_delta <= bound) {
          hi = mid;
          g_hi = g_mid;
        } else {
          lo = mid;
        }
      }
      eps_star = hi;
      g_star = g_hi;
    }

    const auto [eps_s, delta_s] = amplify_dp_by_subsampling(
        eps_star, std::exp(std::min(g_star.log_delta, 0.0)), scenario.gamma);
    const ComposeResult comp =
        compose_dp(eps_s, delta_s, n, delta_tilde, variants.kairouz);
    if (comp.eps_tilde < best) {
      best = comp.eps_tilde;
      if (diag != nullptr) {
        diag->base_epsilon = eps_star;
        diag->base_log_delta = g_star.log_delta;
        diag->alpha_star = g_star.alpha_star;
        diag->eps_s = eps_s;
        diag->delta_s = delta_s;
        diag->delta_tilde = delta_tilde;
        diag->branch = comp.branch;
      }
    }
  }
  return best;
}

double approach2(const MechanismSpec& mechanism,
                 const AccountingScenario& scenario,
                 const AccountantVariants& variants,
                 Approach2Diagnostics* diag) {
  validate(scenario);
  const RdpCurve curve = make_curve(mechanism);
  constexpr std::int64_t kInitialAlphaMax = 512;
  constexpr std::int64_t kAlphaMaxCap = 8192;

  double best = kInf;
  std::optional<double> best_alpha;
  std::int64_t alpha_max = kInitialAlphaMax;
  std::int64_t used = alpha_max;
  while (true) {
    const RdpCurve sub =
        subsampled_curve(curve, scenario.gamma, alpha_max, variants.zhu);
    const RdpCurve composed = compose_rdp(sub, scenario.compositions);
    double eps = kInf;
    std::optional<double> alpha_star;
    try {
      const DpGuarantee g =
          epsilon_given_delta(composed, scenario.delta_target);
      eps = g.epsilon;
      alpha_star = g.alpha_star;
    } catch (const OptimizationError&) {
      eps = kInf;
    }
    if (eps < best) {
      best = eps;
      best_alpha = alpha_star;
      used = alpha_max;
    }
    // Extend the integer table while the optimum sits near the boundary and
    // extending keeps improving the bound.
    const bool boundary =
        alpha_star.has_value() &&
        *alpha_star > 0.9 * static_cast<double>(alpha_max);
    if (!boundary || alpha_max >= kAlphaMaxCap) break;
    alpha_max *= 2;
    if (eps > best * (1.0 + 1e-4)) break;
  }
  if (diag != nullptr) {
    diag->alpha_star = best_alpha;
    diag->alpha_max_used = used;
  }
  return best;
}

AccountingResult best_epsilon(const MechanismSpec& mechanism,
                              const AccountingScenario& scenario,
                              const AccountantVariants& variants) {
  AccountingResult r;
  r.variants = variants;
  r.eps_approach1 = approach1(mechanism, scenario, variants, &r.diag1);
  r.eps_approach2 = approach2(mechanism, scenario, variants, &r.diag2);
  if (r.eps_approach1 <= r.eps_approach2) {
    r.eps_best = r.eps_approach1;
    r.winner = "approach1";
  } else {
    r.eps_best = r.eps_approach2;
    r.winner = "approach2";
  }
  return r;
}

}  // namespace gradpriv
