#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "gradpriv/dpconvert.hpp"
#include "gradpriv/rdp.hpp"

// End-to-end accounting for subsampled, composed DP-SGD noise.  Two
// pipelines are provided and the better epsilon wins:
//   approach 1: convert to (eps, delta) first, then amplify by Poisson
//     subsampling and compose with the strong-composition bound;
//   approach 2: subsample in the RDP domain (integer orders + linear
//     interpolation), scale by the composition count, convert last.
//
// Two formula ambiguities are exposed as switches rather than resolved
// silently; the defaults are the variants of the original cited statements,
// which also reproduce the published accounting table.

namespace gradpriv {

// Prefactor of the subsampled-RDP log: the original statement divides by
// (alpha - 1); a common restatement divides by alpha.
enum class ZhuPrefactor { original, paper };

// Head term of the two square-root branches of the composition bound: the
// original statement multiplies (e^eps - 1)/(e^eps + 1) by eps*N; the
// restatement omits that factor.
enum class KairouzBranch { original, paper };

struct AccountantVariants {
  ZhuPrefactor zhu = ZhuPrefactor::original;
  KairouzBranch kairouz = KairouzBranch::original;
};

struct AccountingScenario {
  double gamma = 1.0;          // subsampling probability in (0, 1]
  double compositions = 1.0;   // composition count N (epochs or steps)
  double delta_target = 1e-5;  // in (0, 1)
};

// Poisson subsampling amplification:
//   eps_s = ln(1 + gamma (e^eps - 1)),  delta_s = gamma * delta.
std::pair<double, double> amplify_dp_by_subsampling(double epsilon,
                                                    double delta,
                                                    double gamma);

struct ComposeResult {
  double eps_tilde;
  double delta_total;  // 1 - (1 - delta_s)^N (1 - delta_tilde)
  int branch;          // 1-based index of the minimising branch
};

// N-fold strong composition of an (eps_s, delta_s)-DP mechanism with slack
// delta_tilde.
ComposeResult compose_dp(double eps_s, double delta_s, double compositions,
                         double delta_tilde,
                         KairouzBranch variant = KairouzBranch::original);

// Subsampled RDP bound at integer order alpha >= 2 (gamma in [0, 1]).
// Overflow propagates as +infinity, which upstream reads as "cannot
// certify".
double subsampled_rdp(const RdpCurve& curve, double gamma, std::int64_t alpha,
                      ZhuPrefactor variant = ZhuPrefactor::original);

// Integer-order table of the subsampled bound on [1, alpha_max] with the
// alpha = 1 rule tau_s(1) = gamma * tau(1) and linear interpolation in
// between.
RdpCurve subsampled_curve(const RdpCurve& curve, double gamma,
                          std::int64_t alpha_max,
                          ZhuPrefactor variant = ZhuPrefactor::original);

// Pointwise scaling tau'(alpha) = N * tau(alpha).
RdpCurve compose_rdp(const RdpCurve& curve, double compositions);

struct Approach1Diagnostics {
  double base_epsilon = 0.0;
  double base_log_delta = 0.0;
  std::optional<double> alpha_star;
  double eps_s = 0.0;
  double delta_s = 0.0;
  double delta_tilde = 0.0;
  int branch = 0;
};

struct Approach2Diagnostics {
  std::optional<double> alpha_star;
  std::int64_t alpha_max_used = 0;
};

double approach1(const MechanismSpec& mechanism,
                 const AccountingScenario& scenario,
                 const AccountantVariants& variants = {},
                 Approach1Diagnostics* diag = nullptr);

double approach2(const MechanismSpec& mechanism,
                 const AccountingScenario& scenario,
                 const AccountantVariants& variants = {},
                 Approach2Diagnostics* diag = nullptr);

struct AccountingResult {
  double eps_approach1 = 0.0;
  double eps_approach2 = 0.0;
  double eps_best = 0.0;
  std::string winner;  // "approach1" or "approach2"
  AccountantVariants variants;
  Approach1Diagnostics diag1;
  Approach2Diagnostics diag2;
};

AccountingResult best_epsilon(const MechanismSpec& mechanism,
                              const AccountingScenario& scenario,
                              const AccountantVariants& variants = {});

}  // namespace gradpriv
