#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "gradpriv/rdp.hpp"

// Conversion between RDP curves and (epsilon, delta) guarantees.  Both
// directions minimise the same one-parameter family over the order alpha:
//   ln delta_a = (a-1)(tau(a) - eps) - ln(a-1) + a ln(1 - 1/a)
// and its algebraic inverse in epsilon.  A log-spaced grid brackets the
// minimiser and a golden-section pass refines it; delta is carried in
// log-domain throughout.

namespace gradpriv {

class OptimizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DpGuarantee {
  double epsilon = 0.0;
  double delta = 0.0;      // exp(log_delta), may underflow to 0
  double log_delta = 0.0;  // authoritative value
  std::optional<double> alpha_star;
};

struct AlphaSearchOptions {
  double alpha_min = 1.0 + 1e-6;
  double alpha_max = 1e6;   // clipped to the curve's domain
  int grid_points = 2000;   // log-spaced in (alpha - 1)
  int refine_iterations = 120;
};

// Caches the curve on the search grid; reuse it when converting the same
// curve at many epsilon/delta targets.
class RdpConverter {
 public:
  explicit RdpConverter(const RdpCurve& curve, AlphaSearchOptions opts = {});

  DpGuarantee delta_given_epsilon(double epsilon) const;
  DpGuarantee epsilon_given_delta(double delta) const;

  const AlphaSearchOptions& options() const { return opts_; }

 private:
  double refine(double lo, double hi,
                const std::function<double(double)>& objective) const;

  const RdpCurve* curve_;
  AlphaSearchOptions opts_;
  std::vector<double> alpha_grid_;
  std::vector<double> tau_grid_;
};

// One-shot wrappers.
DpGuarantee delta_given_epsilon(const RdpCurve& curve, double epsilon);
DpGuarantee epsilon_given_delta(const RdpCurve& curve, double delta);

// Stationary order of the delta_alpha family for the VMF curve: the root of
//   -eps + 2 kappa I_{nu+1}((2a-1)kappa)/I_nu((2a-1)kappa) + ln(1-1/a) = 0,
// found by bisection to residual <= 1e-9.  Throws NoRootError when the
// condition has no sign change (eps >= 2 kappa); callers fall back to the
// grid search.
double vmf_optimal_alpha(const VmfParams& params, double epsilon);

}  // namespace gradpriv
