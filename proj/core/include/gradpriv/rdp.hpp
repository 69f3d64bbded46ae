#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Renyi-DP curves tau(alpha) for the von Mises-Fisher and Gaussian gradient
// perturbation mechanisms.

namespace gradpriv {

// Directional noise on the unit sphere in R^p with concentration kappa.
struct VmfParams {
  std::int64_t p = 2;   // gradient length, >= 2
  double kappa = 0.0;   // concentration, >= 0

  double order_nu() const { return 0.5 * static_cast<double>(p) - 1.0; }
};

// One sphere per block, independent noise across blocks.
struct MultiVmfParams {
  std::vector<VmfParams> blocks;
};

// Isotropic noise with standard deviation sigma per unit of clipping bound.
// p and clip_radius are carried for the capacity computations; the RDP curve
// depends on sigma alone.
struct GaussParams {
  std::int64_t p = 1;
  double sigma = 1.0;
  double clip_radius = 1.0;
};

using MechanismSpec = std::variant<VmfParams, GaussParams>;

std::int64_t mechanism_dimension(const MechanismSpec& mech);
std::string mechanism_label(const MechanismSpec& mech);

// tau(alpha) for the single-sphere VMF mechanism.  alpha = 1 returns the KL
// upper bound 2*kappa*I_{nu+1}(kappa)/I_nu(kappa), so the whole curve is an
// upper bound.
double vmf_rdp(const VmfParams& params, double alpha);

// Sum of the per-block curves; requires alpha > 1.
double vmf_rdp_multi(const MultiVmfParams& params, double alpha);

// alpha / (2 sigma^2) for sensitivity-to-noise ratio 1/sigma.
double gaussian_rdp(const GaussParams& params, double alpha);

// A mechanism's RDP bound as a function of the order.  Evaluators may be
// restricted to a finite order interval [1, alpha_domain_max] (subsampled
// integer-order tables are).
class RdpCurve {
 public:
  using TauFn = std::function<double(double)>;

  RdpCurve(std::string label, TauFn tau,
           double alpha_domain_max = std::numeric_limits<double>::infinity())
      : label_(std::move(label)),
        tau_(std::move(tau)),
        alpha_domain_max_(alpha_domain_max) {}

  double tau(double alpha) const;
  const std::string& label() const { return label_; }
  double alpha_domain_max() const { return alpha_domain_max_; }

 private:
  std::string label_;
  TauFn tau_;
  double alpha_domain_max_;
};

RdpCurve make_vmf_curve(const VmfParams& params);
RdpCurve make_multi_vmf_curve(const MultiVmfParams& params);
RdpCurve make_gaussian_curve(const GaussParams& params);
RdpCurve make_curve(const MechanismSpec& mech);

}  // namespace gradpriv
