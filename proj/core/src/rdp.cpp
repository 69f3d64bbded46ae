#include "gradpriv/rdp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gradpriv/specfn.hpp"

namespace gradpriv {

namespace {

void validate(const VmfParams& params) {
  if (params.p < 2) {
    throw std::domain_error("vmf: dimension p must be >= 2");
  }
  if (!(params.kappa >= 0.0)) {
    throw std::domain_error("vmf: kappa must be >= 0");
  }
}

void validate(const GaussParams& params) {
  if (!(params.sigma > 0.0)) {
    throw std::domain_error("gauss: sigma must be > 0");
  }
}

}  // namespace

std::int64_t mechanism_dimension(const MechanismSpec& mech) {
  return std::visit([](const auto& m) { return m.p; }, mech);
}

std::string mechanism_label(const MechanismSpec& mech) {
  std::ostringstream os;
  if (const auto* v = std::get_if<VmfParams>(&mech)) {
    os << "vmf(p=" << v->p << ",kappa=" << v->kappa << ")";
  } else {
    const auto& g = std::get<GaussParams>(mech);
    os << "gauss(p=" << g.p << ",sigma=" << g.sigma << ")";
  }
  return os.str();
}

double vmf_rdp(const VmfParams& params, double alpha) {
  validate(params);
  if (!(alpha >= 1.0)) {
    throw std::domain_error("vmf_rdp: order must be >= 1");
  }
  if (params.kappa == 0.0) return 0.0;
  const double nu = params.order_nu();
  if (alpha == 1.0) {
    return 2.0 * params.kappa * bessel_ratio_consecutive(nu, params.kappa);
  }
  // tau = [nu ln(1/(2a-1)) + ln(I_nu((2a-1)k)/I_nu(k))] / (a-1); the
  // nu*ln(2a-1) pieces cancel exactly against the ratio's leading factor,
  // so evaluate the normalised series factors instead.
  const double x_num = (2.0 * alpha - 1.0) * params.kappa;
  const double tau = (specfn_detail::log_bessel_m(nu, x_num) -
                      specfn_detail::log_bessel_m(nu, params.kappa)) /
                     (alpha - 1.0);
  return std::max(0.0, tau);
}

double vmf_rdp_multi(const MultiVmfParams& params, double alpha) {
  if (params.blocks.empty()) {
    throw std::domain_error("vmf_rdp_multi: no blocks");
  }
  if (!(alpha > 1.0)) {
    throw std::domain_error("vmf_rdp_multi: order must be > 1");
  }
  double total = 0.0;
  for (const auto& block : params.blocks) {
    total += vmf_rdp(block, alpha);
  }
  return total;
}

double gaussian_rdp(const GaussParams& params, double alpha) {
  validate(params);
  if (!(alpha >= 1.0)) {
    throw std::domain_error("gaussian_rdp: order must be >= 1");
  }
  return alpha / (2.0 * params.sigma * params.sigma);
}

double RdpCurve::tau(double alpha) const {
  if (!(alpha >= 1.0)) {
    throw std::domain_error("RdpCurve::tau: order must be >= 1");
  }
  if (alpha > alpha_domain_max_) {
    throw std::domain_error("RdpCurve::tau: order outside curve domain");
  }
  return tau_(alpha);
}

RdpCurve make_vmf_curve(const VmfParams& params) {
  validate(params);
  std::ostringstream label;
  label << "vmf(p=" << params.p << ",kappa=" << params.kappa << ")";
  return RdpCurve(label.str(),
                  [params](double alpha) { return vmf_rdp(params, alpha); });
}

RdpCurve make_multi_vmf_curve(const MultiVmfParams& params) {
  if (params.blocks.empty()) {
    throw std::domain_error("multi-vmf curve: no blocks");
  }
  for (const auto& block : params.blocks) validate(block);
  std::ostringstream label;
  label << "multi-vmf(" << params.blocks.size() << " blocks)";
  return RdpCurve(label.str(), [params](double alpha) {
    if (alpha == 1.0) {
      double total = 0.0;
      for (const auto& block : params.blocks) total += vmf_rdp(block, 1.0);
      return total;
    }
    return vmf_rdp_multi(params, alpha);
  });
}

RdpCurve make_gaussian_curve(const GaussParams& params) {
  validate(params);
  std::ostringstream label;
  label << "gauss(sigma=" << params.sigma << ")";
  return RdpCurve(label.str(),
                  [params](double alpha) { return gaussian_rdp(params, alpha); });
}

RdpCurve make_curve(const MechanismSpec& mech) {
  if (const auto* v = std::get_if<VmfParams>(&mech)) {
    return make_vmf_curve(*v);
  }
  return make_gaussian_curve(std::get<GaussParams>(mech));
}

}  // namespace gradpriv
