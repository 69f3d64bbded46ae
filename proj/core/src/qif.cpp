#include "gradpriv/qif.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gradpriv/specfn.hpp"

namespace gradpriv {

namespace {

constexpr double kStochasticTol = 1e-9;

}  // namespace

Channel::Channel(std::size_t rows, std::size_t cols,
                 std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0 || entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("channel: bad shape");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const double v = at(r, c);
      if (!(v >= -kStochasticTol && v <= 1.0 + kStochasticTol)) {
        throw std::invalid_argument("channel: entry outside [0, 1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
      throw std::invalid_argument("channel: row does not sum to 1");
    }
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    double col_max = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) col_max = std::max(col_max, at(r, c));
    if (col_max == 0.0) {
      throw std::invalid_argument("channel: all-zero column");
    }
  }
}

Channel Channel::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("channel: no rows");
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw std::invalid_argument("channel: ragged rows");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Channel(rows.size(), cols, std::move(flat));
}

Channel Channel::compose(const Channel& post) const {
  if (cols_ != post.rows()) {
    throw std::invalid_argument("channel compose: dimension mismatch");
  }
  std::vector<double> out(rows_ * post.cols(), 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double v = at(r, k);
      if (v == 0.0) continue;
      for (std::size_t c = 0; c < post.cols(); ++c) {
        out[r * post.cols() + c] += v * post.at(k, c);
      }
    }
  }
  return Channel(rows_, post.cols(), std::move(out));
}

Channel Channel::restrict_rows(const std::vector<std::size_t>& keep) const {
  if (keep.empty()) throw std::invalid_argument("channel: empty restriction");
  std::vector<double> out;
  out.reserve(keep.size() * cols_);
  for (std::size_t r : keep) {
    if (r >= rows_) throw std::invalid_argument("channel: row out of range");
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(at(r, c));
  }
  return Channel(keep.size(), cols_, std::move(out));
}

Prior uniform_prior(std::size_t n) {
  if (n == 0) throw std::invalid_argument("prior: empty support");
  return Prior{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

CapacityValue make_capacity(double log_capacity) {
  return CapacityValue{log_capacity, std::exp(log_capacity)};
}

CapacityValue bayes_capacity_channel(const Channel& channel) {
  double total = 0.0;
  for (std::size_t c = 0; c < channel.cols(); ++c) {
    double col_max = 0.0;
    for (std::size_t r = 0; r < channel.rows(); ++r) {
      col_max = std::max(col_max, channel.at(r, c));
    }
    total += col_max;
  }
  return CapacityValue{std::log(total), total};
}

double prior_vulnerability(const Prior& prior) {
  if (prior.weights.empty()) throw std::invalid_argument("prior: empty");
  double sum = 0.0, vmax = 0.0;
  for (double w : prior.weights) {
    if (!(w >= -kStochasticTol)) {
      throw std::invalid_argument("prior: negative weight");
    }
    sum += w;
    vmax = std::max(vmax, w);
  }
  if (std::abs(sum - 1.0) > kStochasticTol) {
    throw std::invalid_argument("prior: does not sum to 1");
  }
  return vmax;
}

double posterior_vulnerability(const Prior& prior, const Channel& channel) {
  if (prior.weights.size() != channel.rows()) {
    throw std::invalid_argument("posterior_vulnerability: dimension mismatch");
  }
  prior_vulnerability(prior);  // validates the prior
  double total = 0.0;
  for (std::size_t c = 0; c < channel.cols(); ++c) {
    double best = 0.0;
    for (std::size_t r = 0; r < channel.rows(); ++r) {
      best = std::max(best, prior.weights[r] * channel.at(r, c));
    }
    total += best;
  }
  return total;
}

double leakage(const Prior& prior, const Channel& channel) {
  return posterior_vulnerability(prior, channel) / prior_vulnerability(prior);
}

CapacityValue bayes_capacity_gaussian(std::int64_t p, double sigma,
                                      double radius, BcGaussianForm form) {
  if (p < 1 || !(sigma > 0.0) || !(radius > 0.0)) {
    throw std::domain_error("bayes_capacity_gaussian: invalid arguments");
  }
  const double half_p = 0.5 * static_cast<double>(p);
  const double log_norm = half_p * std::log(2.0 * std::numbers::pi * sigma * sigma);
  const double log_ball = log_ball_volume(p, radius) - log_norm;

  // ln( 1/2 * sum_{i=0}^{p-1} Gamma((p-i)/2) (sqrt(2) sigma)^(p-i) C(p-1,i) R^i )
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(p));
  const double log_s2sig = std::log(std::sqrt(2.0) * sigma);
  const double log_r = std::log(radius);
  for (std::int64_t i = 0; i < p; ++i) {
    const double pi_ = static_cast<double>(p - i);
    terms.push_back(std::lgamma(0.5 * pi_) + pi_ * log_s2sig +
                    std::lgamma(static_cast<double>(p)) -
                    std::lgamma(static_cast<double>(i) + 1.0) -
                    std::lgamma(static_cast<double>(p - i)) +
                    static_cast<double>(i) * log_r);
  }
  double log_shell = log_sphere_area(p) - log_norm + log_sum_exp(terms) -
                     std::log(2.0);
  if (form == BcGaussianForm::theorem) {
    log_shell += std::log(2.0);
  }
  const double terms2[] = {log_ball, log_shell};
  return make_capacity(log_sum_exp(terms2));
}

CapacityValue bayes_capacity_vmf(std::int64_t p, double kappa) {
  if (p < 2 || !(kappa >= 0.0)) {
    throw std::domain_error("bayes_capacity_vmf: invalid arguments");
  }
  if (kappa == 0.0) return make_capacity(0.0);
  const double half_p = 0.5 * static_cast<double>(p);
  const double nu = half_p - 1.0;
  const double log_c = std::log(2.0) - log_gamma(half_p) + nu * std::log(kappa) +
                       kappa - half_p * std::log(2.0) - log_bessel_i(nu, kappa);
  // The capacity of any channel is at least 1.
  return make_capacity(std::max(0.0, log_c));
}

CapacityValue mechanism_capacity(const MechanismSpec& mech, BcGaussianForm form) {
  if (const auto* v = std::get_if<VmfParams>(&mech)) {
    return bayes_capacity_vmf(v->p, v->kappa);
  }
  const auto& g = std::get<GaussParams>(mech);
  return bayes_capacity_gaussian(g.p, g.sigma, g.clip_radius, form);
}

SafetyOrdering compare_safety(const MechanismSpec& m1, const MechanismSpec& m2,
                              BcGaussianForm form) {
  if (mechanism_dimension(m1) != mechanism_dimension(m2)) {
    throw std::invalid_argument("compare_safety: dimension mismatch");
  }
  const double l1 = mechanism_capacity(m1, form).log_capacity;
  const double l2 = mechanism_capacity(m2, form).log_capacity;
  constexpr double kTol = 1e-9;
  if (std::abs(l1 - l2) <= kTol) return SafetyOrdering::equal;
  return l1 < l2 ? SafetyOrdering::safer : SafetyOrdering::less_safe;
}

}  // namespace gradpriv
