#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gradpriv/rdp.hpp"

// Quantitative information flow: Bayes vulnerability and capacity for
// discrete channels, and the closed-form continuous Bayes' capacities of the
// Gaussian and VMF gradient channels.  Capacities are computed and compared
// in log-domain; linear values that overflow are reported as +infinity.

namespace gradpriv {

// Row-stochastic conditional matrix: rows are secrets, columns observations.
class Channel {
 public:
  Channel(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Channel from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  // Matrix product; the result is again row-stochastic.
  Channel compose(const Channel& post) const;

  // Channel restricted to a subset of rows.
  Channel restrict_rows(const std::vector<std::size_t>& keep) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

struct Prior {
  std::vector<double> weights;  // nonnegative, sums to 1
};

Prior uniform_prior(std::size_t n);

struct CapacityValue {
  double log_capacity;  // authoritative
  double capacity;      // exp(log_capacity), +inf on overflow
};

CapacityValue make_capacity(double log_capacity);

// Sum over columns of the column maximum; in [1, rows].
CapacityValue bayes_capacity_channel(const Channel& channel);

// One-try (Bayes) vulnerabilities and multiplicative leakage.
double prior_vulnerability(const Prior& prior);
double posterior_vulnerability(const Prior& prior, const Channel& channel);
double leakage(const Prior& prior, const Channel& channel);

// Which closed form of the Gaussian capacity to use.  The derivation form
// follows the change-of-variables computation (and the p = 1 closed form
// 1 + sqrt(2/pi) R/sigma); the theorem form carries an extra factor 2 on the
// shell term as printed in the headline statement.
enum class BcGaussianForm { derivation, theorem };

// Capacity of the p-dimensional Gaussian channel with noise std sigma and
// input ball radius R.
CapacityValue bayes_capacity_gaussian(std::int64_t p, double sigma,
                                      double radius,
                                      BcGaussianForm form = BcGaussianForm::derivation);

// Capacity of the VMF channel on S^{p-1} with concentration kappa.
CapacityValue bayes_capacity_vmf(std::int64_t p, double kappa);

enum class SafetyOrdering { safer, less_safe, equal };

// Compares reconstruction risk of two mechanisms on the same gradient
// dimension: lower Bayes' capacity is safer.  Log capacities within 1e-9
// compare equal.
SafetyOrdering compare_safety(const MechanismSpec& m1, const MechanismSpec& m2,
                              BcGaussianForm form = BcGaussianForm::derivation);

CapacityValue mechanism_capacity(const MechanismSpec& mech,
                                 BcGaussianForm form = BcGaussianForm::derivation);

}  // namespace gradpriv
