#pragma once

#include <memory>
#include <span>
#include <vector>

#include "oppe/model.hpp"

namespace oppe {

/// One weak composition (q_0, ..., q_r) of n with its exponent
/// s = sum_k (k+1) q_k and ln c(n, q), where
///   c(n, q) = n! / prod_k q_k! * prod_k [a_k k!]^q_k / Gamma(s).
struct CompositionRow {
  std::vector<int> q;
  int s = 0;
  double log_c = 0.0;
};

/// All compositions of n over the model's nonzero coefficients. Parts
/// whose coefficient is zero are fixed at 0, since any row using them has
/// c = 0.
struct CompositionTable {
  int n = 0;
  int r = 0;
  std::vector<CompositionRow> rows;
};

CompositionTable build_composition_table(const OppeModel& model, int n);

/// The composition sum collapsed by exponent:
///   S_n(t) = sum_q c(n, q) t^(s(q) - 1) = sum_s C_s t^(s - 1).
/// For n >= 1 this is h(theta)^-n e^(theta t) times the density of the sum
/// of n observations.
class ExponentSeries {
 public:
  /// Sums table rows sharing an exponent.
  static ExponentSeries from_table(const CompositionTable& table);

  /// Builds C_s directly from the n-th power of
  /// P(z) = sum_k a_k k! z^(k+1), whose z^s coefficient is
  /// sum_{q : s(q) = s} n! / prod q_k! prod [a_k k!]^q_k.
  static ExponentSeries from_model(const OppeModel& model, int n);

  int n() const noexcept { return n_; }
  int min_exponent() const noexcept { return min_exponent_; }
  int max_exponent() const noexcept {
    return min_exponent_ + static_cast<int>(log_coef_.size()) - 1;
  }
  /// ln C_s, -inf where no composition has exponent s.
  double log_coef(int s) const;

  /// ln S_n(t) for t > 0.
  double log_eval(double t) const;

 private:
  int n_ = 0;
  int min_exponent_ = 0;
  std::vector<double> log_coef_;
};

/// Process-wide cache of ExponentSeries::from_model keyed by (coefficients, n).
std::shared_ptr<const ExponentSeries> cached_series(const OppeModel& model,
                                                    int n);

/// Law of T = X_1 + ... + X_n: a mixture of Gamma(s, theta) over the
/// exponents of the composition sum.
class SuffStatLaw {
 public:
  SuffStatLaw(const OppeModel& model, Theta theta, int n);

  int n() const noexcept { return n_; }
  double theta() const noexcept { return theta_; }
  const ExponentSeries& series() const noexcept { return *series_; }

  /// Throws DomainError for t <= 0.
  double log_pdf(double t) const;
  double pdf(double t) const;
  /// P(T <= t); 0 for t <= 0.
  double cdf(double t) const;
  double mean() const noexcept { return mean_; }

 private:
  int n_;
  double theta_;
  double log_h_n_;
  double mean_;
  std::shared_ptr<const ExponentSeries> series_;
};

/// UMVUEs of f(x) and F(x) from a sample of size n with sum t.
///
/// f_hat(x; t) = p(x) S_{n-1}(t - x) / S_n(t) on 0 < x < t, 0 for x >= t.
/// F_hat(x; t) = 1 - U(x; t) / S_n(t) on 0 < x < t, 1 for x >= t, with
///   U = sum_s C^(n-1)_s sum_k a_k t^(k+s) B(k+1, s) I_{x/t}(k+1, s)
/// the exact integral of f_hat over (x, t) (I is the upper-tail beta).
class UmvueEstimator {
 public:
  /// Throws DomainError for n < 2.
  UmvueEstimator(const OppeModel& model, int n);

  int n() const noexcept { return n_; }
  const OppeModel& model() const noexcept { return model_; }

  /// ln f_hat(x; t); -inf where the estimate is zero.
  double log_pdf(double x, double t) const;
  double pdf(double x, double t) const;
  double cdf(double x, double t) const;

  /// ln S_n(t), the normalizer A_n(t).
  double log_normalizer(double t) const { return full_->log_eval(t); }

 private:
  OppeModel model_;
  int n_;
  std::shared_ptr<const ExponentSeries> full_;     // size n
  std::shared_ptr<const ExponentSeries> reduced_;  // size n - 1
  // ln(C^(n-1)_s B(k+1, s)) indexed [k][s - reduced min exponent].
  std::vector<std::vector<double>> log_upper_weight_;
};

/// Density of X_1 given X_1 + ... + X_n = t, at 0 < x < t.
/// Throws DomainError for n < 2 or x outside (0, t).
double conditional_pdf(const OppeModel& model, int n, double t, double x);

/// UMVUEs from a sample (n = data.size() >= 2, t = sum of data).
double umvue_pdf(const OppeModel& model, std::span<const double> data,
                 double x);
double umvue_cdf(const OppeModel& model, std::span<const double> data,
                 double x);

/// Which sum the UMVUE plug-in uses when scored at its own observations.
enum class TConvention {
  full_sample,    ///< t = sum of all n values, estimator of size n
  leave_one_out,  ///< t = sum without x_i, estimator of size n - 1
};

/// -sum_i ln f_hat(x_i). Infinite when some f_hat(x_i) is zero.
double umvue_neg_log_lik(const OppeModel& model, std::span<const double> data,
                         TConvention convention = TConvention::full_sample);

}  // namespace oppe
