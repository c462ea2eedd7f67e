#pragma once

#include <span>

#include "oppe/model.hpp"
#include "oppe/numerics.hpp"

namespace oppe {

struct FitResult {
  double theta_hat = 0.0;
  int iterations = 0;
  /// Sign-change bracket the root was refined in; low < theta_hat < high.
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  /// -sum_i ln f(x_i; theta_hat).
  double neg_log_lik = 0.0;
  bool converged = false;
};

struct MleOptions {
  numerics::Tolerance tol{};
  /// Return 1 / mean directly for the r = 0 family instead of root-finding.
  bool closed_form_exponential = true;
};

/// Maximum likelihood estimate of theta: the root of mean(model, theta) =
/// sample mean. The mean is strictly decreasing in theta, so the root is
/// unique; it is bracketed geometrically from 1 / mean and refined with
/// Brent's method until |mean(theta) - xbar| <= tol.rel * xbar.
///
/// Throws DomainError for empty or non-positive data, ConvergenceError when
/// no bracket can be found.
FitResult fit_mle(const OppeModel& model, std::span<const double> data,
                  const MleOptions& options = {});

/// -sum_i ln pdf(model, theta, x_i).
double neg_log_likelihood(const OppeModel& model, Theta theta,
                          std::span<const double> data);

/// Plug-in estimates pdf(theta_hat, x) and cdf(theta_hat, x). Throw
/// StateError for an unconverged fit.
double mle_pdf(const OppeModel& model, const FitResult& fit, double x);
double mle_cdf(const OppeModel& model, const FitResult& fit, double x);

/// Throws DomainError unless data is nonempty with finite positive entries.
void validate_sample(std::span<const double> data);

}  // namespace oppe
