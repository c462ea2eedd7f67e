#pragma once

#include <functional>
#include <span>

namespace oppe::numerics {

/// Accuracy target for iterative routines. A result is accepted once its
/// error estimate is below max(abs, rel * |result|).
struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-14;
  int max_iter = 200;

  /// Throws DomainError unless rel > 0, abs >= 0 and max_iter >= 1.
  void validate() const;
};

/// ln Gamma(z) for z > 0.
double log_gamma(double z);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta(double a, double b);

/// Regularized upper incomplete gamma Q(m, x) = Gamma(m, x) / Gamma(m).
double reg_upper_gamma(double m, double x);

/// Regularized lower incomplete gamma P(m, x) = 1 - Q(m, x).
double reg_lower_gamma(double m, double x);

/// Standard (lower-tail) regularized incomplete beta:
/// (1/B(a,b)) * integral_0^x u^(a-1) (1-u)^(b-1) du.
double reg_lower_beta(double x, double alpha, double beta);

/// Upper-tail regularized incomplete beta:
/// (1/B(a,b)) * integral_x^1 u^(a-1) (1-u)^(b-1) du.
/// Note the tail: this is the complement of reg_lower_beta.
double reg_upper_beta(double x, double alpha, double beta);

/// ln of reg_upper_beta, accurate when the value underflows a double.
double log_reg_upper_beta(double x, double alpha, double beta);

/// ln sum_i exp(terms[i]). -inf entries are neutral; an all -inf input
/// returns -inf.
double log_sum_exp(std::span<const double> terms);

/// ln(exp(a) + exp(b)).
double log_add_exp(double a, double b);

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod quadrature on the finite interval [a, b].
double integrate(const Integrand& g, double a, double b,
                 const Tolerance& tol = {});

/// integral_lower^inf g(t) dt using the map t = lower + scale * u / (1 - u)
/// on u in [0, 1). `scale` should be of the order of the distance from
/// `lower` to where g carries its mass; the panel refinement then resolves
/// the peak regardless of how far out it sits.
double integrate_semi_infinite(const Integrand& g, double lower,
                               const Tolerance& tol = {}, double scale = 1.0);

}  // namespace oppe::numerics
