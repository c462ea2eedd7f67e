#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oppe {

/// Rate parameter of an OPPE density; strictly positive.
class Theta {
 public:
  explicit Theta(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// One-parameter polynomial exponential family: density proportional to
/// p(x) exp(-theta x) with p(x) = sum_k a_k x^k, a_k >= 0.
///
/// The coefficients are kept exactly as given; the normalizer depends on
/// theta and is recomputed per call.
class OppeModel {
 public:
  /// Throws DomainError when `coeffs` is empty, has a negative or
  /// non-finite entry, or is identically zero.
  explicit OppeModel(std::vector<double> coeffs);

  /// Polynomial degree r (length of the coefficient vector minus one).
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

  /// ln p(x); -inf when p(x) = 0.
  double log_poly(double x) const;

  friend bool operator==(const OppeModel&, const OppeModel&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Component probabilities of the gamma-mixture form: w_j is the weight of
/// Gamma(j + 1, theta).
struct MixtureWeights {
  std::vector<double> w;
};

/// Catalog names accepted by named_model, in listing order.
std::span<const std::string_view> family_names();

/// Throws LookupError for an unknown name.
OppeModel named_model(std::string_view name);

/// ln h(theta), h = 1 / sum_k a_k Gamma(k+1) / theta^(k+1).
double log_normalizer(const OppeModel& model, Theta theta);

double log_pdf(const OppeModel& model, Theta theta, double x);
double pdf(const OppeModel& model, Theta theta, double x);
double cdf(const OppeModel& model, Theta theta, double x);

/// E[X] = sum_k a_k Gamma(k+2)/theta^(k+2) / sum_k a_k Gamma(k+1)/theta^(k+1).
double mean(const OppeModel& model, Theta theta);

MixtureWeights mixture_weights(const OppeModel& model, Theta theta);

}  // namespace oppe
