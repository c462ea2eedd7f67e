#include "oppe/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "oppe/error.hpp"
#include "oppe/numerics.hpp"

namespace oppe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct NamedFamily {
  std::string_view name;
  std::array<double, 6> coeffs;
  int degree;
};

constexpr std::array<NamedFamily, 9> kFamilies = {{
    {"exponential", {1}, 0},
    {"lindley", {1, 1}, 1},
    {"akash", {1, 0, 1}, 2},
    {"aradhana", {1, 2, 1}, 2},
    {"sujatha", {1, 1, 1}, 2},
    {"length_biased_lindley", {0, 1, 1}, 2},
    {"amarendra", {1, 1, 1, 1}, 3},
    {"devya", {1, 1, 1, 1, 1}, 4},
    {"shambhu", {1, 1, 1, 1, 1, 1}, 5},
}};

constexpr std::array<std::string_view, 9> kFamilyNames = [] {
  std::array<std::string_view, 9> names{};
  for (std::size_t i = 0; i < kFamilies.size(); ++i) names[i] = kFamilies[i].name;
  return names;
}();

// ln of a_k Gamma(k + offset) / theta^(k + offset), k = 0..r.
std::vector<double> log_moment_terms(const OppeModel& model, Theta theta,
                                     int offset) {
  const double log_theta = std::log(theta.value());
  std::vector<double> terms;
  terms.reserve(model.coeffs().size());
  for (int k = 0; k <= model.degree(); ++k) {
    const double a = model.coeff(k);
    terms.push_back(a > 0.0 ? std::log(a) + numerics::log_gamma(k + offset) -
                                  (k + offset) * log_theta
                            : kNegInf);
  }
  return terms;
}

void require_support(double x) {
  if (!(x >= 0.0)) throw DomainError("x must be non-negative");
}

}  // namespace

Theta::Theta(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("theta must be positive and finite");
  }
}

OppeModel::OppeModel(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("OPPE model needs at least one coefficient");
  bool any_positive = false;
  for (double a : coeffs_) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw DomainError("OPPE coefficients must be finite and non-negative");
    }
    any_positive = any_positive || a > 0.0;
  }
  if (!any_positive) throw DomainError("OPPE coefficients are all zero");
}

double OppeModel::log_poly(double x) const {
  if (x == 0.0) return coeffs_[0] > 0.0 ? std::log(coeffs_[0]) : kNegInf;
  const double log_x = std::log(x);
  std::vector<double> terms;
  terms.reserve(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] > 0.0) terms.push_back(std::log(coeffs_[k]) + k * log_x);
  }
  return numerics::log_sum_exp(terms);
}

std::span<const std::string_view> family_names() { return kFamilyNames; }

OppeModel named_model(std::string_view name) {
  for (const auto& family : kFamilies) {
    if (family.name == name) {
      return OppeModel(std::vector<double>(
          family.coeffs.begin(), family.coeffs.begin() + family.degree + 1));
    }
  }
  throw LookupError("unknown OPPE family '" + std::string(name) + "'");
}

double log_normalizer(const OppeModel& model, Theta theta) {
  return -numerics::log_sum_exp(log_moment_terms(model, theta, 1));
}

double log_pdf(const OppeModel& model, Theta theta, double x) {
  require_support(x);
  if (std::isinf(x)) return kNegInf;
  return log_normalizer(model, theta) + model.log_poly(x) - theta.value() * x;
}

double pdf(const OppeModel& model, Theta theta, double x) {
  return std::exp(log_pdf(model, theta, x));
}

double cdf(const OppeModel& model, Theta theta, double x) {
  require_support(x);
  if (x == 0.0) return 0.0;
  const MixtureWeights weights = mixture_weights(model, theta);
  const double scaled = theta.value() * x;
  double total = 0.0;
  for (std::size_t j = 0; j < weights.w.size(); ++j) {
    if (weights.w[j] > 0.0) {
      total += weights.w[j] * numerics::reg_lower_gamma(j + 1.0, scaled);
    }
  }
  return std::min(total, 1.0);
}

double mean(const OppeModel& model, Theta theta) {
  return std::exp(numerics::log_sum_exp(log_moment_terms(model, theta, 2)) -
                  numerics::log_sum_exp(log_moment_terms(model, theta, 1)));
}

MixtureWeights mixture_weights(const OppeModel& model, Theta theta) {
  const auto terms = log_moment_terms(model, theta, 1);
  const double total = numerics::log_sum_exp(terms);
  MixtureWeights weights;
  weights.w.reserve(terms.size());
  for (double t : terms) weights.w.push_back(std::exp(t - total));
  return weights;
}

}  // namespace oppe
