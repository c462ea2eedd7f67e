#include "oppe/umvue.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "oppe/error.hpp"
#include "oppe/mle.hpp"
#include "oppe/numerics.hpp"

namespace oppe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using numerics::log_add_exp;
using numerics::log_gamma;

// ln(a_k k!) for each k, -inf for zero coefficients.
std::vector<double> log_part_weights(const OppeModel& model) {
  std::vector<double> out;
  for (int k = 0; k <= model.degree(); ++k) {
    const double a = model.coeff(k);
    out.push_back(a > 0.0 ? std::log(a) + log_gamma(k + 1.0) : kNegInf);
  }
  return out;
}

void enumerate(const std::vector<int>& active, std::size_t pos, int remaining,
               std::vector<int>& q, const std::function<void()>& emit) {
  const int k = active[pos];
  if (pos + 1 == active.size()) {
    q[static_cast<std::size_t>(k)] = remaining;
    emit();
    q[static_cast<std::size_t>(k)] = 0;
    return;
  }
  for (int take = remaining; take >= 0; --take) {
    q[static_cast<std::size_t>(k)] = take;
    enumerate(active, pos + 1, remaining - take, q, emit);
  }
  q[static_cast<std::size_t>(k)] = 0;
}

void require_size(int n, int minimum, const char* what) {
  if (n < minimum) throw DomainError(what);
}

}  // namespace

CompositionTable build_composition_table(const OppeModel& model, int n) {
  require_size(n, 1, "build_composition_table: n must be at least 1");
  const auto log_w = log_part_weights(model);
  std::vector<int> active;
  for (int k = 0; k <= model.degree(); ++k) {
    if (model.coeff(k) > 0.0) active.push_back(k);
  }
  CompositionTable table;
  table.n = n;
  table.r = model.degree();
  std::vector<int> q(static_cast<std::size_t>(model.degree() + 1), 0);
  const double log_n_fact = log_gamma(n + 1.0);
  enumerate(active, 0, n, q, [&] {
    CompositionRow row;
    row.q = q;
    double log_c = log_n_fact;
    for (int k : active) {
      const int qk = q[static_cast<std::size_t>(k)];
      row.s += (k + 1) * qk;
      log_c += qk * log_w[static_cast<std::size_t>(k)] - log_gamma(qk + 1.0);
    }
    row.log_c = log_c - log_gamma(row.s);
    table.rows.push_back(std::move(row));
  });
  return table;
}

ExponentSeries ExponentSeries::from_table(const CompositionTable& table) {
  ExponentSeries series;
  series.n_ = table.n;
  const auto [lo, hi] = std::minmax_element(
      table.rows.begin(), table.rows.end(),
      [](const CompositionRow& a, const CompositionRow& b) { return a.s < b.s; });
  series.min_exponent_ = lo->s;
  series.log_coef_.assign(static_cast<std::size_t>(hi->s - lo->s + 1), kNegInf);
  for (const auto& row : table.rows) {
    auto& slot = series.log_coef_[static_cast<std::size_t>(row.s - lo->s)];
    slot = log_add_exp(slot, row.log_c);
  }
  return series;
}

ExponentSeries ExponentSeries::from_model(const OppeModel& model, int n) {
  require_size(n, 1, "ExponentSeries: n must be at least 1");
  const auto log_w = log_part_weights(model);
  int lowest = 0;
  while (log_w[static_cast<std::size_t>(lowest)] == kNegInf) ++lowest;
  int highest = model.degree();
  while (log_w[static_cast<std::size_t>(highest)] == kNegInf) --highest;

  // power[i] = ln [z^(offset + i)] P(z)^m, offset = m (lowest + 1).
  std::vector<double> power = {0.0};
  for (int m = 1; m <= n; ++m) {
    std::vector<double> next(power.size() + static_cast<std::size_t>(highest - lowest),
                             kNegInf);
    for (std::size_t i = 0; i < power.size(); ++i) {
      if (power[i] == kNegInf) continue;
      for (int k = lowest; k <= highest; ++k) {
        const double w = log_w[static_cast<std::size_t>(k)];
        if (w == kNegInf) continue;
        auto& slot = next[i + static_cast<std::size_t>(k - lowest)];
        slot = log_add_exp(slot, power[i] + w);
      }
    }
    power = std::move(next);
  }
  ExponentSeries series;
  series.n_ = n;
  series.min_exponent_ = n * (lowest + 1);
  series.log_coef_ = std::move(power);
  for (std::size_t i = 0; i < series.log_coef_.size(); ++i) {
    if (series.log_coef_[i] != kNegInf) {
      series.log_coef_[i] -= log_gamma(series.min_exponent_ + static_cast<double>(i));
    }
  }
  return series;
}

double ExponentSeries::log_coef(int s) const {
  if (s < min_exponent_ || s > max_exponent()) return kNegInf;
  return log_coef_[static_cast<std::size_t>(s - min_exponent_)];
}

double ExponentSeries::log_eval(double t) const {
  if (!(t > 0.0)) throw DomainError("ExponentSeries: t must be positive");
  const double log_t = std::log(t);
  double peak = kNegInf;
  for (std::size_t i = 0; i < log_coef_.size(); ++i) {
    peak = std::max(peak, log_coef_[i] + (min_exponent_ + static_cast<double>(i) - 1.0) * log_t);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < log_coef_.size(); ++i) {
    if (log_coef_[i] == kNegInf) continue;
    sum += std::exp(log_coef_[i] + (min_exponent_ + static_cast<double>(i) - 1.0) * log_t - peak);
  }
  return peak + std::log(sum);
}

std::shared_ptr<const ExponentSeries> cached_series(const OppeModel& model,
                                                    int n) {
  using Key = std::pair<std::vector<double>, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const ExponentSeries>> cache;
  Key key{std::vector<double>(model.coeffs().begin(), model.coeffs().end()), n};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache
             .emplace(std::move(key), std::make_shared<const ExponentSeries>(
                                          ExponentSeries::from_model(model, n)))
             .first;
  }
  return it->second;
}

SuffStatLaw::SuffStatLaw(const OppeModel& model, Theta theta, int n)
    : n_(n),
      theta_(theta.value()),
      log_h_n_(n * oppe::log_normalizer(model, theta)),
      mean_(n * oppe::mean(model, theta)),
      series_(cached_series(model, n)) {}

double SuffStatLaw::log_pdf(double t) const {
  if (!(t > 0.0)) throw DomainError("suffstat_pdf: t must be positive");
  if (std::isinf(t)) return kNegInf;
  return log_h_n_ + series_->log_eval(t) - theta_ * t;
}

double SuffStatLaw::pdf(double t) const { return std::exp(log_pdf(t)); }

double SuffStatLaw::cdf(double t) const {
  if (!(t > 0.0)) return 0.0;
  const double log_theta = std::log(theta_);
  double total = 0.0;
  for (int s = series_->min_exponent(); s <= series_->max_exponent(); ++s) {
    const double log_weight =
        log_h_n_ + series_->log_coef(s) + log_gamma(s) - s * log_theta;
    if (log_weight == kNegInf) continue;
    total += std::exp(log_weight) * numerics::reg_lower_gamma(s, theta_ * t);
  }
  return std::min(total, 1.0);
}

UmvueEstimator::UmvueEstimator(const OppeModel& model, int n)
    : model_(model), n_(n) {
  require_size(n, 2, "UMVUE needs a sample of size at least 2");
  full_ = cached_series(model, n);
  reduced_ = cached_series(model, n - 1);
  const int s_lo = reduced_->min_exponent();
  const int s_hi = reduced_->max_exponent();
  log_upper_weight_.resize(static_cast<std::size_t>(model.degree() + 1));
  for (int k = 0; k <= model.degree(); ++k) {
    auto& row = log_upper_weight_[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(s_hi - s_lo + 1), kNegInf);
    if (model.coeff(k) == 0.0) continue;
    for (int s = s_lo; s <= s_hi; ++s) {
      const double c = reduced_->log_coef(s);
      if (c == kNegInf) continue;
      row[static_cast<std::size_t>(s - s_lo)] =
          std::log(model.coeff(k)) + c + numerics::log_beta(k + 1.0, s);
    }
  }
}

double UmvueEstimator::log_pdf(double x, double t) const {
  if (!(x >= 0.0)) throw DomainError("UMVUE: x must be non-negative");
  if (!(t > 0.0)) throw DomainError("UMVUE: t must be positive");
  if (x >= t) return kNegInf;
  return model_.log_poly(x) + reduced_->log_eval(t - x) - full_->log_eval(t);
}

double UmvueEstimator::pdf(double x, double t) const {
  return std::exp(log_pdf(x, t));
}

double UmvueEstimator::cdf(double x, double t) const {
  if (!(x >= 0.0)) throw DomainError("UMVUE: x must be non-negative");
  if (!(t > 0.0)) throw DomainError("UMVUE: t must be positive");
  if (x == 0.0) return 0.0;
  if (x >= t) return 1.0;
  const double u = x / t;
  const double log_t = std::log(t);
  const int s_lo = reduced_->min_exponent();
  double log_upper = kNegInf;
  for (int k = 0; k <= model_.degree(); ++k) {
    const auto& row = log_upper_weight_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == kNegInf) continue;
      const double s = s_lo + static_cast<double>(i);
      log_upper = log_add_exp(
          log_upper, row[i] + (k + s) * log_t +
                         numerics::log_reg_upper_beta(u, k + 1.0, s));
    }
  }
  const double ratio = std::exp(log_upper - full_->log_eval(t));
  return std::clamp(1.0 - ratio, 0.0, 1.0);
}

double conditional_pdf(const OppeModel& model, int n, double t, double x) {
  require_size(n, 2, "conditional_pdf: n must be at least 2");
  if (!(x > 0.0 && x < t)) {
    throw DomainError("conditional_pdf: x must lie in (0, t)");
  }
  return UmvueEstimator(model, n).pdf(x, t);
}

namespace {

double sample_sum(std::span<const double> data) {
  validate_sample(data);
  if (data.size() < 2) throw DomainError("UMVUE needs a sample of size at least 2");
  return std::accumulate(data.begin(), data.end(), 0.0);
}

}  // namespace

double umvue_pdf(const OppeModel& model, std::span<const double> data,
                 double x) {
  const double t = sample_sum(data);
  return UmvueEstimator(model, static_cast<int>(data.size())).pdf(x, t);
}

double umvue_cdf(const OppeModel& model, std::span<const double> data,
                 double x) {
  const double t = sample_sum(data);
  return UmvueEstimator(model, static_cast<int>(data.size())).cdf(x, t);
}

double umvue_neg_log_lik(const OppeModel& model, std::span<const double> data,
                         TConvention convention) {
  const double t = sample_sum(data);
  const int n = static_cast<int>(data.size());
  double total = 0.0;
  if (convention == TConvention::full_sample) {
    const UmvueEstimator estimator(model, n);
    for (double x : data) total -= estimator.log_pdf(x, t);
    return total;
  }
  require_size(n, 3, "leave-one-out UMVUE needs a sample of size at least 3");
  const UmvueEstimator estimator(model, n - 1);
  for (double x : data) total -= estimator.log_pdf(x, t - x);
  return total;
}

}  // namespace oppe
