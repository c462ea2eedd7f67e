#include "oppe/mse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "oppe/error.hpp"
#include "oppe/mle.hpp"
#include "oppe/rng.hpp"
#include "oppe/sampling.hpp"
#include "oppe/umvue.hpp"

namespace oppe {

namespace {

void require_point(double x, int n, int min_n) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x must be positive");
  if (n < min_n) throw DomainError("sample size too small for the UMVUE");
}

struct Moments {
  double mse = 0.0;
  double mse_se = 0.0;
  double mean = 0.0;
  double mean_se = 0.0;
  int used = 0;
};

// Deterministic reduction in replicate order; NaN entries are skipped.
Moments reduce(const std::vector<double>& estimates, double truth) {
  Moments m;
  double sum = 0.0, sum_sq = 0.0, err_sum = 0.0, err_sum_sq = 0.0;
  for (double e : estimates) {
    if (std::isnan(e)) continue;
    ++m.used;
    sum += e;
    sum_sq += e * e;
    const double sq = (e - truth) * (e - truth);
    err_sum += sq;
    err_sum_sq += sq * sq;
  }
  if (m.used == 0) return m;
  const double count = m.used;
  m.mean = sum / count;
  m.mse = err_sum / count;
  if (m.used > 1) {
    const double var_e = std::max(0.0, (sum_sq - count * m.mean * m.mean) / (count - 1));
    const double var_sq = std::max(0.0, (err_sum_sq - count * m.mse * m.mse) / (count - 1));
    m.mean_se = std::sqrt(var_e / count);
    m.mse_se = std::sqrt(var_sq / count);
  }
  return m;
}

}  // namespace

void SimConfig::validate(Estimator estimator) const {
  if (reps < 1) throw DomainError("SimConfig: reps must be at least 1");
  if (n_grid.empty()) throw DomainError("SimConfig: empty n grid");
  const int min_n = estimator == Estimator::umvue ? 2 : 1;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < min_n) throw DomainError("SimConfig: sample size too small");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw DomainError("SimConfig: n grid must be strictly increasing");
    }
  }
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("OPPE_THREADS")) {
    unsigned value = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double umvue_tail_moment(const OppeModel& model, Theta theta, double x, int n,
                         Target target, int power,
                         const numerics::Tolerance& tol) {
  require_point(x, n, 2);
  const SuffStatLaw law(model, theta, n);
  const UmvueEstimator estimator(model, n);
  numerics::Integrand integrand;
  if (target == Target::pdf) {
    integrand = [&](double t) {
      return std::exp(power * estimator.log_pdf(x, t) + law.log_pdf(t));
    };
  } else {
    integrand = [&](double t) {
      return std::pow(estimator.cdf(x, t), power) * law.pdf(t);
    };
  }
  const double spread = std::sqrt(static_cast<double>(n)) * mean(model, theta);
  const double scale = std::max(law.mean() - x, spread);
  return numerics::integrate_semi_infinite(integrand, x, tol, scale);
}

double umvue_expectation(const OppeModel& model, Theta theta, double x, int n,
                         Target target, const numerics::Tolerance& tol) {
  const double tail = umvue_tail_moment(model, theta, x, n, target, 1, tol);
  if (target == Target::pdf) return tail;
  return SuffStatLaw(model, theta, n).cdf(x) + tail;
}

double theoretical_mse_umvue_pdf(const OppeModel& model, Theta theta, double x,
                                 int n, const numerics::Tolerance& tol) {
  const double f = pdf(model, theta, x);
  return umvue_tail_moment(model, theta, x, n, Target::pdf, 2, tol) - f * f;
}

double theoretical_mse_umvue_cdf(const OppeModel& model, Theta theta, double x,
                                 int n, const numerics::Tolerance& tol,
                                 CdfMseMode mode) {
  const double big_f = cdf(model, theta, x);
  double second = umvue_tail_moment(model, theta, x, n, Target::cdf, 2, tol);
  if (mode == CdfMseMode::corrected) second += SuffStatLaw(model, theta, n).cdf(x);
  return second - big_f * big_f;
}

MseCurve theoretical_mse_curve(const OppeModel& model, Theta theta, double x,
                               const std::vector<int>& n_grid, Target target,
                               CdfMseMode mode, const numerics::Tolerance& tol) {
  MseCurve curve;
  curve.estimator = Estimator::umvue;
  curve.target = target;
  curve.theta = theta.value();
  curve.x = x;
  for (int n : n_grid) {
    MseRow row;
    row.n = n;
    row.mse = target == Target::pdf
                  ? theoretical_mse_umvue_pdf(model, theta, x, n, tol)
                  : theoretical_mse_umvue_cdf(model, theta, x, n, tol, mode);
    curve.rows.push_back(row);
  }
  return curve;
}

MseCurve simulated_mse(const OppeModel& model, Theta theta, double x,
                       const SimConfig& cfg, Estimator estimator,
                       Target target) {
  cfg.validate(estimator);
  require_point(x, 1, 1);
  const double truth = target == Target::pdf ? pdf(model, theta, x) : cdf(model, theta, x);
  const MixtureSampler sampler(model, theta);
  const unsigned threads = std::max(
      1u, std::min<unsigned>(cfg.threads ? cfg.threads : default_thread_count(),
                             static_cast<unsigned>(cfg.reps)));

  MseCurve curve;
  curve.estimator = estimator;
  curve.target = target;
  curve.theta = theta.value();
  curve.x = x;

  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const int n = cfg.n_grid[g];
    std::optional<UmvueEstimator> umvue;
    if (estimator == Estimator::umvue) umvue.emplace(model, n);
    std::vector<double> estimates(static_cast<std::size_t>(cfg.reps));

    auto replicate = [&](int i) {
      SeededStream rng(cfg.seed, static_cast<std::uint64_t>(i));
      std::vector<double> data(static_cast<std::size_t>(n));
      for (auto& v : data) v = sampler.draw(rng);
      if (estimator == Estimator::umvue) {
        const double t = std::accumulate(data.begin(), data.end(), 0.0);
        return target == Target::pdf ? umvue->pdf(x, t) : umvue->cdf(x, t);
      }
      try {
        const FitResult fit = fit_mle(model, data);
        if (!fit.converged) return std::numeric_limits<double>::quiet_NaN();
        return target == Target::pdf ? mle_pdf(model, fit, x) : mle_cdf(model, fit, x);
      } catch (const ConvergenceError&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };

    std::vector<std::exception_ptr> failures(threads);
    auto worker = [&](unsigned w) {
      try {
        for (int i = static_cast<int>(w); i < cfg.reps; i += static_cast<int>(threads)) {
          estimates[static_cast<std::size_t>(i)] = replicate(i);
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }

    const Moments m = reduce(estimates, truth);
    MseRow row;
    row.n = n;
    row.mse = m.mse;
    row.std_error = m.mse_se;
    row.mean_estimate = m.mean;
    row.mean_std_error = m.mean_se;
    row.skipped = cfg.reps - m.used;
    curve.rows.push_back(row);
  }
  return curve;
}

std::string_view to_string(Estimator e) {
  return e == Estimator::mle ? "mle" : "umvue";
}

std::string_view to_string(Target t) { return t == Target::pdf ? "pdf" : "cdf"; }

std::string_view to_string(CdfMseMode m) {
  return m == CdfMseMode::paper ? "paper" : "corrected";
}

}  // namespace oppe
