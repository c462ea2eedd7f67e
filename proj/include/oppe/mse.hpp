#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "oppe/model.hpp"
#include "oppe/numerics.hpp"

namespace oppe {

enum class Estimator { mle, umvue };
enum class Target { pdf, cdf };

/// How E[F_hat^2] treats samples whose sum is at most x (where F_hat = 1).
enum class CdfMseMode {
  paper,      ///< integrate over t > x only
  corrected,  ///< also count P(T <= x) at estimator value 1
};

struct MseRow {
  int n = 0;
  double mse = 0.0;
  /// Monte Carlo standard error of mse; 0 for quadrature results.
  double std_error = 0.0;
  /// Average estimate over replicates (simulation only).
  double mean_estimate = 0.0;
  /// Standard error of mean_estimate (simulation only).
  double mean_std_error = 0.0;
  int skipped = 0;
};

struct MseCurve {
  Estimator estimator = Estimator::umvue;
  Target target = Target::pdf;
  double theta = 0.0;
  double x = 0.0;
  std::vector<MseRow> rows;
};

struct SimConfig {
  int reps = 1000;
  std::vector<int> n_grid;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks default_thread_count().
  unsigned threads = 0;

  /// Throws DomainError unless reps >= 1 and n_grid is non-empty and
  /// strictly increasing with entries >= 1 (>= 2 for the UMVUE).
  void validate(Estimator estimator) const;
};

/// OPPE_THREADS if set to a positive integer, else hardware concurrency.
unsigned default_thread_count();

/// integral_x^inf est(x; t)^power f_T(t) dt for the UMVUE of the target
/// from samples of size n. The estimator is 0 (pdf) or 1 (cdf) for t <= x;
/// that region is not included.
double umvue_tail_moment(const OppeModel& model, Theta theta, double x, int n,
                         Target target, int power,
                         const numerics::Tolerance& tol = {});

/// E[f_hat(x)] and E[F_hat(x)] by quadrature over the law of T.
double umvue_expectation(const OppeModel& model, Theta theta, double x, int n,
                         Target target, const numerics::Tolerance& tol = {});

/// E[f_hat^2] - f^2 (the estimator is unbiased, so this is its variance).
double theoretical_mse_umvue_pdf(const OppeModel& model, Theta theta, double x,
                                 int n, const numerics::Tolerance& tol = {});

/// E[F_hat^2] - F^2 with E[F_hat^2] per `mode`. Paper mode can come out
/// negative for small n.
double theoretical_mse_umvue_cdf(const OppeModel& model, Theta theta, double x,
                                 int n, const numerics::Tolerance& tol = {},
                                 CdfMseMode mode = CdfMseMode::corrected);

MseCurve theoretical_mse_curve(const OppeModel& model, Theta theta, double x,
                               const std::vector<int>& n_grid, Target target,
                               CdfMseMode mode = CdfMseMode::corrected,
                               const numerics::Tolerance& tol = {});

/// Monte Carlo MSE. Replicate i draws its sample from
/// SeededStream(cfg.seed, i) at every n, so the size-n sample is a prefix of
/// the size-n' sample for n < n' and results do not depend on the thread
/// count. MLE replicates whose fit fails are skipped and counted.
MseCurve simulated_mse(const OppeModel& model, Theta theta, double x,
                       const SimConfig& cfg, Estimator estimator,
                       Target target);

std::string_view to_string(Estimator e);
std::string_view to_string(Target t);
std::string_view to_string(CdfMseMode m);

}  // namespace oppe
