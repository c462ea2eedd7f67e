#include "oppe/mle.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "oppe/error.hpp"

namespace oppe {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxBracketSteps = 200;
constexpr double kBracketFactor = 4.0;

}  // namespace

void validate_sample(std::span<const double> data) {
  if (data.empty()) throw DomainError("sample is empty");
  for (double v : data) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("sample values must be finite and positive");
    }
  }
}

double neg_log_likelihood(const OppeModel& model, Theta theta,
                          std::span<const double> data) {
  double total = 0.0;
  for (double x : data) total -= log_pdf(model, theta, x);
  return total;
}

FitResult fit_mle(const OppeModel& model, std::span<const double> data,
                  const MleOptions& options) {
  validate_sample(data);
  options.tol.validate();
  const double xbar =
      std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(data.size());
  const double start = 1.0 / xbar;

  FitResult fit;
  if (model.degree() == 0 && options.closed_form_exponential) {
    fit.theta_hat = start;
    fit.bracket_low = start / kBracketFactor;
    fit.bracket_high = start * kBracketFactor;
    fit.converged = true;
    fit.neg_log_lik = neg_log_likelihood(model, Theta(start), data);
    return fit;
  }

  auto score = [&](double theta) { return mean(model, Theta(theta)) - xbar; };
  const double ftol = options.tol.rel * xbar;

  // Expand until score(low) > 0 > score(high).
  const double f_start = score(start);
  if (f_start == 0.0) {
    fit.theta_hat = start;
    fit.bracket_low = start / kBracketFactor;
    fit.bracket_high = start * kBracketFactor;
    fit.converged = true;
    fit.neg_log_lik = neg_log_likelihood(model, Theta(start), data);
    return fit;
  }
  double low = start, high = start;
  double f_low = f_start, f_high = f_start;
  for (int step = 0; f_low <= 0.0 && step < kMaxBracketSteps; ++step) {
    high = low;
    f_high = f_low;
    low /= kBracketFactor;
    f_low = score(low);
  }
  for (int step = 0; f_high >= 0.0 && step < kMaxBracketSteps; ++step) {
    low = high;
    f_low = f_high;
    high *= kBracketFactor;
    f_high = score(high);
  }
  if (!(f_low > 0.0 && f_high < 0.0)) {
    throw ConvergenceError("fit_mle: could not bracket the score root", start,
                           std::numeric_limits<double>::infinity());
  }
  fit.bracket_low = low;
  fit.bracket_high = high;

  // Brent's method on [low, high].
  double a = low, b = high, c = high;
  double fa = f_low, fb = f_high, fc = f_high;
  double d = b - a, e = d;
  for (int iter = 1; iter <= options.tol.max_iter; ++iter) {
    fit.iterations = iter;
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b);
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= ftol || std::abs(xm) <= tol1 || fb == 0.0) {
      fit.converged = true;
      break;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = score(b);
  }
  fit.theta_hat = b;
  fit.neg_log_lik = neg_log_likelihood(model, Theta(b), data);
  return fit;
}

double mle_pdf(const OppeModel& model, const FitResult& fit, double x) {
  if (!fit.converged) throw StateError("mle_pdf: fit did not converge");
  return pdf(model, Theta(fit.theta_hat), x);
}

double mle_cdf(const OppeModel& model, const FitResult& fit, double x) {
  if (!fit.converged) throw StateError("mle_cdf: fit did not converge");
  return cdf(model, Theta(fit.theta_hat), x);
}

}  // namespace oppe
