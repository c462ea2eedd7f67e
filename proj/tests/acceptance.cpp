// Acceptance checks; one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "oppe/datasets.hpp"
#include "oppe/mle.hpp"
#include "oppe/model.hpp"
#include "oppe/mse.hpp"
#include "oppe/numerics.hpp"
#include "oppe/rng.hpp"
#include "oppe/sampling.hpp"
#include "oppe/umvue.hpp"

using namespace oppe;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class F>
double simpson(F f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

const std::vector<int> kGrid = {20, 40, 60, 80, 100};

bool decreasing_positive(const MseCurve& curve) {
  for (std::size_t i = 0; i < curve.rows.size(); ++i) {
    if (!(curve.rows[i].mse > 0.0)) return false;
    if (i > 0 && !(curve.rows[i].mse < curve.rows[i - 1].mse)) return false;
  }
  return true;
}

Outcome guinea_pig_mle() {
  const auto start = Clock::now();
  const auto data = dataset("guinea_pigs").values;
  const auto fit = fit_mle(named_model("length_biased_lindley"), data);
  const double elapsed = seconds_since(start);
  const bool ok = fit.converged && std::abs(fit.neg_log_lik - 95.81244) <= 0.005 && elapsed < 1.0;
  return {ok, fmt("nll=%.6f reported=95.81244 time=%.3fs", fit.neg_log_lik, elapsed)};
}

Outcome aircond_mle() {
  const auto data = dataset("aircond", 0.01).values;
  const auto fit = fit_mle(named_model("sujatha"), data);
  const bool ok = fit.converged && std::abs(fit.neg_log_lik - 15.10749) <= 0.005;
  return {ok, fmt("nll=%.6f reported=15.10749", fit.neg_log_lik)};
}

Outcome umvue_rows() {
  struct Row {
    const char* family;
    std::vector<double> data;
    double reported;
  };
  const Row rows[] = {
      {"length_biased_lindley", dataset("guinea_pigs").values, 95.7132},
      {"sujatha", dataset("aircond", 0.01).values, 15.44566},
  };
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    const auto model = named_model(row.family);
    const double full = umvue_neg_log_lik(model, row.data, TConvention::full_sample);
    const double loo = umvue_neg_log_lik(model, row.data, TConvention::leave_one_out);
    std::string match;
    if (std::abs(full - row.reported) <= 0.05) match = "full_sample";
    if (std::abs(loo - row.reported) <= 0.05) match += match.empty() ? "leave_one_out" : "+leave_one_out";
    if (match.empty()) {
      ok = false;
      match = "none";
    }
    detail += std::string(row.family) + fmt(" full=%.5f loo=%.5f reported=%.5f", full, loo, row.reported) +
              " match=" + match + "; ";
  }
  return {ok, detail};
}

Outcome unbiasedness() {
  const auto start = Clock::now();
  double worst_pdf = 0.0, worst_cdf = 0.0;
  int cases = 0;
  for (const auto name : family_names()) {
    const auto model = named_model(name);
    for (int n : {2, 5, 10}) {
      const UmvueEstimator est(model, n);
      for (double th : {0.1, 1.0}) {
        const Theta theta(th);
        const SuffStatLaw law(model, theta, n);
        for (double x : {0.5, 1.0, 2.0}) {
          const double scale = std::max(law.mean() - x, std::sqrt(double(n)) * mean(model, theta));
          const double e_pdf = numerics::integrate_semi_infinite(
              [&](double t) { return est.pdf(x, t) * law.pdf(t); }, x, {}, scale);
          const double below =
              numerics::integrate([&](double t) { return law.pdf(t); }, 0.0, x);
          const double e_cdf = below + numerics::integrate_semi_infinite(
                                           [&](double t) { return est.cdf(x, t) * law.pdf(t); },
                                           x, {}, scale);
          const double f = pdf(model, theta, x);
          worst_pdf = std::max(worst_pdf, std::abs(e_pdf - f) / std::max(1.0, f));
          worst_cdf = std::max(worst_cdf, std::abs(e_cdf - cdf(model, theta, x)));
          ++cases;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst_pdf <= 1e-6 && worst_cdf <= 1e-6 && elapsed < 60.0;
  return {ok, fmt("cases=%.0f max_pdf_err=%.2e max_cdf_err=%.2e", cases, worst_pdf, worst_cdf) +
                  fmt(" time=%.2fs", elapsed)};
}

Outcome convolution_oracle() {
  double worst = 0.0;
  for (const char* name : {"lindley", "sujatha"}) {
    const auto model = named_model(name);
    const Theta theta(1.0);
    const auto f = [&](double x) { return pdf(model, theta, x); };
    const auto f2 = [&](double u) {
      return simpson([&](double x) { return f(x) * f(u - x); }, 0.0, u, 400);
    };
    const SuffStatLaw law2(model, theta, 2), law3(model, theta, 3);
    for (int i = 1; i <= 50; ++i) {
      const double t = 0.3 * i;
      const double c3 = simpson([&](double x) { return f(x) * f2(t - x); }, 0.0, t, 200);
      worst = std::max({worst, std::abs(law2.pdf(t) - f2(t)), std::abs(law3.pdf(t) - c3)});
    }
  }
  return {worst <= 1e-7, fmt("grid=50 max_abs_err=%.2e", worst)};
}

Outcome closed_form_oracle() {
  const auto expo = named_model("exponential");
  SeededStream rng(20240601);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 60);
    const double t = 100.0 * rng.uniform();
    const double x = t * rng.uniform();
    const UmvueEstimator est(expo, n);
    const double f = (n - 1) * std::pow(t - x, n - 2) / std::pow(t, n - 1);
    const double c = 1.0 - std::pow(1.0 - x / t, n - 1);
    worst = std::max({worst, std::abs(est.pdf(x, t) - f) / std::max(1.0, f),
                      std::abs(est.cdf(x, t) - c)});
  }
  return {worst <= 1e-12, fmt("draws=2000 max_err=%.2e", worst)};
}

Outcome curve_shapes() {
  const auto start = Clock::now();
  SimConfig cfg;
  cfg.reps = 1000;
  cfg.n_grid = kGrid;
  cfg.seed = 20240101;
  bool ok = true;
  std::string failed;
  for (const char* name : {"length_biased_lindley", "sujatha"}) {
    const auto model = named_model(name);
    const Theta theta(0.1);
    const MseCurve curves[] = {
        theoretical_mse_curve(model, theta, 2.0, kGrid, Target::pdf),
        theoretical_mse_curve(model, theta, 2.0, kGrid, Target::cdf, CdfMseMode::corrected),
        simulated_mse(model, theta, 2.0, cfg, Estimator::mle, Target::pdf),
        simulated_mse(model, theta, 2.0, cfg, Estimator::mle, Target::cdf),
    };
    const char* labels[] = {"theory-pdf", "theory-cdf", "mle-pdf", "mle-cdf"};
    for (int i = 0; i < 4; ++i) {
      if (!decreasing_positive(curves[i])) {
        ok = false;
        failed += std::string(" ") + name + "/" + labels[i];
      }
    }
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 300.0;
  return {ok, "8 curves" + (failed.empty() ? std::string(" all decreasing") : " failing:" + failed) +
                  fmt(" time=%.2fs", elapsed)};
}

Outcome theory_vs_simulation() {
  const auto model = named_model("lindley");
  SimConfig cfg;
  cfg.reps = 100000;
  cfg.n_grid = {5};
  cfg.seed = 8;
  const double theory = theoretical_mse_umvue_pdf(model, Theta(1.0), 1.0, 5);
  const auto sim = simulated_mse(model, Theta(1.0), 1.0, cfg, Estimator::umvue, Target::pdf);
  const auto& row = sim.rows.front();
  const bool ok = std::abs(row.mse - theory) <= 3.0 * row.std_error;
  return {ok, fmt("theory=%.6e mc=%.6e se=%.2e", theory, row.mse, row.std_error)};
}

Outcome sampling_correctness() {
  const int n = 100000;
  const double critical = 1.628 / std::sqrt(double(n));
  double worst = 0.0;
  std::string worst_case;
  std::uint64_t stream = 0;
  for (const auto name : family_names()) {
    const auto model = named_model(name);
    for (double th : {0.1, 1.0}) {
      SeededStream rng(3, stream++);
      auto xs = sample(model, Theta(th), n, rng);
      std::sort(xs.begin(), xs.end());
      double d = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(model, Theta(th), xs[i]);
        d = std::max({d, (i + 1) / double(n) - f, f - i / double(n)});
      }
      if (d > worst) {
        worst = d;
        worst_case = std::string(name) + fmt("@%.1f", th);
      }
    }
  }
  SeededStream a(99, 7), b(99, 7);
  bool identical = true;
  for (int i = 0; i < 10000; ++i) identical = identical && a() == b();
  const bool ok = worst < critical && identical;
  return {ok, fmt("max_D=%.5f critical=%.5f", worst, critical) + " (" + worst_case + ")" +
                  (identical ? " streams identical" : " streams differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"guinea-pig-mle-nll", guinea_pig_mle},
      {"aircond-mle-nll", aircond_mle},
      {"umvue-nll-rows", umvue_rows},
      {"unbiasedness-suite", unbiasedness},
      {"convolution-oracle", convolution_oracle},
      {"exponential-closed-form", closed_form_oracle},
      {"mse-curve-shapes", curve_shapes},
      {"theory-vs-simulation", theory_vs_simulation},
      {"sampling-correctness", sampling_correctness},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("%s %d %s: %s\n", out.pass ? "PASS" : "FAIL", index, c.name, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
