#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oppe/datasets.hpp"
#include "oppe/error.hpp"
#include "oppe/mle.hpp"
#include "oppe/model.hpp"
#include "oppe/rng.hpp"
#include "oppe/sampling.hpp"

using oppe::Theta;

namespace {

double average(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
}

}  // namespace

TEST_CASE("closed-form MLE examples") {
  const std::vector<double> data = {1.0, 2.0, 3.0};
  const auto expo = oppe::fit_mle(oppe::named_model("exponential"), data);
  CHECK(expo.converged);
  CHECK(expo.theta_hat == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(expo.bracket_low < expo.theta_hat);
  CHECK(expo.theta_hat < expo.bracket_high);

  // LB Lindley: mean (2 theta + 6)/(theta (theta + 2)) = 3.
  const std::vector<double> three = {2.0, 3.0, 4.0};
  const auto lb = oppe::fit_mle(oppe::named_model("length_biased_lindley"), three);
  CHECK(lb.converged);
  CHECK(lb.theta_hat == doctest::Approx((-4.0 + std::sqrt(88.0)) / 6.0).epsilon(1e-9));
}

TEST_CASE("guinea pig fit") {
  const auto model = oppe::named_model("length_biased_lindley");
  const auto data = oppe::dataset("guinea_pigs").values;
  const auto fit = oppe::fit_mle(model, data);
  REQUIRE(fit.converged);
  CHECK(fit.neg_log_lik == doctest::Approx(95.81244).epsilon(1e-7));
  CHECK(std::abs(fit.neg_log_lik - 95.81244) < 1e-5);
  CHECK(fit.neg_log_lik ==
        doctest::Approx(oppe::neg_log_likelihood(model, Theta(fit.theta_hat), data))
            .epsilon(1e-15));
  CHECK(fit.iterations > 0);
}

TEST_CASE("residual meets the relative tolerance for every model") {
  oppe::SeededStream rng(8);
  for (const auto name : oppe::family_names()) {
    const auto model = oppe::named_model(name);
    for (double th : {0.05, 1.0, 12.0}) {
      const auto xs = oppe::sample(model, Theta(th), 200, rng);
      const double xbar = average(xs);
      const auto fit = oppe::fit_mle(model, xs);
      INFO(name << " theta = " << th);
      REQUIRE(fit.converged);
      CHECK(std::abs(oppe::mean(model, Theta(fit.theta_hat)) - xbar) <= 1e-10 * xbar);
      CHECK(fit.bracket_low <= fit.theta_hat);
      CHECK(fit.theta_hat <= fit.bracket_high);
    }
  }
}

TEST_CASE("root finding agrees with 1/xbar for the exponential") {
  oppe::SeededStream rng(3);
  const auto model = oppe::named_model("exponential");
  const auto xs = oppe::sample(model, Theta(0.7), 100, rng);
  oppe::MleOptions options;
  options.closed_form_exponential = false;
  options.tol.rel = 1e-14;
  const auto fit = oppe::fit_mle(model, xs, options);
  REQUIRE(fit.converged);
  CHECK(std::abs(fit.theta_hat * average(xs) - 1.0) <= 1e-12);
}

TEST_CASE("scale equivariance") {
  const auto model = oppe::named_model("sujatha");
  const auto data = oppe::dataset("aircond").values;
  // Sujatha is not scale-free, but the exponential is.
  const auto expo = oppe::named_model("exponential");
  std::vector<double> scaled;
  for (double x : data) scaled.push_back(x * 0.01);
  const auto a = oppe::fit_mle(expo, data);
  const auto b = oppe::fit_mle(expo, scaled);
  CHECK(b.theta_hat == doctest::Approx(a.theta_hat * 100.0).epsilon(1e-12));
  const auto fit = oppe::fit_mle(model, scaled);
  CHECK(fit.theta_hat == doctest::Approx(2.63816990374).epsilon(1e-9));
}

TEST_CASE("plug-in estimates and error cases") {
  const auto model = oppe::named_model("lindley");
  const std::vector<double> data = {0.5, 1.5, 2.5};
  const auto fit = oppe::fit_mle(model, data);
  CHECK(oppe::mle_pdf(model, fit, 1.0) ==
        doctest::Approx(oppe::pdf(model, Theta(fit.theta_hat), 1.0)));
  CHECK(oppe::mle_cdf(model, fit, 1.0) ==
        doctest::Approx(oppe::cdf(model, Theta(fit.theta_hat), 1.0)));

  oppe::FitResult one;
  one.theta_hat = 1.0;
  one.converged = true;
  CHECK(oppe::mle_pdf(oppe::named_model("exponential"), one, 0.0) == doctest::Approx(1.0));
  CHECK(oppe::mle_pdf(model, one, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(oppe::mle_cdf(model, one, 0.0) == 0.0);
  oppe::FitResult low = one;
  low.theta_hat = 0.1;
  CHECK(oppe::mle_pdf(oppe::named_model("sujatha"), low, 2.0) ==
        doctest::Approx(0.001 / 2.11 * 7.0 * std::exp(-0.2)).epsilon(1e-13));
  CHECK(oppe::mle_cdf(oppe::named_model("length_biased_lindley"), low, 2.0) ==
        doctest::Approx(0.0019283).epsilon(1e-4));
  oppe::FitResult half = one;
  half.theta_hat = 0.5;
  CHECK(oppe::mle_cdf(oppe::named_model("exponential"), half, 2.0) ==
        doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-14));

  oppe::FitResult unconverged;
  unconverged.theta_hat = 1.0;
  CHECK_THROWS_AS(oppe::mle_pdf(model, unconverged, 1.0), oppe::StateError);
  CHECK_THROWS_AS(oppe::mle_cdf(model, unconverged, 1.0), oppe::StateError);

  CHECK_THROWS_AS(oppe::fit_mle(model, std::vector<double>{}), oppe::DomainError);
  CHECK_THROWS_AS(oppe::fit_mle(model, std::vector<double>{1.0, 0.0}), oppe::DomainError);
  CHECK_THROWS_AS(oppe::fit_mle(model, std::vector<double>{1.0, -2.0}), oppe::DomainError);
  CHECK_THROWS_AS(
      oppe::fit_mle(model, std::vector<double>{1.0, std::numeric_limits<double>::infinity()}),
      oppe::DomainError);
  CHECK_THROWS_AS(oppe::fit_mle(model, std::vector<double>{1.0, NAN}), oppe::DomainError);
}

TEST_CASE("extreme sample means still bracket") {
  const auto model = oppe::named_model("devya");
  for (double x : {1e-6, 1e-3, 1e3, 1e6}) {
    const std::vector<double> data = {x, x, x};
    const auto fit = oppe::fit_mle(model, data);
    INFO("xbar = " << x);
    REQUIRE(fit.converged);
    CHECK(std::abs(oppe::mean(model, Theta(fit.theta_hat)) - x) <= 1e-10 * x);
  }
}
