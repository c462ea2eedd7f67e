// oppe: command-line front end for OPPE estimation. CSV on stdout,
// diagnostics on stderr.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric
// non-convergence, 4 reproduction mismatch.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oppe/csv.hpp"
#include "oppe/datasets.hpp"
#include "oppe/error.hpp"
#include "oppe/mle.hpp"
#include "oppe/model.hpp"
#include "oppe/mse.hpp"
#include "oppe/report.hpp"
#include "oppe/sampling.hpp"
#include "oppe/umvue.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kNumeric = 3,
  kMismatch = 4,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelArgs {
  std::string dist;
  std::string coeffs;

  void attach(CLI::App* cmd) {
    auto* d = cmd->add_option("--dist", dist, "named family (exponential, lindley, ...)");
    auto* c = cmd->add_option("--coeffs", coeffs, "custom coefficients a0,a1,...");
    d->excludes(c);
  }

  oppe::OppeModel build() const {
    if (!dist.empty()) return oppe::named_model(dist);
    if (!coeffs.empty()) return oppe::OppeModel(oppe::parse_real_list(coeffs));
    throw UsageError("one of --dist or --coeffs is required");
  }
};

struct DataArgs {
  std::string path;
  std::string name;
  double scale = 1.0;

  void attach(CLI::App* cmd) {
    auto* p = cmd->add_option("--data", path, "CSV file of observations");
    auto* n = cmd->add_option("--dataset", name, "embedded dataset (guinea_pigs, aircond)");
    p->excludes(n);
    cmd->add_option("--scale", scale, "multiply observations by this factor")
        ->check(CLI::PositiveNumber);
  }

  oppe::Dataset load() const {
    if (!name.empty()) return oppe::dataset(name, scale);
    if (!path.empty()) return oppe::scaled(oppe::parse_csv(path), scale);
    throw UsageError("one of --data or --dataset is required");
  }
};

oppe::Target parse_target(const std::string& s) {
  if (s == "pdf") return oppe::Target::pdf;
  if (s == "cdf") return oppe::Target::cdf;
  throw UsageError("--target must be pdf or cdf");
}

void print_curve(const oppe::MseCurve& curve) {
  std::cout << "n,mse\n";
  for (const auto& row : curve.rows) {
    std::cout << row.n << ',' << oppe::format_double(row.mse) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimators of the PDF and CDF of one-parameter polynomial "
               "exponential distributions"};
  app.require_subcommand(1);

  // fit
  ModelArgs fit_model;
  DataArgs fit_data;
  std::string fit_convention = "full";
  bool fit_points = false;
  auto* fit = app.add_subcommand("fit", "MLE and UMVUE plug-in fit of a sample");
  fit_model.attach(fit);
  fit_data.attach(fit);
  fit->add_option("--convention", fit_convention, "UMVUE t-convention: full or loo")
      ->check(CLI::IsMember({"full", "loo"}));
  fit->add_flag("--points", fit_points, "emit per-observation densities instead");

  // eval
  ModelArgs eval_model;
  double eval_theta = 0.0;
  std::string eval_x;
  auto* eval = app.add_subcommand("eval", "evaluate pdf and cdf on a grid");
  eval_model.attach(eval);
  eval->add_option("--theta", eval_theta, "rate parameter")->required();
  eval->add_option("--x", eval_x, "comma-separated evaluation points")->required();

  // umvue
  ModelArgs umvue_model;
  DataArgs umvue_data;
  std::string umvue_x;
  auto* umvue = app.add_subcommand("umvue", "UMVUE of pdf and cdf on a grid");
  umvue_model.attach(umvue);
  umvue_data.attach(umvue);
  umvue->add_option("--x", umvue_x, "comma-separated evaluation points")->required();

  // sample
  ModelArgs sample_model;
  double sample_theta = 0.0;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 1;
  std::uint64_t sample_stream = 0;
  auto* sample = app.add_subcommand("sample", "draw random variates");
  sample_model.attach(sample);
  sample->add_option("--theta", sample_theta, "rate parameter")->required();
  sample->add_option("--n", sample_n, "number of draws")->required();
  sample->add_option("--seed", sample_seed, "64-bit seed");
  sample->add_option("--stream", sample_stream, "substream id");

  // mse-theory
  ModelArgs theory_model;
  double theory_theta = 0.1;
  double theory_x = 2.0;
  std::string theory_n = "20,40,60,80,100";
  std::string theory_mode = "corrected";
  std::string theory_target = "pdf";
  auto* theory = app.add_subcommand("mse-theory", "theoretical MSE of the UMVUE");
  theory_model.attach(theory);
  theory->add_option("--theta", theory_theta, "rate parameter");
  theory->add_option("--x", theory_x, "evaluation point");
  theory->add_option("--n", theory_n, "comma-separated sample sizes");
  theory->add_option("--target", theory_target, "pdf or cdf");
  theory->add_option("--mode", theory_mode, "cdf second moment: paper or corrected")
      ->check(CLI::IsMember({"paper", "corrected"}));

  // mse-sim
  ModelArgs sim_model;
  double sim_theta = 0.1;
  double sim_x = 2.0;
  std::string sim_n = "20,40,60,80,100";
  std::string sim_estimator = "mle";
  std::string sim_target = "pdf";
  int sim_reps = 1000;
  std::uint64_t sim_seed = 1;
  auto* sim = app.add_subcommand("mse-sim", "Monte Carlo MSE of an estimator");
  sim_model.attach(sim);
  sim->add_option("--theta", sim_theta, "rate parameter");
  sim->add_option("--x", sim_x, "evaluation point");
  sim->add_option("--n", sim_n, "comma-separated sample sizes");
  sim->add_option("--estimator", sim_estimator, "mle or umvue")
      ->check(CLI::IsMember({"mle", "umvue"}));
  sim->add_option("--target", sim_target, "pdf or cdf");
  sim->add_option("--reps", sim_reps, "replications per sample size");
  sim->add_option("--seed", sim_seed, "64-bit seed");

  // dataset
  std::string ds_name;
  double ds_scale = 1.0;
  auto* ds = app.add_subcommand("dataset", "print an embedded dataset");
  ds->add_option("--name", ds_name, "guinea_pigs or aircond")->required();
  ds->add_option("--scale", ds_scale, "multiply values by this factor")
      ->check(CLI::PositiveNumber);

  auto* tables = app.add_subcommand("reproduce-tables",
                                    "refit the published negative log-likelihoods");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fit) {
      const auto model = fit_model.build();
      const auto data = fit_data.load();
      const auto convention = fit_convention == "loo" ? oppe::TConvention::leave_one_out
                                                      : oppe::TConvention::full_sample;
      const auto report = oppe::fit_report(model, data.values, convention);
      if (fit_points) {
        std::cout << "x,mle_pdf,umvue_pdf\n";
        for (std::size_t i = 0; i < data.values.size(); ++i) {
          const double row[] = {data.values[i], report.mle_density[i],
                                report.umvue_density[i]};
          std::cout << oppe::format_row(row) << '\n';
        }
      } else {
        std::cout << "quantity,value\n"
                  << "n," << data.values.size() << '\n'
                  << "theta_hat," << oppe::format_double(report.mle.theta_hat) << '\n'
                  << "nll_mle," << oppe::format_double(report.mle.neg_log_lik) << '\n'
                  << "nll_umvue," << oppe::format_double(report.nll_umvue) << '\n'
                  << "umvue_convention," << oppe::to_string(convention) << '\n'
                  << "iterations," << report.mle.iterations << '\n'
                  << "converged," << (report.mle.converged ? 1 : 0) << '\n';
      }
      return report.mle.converged ? kOk : kNumeric;
    }
    if (*eval) {
      const auto model = eval_model.build();
      const oppe::Theta theta(eval_theta);
      std::cout << "x,pdf,cdf\n";
      for (double x : oppe::parse_real_list(eval_x)) {
        const double row[] = {x, oppe::pdf(model, theta, x), oppe::cdf(model, theta, x)};
        std::cout << oppe::format_row(row) << '\n';
      }
      return kOk;
    }
    if (*umvue) {
      const auto model = umvue_model.build();
      const auto data = umvue_data.load();
      std::cout << "x,f_hat,F_hat\n";
      for (double x : oppe::parse_real_list(umvue_x)) {
        const double row[] = {x, oppe::umvue_pdf(model, data.values, x),
                              oppe::umvue_cdf(model, data.values, x)};
        std::cout << oppe::format_row(row) << '\n';
      }
      return kOk;
    }
    if (*sample) {
      const auto model = sample_model.build();
      oppe::SeededStream rng(sample_seed, sample_stream);
      for (double v : oppe::sample(model, oppe::Theta(sample_theta), sample_n, rng)) {
        std::cout << oppe::format_double(v) << '\n';
      }
      return kOk;
    }
    if (*theory) {
      const auto model = theory_model.build();
      const auto mode = theory_mode == "paper" ? oppe::CdfMseMode::paper
                                               : oppe::CdfMseMode::corrected;
      print_curve(oppe::theoretical_mse_curve(model, oppe::Theta(theory_theta), theory_x,
                                              oppe::parse_int_list(theory_n),
                                              parse_target(theory_target), mode));
      return kOk;
    }
    if (*sim) {
      const auto model = sim_model.build();
      oppe::SimConfig cfg;
      cfg.reps = sim_reps;
      cfg.n_grid = oppe::parse_int_list(sim_n);
      cfg.seed = sim_seed;
      const auto estimator =
          sim_estimator == "umvue" ? oppe::Estimator::umvue : oppe::Estimator::mle;
      const auto curve = oppe::simulated_mse(model, oppe::Theta(sim_theta), sim_x, cfg,
                                             estimator, parse_target(sim_target));
      print_curve(curve);
      for (const auto& row : curve.rows) {
        if (row.skipped > 0) {
          std::cerr << "n=" << row.n << ": skipped " << row.skipped
                    << " replicates (fit did not converge)\n";
        }
      }
      return kOk;
    }
    if (*ds) {
      for (double v : oppe::dataset(ds_name, ds_scale).values) {
        std::cout << oppe::format_double(v) << '\n';
      }
      return kOk;
    }
    if (*tables) {
      const auto report = oppe::reproduce_tables();
      std::cout << "family,data,estimator,computed,reported,deviation,tolerance,pass,"
                   "conventions\n";
      for (const auto& c : report.checks) {
        std::cout << c.family << ',' << c.data << ',' << c.estimator << ','
                  << oppe::format_double(c.computed) << ','
                  << oppe::format_double(c.reported) << ','
                  << oppe::format_double(c.computed - c.reported) << ','
                  << oppe::format_double(c.tolerance) << ',' << (c.pass ? "yes" : "no")
                  << ',' << c.matching_conventions << '\n';
      }
      std::cerr << "theta_hat length_biased_lindley="
                << oppe::format_double(report.theta_length_biased_lindley)
                << " sujatha=" << oppe::format_double(report.theta_sujatha) << '\n';
      return report.all_pass() ? kOk : kMismatch;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const oppe::LookupError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const oppe::ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const oppe::DomainError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const oppe::ConvergenceError& e) {
    std::cerr << "numeric error: " << e.what() << " (best estimate "
              << oppe::format_double(e.best_estimate()) << ", error bound "
              << oppe::format_double(e.error_bound()) << ")\n";
    return kNumeric;
  } catch (const oppe::StateError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
