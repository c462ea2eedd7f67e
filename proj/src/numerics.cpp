#include "oppe/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "oppe/error.hpp"

namespace oppe::numerics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kSeriesMaxIter = 100000;
// Largest integer first beta argument summed in closed form.
constexpr double kMaxFiniteBetaShape = 64.0;

// ln((n-1)!) for n = 1..170, from correctly rounded factorials.
const std::array<double, 171>& log_factorial_table() {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    double f = 1.0;
    t[0] = 0.0;
    for (int i = 1; i < 171; ++i) {
      f *= i;
      t[i] = std::log(f);
    }
    return t;
  }();
  return table;
}

double lanczos_log_gamma(double z) {
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,
      -.210264441724104883e-3, .217439618115212643e-3,
      -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double y = z;
  double tmp = z + 5.24218750000000000;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / z);
}

double stirling_log_gamma(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  const double series =
      inv *
      (1.0 / 12.0 +
       inv2 * (-1.0 / 360.0 +
               inv2 * (1.0 / 1260.0 +
                       inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0)))));
  return (z - 0.5) * std::log(z) - z + 0.91893853320467274178 + series;
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// P(m, x) by its power series; valid for x < m + 1.
double lower_gamma_series(double m, double x) {
  double ap = m;
  double del = 1.0 / m;
  double sum = del;
  for (int i = 0; i < kSeriesMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) {
      return sum * std::exp(-x + m * std::log(x) - log_gamma(m));
    }
  }
  throw ConvergenceError("incomplete gamma series did not converge", sum, del);
}

// Q(m, x) by modified Lentz continued fraction; valid for x >= m + 1.
double upper_gamma_fraction(double m, double x) {
  double b = x + 1.0 - m;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kSeriesMaxIter; ++i) {
    const double an = -i * (i - m);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) {
      return std::exp(-x + m * std::log(x) - log_gamma(m)) * h;
    }
  }
  throw ConvergenceError("incomplete gamma fraction did not converge", h, 1.0);
}

// Continued fraction for the incomplete beta; converges fast for
// x < (a + 1) / (a + b + 2).
double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kSeriesMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) return h;
  }
  throw ConvergenceError("incomplete beta fraction did not converge", h, 1.0);
}

// ln of x^a (1-x)^b / (a B(a, b)) * fraction, the lower tail at x.
double log_lower_beta_cf(double x, double a, double b) {
  return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b) -
         std::log(a) + std::log(beta_fraction(a, b, x));
}

bool use_finite_beta_sum(double alpha) {
  return alpha <= kMaxFiniteBetaShape && alpha == std::floor(alpha);
}

// Integer alpha: upper tail = (1-x)^beta * sum_{j<alpha} (beta)_j / j! x^j.
double log_upper_beta_finite(double x, double alpha, double beta) {
  const int terms = static_cast<int>(alpha);
  const double log_x = std::log(x);
  double log_term = 0.0;
  double acc = 0.0;  // log-space running sum, starts with j = 0 term
  for (int j = 1; j < terms; ++j) {
    log_term += std::log((beta + j - 1) / j) + log_x;
    acc = log_add_exp(acc, log_term);
  }
  return beta * std::log1p(-x) + acc;
}

void check_beta_args(double x, double alpha, double beta) {
  require(x >= 0.0 && x <= 1.0, "incomplete beta: x must lie in [0, 1]");
  require(alpha > 0.0 && beta > 0.0,
          "incomplete beta: shape parameters must be positive");
}

// Gauss-Kronrod 21-point rule (QUADPACK qk21 abscissae and weights).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525813838, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const Integrand& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = g(center);
  double kronrod = f_center * kWgk[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(f_center - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double value = kronrod * half;
  abs_sum *= std::abs(half);
  asc *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * abs_sum, error);
  }
  if (!std::isfinite(value)) {
    throw DomainError("integrand is not finite on [" + std::to_string(a) +
                      ", " + std::to_string(b) + "]");
  }
  return {a, b, value, error};
}

double adaptive(const Integrand& g, double a, double b, const Tolerance& tol,
                int initial_panels) {
  tol.validate();
  std::priority_queue<Panel> panels;
  const double width = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_panels) ? b : lo + width;
    panels.push(gauss_kronrod(g, lo, hi));
  }
  auto totals = [&panels] {
    auto copy = panels;
    double value = 0.0;
    double error = 0.0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };
  auto [value, error] = totals();
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    if (error <= std::max(tol.abs, tol.rel * std::abs(value))) return value;
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // cannot split further
    panels.pop();
    const Panel left = gauss_kronrod(g, worst.a, mid);
    const Panel right = gauss_kronrod(g, mid, worst.b);
    panels.push(left);
    panels.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }
  std::tie(value, error) = totals();
  if (error <= std::max(tol.abs, tol.rel * std::abs(value))) return value;
  throw ConvergenceError("adaptive quadrature did not reach tolerance", value,
                         error);
}

}  // namespace

void Tolerance::validate() const {
  require(rel > 0.0, "Tolerance.rel must be positive");
  require(abs >= 0.0, "Tolerance.abs must be non-negative");
  require(max_iter >= 1, "Tolerance.max_iter must be at least 1");
}

double log_gamma(double z) {
  require(z > 0.0 && std::isfinite(z), "log_gamma: argument must be positive");
  if (z < 171.0 && z == std::floor(z)) {
    return log_factorial_table()[static_cast<std::size_t>(z) - 1];
  }
  if (z < 0.5) return lanczos_log_gamma(z + 1.0) - std::log(z);
  if (z < 10.0) return lanczos_log_gamma(z);
  return stirling_log_gamma(z);
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double reg_upper_gamma(double m, double x) {
  require(m > 0.0, "reg_upper_gamma: shape must be positive");
  require(x >= 0.0, "reg_upper_gamma: x must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < m + 1.0) return 1.0 - lower_gamma_series(m, x);
  return upper_gamma_fraction(m, x);
}

double reg_lower_gamma(double m, double x) {
  require(m > 0.0, "reg_lower_gamma: shape must be positive");
  require(x >= 0.0, "reg_lower_gamma: x must be non-negative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < m + 1.0) return lower_gamma_series(m, x);
  return 1.0 - upper_gamma_fraction(m, x);
}

double reg_lower_beta(double x, double alpha, double beta) {
  check_beta_args(x, alpha, beta);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (alpha + 1.0) / (alpha + beta + 2.0)) {
    return std::exp(log_lower_beta_cf(x, alpha, beta));
  }
  return -std::expm1(log_lower_beta_cf(1.0 - x, beta, alpha));
}

double log_reg_upper_beta(double x, double alpha, double beta) {
  check_beta_args(x, alpha, beta);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return -kInf;
  if (use_finite_beta_sum(alpha)) return log_upper_beta_finite(x, alpha, beta);
  if (x < (alpha + 1.0) / (alpha + beta + 2.0)) {
    return std::log1p(-std::exp(log_lower_beta_cf(x, alpha, beta)));
  }
  return log_lower_beta_cf(1.0 - x, beta, alpha);
}

double reg_upper_beta(double x, double alpha, double beta) {
  return std::exp(log_reg_upper_beta(x, alpha, beta));
}

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  if (a == kInf) return kInf;
  return a + std::log1p(std::exp(b - a));
}

double log_sum_exp(std::span<const double> terms) {
  require(!terms.empty(), "log_sum_exp: empty input");
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(peak)) return peak;
  if (std::isnan(peak)) return peak;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

double integrate(const Integrand& g, double a, double b, const Tolerance& tol) {
  require(std::isfinite(a) && std::isfinite(b), "integrate: finite limits");
  if (a == b) return 0.0;
  if (b < a) return -integrate(g, b, a, tol);
  return adaptive(g, a, b, tol, 4);
}

double integrate_semi_infinite(const Integrand& g, double lower,
                               const Tolerance& tol, double scale) {
  require(std::isfinite(lower), "integrate_semi_infinite: finite lower limit");
  require(scale > 0.0 && std::isfinite(scale),
          "integrate_semi_infinite: scale must be positive");
  const Integrand mapped = [&g, lower, scale](double u) {
    const double rest = 1.0 - u;
    if (rest <= 0.0) return 0.0;
    const double value = g(lower + scale * u / rest);
    if (value == 0.0) return 0.0;
    return value * scale / (rest * rest);
  };
  return adaptive(mapped, 0.0, 1.0, tol, 8);
}

}  // namespace oppe::numerics
