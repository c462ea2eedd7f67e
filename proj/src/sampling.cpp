#include "oppe/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oppe/error.hpp"

namespace oppe {

double gamma_variate(int shape, double rate, SeededStream& rng) {
  if (shape < 1) throw DomainError("gamma_variate: shape must be >= 1");
  if (!(rate > 0.0)) throw DomainError("gamma_variate: rate must be positive");
  double total = 0.0;
  for (int i = 0; i < shape; ++i) total -= std::log(rng.uniform());
  return total / rate;
}

MixtureSampler::MixtureSampler(const OppeModel& model, Theta theta)
    : theta_(theta.value()) {
  const MixtureWeights weights = mixture_weights(model, theta);
  cumulative_.resize(weights.w.size());
  std::partial_sum(weights.w.begin(), weights.w.end(), cumulative_.begin());
  // Close any rounding gap above the last positive component.
  std::size_t last = weights.w.size() - 1;
  while (weights.w[last] == 0.0) --last;
  std::fill(cumulative_.begin() + static_cast<std::ptrdiff_t>(last),
            cumulative_.end(), 1.0);
}

int MixtureSampler::draw_component(SeededStream& rng) const {
  const double u = rng.uniform();
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<int>(it - cumulative_.begin());
}

double MixtureSampler::draw(SeededStream& rng) const {
  const int j = draw_component(rng);
  return gamma_variate(j + 1, theta_, rng);
}

std::vector<double> sample(const OppeModel& model, Theta theta, std::size_t n,
                           SeededStream& rng) {
  if (n == 0) throw DomainError("sample: n must be at least 1");
  const MixtureSampler sampler(model, theta);
  std::vector<double> out(n);
  for (auto& v : out) v = sampler.draw(rng);
  return out;
}

}  // namespace oppe
