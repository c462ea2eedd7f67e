#pragma once

#include <cstddef>
#include <vector>

#include "oppe/model.hpp"
#include "oppe/rng.hpp"

namespace oppe {

/// Exact Gamma(shape, rate) draw for integer shape >= 1, as a sum of
/// `shape` independent exponentials.
double gamma_variate(int shape, double rate, SeededStream& rng);

/// Draws from an OPPE model through its gamma-mixture form. A uniform
/// picks component j with cumulative-weight inversion, then the draw is
/// Gamma(j + 1, theta).
class MixtureSampler {
 public:
  MixtureSampler(const OppeModel& model, Theta theta);

  /// Index j of the selected Gamma(j + 1, theta) component.
  int draw_component(SeededStream& rng) const;
  double draw(SeededStream& rng) const;

  double theta() const noexcept { return theta_; }
  const std::vector<double>& cumulative() const noexcept { return cumulative_; }

 private:
  double theta_;
  std::vector<double> cumulative_;
};

/// n i.i.d. draws. Throws DomainError for n == 0.
std::vector<double> sample(const OppeModel& model, Theta theta, std::size_t n,
                           SeededStream& rng);

}  // namespace oppe
