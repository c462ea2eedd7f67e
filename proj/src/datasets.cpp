#include "oppe/datasets.hpp"

#include <array>
#include <string>

#include "oppe/error.hpp"

namespace oppe {

namespace {

constexpr std::array<double, 72> kGuineaPigs = {
    0.1,  0.33, 0.44, 0.56, 0.59, 0.72, 0.74, 0.77, 0.92, 0.93, 0.96, 1,
    1,    1.02, 1.05, 1.07, 1.07, 1.08, 1.08, 1.08, 1.09, 1.12, 1.13, 1.15,
    1.16, 1.2,  1.21, 1.22, 1.22, 1.24, 1.3,  1.34, 1.36, 1.39, 1.44, 1.46,
    1.53, 1.59, 1.6,  1.63, 1.63, 1.68, 1.71, 1.72, 1.76, 1.83, 1.95, 1.96,
    1.97, 2.02, 2.13, 2.15, 2.16, 2.22, 2.3,  2.31, 2.4,  2.45, 2.51, 2.53,
    2.54, 2.54, 2.78, 2.93, 3.27, 3.42, 3.47, 3.61, 4.02, 4.32, 4.58, 5.55};

constexpr std::array<double, 30> kAirConditioning = {
    23, 261, 87, 7,  120, 14, 62, 47, 225, 71, 246, 21, 42, 20, 5,
    12, 120, 11, 3,  14,  71, 11, 14, 11,  16, 90,  1,  16, 52, 95};

constexpr std::array<std::string_view, 2> kNames = {"guinea_pigs", "aircond"};

}  // namespace

std::span<const std::string_view> dataset_names() { return kNames; }

Dataset scaled(Dataset data, double scale) {
  if (!(scale > 0.0)) throw DomainError("dataset scale must be positive");
  for (auto& v : data.values) v *= scale;
  data.scale *= scale;
  return data;
}

Dataset dataset(std::string_view name, double scale) {
  Dataset data;
  data.name = std::string(name);
  if (name == "guinea_pigs") {
    data.values.assign(kGuineaPigs.begin(), kGuineaPigs.end());
  } else if (name == "aircond") {
    data.values.assign(kAirConditioning.begin(), kAirConditioning.end());
  } else {
    throw LookupError("unknown dataset '" + std::string(name) + "'");
  }
  if (scale == 1.0) return data;
  return scaled(std::move(data), scale);
}

}  // namespace oppe
