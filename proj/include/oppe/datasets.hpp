#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oppe {

struct Dataset {
  std::string name;
  std::vector<double> values;
  /// Multiplier already applied to `values`.
  double scale = 1.0;
};

/// Embedded data: "guinea_pigs" (survival times in days of 72 guinea pigs
/// infected with virulent tubercle bacilli) and "aircond" (30 failure times
/// of an airplane air-conditioning system). Values are multiplied by
/// `scale`. Throws LookupError for unknown names, DomainError for a
/// non-positive scale.
Dataset dataset(std::string_view name, double scale = 1.0);

std::span<const std::string_view> dataset_names();

/// Multiplies every value by `scale` (> 0).
Dataset scaled(Dataset data, double scale);

}  // namespace oppe
