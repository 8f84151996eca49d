// SPDX-License-Identifier: Apache-2.0

/// \file
/// Randomized invariant checks on cutoff-power instances.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hardy {

struct PropertyOutcome {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// Largest observed deviation, in the property's own units.
  double worst = 0.0;
  std::string first_failure;

  [[nodiscard]] bool passed() const { return checked > 0 && failed == 0; }
};

/// Multilinearity, dilation covariance, positivity, determinism and the
/// Lebesgue bound on `instances` random instances drawn from `seed`.
std::vector<PropertyOutcome> run_property_suite(std::size_t instances = 50, std::uint64_t seed = 20240601);

}  // namespace hardy
