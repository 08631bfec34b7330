#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "lcmv/mvss.hpp"

namespace lcmv {

struct RandomArrangementOptions {
  std::size_t min_vars = 2;
  std::size_t max_vars = 6;
  std::size_t min_components = 2;
  std::size_t max_components = 4;
  /// Components are drawn pairwise incomparable unless this is false.
  bool incomparable = true;
  /// Chance that one component is replaced by a copy of another.
  double duplicate_probability = 0.0;
  Field field = Field::rationals();
};

Arrangement random_arrangement(std::mt19937_64& rng, const RandomArrangementOptions& options = {});

/// Random linear arrangement with small integer coefficients.
Arrangement random_linear_arrangement(std::mt19937_64& rng, const RandomArrangementOptions& options = {});

}  // namespace lcmv
