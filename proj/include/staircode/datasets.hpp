#pragma once

// Reference and synthetic datasets.

#include <cstdint>
#include <random>
#include <vector>

#include "staircode/core.hpp"

namespace staircode::datasets {

/// Triangle with sides 3, 4, 5 plus a point near the right angle:
/// d12=3, d23=4, d13=5, d24=1.5, d34=2.5, d14=3.6; ids x1..x4.
AugmentedMetricSpace d45(const std::vector<double>& filter = {1, 2, 3, 4});

/// Planar realization of the same configuration (d14 = sqrt(11.25) instead of 3.6).
AugmentedMetricSpace d45_planar(const std::vector<double>& filter = {1, 2, 3, 4});

/// Uniform points in the unit cube with uniform filter values in [0, 1).
AugmentedMetricSpace random_euclidean(std::size_t n, std::size_t dim, std::mt19937_64& rng);

/// Uniform dissimilarities in [1, 10) (no triangle inequality) and uniform filter values.
AugmentedMetricSpace random_matrix(std::size_t n, std::mt19937_64& rng);

/// Ultrametric from random agglomeration at increasing heights; uniform filter values.
AugmentedMetricSpace random_ultrametric(std::size_t n, std::mt19937_64& rng);

/// A random line of positive slope through the region spanned by the data.
Line random_line(const AugmentedMetricSpace& space, std::mt19937_64& rng);

}  // namespace staircode::datasets
