#pragma once

// Staircode computation: insert points in filter order, keep the spanning tree
// of every prefix, and read each point's envelope off the decorated treegrams.

#include <vector>

#include "staircode/core.hpp"

namespace staircode {

/// Decorated staircode under the default tie-break order.
/// Euclidean mode requires coordinates and uses the merging spanning-tree update.
Staircode compute_staircode(const AugmentedMetricSpace& space, Mode mode = Mode::kGeneric);

/// Same, under an explicit point order compatible with the filter.
Staircode compute_staircode_ordered(const AugmentedMetricSpace& space,
                                    std::vector<PointIndex> point_sequence,
                                    Mode mode = Mode::kGeneric);

Staircode compute_staircode(const AugmentedMetricSpace& space, const GenericOrdering& ordering,
                            Mode mode = Mode::kGeneric);

}  // namespace staircode
