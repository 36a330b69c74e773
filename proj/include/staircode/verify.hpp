#pragma once

// Cross-checks of the fast pipeline against the brute-force oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "staircode/betti.hpp"
#include "staircode/core.hpp"

namespace staircode::oracle {

struct VerifyOptions {
  std::size_t lines = 20;
  std::uint64_t seed = 1;
  Mode mode = Mode::kGeneric;
};

struct VerifyReport {
  std::size_t checks = 0;
  std::vector<std::string> mismatches;
  [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

/// Compares, under the given point order:
///   staircases with the oracle grid; graded Betti numbers with the second-difference
///   inversion; both dimension-function routes with component counts at every grid
///   grade; per-staircase inclusion-exclusion of corners; index reports with a
///   linear scan; line barcodes with a one-parameter sweep; fibered treegram blocks
///   and elder-rule bars with the line barcode.
VerifyReport verify_dataset(const AugmentedMetricSpace& space, const std::vector<PointIndex>& point_sequence,
                            const VerifyOptions& options = {});

/// Same, under the default order.
VerifyReport verify_dataset(const AugmentedMetricSpace& space, const VerifyOptions& options = {});

/// Betti values at most 1 and pairwise disjoint supports.
bool betti_supports_disjoint(const GradedBetti& betti);

}  // namespace staircode::oracle
