#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "staircode/core.hpp"

namespace staircode {

struct GradeEntry {
  Grade grade;  // real coordinates of the rank grade
  std::int64_t count = 0;
  friend bool operator==(const GradeEntry&, const GradeEntry&) = default;
};

/// Sparse function on rank grades. Zero entries are never stored.
using RankMap = std::map<RankGrade, GradeEntry>;

void add_to(RankMap& map, const RankGrade& rank, const Grade& grade, std::int64_t delta);

/// Sums counts per real grade (several rank grades can share one under ties).
std::map<Grade, std::int64_t> to_real(const RankMap& map);

/// Corner counts per type over every staircase of a staircode.
struct FeatureFunctions {
  std::array<RankMap, 3> gamma;
};

struct GradedBetti {
  std::array<RankMap, 3> beta;
  /// True when the point or pair order broke ties, so real grades may collide.
  bool tie_broken = false;
};

FeatureFunctions feature_functions(const Staircode& code);

/// b0 = g0, b1 = max(g1 - g2, 0), b2 = max(g2 - g1, 0), gradewise.
GradedBetti graded_betti(const FeatureFunctions& gamma, bool tie_broken = false);
GradedBetti graded_betti(const Staircode& code);

/// Number of components at `a`, from the alternating Betti sum over grades <= a.
std::int64_t dimension_function(const GradedBetti& betti, const Grade& a);
/// Number of components at `a`, counted as staircases containing `a`.
std::int64_t dimension_function(const Staircode& code, const Grade& a);

/// d(x, z) <= max(d(x, y), d(y, z)) for all triples, up to a 1e-12 relative slack.
bool check_ultrametric(const AugmentedMetricSpace& space);

struct ConquerorCheck {
  bool constant = true;
  /// Per point: a conqueror valid at every sigma, when one exists. The eldest maps to itself.
  std::vector<std::optional<PointIndex>> conqueror;
  /// First point found without a constant conqueror, and the sigma where its
  /// candidate set became empty.
  std::optional<PointIndex> witness;
  std::optional<double> witness_sigma;
};

/// For each point, intersects over sigma the set of older points that reach it at
/// the lowest chain scale; true iff every intersection is nonempty.
ConquerorCheck check_constant_conqueror(const AugmentedMetricSpace& space, const PointOrder& order);

enum class Decomposability { kConsistent, kNotIntervalDecomposable };
std::string to_string(Decomposability d);

struct DecomposabilityReport {
  Decomposability verdict = Decomposability::kConsistent;
  /// Rank grades where the module's Betti numbers differ from those of the
  /// direct sum of staircase interval modules.
  std::vector<RankGrade> mismatches;
};

DecomposabilityReport decomposability_necessary_test(const Staircode& code);

}  // namespace staircode
