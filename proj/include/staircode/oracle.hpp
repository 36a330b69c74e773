#pragma once

// Brute-force reference computations, straight from the definitions. Meant for
// small inputs (n up to about a dozen). Shares only the vocabulary types with
// the main library: orders, union-find and sorting are reimplemented here.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "staircode/betti.hpp"
#include "staircode/core.hpp"

namespace staircode::oracle {

/// Component labels at every cell of the rank grid: sigma rank 1..n (prefix of
/// the point order) by eps rank 0..n(n-1)/2 (edges of rank <= eps rank present).
class GradeGrid {
 public:
  /// Points ordered by (f, index).
  explicit GradeGrid(const AugmentedMetricSpace& space);
  /// Explicit point order; must be compatible with f.
  GradeGrid(const AugmentedMetricSpace& space, std::vector<PointIndex> point_sequence);

  [[nodiscard]] std::size_t point_count() const { return n_; }
  [[nodiscard]] std::uint64_t pair_count() const { return pairs_.size(); }
  [[nodiscard]] PointIndex point_at(std::size_t position) const { return sequence_[position]; }
  [[nodiscard]] std::span<const PointIndex> sequence() const { return sequence_; }
  [[nodiscard]] std::uint32_t position(PointIndex x) const { return position_[x]; }
  [[nodiscard]] double sigma_value(std::uint32_t sigma_rank) const;
  [[nodiscard]] double eps_value(std::uint64_t eps_rank) const;
  /// Endpoints (lower index first) of the pair with the given rank (1-based).
  [[nodiscard]] std::pair<PointIndex, PointIndex> pair(std::uint64_t eps_rank) const;
  [[nodiscard]] Grade real(const RankGrade& r) const {
    return {sigma_value(r.sigma_rank), eps_value(r.eps_rank)};
  }

  /// Position of the eldest member of x's block, or -1 when x is not yet born.
  [[nodiscard]] std::int32_t label(std::uint32_t sigma_rank, std::uint64_t eps_rank, PointIndex x) const;
  /// Number of blocks; zero for sigma_rank 0.
  [[nodiscard]] std::size_t components(std::uint32_t sigma_rank, std::uint64_t eps_rank) const;

  /// Rank cell holding the real grade, or nullopt left of every birth or below eps = 0.
  [[nodiscard]] std::optional<RankGrade> rank_of(const Grade& g) const;
  [[nodiscard]] std::size_t components_at(const Grade& g) const;
  /// Blocks at a real grade, each sorted, in lexicographic order.
  [[nodiscard]] std::vector<std::vector<PointIndex>> blocks_at(const Grade& g) const;

 private:
  void build(const AugmentedMetricSpace& space);

  std::size_t n_ = 0;
  std::vector<PointIndex> sequence_;
  std::vector<std::uint32_t> position_;
  std::vector<double> f_;
  struct PairEntry {
    double d;
    PointIndex lo;
    PointIndex hi;
  };
  std::vector<PairEntry> pairs_;      // sorted by (d, lo, hi)
  std::vector<std::int32_t> labels_;  // [s-1][e][x]
  std::vector<std::uint32_t> counts_; // [s-1][e]
};

/// Staircode read cell by cell from the grid: x owns a cell iff it is the eldest
/// of its block. Conqueror decorations are left empty.
Staircode oracle_staircode(const GradeGrid& grid, const AugmentedMetricSpace& space);

struct EdgeClass {
  PointIndex a = 0;
  PointIndex b = 0;
  RankGrade birth;
  Grade grade;
  bool negative = false;
};

/// Every pair at its birth grade (position of the younger endpoint + 1, pair rank);
/// negative iff adding it lowers the component count there.
std::vector<EdgeClass> classify_edges(const GradeGrid& grid);

/// Betti numbers from the second difference of the component count on the rank grid.
/// Throws InvariantViolation if a difference falls outside {-1, 0, 1}.
GradedBetti oracle_betti(const GradeGrid& grid);

/// Elder-rule barcode of the one-parameter filtration obtained by restricting to
/// the line. Nonempty bars only, sorted by (birth_t, owner).
std::vector<Bar> oracle_line_barcode(const GradeGrid& grid, const AugmentedMetricSpace& space,
                                     const Line& line);

/// Weight of a minimum spanning tree over `vertices`, by exhaustive Kruskal.
double kruskal_weight(const AugmentedMetricSpace& space, std::span<const PointIndex> vertices);

}  // namespace staircode::oracle
