#pragma once

// Fibered queries: restrict a staircode to a line of positive slope.

#include <cstddef>
#include <optional>
#include <vector>

#include "staircode/core.hpp"
#include "staircode/treegram.hpp"

namespace staircode {

/// Where a line meets a staircase. The bar is [entry, exit), empty when exit <= entry.
struct Crossing {
  double entry = 0.0;
  Extended exit;
  /// Step of the upper envelope through which the line leaves (undefined for a quadrant).
  std::size_t exit_step = 0;
  [[nodiscard]] bool empty() const { return !exit.exceeds(entry); }
};

Crossing cross(const Staircase& s, const Line& line);

/// L ∩ I as a bar, or nullopt when the intersection is empty.
std::optional<Bar> intersect(const Staircase& s, const Line& line);

struct IndexOptions {
  /// Answer every query with a scan over all staircases instead of the index.
  bool linear_scan = false;
};

class FiberedQueryIndex {
 public:
  explicit FiberedQueryIndex(Staircode staircode, IndexOptions options = {});

  [[nodiscard]] const Staircode& staircode() const { return staircode_; }
  [[nodiscard]] const IndexOptions& options() const { return options_; }

  /// Owners whose staircase meets the line in a nonempty bar, ascending.
  [[nodiscard]] std::vector<PointIndex> report(const Line& line) const;
  /// Same set, computed by checking every staircase.
  [[nodiscard]] std::vector<PointIndex> report_linear(const Line& line) const;

  /// Total number of hull vertices stored across all nodes.
  [[nodiscard]] std::size_t stored_points() const;

 private:
  struct Layer {
    std::vector<std::uint32_t> hull;  // slots into points_, increasing sigma
  };
  struct Node {
    std::vector<Layer> layers;
  };
  struct TopPoint {
    double sigma = 0.0;
    double u = 0.0;
    PointIndex owner = 0;
  };

  void build_node(std::size_t node, std::size_t lo, std::size_t hi);
  void query_node(std::size_t node, std::size_t lo, std::size_t hi, std::size_t from, double slope,
                  double threshold, std::vector<PointIndex>& out) const;

  Staircode staircode_;
  IndexOptions options_;
  std::vector<PointIndex> quadrants_;  // owners with an infinite envelope
  std::vector<TopPoint> points_;       // finite staircases sorted by birth sigma
  std::vector<Node> tree_;
  double magnitude_ = 0.0;  // largest |sigma| or |u| among points_
};

FiberedQueryIndex build_index(const Staircode& staircode, IndexOptions options = {});

/// Nonempty bars L ∩ I_x, sorted by (birth_t, owner).
std::vector<Bar> query_barcode(const FiberedQueryIndex& index, const Line& line);

struct VerboseBarcode {
  std::vector<Bar> bars;
  std::vector<PointIndex> empty_owners;  // staircases the line misses, ascending
};
VerboseBarcode query_barcode_verbose(const FiberedQueryIndex& index, const Line& line);

/// Fibered treegram over line parameters: leaf x is born where the line enters
/// {sigma >= f(x), eps >= 0}; x merges into the block of its conqueror where the
/// line leaves I_x (at its entry, for staircases the line misses).
Treegram query_treegram(const Staircode& staircode, const Line& line);

}  // namespace staircode
