#pragma once

// Single-linkage treegrams: leaves with birth heights, merge events at
// non-decreasing heights, and elder-rule decorations.

#include <cstdint>
#include <span>
#include <vector>

#include "staircode/core.hpp"
#include "staircode/mst.hpp"

namespace staircode {

struct Leaf {
  PointIndex id = 0;
  double birth = 0.0;
  friend bool operator==(const Leaf&, const Leaf&) = default;
};

/// Two blocks joined at `height`; `a` and `b` are members of the two blocks.
struct MergeEvent {
  double height = 0.0;
  PointIndex a = 0;
  PointIndex b = 0;
  friend bool operator==(const MergeEvent&, const MergeEvent&) = default;
};

class Treegram {
 public:
  Treegram() = default;
  /// Validates that merge heights are non-decreasing, that each merge joins two
  /// distinct blocks of born leaves, and that leaf ids are distinct.
  Treegram(std::vector<Leaf> leaves, std::vector<MergeEvent> merges);

  [[nodiscard]] std::span<const Leaf> leaves() const { return leaves_; }
  [[nodiscard]] std::span<const MergeEvent> merges() const { return merges_; }

  /// Sub-partition at height h: blocks of the leaves born at or before h, after
  /// every merge with height <= h. Blocks are sorted, and sorted by first element.
  [[nodiscard]] std::vector<std::vector<PointIndex>> blocks_at(double h) const;

  friend bool operator==(const Treegram&, const Treegram&) = default;

 private:
  std::vector<Leaf> leaves_;
  std::vector<MergeEvent> merges_;
};

struct MergeDecoration {
  PointIndex conquered = 0;  // eldest of the younger block; its bar ends here
  PointIndex eldest = 0;     // eldest of the merged block, i.e. the conqueror
  friend bool operator==(const MergeDecoration&, const MergeDecoration&) = default;
};

struct DecoratedTreegram {
  Treegram tree;
  std::vector<MergeDecoration> decorations;  // parallel to tree.merges()
};

/// Union-find sweep over edges sorted by edge_less. All leaves are born at 0.
/// Edges that close a cycle are skipped. Throws InvalidInput on unsorted edges
/// or endpoints outside `vertices`.
Treegram build_treegram(std::span<const PointIndex> vertices, std::span<const WeightedEdge> sorted_edges);

/// Elder-rule decoration: at each merge the block whose eldest comes later in
/// `order` is conquered by the eldest of the other block.
DecoratedTreegram decorate(const Treegram& t, const PointOrder& order);

struct TreegramBar {
  PointIndex owner = 0;
  double birth = 0.0;
  Extended death;
  friend bool operator==(const TreegramBar&, const TreegramBar&) = default;
};

/// One bar [birth, death) per leaf; the eldest leaf of each final block never dies.
/// Sorted by leaf order in `t`.
std::vector<TreegramBar> elder_rule_barcode(const Treegram& t, const PointOrder& order);

}  // namespace staircode
