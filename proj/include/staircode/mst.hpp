#pragma once

// Incremental minimum spanning tree of the complete graph on a growing prefix
// of points. Each insertion adds a vertex with edges to every existing vertex
// and repairs the tree in time linear in its size.

#include <cstddef>
#include <span>
#include <vector>

#include "staircode/core.hpp"

namespace staircode {

struct WeightedEdge {
  PointIndex a = 0;
  PointIndex b = 0;
  double weight = 0.0;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Strict total order on edges: weight, then the (min, max) endpoint pair.
bool edge_less(const WeightedEdge& x, const WeightedEdge& y);

struct InsertStats {
  std::size_t new_edges = 0;      // edges incident to the inserted vertex
  std::size_t evicted_edges = 0;  // edges of the previous tree dropped
};

class Mst {
 public:
  Mst() = default;

  /// Vertices in insertion order.
  [[nodiscard]] std::span<const PointIndex> vertices() const { return vertices_; }
  /// Tree edges, sorted by edge_less.
  [[nodiscard]] std::span<const WeightedEdge> sorted_edges() const { return edges_; }
  [[nodiscard]] double total_weight() const;
  [[nodiscard]] bool contains_vertex(PointIndex v) const;

  /// Inserts `v`; `weights_to_existing[k]` is the weight to vertices()[k].
  /// Re-sorts the full edge list afterwards.
  InsertStats insert(PointIndex v, std::span<const double> weights_to_existing);

  /// Same tree as insert(), weights taken from the coordinates of `space`; the
  /// sorted edge list is maintained by merging the new edges into the old list.
  InsertStats insert_euclidean(PointIndex v, const AugmentedMetricSpace& space);

 private:
  struct Repair {
    std::vector<WeightedEdge> added;
    std::vector<bool> evicted;  // parallel to edges_
  };
  Repair repair(PointIndex v, std::span<const double> weights) const;
  void register_vertex(PointIndex v);

  std::vector<PointIndex> vertices_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::uint32_t> local_;  // PointIndex -> position in vertices_, or npos
};

/// Functional form of Mst::insert.
Mst mst_insert(const Mst& previous, PointIndex v, std::span<const double> weights_to_existing);
/// Functional form of Mst::insert_euclidean. Throws InvalidInput without coordinates.
Mst mst_insert_euclidean(const Mst& previous, PointIndex v, const AugmentedMetricSpace& space);

}  // namespace staircode
