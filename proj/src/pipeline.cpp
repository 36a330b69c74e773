#include "staircode/pipeline.hpp"

#include "staircode/mst.hpp"
#include "staircode/treegram.hpp"

namespace staircode {

Staircode compute_staircode(const AugmentedMetricSpace& space, Mode mode) {
  return compute_staircode(space, GenericOrdering(space), mode);
}

Staircode compute_staircode_ordered(const AugmentedMetricSpace& space,
                                    std::vector<PointIndex> point_sequence, Mode mode) {
  return compute_staircode(space, GenericOrdering(space, std::move(point_sequence)), mode);
}

Staircode compute_staircode(const AugmentedMetricSpace& space, const GenericOrdering& ordering,
                            Mode mode) {
  if (mode == Mode::kEuclidean && !space.has_coordinates()) {
    throw InvalidInput("euclidean mode requires point coordinates");
  }
  const PointOrder& order = ordering.points();
  const std::size_t n = space.size();
  if (order.size() != n) throw InvalidInput("ordering does not match the space");

  std::vector<std::vector<Step>> steps(n);
  std::vector<std::vector<ConquerorRun>> runs(n);
  Mst mst;
  std::vector<double> weights;

  for (std::size_t i = 0; i < n; ++i) {
    const PointIndex p = order.at(i);
    const double sigma = space.filter(p);
    const auto rank = static_cast<std::uint32_t>(i + 1);
    if (mode == Mode::kEuclidean) {
      mst.insert_euclidean(p, space);
    } else {
      weights.clear();
      for (PointIndex v : mst.vertices()) weights.push_back(space.distance(p, v));
      mst.insert(p, weights);
    }
    if (i == 0) continue;

    // Every point of the prefix except the eldest is conquered exactly once.
    const auto decorated = decorate(build_treegram(mst.vertices(), mst.sorted_edges()), order);
    const auto merges = decorated.tree.merges();
    for (std::size_t k = 0; k < merges.size(); ++k) {
      const auto [x, conqueror] = decorated.decorations[k];
      const std::uint64_t u_rank = ordering.d_rank(merges[k].a, merges[k].b);
      auto& s = steps[x];
      if (s.empty() || s.back().u_rank != u_rank) {
        s.push_back({sigma, Extended(merges[k].height), rank, u_rank});
      }
      auto& r = runs[x];
      if (r.empty() || r.back().conqueror != conqueror) r.push_back({sigma, conqueror, rank});
    }
  }

  std::vector<DecoratedStaircase> entries;
  entries.reserve(n);
  const PointIndex eldest = order.first();
  for (PointIndex x = 0; x < n; ++x) {
    if (x == eldest) {
      const double f = space.filter(x);
      entries.push_back({Staircase::quadrant(x, f, 1), {{f, x, 1}}});
    } else {
      entries.push_back({Staircase(x, std::move(steps[x])), std::move(runs[x])});
    }
  }
  return Staircode(space.ids(), order, std::move(entries),
                   StaircodeMeta{mode, ordering.point_ties(), ordering.distance_ties()});
}

}  // namespace staircode
