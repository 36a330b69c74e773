#include "staircode/mst.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace staircode {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

auto edge_key(const WeightedEdge& e) {
  return std::make_tuple(e.weight, std::min(e.a, e.b), std::max(e.a, e.b));
}

}  // namespace

bool edge_less(const WeightedEdge& x, const WeightedEdge& y) { return edge_key(x) < edge_key(y); }

double Mst::total_weight() const {
  double sum = 0.0;
  for (const auto& e : edges_) sum += e.weight;
  return sum;
}

bool Mst::contains_vertex(PointIndex v) const { return v < local_.size() && local_[v] != kNone; }

void Mst::register_vertex(PointIndex v) {
  if (contains_vertex(v)) throw InvalidInput("vertex already present in the spanning tree");
  if (v >= local_.size()) local_.resize(static_cast<std::size_t>(v) + 1, kNone);
  local_[v] = static_cast<std::uint32_t>(vertices_.size());
  vertices_.push_back(v);
}

// Cycle-property repair. The tree is rooted at its first vertex and processed
// children-first. heaviest[u] is the heaviest edge on the path from u to the new
// vertex in the spanning tree built so far for u's processed subtree. Joining a
// child subtree closes one cycle through the new vertex; its heaviest edge goes.
Mst::Repair Mst::repair(PointIndex v, std::span<const double> weights) const {
  const std::size_t m = vertices_.size();
  Repair out;
  out.evicted.assign(edges_.size(), false);
  if (m == 0) return out;

  std::vector<std::uint32_t> degree(m + 1, 0);
  for (const auto& e : edges_) {
    ++degree[local_[e.a] + 1];
    ++degree[local_[e.b] + 1];
  }
  std::partial_sum(degree.begin(), degree.end(), degree.begin());
  std::vector<std::uint32_t> adj(2 * edges_.size());
  {
    std::vector<std::uint32_t> fill(degree.begin(), degree.end() - 1);
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      adj[fill[local_[edges_[i].a]]++] = i;
      adj[fill[local_[edges_[i].b]]++] = i;
    }
  }

  std::vector<std::uint32_t> parent(m, kNone);
  std::vector<std::uint32_t> parent_edge(m, kNone);
  std::vector<std::uint32_t> preorder;
  preorder.reserve(m);
  std::vector<std::uint32_t> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    preorder.push_back(u);
    for (std::uint32_t k = degree[u]; k < degree[u + 1]; ++k) {
      const auto& e = edges_[adj[k]];
      const std::uint32_t w = local_[e.a] == u ? local_[e.b] : local_[e.a];
      if (parent[w] != kNone) continue;
      parent[w] = u;
      parent_edge[w] = adj[k];
      stack.push_back(w);
    }
  }
  if (preorder.size() != m) throw InvariantViolation("spanning tree is disconnected");

  // Edge ids: tree edges 0..m-2, then the star edge to local vertex u at m-1+u.
  const std::size_t tree_count = edges_.size();
  const auto edge = [&](std::uint32_t id) {
    return id < tree_count ? edges_[id] : WeightedEdge{v, vertices_[id - tree_count], weights[id - tree_count]};
  };
  const auto heavier = [&](std::uint32_t x, std::uint32_t y) { return edge_less(edge(x), edge(y)) ? y : x; };

  std::vector<bool> removed(tree_count + m, false);
  std::vector<std::uint32_t> heaviest(m);
  for (std::uint32_t u = 0; u < m; ++u) heaviest[u] = static_cast<std::uint32_t>(tree_count + u);

  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    const std::uint32_t c = *it;
    if (c == 0) continue;
    const std::uint32_t p = parent[c];
    const std::uint32_t link = parent_edge[c];
    const std::uint32_t drop = heavier(heavier(heaviest[c], heaviest[p]), link);
    removed[drop] = true;
    if (drop == heaviest[p]) heaviest[p] = heavier(link, heaviest[c]);
  }
  for (std::size_t i = 0; i < tree_count; ++i) out.evicted[i] = removed[i];
  for (std::uint32_t u = 0; u < m; ++u) {
    if (!removed[tree_count + u]) out.added.push_back(edge(static_cast<std::uint32_t>(tree_count + u)));
  }
  return out;
}

InsertStats Mst::insert(PointIndex v, std::span<const double> weights_to_existing) {
  if (weights_to_existing.size() != vertices_.size()) {
    throw InvalidInput("expected " + std::to_string(vertices_.size()) + " weights, got " +
                       std::to_string(weights_to_existing.size()));
  }
  if (contains_vertex(v)) throw InvalidInput("vertex already present in the spanning tree");
  Repair r = repair(v, weights_to_existing);
  std::vector<WeightedEdge> next;
  next.reserve(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!r.evicted[i]) next.push_back(edges_[i]);
  }
  next.insert(next.end(), r.added.begin(), r.added.end());
  std::sort(next.begin(), next.end(), edge_less);
  InsertStats stats{r.added.size(), static_cast<std::size_t>(
                                        std::count(r.evicted.begin(), r.evicted.end(), true))};
  edges_ = std::move(next);
  register_vertex(v);
  return stats;
}

InsertStats Mst::insert_euclidean(PointIndex v, const AugmentedMetricSpace& space) {
  if (!space.has_coordinates()) throw InvalidInput("euclidean insertion requires coordinates");
  if (contains_vertex(v)) throw InvalidInput("vertex already present in the spanning tree");
  std::vector<double> weights(vertices_.size());
  for (std::size_t k = 0; k < vertices_.size(); ++k) weights[k] = space.distance(v, vertices_[k]);
  Repair r = repair(v, weights);
  std::sort(r.added.begin(), r.added.end(), edge_less);
  std::vector<WeightedEdge> next;
  next.reserve(vertices_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t evicted = 0;
  while (i < edges_.size() || j < r.added.size()) {
    if (i < edges_.size() && r.evicted[i]) {
      ++i;
      ++evicted;
      continue;
    }
    if (j == r.added.size() || (i < edges_.size() && edge_less(edges_[i], r.added[j]))) {
      next.push_back(edges_[i++]);
    } else {
      next.push_back(r.added[j++]);
    }
  }
  InsertStats stats{r.added.size(), evicted};
  edges_ = std::move(next);
  register_vertex(v);
  return stats;
}

Mst mst_insert(const Mst& previous, PointIndex v, std::span<const double> weights_to_existing) {
  Mst next = previous;
  next.insert(v, weights_to_existing);
  return next;
}

Mst mst_insert_euclidean(const Mst& previous, PointIndex v, const AugmentedMetricSpace& space) {
  Mst next = previous;
  next.insert_euclidean(v, space);
  return next;
}

}  // namespace staircode
