#include "staircode/treegram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "staircode/union_find.hpp"

namespace staircode {

namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// Dense map from point ids to leaf slots.
std::vector<std::uint32_t> slot_map(std::span<const Leaf> leaves) {
  PointIndex max_id = 0;
  for (const auto& l : leaves) max_id = std::max(max_id, l.id);
  std::vector<std::uint32_t> slot(leaves.empty() ? 0 : static_cast<std::size_t>(max_id) + 1, kAbsent);
  for (std::uint32_t k = 0; k < leaves.size(); ++k) {
    if (slot[leaves[k].id] != kAbsent) throw InvalidInput("duplicate treegram leaf");
    slot[leaves[k].id] = k;
  }
  return slot;
}

std::uint32_t lookup(const std::vector<std::uint32_t>& slot, PointIndex id) {
  if (id >= slot.size() || slot[id] == kAbsent) throw InvalidInput("merge refers to an unknown leaf");
  return slot[id];
}

}  // namespace

Treegram::Treegram(std::vector<Leaf> leaves, std::vector<MergeEvent> merges)
    : leaves_(std::move(leaves)), merges_(std::move(merges)) {
  const auto slot = slot_map(leaves_);
  UnionFind uf(leaves_.size());
  for (std::size_t k = 0; k < merges_.size(); ++k) {
    const MergeEvent& m = merges_[k];
    if (std::isnan(m.height)) throw InvalidInput("merge height is NaN");
    if (k > 0 && m.height < merges_[k - 1].height) {
      throw InvalidInput("merge heights must be non-decreasing");
    }
    const auto a = lookup(slot, m.a);
    const auto b = lookup(slot, m.b);
    if (leaves_[a].birth > m.height || leaves_[b].birth > m.height) {
      throw InvalidInput("merge occurs before a leaf is born");
    }
    bool merged = false;
    uf.unite(a, b, &merged);
    if (!merged) throw InvalidInput("merge joins a block with itself");
  }
}

std::vector<std::vector<PointIndex>> Treegram::blocks_at(double h) const {
  const auto slot = slot_map(leaves_);
  UnionFind uf(leaves_.size());
  for (const auto& m : merges_) {
    if (m.height > h) break;
    uf.unite(slot[m.a], slot[m.b]);
  }
  std::vector<std::vector<PointIndex>> by_root(leaves_.size());
  for (std::uint32_t k = 0; k < leaves_.size(); ++k) {
    if (leaves_[k].birth <= h) by_root[uf.find(k)].push_back(leaves_[k].id);
  }
  std::vector<std::vector<PointIndex>> out;
  for (auto& block : by_root) {
    if (block.empty()) continue;
    std::sort(block.begin(), block.end());
    out.push_back(std::move(block));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Treegram build_treegram(std::span<const PointIndex> vertices, std::span<const WeightedEdge> sorted_edges) {
  std::vector<Leaf> leaves;
  leaves.reserve(vertices.size());
  for (PointIndex v : vertices) leaves.push_back({v, 0.0});
  const auto slot = slot_map(leaves);
  UnionFind uf(leaves.size());
  std::vector<MergeEvent> merges;
  merges.reserve(vertices.empty() ? 0 : vertices.size() - 1);
  for (std::size_t k = 0; k < sorted_edges.size(); ++k) {
    const WeightedEdge& e = sorted_edges[k];
    if (k > 0 && edge_less(e, sorted_edges[k - 1])) throw InvalidInput("treegram edges are not sorted");
    bool merged = false;
    uf.unite(lookup(slot, e.a), lookup(slot, e.b), &merged);
    if (merged) merges.push_back({e.weight, e.a, e.b});
  }
  return Treegram(std::move(leaves), std::move(merges));
}

DecoratedTreegram decorate(const Treegram& t, const PointOrder& order) {
  const auto leaves = t.leaves();
  const auto slot = slot_map(leaves);
  for (const auto& l : leaves) {
    if (l.id >= order.size()) throw InvalidInput("treegram leaf missing from the point order");
  }
  UnionFind uf(leaves.size());
  std::vector<PointIndex> eldest(leaves.size());
  for (std::uint32_t k = 0; k < leaves.size(); ++k) eldest[k] = leaves[k].id;

  DecoratedTreegram out{t, {}};
  out.decorations.reserve(t.merges().size());
  for (const auto& m : t.merges()) {
    const auto ra = uf.find(slot[m.a]);
    const auto rb = uf.find(slot[m.b]);
    PointIndex older = eldest[ra];
    PointIndex younger = eldest[rb];
    if (order.before(younger, older)) std::swap(older, younger);
    out.decorations.push_back({younger, older});
    eldest[uf.unite(ra, rb)] = older;
  }
  return out;
}

std::vector<TreegramBar> elder_rule_barcode(const Treegram& t, const PointOrder& order) {
  const auto decorated = decorate(t, order);
  const auto leaves = t.leaves();
  const auto slot = slot_map(leaves);
  std::vector<TreegramBar> bars;
  bars.reserve(leaves.size());
  for (const auto& l : leaves) bars.push_back({l.id, l.birth, Extended::infinity()});
  const auto merges = t.merges();
  for (std::size_t k = 0; k < merges.size(); ++k) {
    bars[slot[decorated.decorations[k].conquered]].death = Extended(merges[k].height);
  }
  return bars;
}

}  // namespace staircode
