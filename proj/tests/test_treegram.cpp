#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "staircode/datasets.hpp"
#include "staircode/oracle.hpp"
#include "staircode/treegram.hpp"

using namespace staircode;

namespace {

using Blocks = std::vector<std::vector<PointIndex>>;

Mst prefix_tree(const AugmentedMetricSpace& s, const PointOrder& order, std::size_t k) {
  Mst t;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> w;
    for (PointIndex u : t.vertices()) w.push_back(s.distance(u, order.at(i)));
    t.insert(order.at(i), w);
  }
  return t;
}

std::multiset<std::pair<double, double>> as_multiset(const std::vector<TreegramBar>& bars) {
  std::multiset<std::pair<double, double>> out;
  for (const auto& b : bars) out.insert({b.birth, b.death.is_infinite() ? -1.0 : b.death.value()});
  return out;
}

}  // namespace

TEST_CASE("trivial treegrams") {
  const std::vector<PointIndex> one{4};
  const Treegram t1 = build_treegram(one, {});
  CHECK(t1.leaves().size() == 1);
  CHECK(t1.merges().empty());

  const std::vector<PointIndex> two{0, 1};
  const std::vector<WeightedEdge> e{{0, 1, 5}};
  const Treegram t2 = build_treegram(two, e);
  REQUIRE(t2.merges().size() == 1);
  CHECK(t2.merges()[0].height == 5);
  CHECK(t2.blocks_at(4.9) == Blocks{{0}, {1}});
  CHECK(t2.blocks_at(5) == Blocks{{0, 1}});
}

TEST_CASE("build_treegram input checks") {
  const std::vector<PointIndex> v{0, 1, 2};
  const std::vector<WeightedEdge> unsorted{{0, 1, 4}, {1, 2, 3}};
  CHECK_THROWS_AS(build_treegram(v, unsorted), InvalidInput);
  const std::vector<WeightedEdge> stranger{{0, 5, 1}};
  CHECK_THROWS_AS(build_treegram(v, stranger), InvalidInput);
  const std::vector<WeightedEdge> cycle{{0, 1, 1}, {1, 2, 2}, {0, 2, 3}};
  CHECK(build_treegram(v, cycle).merges().size() == 2);
}

TEST_CASE("treegram validation") {
  CHECK_THROWS_AS(Treegram({{0, 0}, {0, 1}}, {}), InvalidInput);
  CHECK_THROWS_AS(Treegram({{0, 0}, {1, 0}, {2, 0}}, {{2, 0, 1}, {1, 1, 2}}), InvalidInput);
  CHECK_THROWS_AS(Treegram({{0, 0}, {1, 3}}, {{2, 0, 1}}), InvalidInput);
  CHECK_THROWS_AS(Treegram({{0, 0}, {1, 0}}, {{1, 0, 1}, {2, 1, 0}}), InvalidInput);
  CHECK_THROWS_AS(Treegram({{0, 0}}, {{1, 0, 3}}), InvalidInput);
}

TEST_CASE("prefix of the four-point example merges at 3 then 4") {
  const auto s = datasets::d45();
  const Mst t = prefix_tree(s, PointOrder({0, 1, 2, 3}), 3);
  const Treegram g = build_treegram(t.vertices(), t.sorted_edges());
  REQUIRE(g.merges().size() == 2);
  CHECK(g.merges()[0].height == 3);
  CHECK(g.merges()[1].height == 4);
  CHECK(g.blocks_at(3.5) == Blocks{{0, 1}, {2}});
  CHECK(g.blocks_at(4) == Blocks{{0, 1, 2}});
}

TEST_CASE("decorating a pair") {
  const Treegram t({{0, 0}, {1, 0}}, {{2, 1, 0}});
  const auto d = decorate(t, PointOrder({0, 1}));
  REQUIRE(d.decorations.size() == 1);
  CHECK(d.decorations[0] == MergeDecoration{1, 0});
  const auto r = decorate(t, PointOrder({1, 0}));
  CHECK(r.decorations[0] == MergeDecoration{0, 1});
}

TEST_CASE("five-point decorated treegram") {
  // Spanning tree x2-x4 (1), x3-x5 (2), x1-x2 (3), x1-x3 (4); lower index is older.
  const std::vector<PointIndex> v{0, 1, 2, 3, 4};
  const std::vector<WeightedEdge> e{{1, 3, 1}, {2, 4, 2}, {0, 1, 3}, {0, 2, 4}};
  const auto d = decorate(build_treegram(v, e), PointOrder({0, 1, 2, 3, 4}));
  const std::vector<MergeDecoration> expected{{3, 1}, {4, 2}, {1, 0}, {2, 0}};
  CHECK(d.decorations == expected);
}

TEST_CASE("full four-point treegram replays the envelopes at the last filter value") {
  const auto s = datasets::d45();
  const PointOrder order({0, 1, 2, 3});
  const Mst t = prefix_tree(s, order, 4);
  const auto d = decorate(build_treegram(t.vertices(), t.sorted_edges()), order);
  REQUIRE(d.decorations.size() == 3);
  CHECK(d.tree.merges()[0].height == 1.5);
  CHECK(d.decorations[0] == MergeDecoration{3, 1});
  CHECK(d.tree.merges()[1].height == 2.5);
  CHECK(d.decorations[1] == MergeDecoration{2, 1});
  CHECK(d.tree.merges()[2].height == 3);
  CHECK(d.decorations[2] == MergeDecoration{1, 0});
}

TEST_CASE("elder-rule barcodes") {
  SUBCASE("two leaves") {
    const Treegram t({{0, 0}, {1, 1}}, {{5, 0, 1}});
    const auto bars = elder_rule_barcode(t, PointOrder({0, 1}));
    REQUIRE(bars.size() == 2);
    CHECK(bars[0] == TreegramBar{0, 0, Extended::infinity()});
    CHECK(bars[1] == TreegramBar{1, 1, Extended(5)});
  }
  SUBCASE("treegram with a late-born leaf") {
    // x1 alone at S1 = 1; x2, x3 born and joined at S2 = 2; x4 born at 2.5; all one block from S3 = 3.
    const Treegram t({{0, 1}, {1, 2}, {2, 2}, {3, 2.5}}, {{2, 1, 2}, {3, 0, 1}, {3, 0, 3}});
    CHECK(t.blocks_at(0.5).empty());
    CHECK(t.blocks_at(1) == Blocks{{0}});
    CHECK(t.blocks_at(2) == Blocks{{0}, {1, 2}});
    CHECK(t.blocks_at(3) == Blocks{{0, 1, 2, 3}});
    const auto bars = elder_rule_barcode(t, PointOrder({0, 1, 2, 3}));
    REQUIRE(bars.size() == 4);
    CHECK(bars[0].death.is_infinite());
    CHECK(bars[1] == TreegramBar{1, 2, Extended(3)});
    CHECK(bars[2] == TreegramBar{2, 2, Extended(2)});
    CHECK(bars[3] == TreegramBar{3, 2.5, Extended(3)});
  }
}

TEST_CASE("swapping equal-birth leaves leaves the barcode unchanged") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Leaf> leaves;
    for (PointIndex i = 0; i < 6; ++i) leaves.push_back({i, static_cast<double>(rng() % 3)});
    // Random merges at increasing heights above every birth.
    std::vector<PointIndex> ids{0, 1, 2, 3, 4, 5};
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<MergeEvent> merges;
    double h = 2.0;
    for (std::size_t k = 1; k < ids.size(); ++k) {
      h += static_cast<double>(rng() % 2);
      merges.push_back({h, ids[rng() % k], ids[k]});
    }
    const Treegram t(leaves, merges);
    std::vector<PointIndex> seq{0, 1, 2, 3, 4, 5};
    std::sort(seq.begin(), seq.end(), [&](PointIndex a, PointIndex b) {
      return std::pair(leaves[a].birth, a) < std::pair(leaves[b].birth, b);
    });
    const auto reference = as_multiset(elder_rule_barcode(t, PointOrder(seq)));
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      if (leaves[seq[k]].birth != leaves[seq[k + 1]].birth) continue;
      auto swapped = seq;
      std::swap(swapped[k], swapped[k + 1]);
      CHECK(as_multiset(elder_rule_barcode(t, PointOrder(swapped))) == reference);
    }
  }
}

TEST_CASE("prefix treegram blocks equal chain classes from the oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto s = trial % 2 ? datasets::random_matrix(n, rng) : datasets::random_euclidean(n, 2, rng);
    const oracle::GradeGrid grid(s);
    const PointOrder order(std::vector<PointIndex>(grid.sequence().begin(), grid.sequence().end()));
    std::vector<double> heights{0.0};
    for (double d : s.lower_triangle()) heights.push_back(d);
    std::sort(heights.begin(), heights.end());
    const std::size_t m = heights.size();
    for (std::size_t i = 0; i + 1 < m; ++i) heights.push_back(0.5 * (heights[i] + heights[i + 1]));
    heights.push_back(heights[m - 1] + 1);
    for (std::size_t k = 1; k <= n; ++k) {
      const Mst t = prefix_tree(s, order, k);
      const Treegram g = build_treegram(t.vertices(), t.sorted_edges());
      const double sigma = s.filter(order.at(k - 1));
      for (double h : heights) CHECK(g.blocks_at(h) == grid.blocks_at({sigma, h}));
    }
  }
}
