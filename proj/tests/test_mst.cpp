#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "staircode/datasets.hpp"
#include "staircode/mst.hpp"
#include "staircode/oracle.hpp"
#include "staircode/union_find.hpp"

using namespace staircode;

namespace {

std::vector<double> weights_to(const AugmentedMetricSpace& s, const Mst& t, PointIndex v) {
  std::vector<double> w;
  for (PointIndex u : t.vertices()) w.push_back(s.distance(u, v));
  return w;
}

using EdgeKey = std::pair<PointIndex, PointIndex>;

EdgeKey key(const WeightedEdge& e) { return {std::min(e.a, e.b), std::max(e.a, e.b)}; }

std::set<EdgeKey> edge_set(const Mst& t) {
  std::set<EdgeKey> out;
  for (const auto& e : t.sorted_edges()) out.insert(key(e));
  return out;
}

// Spanning, acyclic and sorted.
void check_tree_shape(const Mst& t) {
  const auto vs = t.vertices();
  REQUIRE(t.sorted_edges().size() + 1 == vs.size());
  PointIndex top = 0;
  for (PointIndex v : vs) top = std::max(top, v);
  UnionFind uf(top + 1);
  for (const auto& e : t.sorted_edges()) {
    bool merged = false;
    uf.unite(e.a, e.b, &merged);
    CHECK(merged);
  }
  for (PointIndex v : vs) CHECK(uf.find(v) == uf.find(vs[0]));
  CHECK(std::is_sorted(t.sorted_edges().begin(), t.sorted_edges().end(), edge_less));
}

}  // namespace

TEST_CASE("insert into an empty tree") {
  Mst t;
  const auto stats = t.insert(7, {});
  CHECK(t.vertices().size() == 1);
  CHECK(t.sorted_edges().empty());
  CHECK(stats.new_edges == 0);
  CHECK(t.contains_vertex(7));
  CHECK_FALSE(t.contains_vertex(0));
}

TEST_CASE("third vertex of the four-point example") {
  Mst t;
  t.insert(0, {});
  t.insert(1, std::vector<double>{3});
  const Mst next = mst_insert(t, 2, std::vector<double>{5, 4});
  REQUIRE(next.sorted_edges().size() == 2);
  CHECK(key(next.sorted_edges()[0]) == EdgeKey{0, 1});
  CHECK(next.sorted_edges()[0].weight == 3);
  CHECK(key(next.sorted_edges()[1]) == EdgeKey{1, 2});
  CHECK(next.sorted_edges()[1].weight == 4);
  CHECK(t.sorted_edges().size() == 1);  // functional form leaves the input alone
}

TEST_CASE("four-point example: full sequence") {
  const auto s = datasets::d45();
  Mst t;
  for (PointIndex v = 0; v < 4; ++v) t.insert(v, weights_to(s, t, v));
  std::vector<double> w;
  for (const auto& e : t.sorted_edges()) w.push_back(e.weight);
  CHECK(w == std::vector<double>{1.5, 2.5, 3});
  CHECK(t.total_weight() == 7.0);
  CHECK(t.total_weight() == oracle::kruskal_weight(s, t.vertices()));
  CHECK(edge_set(t) == std::set<EdgeKey>{{0, 1}, {1, 3}, {2, 3}});
}

TEST_CASE("input errors") {
  Mst t;
  t.insert(0, {});
  CHECK_THROWS_AS(t.insert(1, std::vector<double>{1, 2}), InvalidInput);
  CHECK_THROWS_AS(t.insert(0, std::vector<double>{1}), InvalidInput);
  const auto no_coords = datasets::d45();
  CHECK_THROWS_AS(mst_insert_euclidean(t, 1, no_coords), InvalidInput);
}

TEST_CASE("euclidean insertion matches generic insertion on the planar example") {
  const auto s = datasets::d45_planar();
  Mst g;
  Mst e;
  for (PointIndex v = 0; v < 4; ++v) {
    g.insert(v, weights_to(s, g, v));
    e.insert_euclidean(v, s);
    CHECK(std::equal(g.sorted_edges().begin(), g.sorted_edges().end(), e.sorted_edges().begin(),
                     e.sorted_edges().end()));
  }
}

TEST_CASE("collinear points form a path, one new edge per insertion") {
  const auto s = AugmentedMetricSpace::from_coordinates({"a", "b", "c", "d"}, {0, 1, 2, 3}, {0, 1, 2, 3.5}, 1);
  Mst t;
  for (PointIndex v = 0; v < 4; ++v) {
    const auto stats = t.insert_euclidean(v, s);
    CHECK(stats.new_edges == (v == 0 ? 0u : 1u));
    CHECK(stats.evicted_edges == 0);
  }
  CHECK(edge_set(t) == std::set<EdgeKey>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("random planar clouds: few new edges, Kruskal weight, euclidean = generic") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = datasets::random_euclidean(50, 2, rng);
    Mst g;
    Mst e;
    std::size_t worst = 0;
    for (PointIndex v = 0; v < 50; ++v) {
      g.insert(v, weights_to(s, g, v));
      worst = std::max(worst, e.insert_euclidean(v, s).new_edges);
      check_tree_shape(e);
      CHECK(std::equal(g.sorted_edges().begin(), g.sorted_edges().end(), e.sorted_edges().begin(),
                       e.sorted_edges().end()));
      CHECK(e.total_weight() == doctest::Approx(oracle::kruskal_weight(s, e.vertices())).epsilon(1e-12));
    }
    CHECK(worst <= 12);
  }
}

TEST_CASE("random matrices up to 64 points: Kruskal weight and evicted edges never return") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 63;
    const auto s = datasets::random_matrix(n, rng);
    Mst t;
    std::set<EdgeKey> evicted;
    for (PointIndex v = 0; v < n; ++v) {
      const auto before = edge_set(t);
      t.insert(v, weights_to(s, t, v));
      check_tree_shape(t);
      const auto after = edge_set(t);
      for (const auto& k : before) {
        if (!after.contains(k)) evicted.insert(k);
      }
      for (const auto& k : after) CHECK_FALSE(evicted.contains(k));
      CHECK(t.total_weight() == doctest::Approx(oracle::kruskal_weight(s, t.vertices())).epsilon(1e-12));
    }
  }
}

TEST_CASE("an edge strictly heaviest on some cycle is never in the tree") {
  // With distinct weights an edge is in the tree iff no path of strictly
  // lighter edges joins its endpoints.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto s = datasets::random_matrix(n, rng);
    Mst t;
    for (PointIndex v = 0; v < n; ++v) t.insert(v, weights_to(s, t, v));
    const auto tree = edge_set(t);
    for (PointIndex a = 0; a < n; ++a) {
      for (PointIndex b = a + 1; b < n; ++b) {
        UnionFind uf(n);
        for (PointIndex x = 0; x < n; ++x) {
          for (PointIndex y = x + 1; y < n; ++y) {
            if (s.distance(x, y) < s.distance(a, b)) uf.unite(x, y);
          }
        }
        const bool heaviest_on_cycle = uf.find(a) == uf.find(b);
        CHECK(heaviest_on_cycle != tree.contains({a, b}));
      }
    }
  }
}
