#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "staircode/datasets.hpp"
#include "staircode/oracle.hpp"
#include "staircode/pipeline.hpp"

using namespace staircode;
using staircode::testing::envelope;

namespace {

using Envelope = std::vector<std::pair<double, double>>;

// Minimax path distance by Floyd-Warshall.
std::vector<std::vector<double>> chain_distance(const AugmentedMetricSpace& s) {
  const std::size_t n = s.size();
  std::vector<std::vector<double>> u(n, std::vector<double>(n));
  for (PointIndex a = 0; a < n; ++a) {
    for (PointIndex b = 0; b < n; ++b) u[a][b] = s.distance(a, b);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) u[a][b] = std::min(u[a][b], std::max(u[a][k], u[k][b]));
    }
  }
  return u;
}

}  // namespace

TEST_CASE("a single point owns the quadrant") {
  const auto s = AugmentedMetricSpace::from_distances({"p"}, {2.5}, {});
  const Staircode code = compute_staircode(s);
  REQUIRE(code.size() == 1);
  CHECK(code.staircase(0).is_quadrant());
  CHECK(code.staircase(0).birth_sigma() == 2.5);
}

TEST_CASE("constant filter: rectangles over the single-linkage bars") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    auto base = datasets::random_matrix(n, rng);
    const auto s = AugmentedMetricSpace::from_distances(base.ids(), std::vector<double>(n, 0.7),
                                                        {base.lower_triangle().begin(), base.lower_triangle().end()});
    const auto u = chain_distance(s);
    const Staircode code = compute_staircode(s);
    CHECK(code.staircase(0).is_quadrant());
    for (PointIndex x = 1; x < n; ++x) {
      double death = u[x][0];
      for (PointIndex y = 0; y < x; ++y) death = std::min(death, u[x][y]);
      CHECK(envelope(code.staircase(x)) == Envelope{{0.7, death}});
    }
  }
}

TEST_CASE("four-point example") {
  const Staircode code = compute_staircode(datasets::d45());
  CHECK(code.staircase(0).is_quadrant());
  CHECK(code.staircase(0).birth_sigma() == 1);
  CHECK(envelope(code.staircase(1)) == Envelope{{2, 3}});
  CHECK(envelope(code.staircase(2)) == Envelope{{3, 4}, {4, 2.5}});
  CHECK(envelope(code.staircase(3)) == Envelope{{4, 1.5}});

  CHECK(code.entry(1).conqueror_at(2) == 0);
  CHECK(code.entry(2).conqueror_at(3.5) == 0);
  CHECK(code.entry(2).conqueror_at(4) == 1);
  CHECK(code.entry(3).conqueror_at(4) == 1);

  CHECK(code.count_containing({4, 2.0}) == 3);
  CHECK(code.count_containing({4, 3.2}) == 1);
  CHECK_FALSE(code.meta().point_ties);
  CHECK_FALSE(code.meta().distance_ties);

  // Ranks: x3's second step sits at the fourth point and the pair of rank 2 (d34 = 2.5).
  const auto steps = code.staircase(2).steps();
  REQUIRE(steps.size() == 2);
  CHECK(steps[1].sigma_rank == 4);
  CHECK(steps[1].u_rank == 2);
}

TEST_CASE("tied filter values: the order changes two staircases") {
  const auto s = datasets::d45({1, 2, 2, 4});
  const Staircode a = compute_staircode_ordered(s, {0, 1, 2, 3});
  const Staircode b = compute_staircode_ordered(s, {0, 2, 1, 3});
  CHECK(a.meta().point_ties);
  CHECK(a.staircase(0) == b.staircase(0));
  CHECK(envelope(a.staircase(3)) == envelope(b.staircase(3)));
  CHECK(envelope(a.staircase(1)) != envelope(b.staircase(1)));
  CHECK(envelope(a.staircase(2)) != envelope(b.staircase(2)));
  // Under x2 before x3, x3 is swallowed by x2 at scale 4 when both are present.
  CHECK(envelope(a.staircase(1)) == Envelope{{2, 3}});
  CHECK(envelope(a.staircase(2)) == Envelope{{2, 4}, {4, 2.5}});
  // With x3 first, x2 is the one that dies at 2.5 once x4 arrives, and x3 lives
  // until it reaches x1 through x2 at scale 3.
  CHECK(envelope(b.staircase(2)) == Envelope{{2, 4}, {4, 3}});
  CHECK(envelope(b.staircase(1)) == Envelope{{2, 3}, {4, 2.5}});
}

TEST_CASE("orders incompatible with the filter are rejected") {
  const auto s = datasets::d45();
  CHECK_THROWS_AS(compute_staircode_ordered(s, {1, 0, 2, 3}), InvalidInput);
  CHECK_THROWS_AS(compute_staircode_ordered(s, {0, 1, 2}), InvalidInput);
  CHECK_THROWS_AS(compute_staircode(s, Mode::kEuclidean), InvalidInput);
}

TEST_CASE("euclidean mode gives the generic staircode") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = datasets::random_euclidean(2 + rng() % 60, 1 + rng() % 3, rng);
    const Staircode g = compute_staircode(s, Mode::kGeneric);
    const Staircode e = compute_staircode(s, Mode::kEuclidean);
    CHECK(e.meta().mode == Mode::kEuclidean);
    CHECK(std::equal(g.entries().begin(), g.entries().end(), e.entries().begin(), e.entries().end()));
  }
}

TEST_CASE("staircases equal the grid oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const int kind = trial % 3;
    const auto s = kind == 0   ? datasets::random_euclidean(n, 2, rng)
                   : kind == 1 ? datasets::random_matrix(n, rng)
                               : datasets::random_ultrametric(n, rng);
    const Staircode code = compute_staircode(s);
    const oracle::GradeGrid grid(s);
    const Staircode expected = oracle::oracle_staircode(grid, s);
    for (PointIndex x = 0; x < n; ++x) CHECK(code.staircase(x) == expected.staircase(x));
  }
}

TEST_CASE("filter ties and explicit orders agree with the oracle") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    auto base = datasets::random_matrix(n, rng);
    std::vector<double> f(n);
    for (auto& v : f) v = static_cast<double>(rng() % 3);
    const auto s = AugmentedMetricSpace::from_distances(base.ids(), f, {base.lower_triangle().begin(), base.lower_triangle().end()});
    std::vector<PointIndex> seq(n);
    std::iota(seq.begin(), seq.end(), PointIndex{0});
    std::shuffle(seq.begin(), seq.end(), rng);
    std::stable_sort(seq.begin(), seq.end(), [&](PointIndex a, PointIndex b) { return f[a] < f[b]; });
    const Staircode code = compute_staircode_ordered(s, seq);
    const oracle::GradeGrid grid(s, seq);
    const Staircode expected = oracle::oracle_staircode(grid, s);
    for (PointIndex x = 0; x < n; ++x) CHECK(code.staircase(x) == expected.staircase(x));
  }
}

TEST_CASE("decorations name an older point in the same block") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto s = datasets::random_matrix(n, rng);
    const Staircode code = compute_staircode(s);
    const oracle::GradeGrid grid(s);
    for (PointIndex x = 0; x < n; ++x) {
      if (code.staircase(x).is_quadrant()) continue;
      for (const Step& st : code.staircase(x).steps()) {
        if (st.u.is_infinite() || st.u.value() == 0.0) continue;
        const PointIndex c = code.entry(x).conqueror_at(st.sigma);
        CHECK(code.order().before(c, x));
        // At the envelope height x and its conqueror share a block.
        CHECK(grid.label(st.sigma_rank, st.u_rank, x) == grid.label(st.sigma_rank, st.u_rank, c));
      }
    }
  }
}
