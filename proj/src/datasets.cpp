#include "staircode/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace staircode::datasets {

namespace {

std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i + 1));
  return ids;
}

std::vector<double> uniform_values(std::size_t n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

}  // namespace

AugmentedMetricSpace d45(const std::vector<double>& filter) {
  std::vector<double> d(6);
  d[pair_index(0, 1)] = 3.0;
  d[pair_index(1, 2)] = 4.0;
  d[pair_index(0, 2)] = 5.0;
  d[pair_index(1, 3)] = 1.5;
  d[pair_index(2, 3)] = 2.5;
  d[pair_index(0, 3)] = 3.6;
  return AugmentedMetricSpace::from_distances(numbered_ids(4), filter, std::move(d));
}

AugmentedMetricSpace d45_planar(const std::vector<double>& filter) {
  // x2 at the right angle, x1 on the horizontal leg, x3 on the vertical leg.
  return AugmentedMetricSpace::from_coordinates(numbered_ids(4), filter, {3, 0, 0, 0, 0, 4, 0, 1.5}, 2);
}

AugmentedMetricSpace random_euclidean(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  auto coords = uniform_values(n * dim, 0.0, 1.0, rng);
  auto f = uniform_values(n, 0.0, 1.0, rng);
  return AugmentedMetricSpace::from_coordinates(numbered_ids(n), std::move(f), std::move(coords), dim);
}

AugmentedMetricSpace random_matrix(std::size_t n, std::mt19937_64& rng) {
  auto d = uniform_values(pair_count(n), 1.0, 10.0, rng);
  auto f = uniform_values(n, 0.0, 1.0, rng);
  return AugmentedMetricSpace::from_distances(numbered_ids(n), std::move(f), std::move(d));
}

AugmentedMetricSpace random_ultrametric(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<PointIndex>> clusters;
  for (PointIndex i = 0; i < n; ++i) clusters.push_back({i});
  std::vector<double> d(pair_count(n), 0.0);
  std::uniform_real_distribution<double> step(0.1, 1.0);
  double height = 0.0;
  while (clusters.size() > 1) {
    height += step(rng);
    std::uniform_int_distribution<std::size_t> pick(0, clusters.size() - 1);
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    while (b == a) b = pick(rng);
    for (PointIndex x : clusters[a]) {
      for (PointIndex y : clusters[b]) d[pair_index(x, y)] = height;
    }
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
  }
  auto f = uniform_values(n, 0.0, 1.0, rng);
  return AugmentedMetricSpace::from_distances(numbered_ids(n), std::move(f), std::move(d));
}

Line random_line(const AugmentedMetricSpace& space, std::mt19937_64& rng) {
  const auto f = space.filter_values();
  const auto [fmin, fmax] = std::minmax_element(f.begin(), f.end());
  const auto dist = space.lower_triangle();
  const double dmax = dist.empty() ? 1.0 : *std::max_element(dist.begin(), dist.end());
  const double span = std::max(*fmax - *fmin, 1e-3);
  std::uniform_real_distribution<double> sigma(*fmin - 0.5 * span, *fmax + 0.5 * span);
  std::uniform_real_distribution<double> eps(-0.25 * dmax, 1.1 * std::max(dmax, 1e-3));
  std::uniform_real_distribution<double> angle(0.03, std::numbers::pi / 2 - 0.03);
  const Grade a{sigma(rng), eps(rng)};
  const double theta = angle(rng);
  // Scale the direction so both axes are exercised regardless of units.
  const Grade b{a.sigma + span * std::cos(theta), a.eps + std::max(dmax, 1e-3) * std::sin(theta)};
  return Line(a, b);
}

}  // namespace staircode::datasets
