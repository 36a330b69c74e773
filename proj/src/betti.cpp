#include "staircode/betti.hpp"

#include <algorithm>
#include <cmath>

#include "staircode/mst.hpp"
#include "staircode/pipeline.hpp"
#include "staircode/union_find.hpp"

namespace staircode {

void add_to(RankMap& map, const RankGrade& rank, const Grade& grade, std::int64_t delta) {
  if (delta == 0) return;
  auto [it, inserted] = map.try_emplace(rank, GradeEntry{grade, 0});
  it->second.count += delta;
  if (it->second.count == 0) map.erase(it);
}

std::map<Grade, std::int64_t> to_real(const RankMap& map) {
  std::map<Grade, std::int64_t> out;
  for (const auto& [rank, entry] : map) out[entry.grade] += entry.count;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

FeatureFunctions feature_functions(const Staircode& code) {
  FeatureFunctions out;
  for (const auto& e : code.entries()) {
    for (const RankCorner& c : e.base.rank_corners()) add_to(out.gamma[c.type], c.rank, c.grade, 1);
  }
  return out;
}

GradedBetti graded_betti(const FeatureFunctions& gamma, bool tie_broken) {
  GradedBetti out;
  out.tie_broken = tie_broken;
  out.beta[0] = gamma.gamma[0];
  const auto count_at = [](const RankMap& m, const RankGrade& r) -> std::int64_t {
    auto it = m.find(r);
    return it == m.end() ? 0 : it->second.count;
  };
  for (int j : {1, 2}) {
    const RankMap& mine = gamma.gamma[j];
    const RankMap& other = gamma.gamma[3 - j];
    for (const auto& [rank, entry] : mine) {
      const std::int64_t diff = entry.count - count_at(other, rank);
      if (diff > 0) add_to(out.beta[j], rank, entry.grade, diff);
    }
  }
  return out;
}

GradedBetti graded_betti(const Staircode& code) {
  return graded_betti(feature_functions(code), code.meta().point_ties || code.meta().distance_ties);
}

std::int64_t dimension_function(const GradedBetti& betti, const Grade& a) {
  std::int64_t total = 0;
  for (int j = 0; j < 3; ++j) {
    const std::int64_t sign = j == 1 ? -1 : 1;
    for (const auto& [rank, entry] : betti.beta[j]) {
      if (entry.grade.sigma <= a.sigma && entry.grade.eps <= a.eps) total += sign * entry.count;
    }
  }
  return total;
}

std::int64_t dimension_function(const Staircode& code, const Grade& a) {
  return static_cast<std::int64_t>(code.count_containing(a));
}

bool check_ultrametric(const AugmentedMetricSpace& space) {
  const auto n = static_cast<PointIndex>(space.size());
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex z = x + 1; z < n; ++z) {
      const double dxz = space.distance(x, z);
      for (PointIndex y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const double bound = std::max(space.distance(x, y), space.distance(y, z));
        if (dxz > bound + 1e-12 * std::max(1.0, bound)) return false;
      }
    }
  }
  return true;
}

ConquerorCheck check_constant_conqueror(const AugmentedMetricSpace& space, const PointOrder& order) {
  const GenericOrdering ordering(space, std::vector<PointIndex>(order.sequence().begin(),
                                                                order.sequence().end()));
  const Staircode code = compute_staircode(space, ordering);
  const std::size_t n = space.size();

  ConquerorCheck out;
  out.conqueror.assign(n, std::nullopt);
  out.conqueror[order.first()] = order.first();
  std::vector<std::vector<PointIndex>> candidates(n);

  Mst mst;
  std::vector<double> weights;
  std::size_t next = 0;
  while (next < n) {
    // Insert every point of the next filter level.
    const double sigma = space.filter(order.at(next));
    while (next < n && space.filter(order.at(next)) == sigma) {
      const PointIndex p = order.at(next);
      weights.clear();
      for (PointIndex v : mst.vertices()) weights.push_back(space.distance(p, v));
      mst.insert(p, weights);
      ++next;
    }

    // Older points sharing x's block once every edge of weight <= u_x(sigma) is in.
    struct Query {
      double height;
      PointIndex x;
    };
    std::vector<Query> queries;
    for (std::size_t k = 1; k < next; ++k) {
      const PointIndex x = order.at(k);
      queries.push_back({code.staircase(x).envelope_at(sigma).value(), x});
    }
    std::sort(queries.begin(), queries.end(),
              [](const Query& a, const Query& b) { return a.height < b.height; });

    UnionFind uf(n);
    const auto edges = mst.sorted_edges();
    std::size_t e = 0;
    for (const Query& q : queries) {
      while (e < edges.size() && edges[e].weight <= q.height) {
        uf.unite(edges[e].a, edges[e].b);
        ++e;
      }
      auto& cand = candidates[q.x];
      const auto root = uf.find(q.x);
      if (space.filter(q.x) == sigma) {
        for (std::uint32_t k = 0; k < order.position(q.x); ++k) {
          if (uf.find(order.at(k)) == root) cand.push_back(order.at(k));
        }
      } else {
        std::erase_if(cand, [&](PointIndex y) { return uf.find(y) != root; });
      }
      if (cand.empty() && out.constant) {
        out.constant = false;
        out.witness = q.x;
        out.witness_sigma = sigma;
      }
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    const PointIndex x = order.at(k);
    if (!candidates[x].empty()) out.conqueror[x] = candidates[x].front();
  }
  return out;
}

std::string to_string(Decomposability d) {
  return d == Decomposability::kConsistent ? "consistent" : "not_interval_decomposable";
}

DecomposabilityReport decomposability_necessary_test(const Staircode& code) {
  const FeatureFunctions gamma = feature_functions(code);
  const GradedBetti module = graded_betti(gamma);
  DecomposabilityReport report;
  for (int j = 0; j < 3; ++j) {
    // The direct sum of staircase modules has Betti numbers gamma_j.
    const RankMap& sum = gamma.gamma[j];
    const RankMap& mod = module.beta[j];
    for (const auto& [rank, entry] : sum) {
      auto it = mod.find(rank);
      if (it == mod.end() || it->second.count != entry.count) report.mismatches.push_back(rank);
    }
    for (const auto& [rank, entry] : mod) {
      if (!sum.contains(rank)) report.mismatches.push_back(rank);
    }
  }
  std::sort(report.mismatches.begin(), report.mismatches.end());
  report.mismatches.erase(std::unique(report.mismatches.begin(), report.mismatches.end()),
                          report.mismatches.end());
  if (!report.mismatches.empty()) report.verdict = Decomposability::kNotIntervalDecomposable;
  return report;
}

}  // namespace staircode
