#include "staircode/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace staircode::oracle {

GradeGrid::GradeGrid(const AugmentedMetricSpace& space) : n_(space.size()) {
  sequence_.resize(n_);
  std::iota(sequence_.begin(), sequence_.end(), PointIndex{0});
  std::sort(sequence_.begin(), sequence_.end(), [&](PointIndex a, PointIndex b) {
    return space.filter(a) != space.filter(b) ? space.filter(a) < space.filter(b) : a < b;
  });
  build(space);
}

GradeGrid::GradeGrid(const AugmentedMetricSpace& space, std::vector<PointIndex> point_sequence)
    : n_(space.size()), sequence_(std::move(point_sequence)) {
  if (sequence_.size() != n_) throw InvalidInput("oracle order has the wrong length");
  std::vector<bool> seen(n_, false);
  for (std::size_t k = 0; k < n_; ++k) {
    if (sequence_[k] >= n_ || seen[sequence_[k]]) throw InvalidInput("oracle order is not a permutation");
    seen[sequence_[k]] = true;
    if (k > 0 && space.filter(sequence_[k]) < space.filter(sequence_[k - 1])) {
      throw InvalidInput("oracle order is not compatible with the filter function");
    }
  }
  build(space);
}

void GradeGrid::build(const AugmentedMetricSpace& space) {
  position_.assign(n_, 0);
  f_.resize(n_);
  for (std::uint32_t k = 0; k < n_; ++k) {
    position_[sequence_[k]] = k;
    f_[k] = space.filter(sequence_[k]);
  }
  for (PointIndex hi = 1; hi < n_; ++hi) {
    for (PointIndex lo = 0; lo < hi; ++lo) pairs_.push_back({space.distance(lo, hi), lo, hi});
  }
  std::sort(pairs_.begin(), pairs_.end(), [](const PairEntry& x, const PairEntry& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.hi < y.hi;
  });

  const std::size_t cols = pairs_.size() + 1;
  labels_.assign(n_ * cols * n_, -1);
  counts_.assign(n_ * cols, 0);
  std::vector<std::int32_t> label(n_);
  for (std::uint32_t s = 1; s <= n_; ++s) {
    std::fill(label.begin(), label.end(), -1);
    for (std::uint32_t k = 0; k < s; ++k) label[sequence_[k]] = static_cast<std::int32_t>(k);
    std::uint32_t count = s;
    for (std::size_t e = 0; e < cols; ++e) {
      if (e > 0) {
        const auto& p = pairs_[e - 1];
        const std::int32_t la = label[p.lo];
        const std::int32_t lb = label[p.hi];
        if (la >= 0 && lb >= 0 && la != lb) {
          const std::int32_t keep = std::min(la, lb);
          const std::int32_t drop = std::max(la, lb);
          for (auto& l : label) {
            if (l == drop) l = keep;
          }
          --count;
        }
      }
      std::copy(label.begin(), label.end(), labels_.begin() + ((s - 1) * cols + e) * n_);
      counts_[(s - 1) * cols + e] = count;
    }
  }
}

double GradeGrid::sigma_value(std::uint32_t sigma_rank) const {
  if (sigma_rank == 0 || sigma_rank > n_) throw InvalidInput("sigma rank out of range");
  return f_[sigma_rank - 1];
}

double GradeGrid::eps_value(std::uint64_t eps_rank) const {
  if (eps_rank > pairs_.size()) throw InvalidInput("eps rank out of range");
  return eps_rank == 0 ? 0.0 : pairs_[eps_rank - 1].d;
}

std::pair<PointIndex, PointIndex> GradeGrid::pair(std::uint64_t eps_rank) const {
  if (eps_rank == 0 || eps_rank > pairs_.size()) throw InvalidInput("pair rank out of range");
  return {pairs_[eps_rank - 1].lo, pairs_[eps_rank - 1].hi};
}

std::int32_t GradeGrid::label(std::uint32_t sigma_rank, std::uint64_t eps_rank, PointIndex x) const {
  if (sigma_rank == 0) return -1;
  return labels_[((sigma_rank - 1) * (pairs_.size() + 1) + eps_rank) * n_ + x];
}

std::size_t GradeGrid::components(std::uint32_t sigma_rank, std::uint64_t eps_rank) const {
  if (sigma_rank == 0) return 0;
  return counts_[(sigma_rank - 1) * (pairs_.size() + 1) + eps_rank];
}

std::optional<RankGrade> GradeGrid::rank_of(const Grade& g) const {
  if (g.eps < 0.0) return std::nullopt;
  std::uint32_t s = 0;
  while (s < n_ && f_[s] <= g.sigma) ++s;
  if (s == 0) return std::nullopt;
  std::uint64_t e = 0;
  while (e < pairs_.size() && pairs_[e].d <= g.eps) ++e;
  return RankGrade{s, e};
}

std::size_t GradeGrid::components_at(const Grade& g) const {
  const auto r = rank_of(g);
  return r ? components(r->sigma_rank, r->eps_rank) : 0;
}

std::vector<std::vector<PointIndex>> GradeGrid::blocks_at(const Grade& g) const {
  std::vector<std::vector<PointIndex>> out;
  const auto r = rank_of(g);
  if (!r) return out;
  std::vector<std::vector<PointIndex>> by_label(n_);
  for (PointIndex x = 0; x < n_; ++x) {
    const auto l = label(r->sigma_rank, r->eps_rank, x);
    if (l >= 0) by_label[static_cast<std::size_t>(l)].push_back(x);
  }
  for (auto& b : by_label) {
    if (!b.empty()) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Staircode oracle_staircode(const GradeGrid& grid, const AugmentedMetricSpace& space) {
  const std::size_t n = grid.point_count();
  std::vector<DecoratedStaircase> entries;
  entries.reserve(n);
  for (PointIndex x = 0; x < n; ++x) {
    const std::uint32_t p = grid.position(x);
    std::vector<Step> steps;
    for (std::uint32_t s = p + 1; s <= n; ++s) {
      std::uint64_t e = 0;
      while (e <= grid.pair_count() && grid.label(s, e, x) == static_cast<std::int32_t>(p)) ++e;
      if (e > grid.pair_count()) {
        steps.push_back({grid.sigma_value(s), Extended::infinity(), s, kInfiniteRank});
        break;  // only the eldest point is never conquered; it stays so for all sigma
      }
      if (!steps.empty() && steps.back().u_rank == e) continue;
      steps.push_back({grid.sigma_value(s), Extended(grid.eps_value(e)), s, e});
    }
    entries.push_back({Staircase(x, std::move(steps)), {}});
  }
  std::vector<PointIndex> seq(grid.sequence().begin(), grid.sequence().end());
  bool point_ties = false;
  for (std::uint32_t s = 2; s <= n; ++s) point_ties |= grid.sigma_value(s) == grid.sigma_value(s - 1);
  bool distance_ties = false;
  for (std::uint64_t e = 2; e <= grid.pair_count(); ++e) {
    distance_ties |= grid.eps_value(e) == grid.eps_value(e - 1);
  }
  return Staircode(space.ids(), PointOrder(std::move(seq)), std::move(entries),
                   StaircodeMeta{Mode::kGeneric, point_ties, distance_ties});
}

std::vector<EdgeClass> classify_edges(const GradeGrid& grid) {
  std::vector<EdgeClass> out;
  for (std::uint64_t e = 1; e <= grid.pair_count(); ++e) {
    const auto [a, b] = grid.pair(e);
    const std::uint32_t s = std::max(grid.position(a), grid.position(b)) + 1;
    const RankGrade birth{s, e};
    const bool negative = grid.components(s, e) < grid.components(s, e - 1);
    out.push_back({a, b, birth, grid.real(birth), negative});
  }
  return out;
}

GradedBetti oracle_betti(const GradeGrid& grid) {
  const auto dm = [&](std::int64_t s, std::int64_t e) -> std::int64_t {
    if (s <= 0 || e < 0) return 0;
    return static_cast<std::int64_t>(
        grid.components(static_cast<std::uint32_t>(s), static_cast<std::uint64_t>(e)));
  };
  GradedBetti out;
  const auto put = [&](int j, std::uint32_t s, std::uint64_t e, std::int64_t count) {
    const RankGrade r{s, e};
    out.beta[j][r] = GradeEntry{grid.real(r), count};
  };
  for (std::int64_t s = 1; s <= static_cast<std::int64_t>(grid.point_count()); ++s) {
    for (std::int64_t e = 0; e <= static_cast<std::int64_t>(grid.pair_count()); ++e) {
      const std::int64_t h = dm(s, e) - dm(s - 1, e) - dm(s, e - 1) + dm(s - 1, e - 1);
      const auto su = static_cast<std::uint32_t>(s);
      const auto eu = static_cast<std::uint64_t>(e);
      if (h == 0) continue;
      if (e == 0) {
        put(0, su, eu, h);
      } else if (h == -1) {
        put(1, su, eu, 1);
      } else if (h == 1) {
        put(2, su, eu, 1);
      } else {
        throw InvariantViolation("second difference outside {-1, 0, 1}");
      }
    }
  }
  for (std::uint32_t s = 2; s <= grid.point_count(); ++s) {
    out.tie_broken |= grid.sigma_value(s) == grid.sigma_value(s - 1);
  }
  for (std::uint64_t e = 2; e <= grid.pair_count(); ++e) {
    out.tie_broken |= grid.eps_value(e) == grid.eps_value(e - 1);
  }
  return out;
}

std::vector<Bar> oracle_line_barcode(const GradeGrid& grid, const AugmentedMetricSpace& space,
                                     const Line& line) {
  const std::size_t n = grid.point_count();
  struct Event {
    double t;
    int kind;             // 0 vertex, 1 edge
    std::uint64_t order;  // position for vertices, pair rank for edges
  };
  std::vector<Event> events;
  std::vector<double> entry(n);
  for (PointIndex x = 0; x < n; ++x) {
    entry[x] = line.entry_t(space.filter(x));
    events.push_back({entry[x], 0, grid.position(x)});
  }
  for (std::uint64_t e = 1; e <= grid.pair_count(); ++e) {
    const auto [a, b] = grid.pair(e);
    const double t = std::max({entry[a], entry[b], line.t_at_eps(space.distance(a, b))});
    events.push_back({t, 1, e});
  }
  std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
    if (x.t != y.t) return x.t < y.t;
    if (x.kind != y.kind) return x.kind < y.kind;
    return x.order < y.order;
  });

  // Quick-find: label = position of the block's eldest, -1 before birth.
  std::vector<std::int64_t> label(n, -1);
  std::vector<Bar> bars;
  for (const Event& ev : events) {
    if (ev.kind == 0) {
      label[grid.point_at(ev.order)] = static_cast<std::int64_t>(ev.order);
      continue;
    }
    const auto [a, b] = grid.pair(ev.order);
    const auto la = label[a];
    const auto lb = label[b];
    if (la == lb) continue;
    const auto keep = std::min(la, lb);
    const auto drop = std::max(la, lb);
    for (auto& l : label) {
      if (l == drop) l = keep;
    }
    const PointIndex dead = grid.point_at(static_cast<std::size_t>(drop));
    if (ev.t > entry[dead]) {
      bars.push_back({dead, entry[dead], Extended(ev.t), line.point_at(entry[dead]), line.point_at(ev.t)});
    }
  }
  const PointIndex eldest = grid.point_at(0);
  bars.push_back({eldest, entry[eldest], Extended::infinity(), line.point_at(entry[eldest]), std::nullopt});
  std::sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) {
    return x.birth_t != y.birth_t ? x.birth_t < y.birth_t : x.owner < y.owner;
  });
  return bars;
}

double kruskal_weight(const AugmentedMetricSpace& space, std::span<const PointIndex> vertices) {
  struct E {
    double w;
    std::size_t a;
    std::size_t b;
  };
  std::vector<E> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      edges.push_back({space.distance(vertices[i], vertices[j]), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) { return x.w < y.w; });
  std::vector<std::size_t> label(vertices.size());
  std::iota(label.begin(), label.end(), std::size_t{0});
  double total = 0.0;
  for (const E& e : edges) {
    const std::size_t la = label[e.a];
    const std::size_t lb = label[e.b];
    if (la == lb) continue;
    for (auto& l : label) {
      if (l == lb) l = la;
    }
    total += e.w;
  }
  return total;
}

}  // namespace staircode::oracle
