#include "staircode/query.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace staircode {

Crossing cross(const Staircase& s, const Line& line) {
  Crossing c;
  c.entry = line.entry_t(s.birth_sigma());
  const auto steps = s.steps();
  if (s.is_quadrant()) {
    c.exit = Extended::infinity();
    return c;
  }
  // Leaving through step j happens at max(A_j, B_j); A is non-decreasing and B
  // non-increasing in j, so the minimum sits where they cross.
  const auto a = [&](std::size_t j) { return line.t_at_sigma(steps[j].sigma); };
  const auto b = [&](std::size_t j) { return line.t_at_eps(steps[j].u.value()); };
  std::size_t lo = 0;
  std::size_t hi = steps.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (a(mid) >= b(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  double best = 0.0;
  if (lo < steps.size()) {
    best = a(lo);
    c.exit_step = lo;
  }
  if (lo > 0 && (lo == steps.size() || b(lo - 1) < best)) {
    best = b(lo - 1);
    c.exit_step = lo - 1;
  }
  c.exit = Extended(best);
  return c;
}

std::optional<Bar> intersect(const Staircase& s, const Line& line) {
  const Crossing c = cross(s, line);
  if (c.empty()) return std::nullopt;
  Bar bar{s.owner(), c.entry, c.exit, line.point_at(c.entry), std::nullopt};
  if (c.exit.is_finite()) bar.death_point = line.point_at(c.exit.value());
  return bar;
}

// ---------------------------------------------------------------------------
// Index
//
// A line with axis crossing b meets every staircase born at or left of b
// (through its bottom ray) and, among those born right of b, exactly the ones
// whose birth segment top (f, u(f)) lies strictly above the line. The second
// set is reported from a segment tree over birth-sorted tops; each node keeps
// the upper convex layers of its points. Candidate ranges are widened by a
// small slack and every candidate is confirmed with the exact crossing.

namespace {

constexpr double kSlack = 1e-9;

double turn(double os, double ou, double as, double au, double bs, double bu) {
  return (as - os) * (bu - ou) - (au - ou) * (bs - os);
}

}  // namespace

FiberedQueryIndex::FiberedQueryIndex(Staircode staircode, IndexOptions options)
    : staircode_(std::move(staircode)), options_(options) {
  for (const auto& e : staircode_.entries()) {
    const Staircase& s = e.base;
    if (s.is_quadrant()) {
      quadrants_.push_back(s.owner());
    } else {
      points_.push_back({s.birth_sigma(), s.envelope_at(s.birth_sigma()).value(), s.owner()});
    }
  }
  std::sort(points_.begin(), points_.end(), [](const TopPoint& x, const TopPoint& y) {
    return std::tie(x.sigma, x.owner) < std::tie(y.sigma, y.owner);
  });
  for (const auto& p : points_) magnitude_ = std::max({magnitude_, std::abs(p.sigma), std::abs(p.u)});
  if (!points_.empty()) {
    tree_.resize(4 * points_.size());
    build_node(1, 0, points_.size());
  }
}

void FiberedQueryIndex::build_node(std::size_t node, std::size_t lo, std::size_t hi) {
  std::vector<std::uint32_t> remaining(hi - lo);
  for (std::size_t k = lo; k < hi; ++k) remaining[k - lo] = static_cast<std::uint32_t>(k);
  std::sort(remaining.begin(), remaining.end(), [&](std::uint32_t x, std::uint32_t y) {
    return std::tie(points_[x].sigma, points_[x].u) < std::tie(points_[y].sigma, points_[y].u);
  });
  auto& layers = tree_[node].layers;
  std::vector<std::uint32_t> rest;
  while (!remaining.empty()) {
    Layer layer;
    for (std::uint32_t p : remaining) {
      auto& h = layer.hull;
      while (h.size() >= 2) {
        const auto& o = points_[h[h.size() - 2]];
        const auto& a = points_[h.back()];
        const auto& b = points_[p];
        if (turn(o.sigma, o.u, a.sigma, a.u, b.sigma, b.u) < 0.0) break;
        h.pop_back();
      }
      h.push_back(p);
    }
    rest.clear();
    std::size_t k = 0;
    for (std::uint32_t p : remaining) {
      if (k < layer.hull.size() && layer.hull[k] == p) {
        ++k;
      } else {
        rest.push_back(p);
      }
    }
    remaining.swap(rest);
    layers.push_back(std::move(layer));
  }
  if (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    build_node(2 * node, lo, mid);
    build_node(2 * node + 1, mid, hi);
  }
}

void FiberedQueryIndex::query_node(std::size_t node, std::size_t lo, std::size_t hi,
                                   std::size_t from, double slope, double threshold,
                                   std::vector<PointIndex>& out) const {
  if (hi <= from) return;
  if (lo < from) {
    const std::size_t mid = lo + (hi - lo) / 2;
    query_node(2 * node, lo, mid, from, slope, threshold, out);
    query_node(2 * node + 1, mid, hi, from, slope, threshold, out);
    return;
  }
  const auto value = [&](std::uint32_t p) { return points_[p].u - slope * points_[p].sigma; };
  for (const Layer& layer : tree_[node].layers) {
    const auto& h = layer.hull;
    // Values along an upper hull are unimodal: find the peak.
    std::size_t a = 0;
    std::size_t b = h.size() - 1;
    while (a < b) {
      const std::size_t mid = a + (b - a) / 2;
      if (value(h[mid + 1]) <= value(h[mid])) {
        b = mid;
      } else {
        a = mid + 1;
      }
    }
    if (!(value(h[a]) > threshold)) return;  // inner layers lie below this one
    for (std::size_t k = a + 1; k-- > 0;) {
      if (!(value(h[k]) > threshold)) break;
      out.push_back(points_[h[k]].owner);
    }
    for (std::size_t k = a + 1; k < h.size(); ++k) {
      if (!(value(h[k]) > threshold)) break;
      out.push_back(points_[h[k]].owner);
    }
  }
}

std::vector<PointIndex> FiberedQueryIndex::report(const Line& line) const {
  if (options_.linear_scan) return report_linear(line);
  std::vector<PointIndex> cand(quadrants_.begin(), quadrants_.end());
  if (!points_.empty()) {
    const double b = line.axis_crossing();
    const double tol = kSlack * std::max(1.0, std::abs(b));
    const auto by_sigma = [](double v, const TopPoint& p) { return v < p.sigma; };
    const auto left_end = std::upper_bound(points_.begin(), points_.end(), b + tol, by_sigma);
    for (auto it = points_.begin(); it != left_end; ++it) cand.push_back(it->owner);

    const auto from = static_cast<std::size_t>(
        std::upper_bound(points_.begin(), points_.end(), b - tol, by_sigma) - points_.begin());
    const double slope = line.slope();
    const double c = line.origin().eps - slope * line.origin().sigma;
    const double scale = 1.0 + std::abs(c) + (1.0 + slope) * magnitude_;
    query_node(1, 0, points_.size(), from, slope, c - kSlack * scale, cand);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::erase_if(cand, [&](PointIndex x) { return cross(staircode_.staircase(x), line).empty(); });
  return cand;
}

std::vector<PointIndex> FiberedQueryIndex::report_linear(const Line& line) const {
  std::vector<PointIndex> out;
  for (const auto& e : staircode_.entries()) {
    if (!cross(e.base, line).empty()) out.push_back(e.base.owner());
  }
  return out;
}

std::size_t FiberedQueryIndex::stored_points() const {
  std::size_t total = 0;
  for (const auto& node : tree_) {
    for (const auto& layer : node.layers) total += layer.hull.size();
  }
  return total;
}

FiberedQueryIndex build_index(const Staircode& staircode, IndexOptions options) {
  return FiberedQueryIndex(staircode, options);
}

namespace {

void sort_bars(std::vector<Bar>& bars) {
  std::sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) {
    return std::tie(x.birth_t, x.owner) < std::tie(y.birth_t, y.owner);
  });
}

}  // namespace

std::vector<Bar> query_barcode(const FiberedQueryIndex& index, const Line& line) {
  std::vector<Bar> bars;
  for (PointIndex x : index.report(line)) {
    if (auto bar = intersect(index.staircode().staircase(x), line)) bars.push_back(*bar);
  }
  sort_bars(bars);
  return bars;
}

VerboseBarcode query_barcode_verbose(const FiberedQueryIndex& index, const Line& line) {
  VerboseBarcode out;
  out.bars = query_barcode(index, line);
  std::vector<bool> hit(index.staircode().size(), false);
  for (const auto& bar : out.bars) hit[bar.owner] = true;
  for (PointIndex x = 0; x < hit.size(); ++x) {
    if (!hit[x]) out.empty_owners.push_back(x);
  }
  return out;
}

Treegram query_treegram(const Staircode& staircode, const Line& line) {
  const std::size_t n = staircode.size();
  std::vector<Leaf> leaves;
  leaves.reserve(n);
  struct Pending {
    double height;
    std::uint32_t position;
    PointIndex x;
    PointIndex conqueror;
  };
  std::vector<Pending> pending;
  for (PointIndex k = 0; k < n; ++k) {
    const PointIndex x = staircode.order().at(k);
    const DecoratedStaircase& e = staircode.entry(x);
    const Crossing c = cross(e.base, line);
    leaves.push_back({x, c.entry});
    if (c.exit.is_infinite()) continue;
    const double sigma = e.base.steps()[c.exit_step].sigma;
    pending.push_back({std::max(c.exit.value(), c.entry), k, x, e.conqueror_at(sigma)});
  }
  std::sort(pending.begin(), pending.end(), [](const Pending& p, const Pending& q) {
    return p.height != q.height ? p.height < q.height : p.position > q.position;
  });
  std::vector<MergeEvent> merges;
  merges.reserve(pending.size());
  for (const auto& p : pending) merges.push_back({p.height, p.x, p.conqueror});
  return Treegram(std::move(leaves), std::move(merges));
}

}  // namespace staircode
