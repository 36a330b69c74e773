#include "staircode/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace staircode {

// ---------------------------------------------------------------------------
// AugmentedMetricSpace

namespace {

std::vector<double> euclidean_lower_triangle(std::span<const double> coords, std::size_t n,
                                             std::size_t dim) {
  std::vector<double> dist(pair_count(n));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = coords[i * dim + k] - coords[j * dim + k];
        sum += diff * diff;
      }
      dist[pair_index(static_cast<PointIndex>(i), static_cast<PointIndex>(j))] = std::sqrt(sum);
    }
  }
  return dist;
}

}  // namespace

void AugmentedMetricSpace::validate_common() {
  const std::size_t n = filter_.size();
  if (n == 0) throw InvalidInput("augmented metric space needs at least one point");
  if (ids_.size() != n) throw InvalidInput("id count does not match filter count");
  if (n > std::numeric_limits<PointIndex>::max() / 2) throw InvalidInput("too many points");
  if (dist_.size() != pair_count(n)) {
    throw InvalidInput("expected " + std::to_string(pair_count(n)) + " distances, got " +
                       std::to_string(dist_.size()));
  }
  index_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (ids_[i].empty()) throw InvalidInput("empty point id at row " + std::to_string(i));
    if (!index_.emplace(ids_[i], static_cast<PointIndex>(i)).second) {
      throw InvalidInput("duplicate point id '" + ids_[i] + "'");
    }
    if (!std::isfinite(filter_[i])) throw InvalidInput("non-finite filter value for '" + ids_[i] + "'");
  }
  for (double d : dist_) {
    if (std::isnan(d) || d < 0.0 || std::isinf(d)) {
      throw InvalidInput("distances must be finite and nonnegative");
    }
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InvalidInput("non-finite coordinate");
  }
}

AugmentedMetricSpace AugmentedMetricSpace::from_distances(std::vector<std::string> ids,
                                                          std::vector<double> filter,
                                                          std::vector<double> lower_triangle) {
  AugmentedMetricSpace s;
  s.ids_ = std::move(ids);
  s.filter_ = std::move(filter);
  s.dist_ = std::move(lower_triangle);
  s.validate_common();
  return s;
}

AugmentedMetricSpace AugmentedMetricSpace::from_coordinates(std::vector<std::string> ids,
                                                            std::vector<double> filter,
                                                            std::vector<double> coords,
                                                            std::size_t dim) {
  if (dim == 0) throw InvalidInput("coordinate dimension must be positive");
  if (coords.size() != filter.size() * dim) throw InvalidInput("coordinate matrix has wrong shape");
  AugmentedMetricSpace s;
  s.dist_ = euclidean_lower_triangle(coords, filter.size(), dim);
  s.ids_ = std::move(ids);
  s.filter_ = std::move(filter);
  s.coords_ = std::move(coords);
  s.dim_ = dim;
  s.validate_common();
  return s;
}

AugmentedMetricSpace AugmentedMetricSpace::from_parts(std::vector<std::string> ids,
                                                      std::vector<double> filter,
                                                      std::vector<double> lower_triangle,
                                                      std::vector<double> coords, std::size_t dim) {
  auto s = from_coordinates(std::move(ids), std::move(filter), std::move(coords), dim);
  if (lower_triangle.size() != s.dist_.size()) {
    throw InvalidInput("distance matrix does not match point count");
  }
  for (std::size_t p = 0; p < lower_triangle.size(); ++p) {
    const double expected = s.dist_[p];
    if (std::abs(lower_triangle[p] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw InvalidInput("distances disagree with coordinates");
    }
  }
  s.dist_ = std::move(lower_triangle);
  s.validate_common();
  return s;
}

std::optional<PointIndex> AugmentedMetricSpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Orders

PointOrder::PointOrder(std::vector<PointIndex> sequence) : sequence_(std::move(sequence)) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  position_.assign(sequence_.size(), kUnset);
  for (std::size_t k = 0; k < sequence_.size(); ++k) {
    const PointIndex x = sequence_[k];
    if (x >= sequence_.size() || position_[x] != kUnset) {
      throw InvalidInput("point order is not a permutation");
    }
    position_[x] = static_cast<std::uint32_t>(k);
  }
}

PointOrder default_point_order(std::span<const double> filter) {
  std::vector<PointIndex> seq(filter.size());
  std::iota(seq.begin(), seq.end(), PointIndex{0});
  std::stable_sort(seq.begin(), seq.end(),
                   [&](PointIndex a, PointIndex b) { return filter[a] < filter[b]; });
  return PointOrder(std::move(seq));
}

bool is_compatible(const PointOrder& order, std::span<const double> filter) {
  if (order.size() != filter.size()) return false;
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (filter[order.at(k)] < filter[order.at(k - 1)]) return false;
  }
  return true;
}

GenericOrdering::GenericOrdering(const AugmentedMetricSpace& space)
    : points_(default_point_order(space.filter_values())) {
  build_pairs(space);
}

GenericOrdering::GenericOrdering(const AugmentedMetricSpace& space,
                                 std::vector<PointIndex> point_sequence)
    : points_(std::move(point_sequence)) {
  if (points_.size() != space.size() || !is_compatible(points_, space.filter_values())) {
    throw InvalidInput("point order is not compatible with the filter function");
  }
  build_pairs(space);
}

void GenericOrdering::build_pairs(const AugmentedMetricSpace& space) {
  const std::size_t n = space.size();
  for (std::size_t k = 1; k < n; ++k) {
    if (space.filter(points_.at(k)) == space.filter(points_.at(k - 1))) point_ties_ = true;
  }

  struct Keyed {
    double d;
    PointIndex lo;
    PointIndex hi;
  };
  std::vector<Keyed> pairs;
  pairs.reserve(pair_count(n));
  for (PointIndex hi = 1; hi < n; ++hi) {
    for (PointIndex lo = 0; lo < hi; ++lo) pairs.push_back({space.distance(hi, lo), lo, hi});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.d, a.lo, a.hi) < std::tie(b.d, b.lo, b.hi);
  });
  pair_rank_.assign(pairs.size(), 0);
  pair_by_rank_.resize(pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    pair_rank_[pair_index(pairs[r].lo, pairs[r].hi)] = static_cast<std::uint32_t>(r + 1);
    pair_by_rank_[r] = {pairs[r].lo, pairs[r].hi};
    if (r > 0 && pairs[r].d == pairs[r - 1].d) distance_ties_ = true;
  }
}

std::pair<PointIndex, PointIndex> GenericOrdering::pair_at_rank(std::uint64_t rank) const {
  if (rank == 0 || rank > pair_by_rank_.size()) throw InvalidInput("pair rank out of range");
  return pair_by_rank_[rank - 1];
}

// ---------------------------------------------------------------------------
// Staircase

Staircase::Staircase(PointIndex owner, std::vector<Step> steps)
    : owner_(owner), steps_(std::move(steps)) {
  if (steps_.empty()) throw InvalidInput("staircase needs at least one step");
  if (steps_.front().u.is_infinite() && steps_.size() != 1) {
    throw InvalidInput("an infinite envelope must be a single quadrant step");
  }
  if (steps_.front().u.is_finite() && !(steps_.front().u.value() > 0.0)) {
    throw InvalidInput("staircase envelope must start above zero");
  }
  const bool ranked = has_ranks();
  bool terminated = false;
  for (std::size_t j = 0; j < steps_.size(); ++j) {
    const Step& s = steps_[j];
    if (!std::isfinite(s.sigma)) throw InvalidInput("staircase step sigma must be finite");
    if (s.u.is_finite() && (!std::isfinite(s.u.value()) || s.u.value() < 0.0)) {
      throw InvalidInput("staircase envelope must be nonnegative");
    }
    if (terminated && !(s.u == Extended(0.0))) {
      throw InvalidInput("staircase envelope resumes after termination");
    }
    if (s.u == Extended(0.0)) terminated = true;
    if (j == 0) continue;
    const Step& prev = steps_[j - 1];
    if (ranked) {
      if (s.sigma_rank <= prev.sigma_rank || s.sigma < prev.sigma) {
        throw InvalidInput("staircase steps must be increasing in sigma");
      }
    } else if (s.sigma <= prev.sigma) {
      throw InvalidInput("staircase steps must be strictly increasing in sigma");
    }
    if (s.u > prev.u) throw InvalidInput("staircase envelope must be non-increasing");
  }
}

Staircase Staircase::quadrant(PointIndex owner, double sigma, std::uint32_t sigma_rank) {
  return Staircase(owner, {Step{sigma, Extended::infinity(), sigma_rank, kInfiniteRank}});
}

bool Staircase::has_ranks() const {
  return std::all_of(steps_.begin(), steps_.end(), [](const Step& s) { return s.sigma_rank > 0; });
}

Extended Staircase::envelope_at(double sigma) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), sigma,
                             [](double v, const Step& s) { return v < s.sigma; });
  if (it == steps_.begin()) return Extended(0.0);
  return std::prev(it)->u;
}

bool Staircase::contains(const Grade& g) const {
  if (g.eps < 0.0 || g.sigma < birth_sigma()) return false;
  return envelope_at(g.sigma).exceeds(g.eps);
}

std::vector<Step> Staircase::real_steps() const {
  std::vector<Step> out;
  for (std::size_t j = 0; j < steps_.size(); ++j) {
    if (j + 1 < steps_.size() && steps_[j + 1].sigma == steps_[j].sigma) continue;
    if (!out.empty() && out.back().u == steps_[j].u) continue;
    out.push_back(steps_[j]);
  }
  return out;
}

namespace {

// Corner rule shared by the real and rank views. `steps` must have distinct
// sigmas and distinct consecutive envelope values.
template <typename Emit>
void for_each_corner(std::span<const Step> steps, Emit&& emit) {
  emit(steps[0].sigma, Extended(0.0), 0);
  if (steps[0].u.is_infinite()) return;
  emit(steps[0].sigma, steps[0].u, 1);
  for (std::size_t j = 1; j < steps.size(); ++j) {
    emit(steps[j].sigma, steps[j - 1].u, 2);
    emit(steps[j].sigma, steps[j].u, 1);
    if (steps[j].u == Extended(0.0)) break;
  }
}

}  // namespace

std::vector<Corner> Staircase::corners() const {
  const auto steps = real_steps();
  std::vector<Corner> out;
  for_each_corner(std::span<const Step>(steps), [&](double sigma, const Extended& u, int type) {
    out.push_back({Grade{sigma, u.value()}, type});
  });
  return out;
}

std::vector<RankCorner> Staircase::rank_corners() const {
  if (!has_ranks()) throw InvariantViolation("staircase carries no rank information");
  // Rank view: one step per distinct sigma rank, merged on equal u_rank.
  std::vector<Step> steps;
  for (const Step& s : steps_) {
    if (!steps.empty() && steps.back().u_rank == s.u_rank) continue;
    steps.push_back(s);
  }
  std::vector<RankCorner> out;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const Step& s = steps[j];
    if (j == 0) {
      out.push_back({RankGrade{s.sigma_rank, 0}, Grade{s.sigma, 0.0}, 0});
      if (s.u.is_infinite()) break;
      out.push_back({RankGrade{s.sigma_rank, s.u_rank}, Grade{s.sigma, s.u.value()}, 1});
      continue;
    }
    const Step& p = steps[j - 1];
    out.push_back({RankGrade{s.sigma_rank, p.u_rank}, Grade{s.sigma, p.u.value()}, 2});
    out.push_back({RankGrade{s.sigma_rank, s.u_rank}, Grade{s.sigma, s.u.value()}, 1});
    if (s.u == Extended(0.0)) break;
  }
  return out;
}

bool staircase_contains(const Staircase& s, const Grade& g) { return s.contains(g); }

std::vector<Corner> staircase_corners(const Staircase& s) { return s.corners(); }

PointIndex DecoratedStaircase::conqueror_at(double sigma) const {
  if (conqueror.empty()) return base.owner();
  auto it = std::upper_bound(conqueror.begin(), conqueror.end(), sigma,
                             [](double v, const ConquerorRun& r) { return v < r.sigma_from; });
  if (it == conqueror.begin()) return conqueror.front().conqueror;
  return std::prev(it)->conqueror;
}

// ---------------------------------------------------------------------------
// Staircode

std::string to_string(Mode mode) { return mode == Mode::kEuclidean ? "euclidean" : "generic"; }

Mode mode_from_string(const std::string& text) {
  if (text == "generic") return Mode::kGeneric;
  if (text == "euclidean") return Mode::kEuclidean;
  throw InvalidInput("unknown mode '" + text + "' (expected generic or euclidean)");
}

Staircode::Staircode(std::vector<std::string> ids, PointOrder order,
                     std::vector<DecoratedStaircase> entries, StaircodeMeta meta)
    : ids_(std::move(ids)), order_(std::move(order)), entries_(std::move(entries)), meta_(meta) {
  const std::size_t n = entries_.size();
  if (n == 0) throw InvalidInput("staircode must have at least one entry");
  if (ids_.size() != n || order_.size() != n) throw InvalidInput("staircode size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].base.owner() != i) throw InvalidInput("staircode entry owner mismatch");
  }
  if (!entries_[order_.first()].base.is_quadrant()) {
    throw InvalidInput("the oldest point must own the full quadrant");
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (entries_[order_.at(k)].base.is_quadrant()) {
      throw InvalidInput("only the oldest point may own a quadrant");
    }
  }
}

std::size_t Staircode::count_containing(const Grade& g) const {
  std::size_t count = 0;
  for (const auto& e : entries_) count += e.base.contains(g) ? 1 : 0;
  return count;
}

// ---------------------------------------------------------------------------
// Line

Line::Line(Grade a, Grade b) {
  if (b.sigma < a.sigma) std::swap(a, b);
  const double ds = b.sigma - a.sigma;
  const double de = b.eps - a.eps;
  if (!std::isfinite(a.sigma) || !std::isfinite(a.eps) || !std::isfinite(b.sigma) ||
      !std::isfinite(b.eps) || !(ds > 0.0) || !(de > 0.0)) {
    throw InvalidInput("line must have positive slope");
  }
  const double norm = std::hypot(ds, de);
  origin_ = a;
  other_ = b;
  dir_sigma_ = ds / norm;
  dir_eps_ = de / norm;
  slope_ = de / ds;
}

}  // namespace staircode
