#pragma once

// Domain types shared by every module: augmented metric spaces, the generic
// (tie-broken) ordering, grades, staircases and their decorations, lines and bars.
//
// Grades are stored (sigma, eps): sigma is the filter value (horizontal axis),
// eps the Rips scale (vertical axis).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace staircode {

using PointIndex = std::uint32_t;

/// Raised for malformed or inconsistent user input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal structural invariant does not hold.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A real number or +infinity. Infinity is a flag, never a float value, so no
/// arithmetic is ever performed on it.
class Extended {
 public:
  constexpr Extended() = default;
  constexpr explicit Extended(double value) : value_(value) {}

  static constexpr Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws on infinity.
  [[nodiscard]] double value() const {
    if (infinite_) throw InvariantViolation("Extended::value() called on +inf");
    return value_;
  }

  /// True iff x < *this.
  [[nodiscard]] constexpr bool exceeds(double x) const { return infinite_ || x < value_; }

  friend constexpr bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr std::partial_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Index of the unordered pair {a, b} (a != b) in lower-triangular storage.
constexpr std::uint64_t pair_index(PointIndex a, PointIndex b) {
  const std::uint64_t hi = a > b ? a : b;
  const std::uint64_t lo = a > b ? b : a;
  return hi * (hi - 1) / 2 + lo;
}

constexpr std::uint64_t pair_count(std::size_t n) {
  return static_cast<std::uint64_t>(n) * (n == 0 ? 0 : n - 1) / 2;
}

/// (X, d_X, f_X): labelled points, a filter value per point and a symmetric
/// nonnegative dissimilarity. The triangle inequality is not required.
class AugmentedMetricSpace {
 public:
  /// `lower_triangle` holds d(i, j) for i > j at pair_index(i, j).
  static AugmentedMetricSpace from_distances(std::vector<std::string> ids,
                                             std::vector<double> filter,
                                             std::vector<double> lower_triangle);

  /// Euclidean mode. `coords` is row-major n x dim.
  static AugmentedMetricSpace from_coordinates(std::vector<std::string> ids,
                                               std::vector<double> filter,
                                               std::vector<double> coords,
                                               std::size_t dim);

  /// Both representations; distances must match the coordinates within 1e-9 relative.
  static AugmentedMetricSpace from_parts(std::vector<std::string> ids, std::vector<double> filter,
                                         std::vector<double> lower_triangle,
                                         std::vector<double> coords, std::size_t dim);

  [[nodiscard]] std::size_t size() const { return filter_.size(); }
  [[nodiscard]] const std::string& id(PointIndex i) const { return ids_.at(i); }
  [[nodiscard]] const std::vector<std::string>& ids() const { return ids_; }
  [[nodiscard]] double filter(PointIndex i) const { return filter_[i]; }
  [[nodiscard]] std::span<const double> filter_values() const { return filter_; }
  [[nodiscard]] double distance(PointIndex a, PointIndex b) const {
    return a == b ? 0.0 : dist_[pair_index(a, b)];
  }
  [[nodiscard]] std::span<const double> lower_triangle() const { return dist_; }
  [[nodiscard]] bool has_coordinates() const { return dim_ > 0; }
  [[nodiscard]] std::size_t dimension() const { return dim_; }
  [[nodiscard]] std::span<const double> coordinates(PointIndex i) const {
    return std::span<const double>(coords_).subspan(static_cast<std::size_t>(i) * dim_, dim_);
  }
  [[nodiscard]] std::span<const double> all_coordinates() const { return coords_; }
  [[nodiscard]] std::optional<PointIndex> index_of(const std::string& id) const;

 private:
  AugmentedMetricSpace() = default;
  void validate_common();

  std::vector<std::string> ids_;
  std::vector<double> filter_;
  std::vector<double> dist_;
  std::vector<double> coords_;
  std::size_t dim_ = 0;
  std::unordered_map<std::string, PointIndex> index_;
};

/// A total order on the points, stored both ways.
class PointOrder {
 public:
  PointOrder() = default;
  /// `sequence[k]` is the k-th point. Must be a permutation of [0, n).
  explicit PointOrder(std::vector<PointIndex> sequence);

  [[nodiscard]] std::size_t size() const { return sequence_.size(); }
  [[nodiscard]] PointIndex at(std::size_t k) const { return sequence_[k]; }
  [[nodiscard]] std::uint32_t position(PointIndex x) const { return position_[x]; }
  [[nodiscard]] std::span<const PointIndex> sequence() const { return sequence_; }
  [[nodiscard]] std::span<const std::uint32_t> positions() const { return position_; }
  [[nodiscard]] bool before(PointIndex a, PointIndex b) const { return position_[a] < position_[b]; }
  [[nodiscard]] PointIndex first() const { return sequence_.front(); }

  friend bool operator==(const PointOrder& a, const PointOrder& b) { return a.sequence_ == b.sequence_; }

 private:
  std::vector<PointIndex> sequence_;
  std::vector<std::uint32_t> position_;
};

/// Total orders on points (compatible with f) and on pairs (compatible with d).
/// Default tie-breaks: input index for points, lexicographic (min, max) index for pairs.
class GenericOrdering {
 public:
  explicit GenericOrdering(const AugmentedMetricSpace& space);
  /// Explicit point order; throws InvalidInput unless f(x) < f(y) implies x before y.
  GenericOrdering(const AugmentedMetricSpace& space, std::vector<PointIndex> point_sequence);

  [[nodiscard]] const PointOrder& points() const { return points_; }
  /// 1-based rank of a point (f^Z).
  [[nodiscard]] std::uint32_t f_rank(PointIndex x) const { return points_.position(x) + 1; }
  /// 1-based rank of a pair (d^Z).
  [[nodiscard]] std::uint64_t d_rank(PointIndex a, PointIndex b) const {
    return pair_rank_[pair_index(a, b)];
  }
  /// The pair with the given 1-based rank, as (lower index, higher index).
  [[nodiscard]] std::pair<PointIndex, PointIndex> pair_at_rank(std::uint64_t rank) const;
  [[nodiscard]] bool point_ties() const { return point_ties_; }
  [[nodiscard]] bool distance_ties() const { return distance_ties_; }

 private:
  void build_pairs(const AugmentedMetricSpace& space);

  PointOrder points_;
  std::vector<std::uint32_t> pair_rank_;  // by pair_index
  std::vector<std::pair<PointIndex, PointIndex>> pair_by_rank_;
  bool point_ties_ = false;
  bool distance_ties_ = false;
};

/// Default point order: by (f, input index).
PointOrder default_point_order(std::span<const double> filter);
/// True iff f(x) < f(y) implies x before y.
bool is_compatible(const PointOrder& order, std::span<const double> filter);

struct Grade {
  double sigma = 0.0;
  double eps = 0.0;
  friend auto operator<=>(const Grade&, const Grade&) = default;
};

/// Grade in the integer-indexed filtration: sigma_rank in 1..n, eps_rank in 0..n(n-1)/2.
struct RankGrade {
  std::uint32_t sigma_rank = 0;
  std::uint64_t eps_rank = 0;
  friend auto operator<=>(const RankGrade&, const RankGrade&) = default;
};

inline constexpr std::uint64_t kInfiniteRank = std::numeric_limits<std::uint64_t>::max();

/// One step of a staircase envelope: u(s) = u for s in [sigma, next sigma).
/// Ranks are 0 when not tracked; u_rank is kInfiniteRank when u is infinite.
struct Step {
  double sigma = 0.0;
  Extended u;
  std::uint32_t sigma_rank = 0;
  std::uint64_t u_rank = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Corner {
  Grade grade;
  int type = 0;  // 0: minimum, 1: vertical-to-horizontal (inner), 2: horizontal-to-vertical (outer)
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct RankCorner {
  RankGrade rank;
  Grade grade;
  int type = 0;
};

/// Region {(s, e) : s >= birth_sigma, 0 <= e < u(s)} with u a non-increasing step function.
///
/// Steps may be recorded at rank granularity: several steps can share a real
/// sigma when f has ties (their ranks differ). Real-valued queries always use
/// the last step whose sigma is <= the query sigma.
class Staircase {
 public:
  Staircase(PointIndex owner, std::vector<Step> steps);
  static Staircase quadrant(PointIndex owner, double sigma, std::uint32_t sigma_rank = 0);

  [[nodiscard]] PointIndex owner() const { return owner_; }
  [[nodiscard]] double birth_sigma() const { return steps_.front().sigma; }
  [[nodiscard]] std::span<const Step> steps() const { return steps_; }
  [[nodiscard]] bool is_quadrant() const { return steps_.front().u.is_infinite(); }
  [[nodiscard]] bool has_ranks() const;

  /// u(sigma); zero left of the birth.
  [[nodiscard]] Extended envelope_at(double sigma) const;
  [[nodiscard]] bool contains(const Grade& g) const;

  /// Steps in real coordinates: zero-width steps dropped, equal neighbours merged.
  [[nodiscard]] std::vector<Step> real_steps() const;
  /// Corner points in real coordinates.
  [[nodiscard]] std::vector<Corner> corners() const;
  /// Corner points at rank granularity (requires has_ranks()).
  [[nodiscard]] std::vector<RankCorner> rank_corners() const;

  friend bool operator==(const Staircase&, const Staircase&) = default;

 private:
  PointIndex owner_ = 0;
  std::vector<Step> steps_;
};

bool staircase_contains(const Staircase& s, const Grade& g);
std::vector<Corner> staircase_corners(const Staircase& s);

struct ConquerorRun {
  double sigma_from = 0.0;
  PointIndex conqueror = 0;
  std::uint32_t sigma_rank = 0;
  friend bool operator==(const ConquerorRun&, const ConquerorRun&) = default;
};

/// A staircase together with its conqueror function c(sigma), stored as runs.
struct DecoratedStaircase {
  Staircase base;
  std::vector<ConquerorRun> conqueror;

  /// Conqueror at a real sigma >= birth (last run starting at or before sigma).
  [[nodiscard]] PointIndex conqueror_at(double sigma) const;
  friend bool operator==(const DecoratedStaircase&, const DecoratedStaircase&) = default;
};

enum class Mode { kGeneric, kEuclidean };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& text);

struct StaircodeMeta {
  Mode mode = Mode::kGeneric;
  bool point_ties = false;
  bool distance_ties = false;
  friend bool operator==(const StaircodeMeta&, const StaircodeMeta&) = default;
};

/// The decorated elder-rule staircode: exactly one entry per point, indexed by point.
class Staircode {
 public:
  Staircode(std::vector<std::string> ids, PointOrder order, std::vector<DecoratedStaircase> entries,
            StaircodeMeta meta);

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] const std::vector<std::string>& ids() const { return ids_; }
  [[nodiscard]] const std::string& id(PointIndex i) const { return ids_.at(i); }
  [[nodiscard]] const PointOrder& order() const { return order_; }
  [[nodiscard]] const DecoratedStaircase& entry(PointIndex i) const { return entries_.at(i); }
  [[nodiscard]] const Staircase& staircase(PointIndex i) const { return entries_.at(i).base; }
  [[nodiscard]] std::span<const DecoratedStaircase> entries() const { return entries_; }
  [[nodiscard]] const StaircodeMeta& meta() const { return meta_; }

  /// Number of staircases containing g.
  [[nodiscard]] std::size_t count_containing(const Grade& g) const;

  friend bool operator==(const Staircode&, const Staircode&) = default;

 private:
  std::vector<std::string> ids_;
  PointOrder order_;
  std::vector<DecoratedStaircase> entries_;
  StaircodeMeta meta_;
};

/// A line of strictly positive finite slope, parameterized by arc length from
/// the anchor with the smaller sigma.
class Line {
 public:
  /// Throws InvalidInput("line must have positive slope") for slopes <= 0 or vertical lines.
  Line(Grade a, Grade b);

  [[nodiscard]] const Grade& origin() const { return origin_; }
  [[nodiscard]] const Grade& anchor_b() const { return other_; }
  [[nodiscard]] double slope() const { return slope_; }
  [[nodiscard]] double t_at_sigma(double sigma) const { return (sigma - origin_.sigma) / dir_sigma_; }
  [[nodiscard]] double t_at_eps(double eps) const { return (eps - origin_.eps) / dir_eps_; }
  [[nodiscard]] Extended t_at_eps(const Extended& eps) const {
    return eps.is_infinite() ? Extended::infinity() : Extended(t_at_eps(eps.value()));
  }
  [[nodiscard]] Grade point_at(double t) const {
    return {origin_.sigma + t * dir_sigma_, origin_.eps + t * dir_eps_};
  }
  /// sigma where the line crosses eps = 0.
  [[nodiscard]] double axis_crossing() const { return origin_.sigma - origin_.eps / slope_; }
  /// eps on the line above a given sigma.
  [[nodiscard]] double eps_at_sigma(double sigma) const {
    return origin_.eps + (sigma - origin_.sigma) * slope_;
  }
  /// First parameter at which a point born at (f, 0) is present on the line.
  [[nodiscard]] double entry_t(double f) const { return std::max(t_at_sigma(f), t_at_eps(0.0)); }

 private:
  Grade origin_;
  Grade other_;
  double dir_sigma_ = 0.0;
  double dir_eps_ = 0.0;
  double slope_ = 0.0;
};

/// Half-open bar [birth_t, death_t) on a line, with plane coordinates of its ends.
struct Bar {
  PointIndex owner = 0;
  double birth_t = 0.0;
  Extended death_t;
  Grade birth_point;
  std::optional<Grade> death_point;
};

}  // namespace staircode
