#pragma once

// Bounded time scales: finite unions of closed intervals and isolated points,
// together with their jump operators and a finite grid realization.

#include <cstddef>
#include <vector>

namespace tscale {

struct Segment {
  enum class Kind { Interval, Point };

  Kind kind = Kind::Point;
  double from = 0.0;
  double to = 0.0;

  static Segment point(double at) { return {Kind::Point, at, at}; }
  static Segment interval(double from, double to) { return {Kind::Interval, from, to}; }

  bool is_point() const { return kind == Kind::Point; }
  bool operator==(const Segment&) const = default;
};

struct PointClass {
  bool left_dense = false;
  bool right_dense = false;

  bool left_scattered() const { return !left_dense; }
  bool right_scattered() const { return !right_dense; }
  bool isolated() const { return !left_dense && !right_dense; }
  bool operator==(const PointClass&) const = default;
};

/// A nonempty closed bounded subset of the reals, stored as sorted, pairwise
/// disjoint, non-touching segments. Immutable after construction.
class TimeScale {
 public:
  const std::vector<Segment>& segments() const { return segments_; }
  double a() const { return segments_.front().from; }
  double b() const { return segments_.back().to; }

  /// Index of the segment containing t, or npos.
  std::size_t segment_of(double t) const;
  bool contains(double t) const { return segment_of(t) != npos; }

  /// Absolute tolerance used for membership tests.
  double tolerance() const;

  /// True when every member is scattered on each side that has a neighbour.
  bool all_isolated() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool operator==(const TimeScale&) const = default;

 private:
  friend TimeScale build_timescale(std::vector<Segment> segments);
  std::vector<Segment> segments_;
};

/// Sorts and merges overlapping or touching segments.
TimeScale build_timescale(std::vector<Segment> segments);

double sigma(const TimeScale& ts, double t);
double rho(const TimeScale& ts, double t);
double mu(const TimeScale& ts, double t);
PointClass classify(const TimeScale& ts, double t);

/// Finite realization of a time scale. Points t_0 < ... < t_N; mu_i = t_{i+1} - t_i.
struct Grid {
  enum class Origin { Original, Sampled };

  std::vector<double> points;
  std::vector<double> graininess;
  std::vector<Origin> origin;
  std::vector<std::size_t> segment;  // owning segment of each point
  double step = 0.0;

  /// N, the index of the last point (b).
  std::size_t last() const { return points.size() - 1; }
  std::size_t size() const { return points.size(); }
};

/// Every point segment and segment endpoint is kept; each interval [l, r] is
/// split into ceil((r - l) / step) equal parts.
Grid realize(const TimeScale& ts, double step);

}  // namespace tscale
