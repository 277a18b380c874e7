#include "tscale/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tscale/error.hpp"

namespace tscale {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

std::size_t require_member(const TimeScale& ts, double t) {
  const std::size_t k = ts.segment_of(t);
  if (k == TimeScale::npos) {
    std::ostringstream os;
    os << "point " << t << " is not a member of the time scale";
    fail(ErrorKind::InvalidArgument, os.str());
  }
  return k;
}

}  // namespace

double TimeScale::tolerance() const {
  return 1e-12 * std::max({1.0, std::abs(a()), std::abs(b())});
}

std::size_t TimeScale::segment_of(double t) const {
  if (!std::isfinite(t)) return npos;
  const double tol = tolerance();
  // first segment whose right end is not left of t
  auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                             [tol](const Segment& s, double x) { return s.to + tol < x; });
  if (it == segments_.end() || t < it->from - tol) return npos;
  return static_cast<std::size_t>(it - segments_.begin());
}

bool TimeScale::all_isolated() const {
  return std::all_of(segments_.begin(), segments_.end(), [](const Segment& s) { return s.is_point(); });
}

TimeScale build_timescale(std::vector<Segment> segments) {
  if (segments.empty()) fail(ErrorKind::InvalidArgument, "time scale needs at least one segment");
  for (const Segment& s : segments) {
    if (!std::isfinite(s.from) || !std::isfinite(s.to))
      fail(ErrorKind::InvalidArgument, "segment endpoint is NaN or infinite");
    if (s.from > s.to) fail(ErrorKind::InvalidArgument, "segment has from > to");
    if (s.is_point() && s.from != s.to) fail(ErrorKind::InvalidArgument, "point segment has from != to");
    if (!s.is_point() && s.from == s.to)
      fail(ErrorKind::InvalidArgument, "interval segment must have from < to");
  }

  std::sort(segments.begin(), segments.end(), [](const Segment& l, const Segment& r) {
    return l.from < r.from || (l.from == r.from && l.to < r.to);
  });

  const double scale = std::max({1.0, std::abs(segments.front().from), std::abs(segments.back().to)});
  const double tol = 1e-12 * scale;

  std::vector<Segment> merged;
  merged.reserve(segments.size());
  for (const Segment& s : segments) {
    if (!merged.empty() && s.from <= merged.back().to + tol) {
      Segment& cur = merged.back();
      cur.to = std::max(cur.to, s.to);
      cur.kind = cur.to > cur.from ? Segment::Kind::Interval : Segment::Kind::Point;
    } else {
      merged.push_back(s);
    }
  }

  TimeScale ts;
  ts.segments_ = std::move(merged);
  return ts;
}

double sigma(const TimeScale& ts, double t) {
  const std::size_t k = require_member(ts, t);
  const Segment& s = ts.segments()[k];
  if (!s.is_point() && t < s.to - ts.tolerance()) return std::max(t, s.from);
  if (k + 1 == ts.segments().size()) return ts.b();
  return ts.segments()[k + 1].from;
}

double rho(const TimeScale& ts, double t) {
  const std::size_t k = require_member(ts, t);
  const Segment& s = ts.segments()[k];
  if (!s.is_point() && t > s.from + ts.tolerance()) return std::min(t, s.to);
  if (k == 0) return ts.a();
  return ts.segments()[k - 1].to;
}

double mu(const TimeScale& ts, double t) { return std::max(0.0, sigma(ts, t) - t); }

PointClass classify(const TimeScale& ts, double t) {
  const std::size_t k = require_member(ts, t);
  const Segment& s = ts.segments()[k];
  const double tol = ts.tolerance();
  PointClass pc;
  const bool at_right_end = s.is_point() || t >= s.to - tol;
  const bool at_left_end = s.is_point() || t <= s.from + tol;
  // sigma(b) = b and rho(a) = a make the extreme points dense on their outer side
  pc.right_dense = !at_right_end || k + 1 == ts.segments().size();
  pc.left_dense = !at_left_end || k == 0;
  return pc;
}

Grid realize(const TimeScale& ts, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    fail(ErrorKind::InvalidArgument, "grid step must be positive and finite");

  Grid g;
  g.step = step;
  for (std::size_t k = 0; k < ts.segments().size(); ++k) {
    const Segment& s = ts.segments()[k];
    if (s.is_point()) {
      g.points.push_back(s.from);
      g.origin.push_back(Grid::Origin::Original);
      g.segment.push_back(k);
      continue;
    }
    const double len = s.to - s.from;
    const auto parts = static_cast<std::size_t>(std::max(1.0, std::ceil(len / step)));
    for (std::size_t j = 0; j <= parts; ++j) {
      const double t = j == parts ? s.to : s.from + len * (static_cast<double>(j) / static_cast<double>(parts));
      g.points.push_back(t);
      g.origin.push_back(j == 0 || j == parts ? Grid::Origin::Original : Grid::Origin::Sampled);
      g.segment.push_back(k);
    }
  }

  if (g.points.size() < 3)
    fail(ErrorKind::StandingAssumption, "degenerate time scale: a = rho(b)");

  g.graininess.resize(g.points.size() - 1);
  for (std::size_t i = 0; i + 1 < g.points.size(); ++i) {
    g.graininess[i] = g.points[i + 1] - g.points[i];
    if (!(g.graininess[i] > 0.0))
      fail(ErrorKind::InvariantBreach, "realized grid is not strictly increasing");
  }
  return g;
}

}  // namespace tscale
