#include "tscale/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tscale/error.hpp"

namespace tscale {

namespace {

constexpr double kRobinGuard = 1e-10;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

}  // namespace

PotentialPiece PotentialPiece::constant(std::size_t segment, double value) {
  PotentialPiece p;
  p.segment = segment;
  p.kind = Kind::Constant;
  p.value = value;
  return p;
}

PotentialPiece PotentialPiece::polynomial(std::size_t segment, std::vector<double> coeffs) {
  if (coeffs.empty()) invalid("polynomial potential needs at least one coefficient");
  PotentialPiece p;
  p.segment = segment;
  p.kind = Kind::Polynomial;
  p.coeffs = std::move(coeffs);
  return p;
}

PotentialPiece PotentialPiece::sampled(std::size_t segment, std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) invalid("sampled potential needs at least one sample");
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].first == samples[i - 1].first) invalid("sampled potential has duplicate abscissae");
  PotentialPiece p;
  p.segment = segment;
  p.kind = Kind::Samples;
  p.samples = std::move(samples);
  return p;
}

double PotentialPiece::evaluate(double t) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Polynomial: {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
      return acc;
    }
    case Kind::Samples: {
      if (t <= samples.front().first) return samples.front().second;
      if (t >= samples.back().first) return samples.back().second;
      auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                                 [](double x, const std::pair<double, double>& s) { return x < s.first; });
      auto lo = hi - 1;
      const double w = (t - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  return 0.0;
}

PotentialSpec PotentialSpec::constant(const TimeScale& ts, double value) {
  PotentialSpec q;
  for (std::size_t k = 0; k < ts.segments().size(); ++k) q.pieces.push_back(PotentialPiece::constant(k, value));
  return q;
}

PotentialSpec PotentialSpec::per_segment(std::span<const double> values) {
  PotentialSpec q;
  for (std::size_t k = 0; k < values.size(); ++k) q.pieces.push_back(PotentialPiece::constant(k, values[k]));
  return q;
}

SLProblem make_problem(TimeScale ts, PotentialSpec q, double ha, double hb) {
  if (!std::isfinite(ha) || !std::isfinite(hb)) invalid("Robin coefficients must be finite");

  const auto& segs = ts.segments();
  if (q.pieces.size() != segs.size()) {
    std::ostringstream os;
    os << "potential piece count mismatch: " << q.pieces.size() << " pieces for " << segs.size() << " segments";
    invalid(os.str());
  }
  std::sort(q.pieces.begin(), q.pieces.end(),
            [](const PotentialPiece& l, const PotentialPiece& r) { return l.segment < r.segment; });
  const double tol = ts.tolerance();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const PotentialPiece& p = q.pieces[k];
    if (p.segment != k) invalid("potential must have exactly one piece per segment");
    auto finite = [](double x) { return std::isfinite(x); };
    if (p.kind == PotentialPiece::Kind::Constant && !finite(p.value)) invalid("potential value is not finite");
    if (p.kind == PotentialPiece::Kind::Polynomial &&
        (p.coeffs.empty() || !std::all_of(p.coeffs.begin(), p.coeffs.end(), finite)))
      invalid("polynomial potential coefficients must be finite and nonempty");
    if (p.kind == PotentialPiece::Kind::Samples) {
      if (p.samples.empty()) invalid("sampled potential needs at least one sample");
      for (const auto& [t, v] : p.samples) {
        if (!finite(t) || !finite(v)) invalid("sampled potential has non-finite data");
        if (t < segs[k].from - tol || t > segs[k].to + tol) {
          std::ostringstream os;
          os << "potential sample at t = " << t << " lies outside segment " << k;
          invalid(os.str());
        }
      }
    }
  }

  const double a = ts.a();
  const double rb = rho(ts, ts.b());
  if (!(rb > a)) throw Error(ErrorKind::StandingAssumption, "standing assumption violated: a = rho(b)");
  if (std::abs(1.0 + ha * mu(ts, a)) <= kRobinGuard)
    throw Error(ErrorKind::StandingAssumption, "standing assumption violated: 1 + h_a*mu(a) = 0");
  if (std::abs(1.0 + hb * mu(ts, rb)) <= kRobinGuard)
    throw Error(ErrorKind::StandingAssumption, "standing assumption violated: 1 + h_b*mu(rho(b)) = 0");

  return SLProblem{std::move(ts), std::move(q), ha, hb};
}

}  // namespace tscale
