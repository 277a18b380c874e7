#pragma once

// Sturm-Liouville problem  -y^{DD}(t) + q(t) y^sigma(t) = lambda y^sigma(t)
// with Robin conditions y^D(a) - h_a y(a) = 0 and y^D(rho(b)) - h_b y(rho(b)) = 0.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tscale/timescale.hpp"

namespace tscale {

struct PotentialPiece {
  enum class Kind { Constant, Polynomial, Samples };

  std::size_t segment = 0;
  Kind kind = Kind::Constant;
  double value = 0.0;                               // Constant
  std::vector<double> coeffs;                       // Polynomial, ascending degree
  std::vector<std::pair<double, double>> samples;   // Samples, (t, q) sorted by t

  static PotentialPiece constant(std::size_t segment, double value);
  static PotentialPiece polynomial(std::size_t segment, std::vector<double> coeffs);
  static PotentialPiece sampled(std::size_t segment, std::vector<std::pair<double, double>> samples);

  /// Value at t; sample data is interpolated linearly and held constant
  /// outside its hull.
  double evaluate(double t) const;

  bool operator==(const PotentialPiece&) const = default;
};

/// One piece per segment of the (normalized) time scale.
struct PotentialSpec {
  std::vector<PotentialPiece> pieces;

  static PotentialSpec constant(const TimeScale& ts, double value);
  /// One constant per segment, in segment order.
  static PotentialSpec per_segment(std::span<const double> values);

  bool operator==(const PotentialSpec&) const = default;
};

struct SLProblem {
  TimeScale ts;
  PotentialSpec q;
  double ha = 0.0;
  double hb = 0.0;

  bool is_neumann() const { return ha == 0.0 && hb == 0.0; }
  bool operator==(const SLProblem&) const = default;
};

/// Validates the potential against the time scale and the standing
/// assumptions a != rho(b), 1 + h_a mu(a) != 0, 1 + h_b mu(rho(b)) != 0.
SLProblem make_problem(TimeScale ts, PotentialSpec q, double ha, double hb);

}  // namespace tscale
