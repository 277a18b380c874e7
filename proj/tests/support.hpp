#pragma once

// Test-only generators and independent oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tscale/problem.hpp"
#include "tscale/timescale.hpp"

namespace tscale::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

inline TimeScale isolated_scale(const std::vector<double>& points) {
  std::vector<Segment> segs;
  for (double p : points) segs.push_back(Segment::point(p));
  return build_timescale(segs);
}

/// Points 0 = t_0 < ... < t_N with gaps in [min_gap, max_gap).
inline std::vector<double> random_points(Rng& rng, int n, double max_gap = 2.0, double min_gap = 1e-2) {
  std::vector<double> pts{0.0};
  for (int i = 0; i < n; ++i) pts.push_back(pts.back() + rng.uniform(min_gap, max_gap));
  return pts;
}

struct RandomInstance {
  SLProblem problem;
  std::vector<double> q;  // one value per point
};

/// Isolated scale with 3 <= N <= 12, gaps in (0, 2], q in [-5, 5]. Robin
/// coefficients in [-2, 2] with 1 + h*mu > 0 at both ends, or Neumann.
inline RandomInstance random_isolated(Rng& rng, bool neumann) {
  const int n = rng.integer(3, 12);
  const std::vector<double> pts = random_points(rng, n);
  std::vector<double> q(pts.size());
  for (double& v : q) v = rng.uniform(-5.0, 5.0);
  double ha = 0.0;
  double hb = 0.0;
  if (!neumann) {
    const double mu_a = pts[1] - pts[0];
    const double mu_rb = pts[n] - pts[n - 1];
    do {
      ha = rng.uniform(-2.0, 2.0);
    } while (1.0 + ha * mu_a <= 1e-3);
    do {
      hb = rng.uniform(-2.0, 2.0);
    } while (1.0 + hb * mu_rb <= 1e-3);
  }
  TimeScale ts = isolated_scale(pts);
  return {make_problem(ts, PotentialSpec::per_segment(q), ha, hb), q};
}

/// The unrestricted campaign: gaps in (0, 2], q in [-5, 5], h_a and h_b in
/// [-2, 2] with only 1 + h*mu != 0 required, so either Robin factor may be
/// negative. Neumann instances have h_a = h_b = 0.
inline RandomInstance random_isolated_general(Rng& rng, bool neumann) {
  const int n = rng.integer(3, 12);
  std::vector<double> pts{0.0};
  for (int i = 0; i < n; ++i) pts.push_back(pts.back() + (2.0 - rng.uniform(0.0, 2.0)));
  std::vector<double> q(pts.size());
  for (double& v : q) v = rng.uniform(-5.0, 5.0);
  double ha = 0.0;
  double hb = 0.0;
  if (!neumann) {
    const double mu_a = pts[1] - pts[0];
    const double mu_rb = pts[n] - pts[n - 1];
    do {
      ha = rng.uniform(-2.0, 2.0);
    } while (std::abs(1.0 + ha * mu_a) <= 1e-10);
    do {
      hb = rng.uniform(-2.0, 2.0);
    } while (std::abs(1.0 + hb * mu_rb) <= 1e-10);
  }
  TimeScale ts = isolated_scale(pts);
  return {make_problem(ts, PotentialSpec::per_segment(q), ha, hb), q};
}

/// Dense operator on y_1..y_{N-1}, built column by column by applying
/// -y^{DD}_i + q_i y_{i+1} to unit vectors extended by the Robin conditions.
inline Eigen::MatrixXd dense_operator(const std::vector<double>& t, const std::vector<double>& q, double ha,
                                      double hb) {
  const std::size_t n = t.size() - 1;
  const std::size_t m = n - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> y(n + 1, 0.0);
    y[j + 1] = 1.0;
    // y^D(a) = h_a y(a)  <=>  y_1 = y_0 (1 + h_a mu_0)
    y[0] = y[1] / (1.0 + ha * (t[1] - t[0]));
    y[n] = y[n - 1] * (1.0 + hb * (t[n] - t[n - 1]));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double m0 = t[i + 1] - t[i];
      const double m1 = t[i + 2] - t[i + 1];
      const double dd = ((y[i + 2] - y[i + 1]) / m1 - (y[i + 1] - y[i]) / m0) / m0;
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -dd + q[i] * y[i + 1];
    }
  }
  return a;
}

/// Eigenvalues of the dense operator via a general (nonsymmetric) solver.
inline std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& a, double* max_imag = nullptr) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  std::vector<double> out;
  double imag = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    out.push_back(es.eigenvalues()[i].real());
    imag = std::max(imag, std::abs(es.eigenvalues()[i].imag()));
  }
  if (max_imag) *max_imag = imag;
  std::sort(out.begin(), out.end());
  return out;
}

/// Closed-form spectrum of the uniform Neumann grid operator with M unknowns:
/// (2 / mu^2) (1 - cos(k pi / M)), k = 0..M-1.
inline double neumann_uniform_eigenvalue(std::size_t k, std::size_t unknowns, double mu) {
  return 2.0 / (mu * mu) * (1.0 - std::cos(static_cast<double>(k) * M_PI / static_cast<double>(unknowns)));
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace tscale::testing
