#pragma once

// Discrete spectrum of the Sturm-Liouville dynamic problem on a realized grid.
//
// The equation at t_i (i = 0..N-2) couples y_i, y_{i+1}, y_{i+2}. The Robin
// conditions eliminate y_0 = y_1 / (1 + h_a mu_0) and
// y_N = y_{N-1} (1 + h_b mu_{N-1}), leaving a tridiagonal operator on the
// N - 1 unknowns y_1..y_{N-1}.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "tscale/delta_calculus.hpp"
#include "tscale/problem.hpp"
#include "tscale/tridiagonal.hpp"

namespace tscale {

/// Relative tolerance below which a sample counts as a zero.
inline constexpr double kZeroTolerance = 1e-9;

/// A problem fixed on one grid: potential samples and Robin data. The grid
/// lives behind a shared pointer so GridFunctions built on it stay valid
/// across copies.
struct DiscreteProblem {
  std::shared_ptr<const Grid> grid;
  std::vector<double> q;  // q(t_i) at every grid point
  double ha = 0.0;
  double hb = 0.0;

  std::size_t last() const { return grid->last(); }
};

GridFunction sample_potential(const SLProblem& problem, const Grid& grid);

DiscreteProblem discretize(const SLProblem& problem, const Grid& grid);
DiscreteProblem discretize(const SLProblem& problem, double step);

Tridiagonal assemble(const DiscreteProblem& dp);
Tridiagonal assemble(const SLProblem& problem, const Grid& grid);

struct ShotResult {
  double chi = 0.0;            // y^D(rho(b)) - h_b y(rho(b)), in the units of `samples`
  std::vector<double> samples; // y_0..y_N from the forward recurrence
};

/// Forward recurrence from y_0 = 1, y^D_0 = h_a. The solution is rescaled by
/// powers of two every 64 steps, which preserves the sign of chi and the
/// ratio chi / |y|_inf.
ShotResult shoot(const DiscreteProblem& dp, double lambda);
ShotResult shoot(const SLProblem& problem, const Grid& grid, double lambda);

/// chi / |y|_inf; invariant under the rescaling done in shoot().
double scaled_chi(const DiscreteProblem& dp, double lambda);

struct Eigenpair {
  double lambda = 0.0;
  std::vector<double> samples;  // y_0..y_N, sup-norm 1, y_0 > 0
  std::size_t zero_count = 0;
  double residual = 0.0;        // max row-scaled defect of the N-1 equations
};

/// Eigenfunction for lambda from a twisted factorization of the assembled
/// matrix, with y_0 and y_N taken from the Robin conditions. Throws NotAnEigenvalue when the residual
/// exceeds 1e3 * tol.
Eigenpair eigenpair(const DiscreteProblem& dp, double lambda, double tol);
Eigenpair eigenpair(const SLProblem& problem, const Grid& grid, double lambda, double tol);

/// Zeros at interior points plus nodes y(t_i) y(t_{i+1}) < 0 between nonzero
/// samples, over the open interval (a, b).
std::size_t count_generalized_zeros(std::span<const double> samples, const Grid& grid);

struct CrossCheck {
  double lambda_matrix = 0.0;
  double lambda_shooting = 0.0;  // one Newton step on chi from lambda_matrix
  double offset = 0.0;           // |lambda_shooting - lambda_matrix|
  double allowed = 0.0;
  bool sign_change = false;
};

CrossCheck cross_check(const DiscreteProblem& dp, double lambda, double gap, double tol);

/// Refines a matrix eigenvalue bracketed by [lo, hi] by bisection on the sign
/// of chi, down to adjacent doubles. Returns nullopt when chi does not change
/// sign across the bracket.
std::optional<double> polish(const DiscreteProblem& dp, double lo, double hi);

struct SpectrumResult {
  DiscreteProblem problem;
  Spectrum spectrum;
  std::vector<Eigenpair> pairs;
  std::vector<CrossCheck> checks;
};

struct SolveOptions {
  double step = 0.0;  // <= 0 selects (b - a) / 1000
  double tol = 1e-10;
  std::optional<std::size_t> count;  // lowest `count` eigenvalues, default all
  bool polish = true;                // refine each eigenvalue on chi after bisection
};

double default_step(const TimeScale& ts);

/// realize -> assemble -> symmetrize -> bisection, then an eigenpair and a
/// shooting cross-check for every computed eigenvalue.
SpectrumResult spectrum(const SLProblem& problem, const SolveOptions& options = {});
SpectrumResult spectrum(const DiscreteProblem& dp, double tol, std::optional<std::size_t> count = std::nullopt,
                        bool polish = true);

}  // namespace tscale
