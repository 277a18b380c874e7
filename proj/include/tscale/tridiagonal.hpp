#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace tscale {

/// General tridiagonal matrix of order M: sub[j] = A(j+1, j), super[j] = A(j, j+1).
struct Tridiagonal {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  std::size_t order() const { return diag.size(); }
};

/// Symmetric tridiagonal matrix; off[j] = A(j+1, j) = A(j, j+1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t order() const { return diag.size(); }
};

/// Sorted eigenvalues, strictly increasing.
struct Spectrum {
  std::vector<double> values;
};

/// Diagonal similarity D^{-1} A D giving off-diagonals sqrt(super_j * sub_j).
/// Requires super_j * sub_j > 0 for every j.
SymTridiagonal symmetrize(const Tridiagonal& m);

/// Number of eigenvalues strictly below x (Sturm count from the pivots of
/// the LDL^T factorization of m - x I).
std::size_t count_below(const SymTridiagonal& m, double x);

struct Interval {
  double lo;
  double hi;
};

Interval gershgorin_bounds(const SymTridiagonal& m);

/// Bisection on count_below. Each eigenvalue is bracketed to a width of at
/// most tol * max(1, |bracket end|), or until the bracket cannot shrink in
/// floating point. `count` limits the result to the lowest eigenvalues.
Spectrum eigenvalues(const SymTridiagonal& m, double tol, std::optional<std::size_t> count = std::nullopt);
Spectrum eigenvalues(const Tridiagonal& m, double tol, std::optional<std::size_t> count = std::nullopt);

}  // namespace tscale
