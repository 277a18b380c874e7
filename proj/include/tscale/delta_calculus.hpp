#pragma once

// Delta calculus on a realized grid. Every grid point except t_N is
// right-scattered, so the forward-quotient formulas below are the exact delta
// derivative and the left sum is the exact delta integral on the grid.

#include <cstddef>
#include <span>
#include <vector>

#include "tscale/timescale.hpp"

namespace tscale {

/// Samples of a function on the first size() points of a grid. A full
/// function has one value per grid point; derivatives live on a prefix
/// (T^k is indices 0..N-1, T^{k^2} is 0..N-2), so length encodes the domain.
/// The grid must outlive every GridFunction built on it.
class GridFunction {
 public:
  GridFunction(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return *grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  bool is_full() const { return values_.size() == grid_->size(); }

 private:
  const Grid* grid_;
  std::vector<double> values_;
};

/// f^sigma. On a full function the last value is kept (sigma(b) = b);
/// on a prefix the result is one shorter.
GridFunction sigma_shift(const GridFunction& f);

/// f^Delta_i = (f_{i+1} - f_i) / mu_i; one shorter than f.
GridFunction delta_derivative(const GridFunction& f);

GridFunction second_delta_derivative(const GridFunction& f);

/// Sum of mu_i * f_i for i in [from, to).
double delta_integral(const GridFunction& f, std::size_t from, std::size_t to);

}  // namespace tscale
