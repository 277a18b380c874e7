#include "tscale/delta_calculus.hpp"

#include <cmath>
#include <sstream>

#include "tscale/error.hpp"

namespace tscale {

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(&grid), values_(std::move(values)) {
  if (values_.empty() || values_.size() > grid.size())
    throw Error(ErrorKind::InvalidArgument, "grid function length must be in [1, grid size]");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "grid function value is not finite");
}

GridFunction sigma_shift(const GridFunction& f) {
  const std::size_t n = f.size();
  if (n < 2 && !f.is_full()) throw Error(ErrorKind::InvalidArgument, "sigma_shift needs two values");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(f[i + 1]);
  if (f.is_full()) out.push_back(f[n - 1]);
  return GridFunction(f.grid(), std::move(out));
}

GridFunction delta_derivative(const GridFunction& f) {
  const std::size_t n = f.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "delta derivative needs at least two values");
  const auto& mu = f.grid().graininess;
  std::vector<double> out(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(mu[i] > 0.0)) throw Error(ErrorKind::InvariantBreach, "zero graininess on grid");
    out[i] = (f[i + 1] - f[i]) / mu[i];
  }
  return GridFunction(f.grid(), std::move(out));
}

GridFunction second_delta_derivative(const GridFunction& f) {
  if (f.size() < 3) throw Error(ErrorKind::InvalidArgument, "second delta derivative needs at least three values");
  return delta_derivative(delta_derivative(f));
}

double delta_integral(const GridFunction& f, std::size_t from, std::size_t to) {
  if (from > to) throw Error(ErrorKind::InvalidArgument, "delta integral with from > to");
  if (to > f.grid().last() || (to > from && to - 1 >= f.size())) {
    std::ostringstream os;
    os << "delta integral range [" << from << ", " << to << ") outside function domain of size " << f.size();
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  const auto& mu = f.grid().graininess;
  double sum = 0.0;
  for (std::size_t i = from; i < to; ++i) sum += mu[i] * f[i];
  return sum;
}

}  // namespace tscale
