#include "tscale/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tscale/error.hpp"

namespace tscale {

namespace {

void check_shape(const Tridiagonal& m) {
  const std::size_t n = m.order();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "tridiagonal matrix is empty");
  if (m.sub.size() + 1 != n || m.super.size() + 1 != n)
    throw Error(ErrorKind::InvalidArgument, "tridiagonal band lengths are inconsistent");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(m.sub) || !finite(m.diag) || !finite(m.super))
    throw Error(ErrorKind::InvalidArgument, "tridiagonal matrix has non-finite entries");
}

}  // namespace

SymTridiagonal symmetrize(const Tridiagonal& m) {
  check_shape(m);
  SymTridiagonal s;
  s.diag = m.diag;
  s.off.resize(m.sub.size());
  for (std::size_t j = 0; j < m.sub.size(); ++j) {
    const double prod = m.super[j] * m.sub[j];
    if (!(prod > 0.0)) {
      std::ostringstream os;
      os << "invariant breach: off-diagonal product " << prod << " at row " << j << " is not positive";
      throw Error(ErrorKind::InvariantBreach, os.str());
    }
    s.off[j] = std::sqrt(prod);
  }
  return s;
}

std::size_t count_below(const SymTridiagonal& m, double x) {
  const std::size_t n = m.order();
  if (n == 0) return 0;
  double max_off2 = 1.0;
  for (double b : m.off) max_off2 = std::max(max_off2, b * b);
  const double pivmin = std::numeric_limits<double>::min() * max_off2;

  std::size_t count = 0;
  double d = m.diag[0] - x;
  for (std::size_t k = 0;; ++k) {
    // a zero pivot is perturbed upward so that x itself is not counted
    if (std::abs(d) < pivmin) d = pivmin;
    if (d < 0.0) ++count;
    if (k + 1 == n) break;
    d = (m.diag[k + 1] - x) - (m.off[k] * m.off[k]) / d;
  }
  return count;
}

Interval gershgorin_bounds(const SymTridiagonal& m) {
  const std::size_t n = m.order();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < n; ++k) {
    double r = 0.0;
    if (k > 0) r += std::abs(m.off[k - 1]);
    if (k + 1 < n) r += std::abs(m.off[k]);
    lo = std::min(lo, m.diag[k] - r);
    hi = std::max(hi, m.diag[k] + r);
  }
  // widen so the ends are strict bounds under rounding
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)}) *
                     static_cast<double>(n);
  return {lo - pad, hi + pad};
}

Spectrum eigenvalues(const SymTridiagonal& m, double tol, std::optional<std::size_t> count) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "eigenvalue tolerance must be positive");
  const std::size_t n = m.order();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "tridiagonal matrix is empty");
  const std::size_t wanted = std::min(n, count.value_or(n));
  const Interval bounds = gershgorin_bounds(m);

  if (count_below(m, bounds.lo) != 0 || count_below(m, bounds.hi) != n)
    throw Error(ErrorKind::InvariantBreach, "Gershgorin interval does not enclose the spectrum");

  Spectrum out;
  out.values.reserve(wanted);
  for (std::size_t k = 0; k < wanted; ++k) {
    // invariant: count_below(lo) <= k < count_below(hi)
    double lo = k == 0 ? bounds.lo : out.values.back();
    if (k > 0 && count_below(m, lo) > k) lo = bounds.lo;
    double hi = bounds.hi;
    while (true) {
      const double width = hi - lo;
      if (width <= tol * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
      const double mid = lo + 0.5 * width;
      if (mid <= lo || mid >= hi) break;
      if (count_below(m, mid) <= k)
        lo = mid;
      else
        hi = mid;
    }
    const double value = lo + 0.5 * (hi - lo);
    if (!out.values.empty() && !(value > out.values.back())) {
      std::ostringstream os;
      os << "bracket failure at eigenvalue index " << k << ": " << value
         << " does not exceed the previous eigenvalue " << out.values.back();
      throw Error(ErrorKind::InvariantBreach, os.str());
    }
    out.values.push_back(value);
  }
  return out;
}

Spectrum eigenvalues(const Tridiagonal& m, double tol, std::optional<std::size_t> count) {
  return eigenvalues(symmetrize(m), tol, count);
}

}  // namespace tscale
