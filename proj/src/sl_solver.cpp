#include "tscale/sl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tscale/error.hpp"

namespace tscale {

namespace {

constexpr double kRobinGuard = 1e-10;
constexpr std::size_t kRescaleEvery = 64;
constexpr int kRescaleExponent = 64;

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double robin_factor(double h, double mu) {
  const double f = 1.0 + h * mu;
  if (std::abs(f) <= kRobinGuard) {
    std::ostringstream os;
    os << "singular Robin condition: 1 + h*mu = " << f;
    throw Error(ErrorKind::StandingAssumption, os.str());
  }
  return f;
}

}  // namespace

GridFunction sample_potential(const SLProblem& problem, const Grid& grid) {
  std::vector<double> q(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t k = grid.segment[i];
    if (k >= problem.q.pieces.size())
      throw Error(ErrorKind::InvalidArgument, "grid does not realize the problem's time scale");
    q[i] = problem.q.pieces[k].evaluate(grid.points[i]);
  }
  return GridFunction(grid, std::move(q));
}

DiscreteProblem discretize(const SLProblem& problem, const Grid& grid) {
  auto g = std::make_shared<const Grid>(grid);
  const GridFunction q = sample_potential(problem, *g);
  return DiscreteProblem{g, std::vector<double>(q.values().begin(), q.values().end()), problem.ha, problem.hb};
}

DiscreteProblem discretize(const SLProblem& problem, double step) {
  return discretize(problem, realize(problem.ts, step));
}

Tridiagonal assemble(const DiscreteProblem& dp) {
  const Grid& g = *dp.grid;
  if (g.size() < 3) throw Error(ErrorKind::StandingAssumption, "degenerate time scale: a = rho(b)");
  const std::size_t n = g.last();
  const std::size_t m = n - 1;
  const auto& mu = g.graininess;
  const double fa = robin_factor(dp.ha, mu[0]);
  robin_factor(dp.hb, mu[n - 1]);

  Tridiagonal t;
  t.diag.resize(m);
  t.sub.resize(m - 1);
  t.super.resize(m - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // -y''_i = -y_{i+2}/(mu_i mu_{i+1}) + y_{i+1}(1/(mu_i mu_{i+1}) + 1/mu_i^2) - y_i/mu_i^2
    double from_super = 1.0 / (mu[i] * mu[i + 1]);
    double from_sub = 1.0 / (mu[i] * mu[i]);
    // Boundary folds, simplified so the Neumann case cancels exactly:
    // 1/mu_0^2 - 1/(mu_0^2 (1 + h_a mu_0)) = h_a / (mu_0 (1 + h_a mu_0))
    // (1 - (1 + h_b mu_{N-1})) / (mu_{N-2} mu_{N-1}) = -h_b / mu_{N-2}
    if (i == 0) from_sub = dp.ha / (mu[0] * fa);
    if (i + 2 == n) from_super = -dp.hb / mu[i];
    t.diag[i] = from_super + from_sub + dp.q[i];
    if (i > 0) t.sub[i - 1] = -1.0 / (mu[i] * mu[i]);
    if (i + 2 < n) t.super[i] = -1.0 / (mu[i] * mu[i + 1]);
  }
  return t;
}

Tridiagonal assemble(const SLProblem& problem, const Grid& grid) { return assemble(discretize(problem, grid)); }

ShotResult shoot(const DiscreteProblem& dp, double lambda) {
  const Grid& g = *dp.grid;
  const std::size_t n = g.last();
  const auto& mu = g.graininess;
  ShotResult r;
  r.samples.assign(n + 1, 0.0);
  auto& y = r.samples;

  y[0] = 1.0;
  double dy = dp.ha;
  y[1] = y[0] + mu[0] * dy;
  double running = std::max(std::abs(y[0]), std::abs(y[1]));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dy += mu[i] * (dp.q[i] - lambda) * y[i + 1];
    y[i + 2] = y[i + 1] + mu[i + 1] * dy;
    running = std::max(running, std::abs(y[i + 2]));
    if ((i + 1) % kRescaleEvery == 0 && running > 0.0 && std::isfinite(running)) {
      int e = 0;
      std::frexp(running, &e);
      if (std::abs(e) > kRescaleExponent) {
        for (std::size_t j = 0; j <= i + 2; ++j) y[j] = std::ldexp(y[j], -e);
        dy = std::ldexp(dy, -e);
        running = std::ldexp(running, -e);
      }
    }
  }
  r.chi = dy - dp.hb * y[n - 1];
  return r;
}

ShotResult shoot(const SLProblem& problem, const Grid& grid, double lambda) {
  return shoot(discretize(problem, grid), lambda);
}

double scaled_chi(const DiscreteProblem& dp, double lambda) {
  const ShotResult r = shoot(dp, lambda);
  const double norm = sup_norm(r.samples);
  if (!(norm > 0.0) || !std::isfinite(norm) || !std::isfinite(r.chi))
    throw Error(ErrorKind::InvariantBreach, "shooting produced a non-finite solution");
  return r.chi / norm;
}

std::size_t count_generalized_zeros(std::span<const double> samples, const Grid& grid) {
  if (samples.size() != grid.size())
    throw Error(ErrorKind::InvalidArgument, "sample count does not match the grid");
  const double norm = sup_norm(samples);
  if (!(norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "cannot count zeros of the zero function");
  const double eps = kZeroTolerance * norm;
  const std::size_t n = grid.last();

  std::size_t count = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(samples[i]) <= eps) ++count;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = samples[i];
    const double r = samples[i + 1];
    if (std::abs(l) > eps && std::abs(r) > eps && l * r < 0.0) ++count;
  }
  return count;
}

namespace {

std::vector<double> twisted_eigenvector(const Tridiagonal& t, double lambda) {
  const std::size_t m = t.order();
  double scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) scale = std::max(scale, std::abs(t.diag[r] - lambda));
  for (double v : t.sub) scale = std::max(scale, std::abs(v));
  const double tiny = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon() * scale;
  auto guard = [tiny](double d) { return std::abs(d) < tiny ? tiny : d; };

  // top-down ratios u_r / u_{r+1} and bottom-up ratios u_r / u_{r-1}
  std::vector<double> down(m, 0.0), up(m, 0.0), plus(m), minus(m);
  for (std::size_t r = 0; r < m; ++r) {
    plus[r] = t.diag[r] - lambda + (r > 0 ? t.sub[r - 1] * down[r - 1] : 0.0);
    if (r + 1 < m) down[r] = -t.super[r] / guard(plus[r]);
  }
  for (std::size_t r = m; r-- > 0;) {
    minus[r] = t.diag[r] - lambda + (r + 1 < m ? t.super[r] * up[r + 1] : 0.0);
    if (r > 0) up[r] = -t.sub[r - 1] / guard(minus[r]);
  }
  // twist where the two sweeps meet with the smallest defect
  std::size_t twist = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < m; ++r) {
    double gamma = t.diag[r] - lambda;
    if (r > 0) gamma += t.sub[r - 1] * down[r - 1];
    if (r + 1 < m) gamma += t.super[r] * up[r + 1];
    if (std::abs(gamma) < best) {
      best = std::abs(gamma);
      twist = r;
    }
  }
  std::vector<double> u(m, 0.0);
  u[twist] = 1.0;
  for (std::size_t r = twist; r-- > 0;) u[r] = down[r] * u[r + 1];
  for (std::size_t r = twist + 1; r < m; ++r) u[r] = up[r] * u[r - 1];
  return u;
}

}  // namespace

Eigenpair eigenpair(const DiscreteProblem& dp, double lambda, double tol) {
  const Grid& g = *dp.grid;
  const std::size_t n = g.last();
  const auto& mu = g.graininess;

  const std::vector<double> u = twisted_eigenvector(assemble(dp), lambda);
  std::vector<double> y(n + 1);
  std::copy(u.begin(), u.end(), y.begin() + 1);
  y[0] = y[1] / (1.0 + dp.ha * mu[0]);
  y[n] = y[n - 1] * (1.0 + dp.hb * mu[n - 1]);
  const double norm = sup_norm(y);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw Error(ErrorKind::InvariantBreach, "eigenvector recovery produced a degenerate vector");
  const double sign = y[0] < 0.0 ? -1.0 : 1.0;
  for (double& v : y) v *= sign / norm;

  double residual = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d0 = (y[i + 1] - y[i]) / mu[i];
    const double d1 = (y[i + 2] - y[i + 1]) / mu[i + 1];
    const double dd = (d1 - d0) / mu[i];
    const double defect = -dd + (dp.q[i] - lambda) * y[i + 1];
    const double scale = 2.0 / (mu[i] * mu[i]) + 2.0 / (mu[i] * mu[i + 1]) + std::abs(dp.q[i]) + std::abs(lambda);
    residual = std::max(residual, std::abs(defect) / scale);
  }
  if (residual > 1e3 * tol) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda = " << lambda << " is not an eigenvalue (residual " << residual << ")";
    throw Error(ErrorKind::NotAnEigenvalue, os.str());
  }

  Eigenpair p;
  p.lambda = lambda;
  p.zero_count = count_generalized_zeros(y, g);
  p.residual = residual;
  p.samples = std::move(y);
  return p;
}

Eigenpair eigenpair(const SLProblem& problem, const Grid& grid, double lambda, double tol) {
  return eigenpair(discretize(problem, grid), lambda, tol);
}

CrossCheck cross_check(const DiscreteProblem& dp, double lambda, double gap, double tol) {
  CrossCheck c;
  c.lambda_matrix = lambda;
  c.allowed = 1e3 * tol * std::max(1.0, std::abs(lambda));
  const double delta = std::min(0.25 * gap, c.allowed);
  const double at = scaled_chi(dp, lambda);
  const double below = scaled_chi(dp, lambda - delta);
  const double above = scaled_chi(dp, lambda + delta);
  c.sign_change = (below <= 0.0 && above >= 0.0) || (below >= 0.0 && above <= 0.0);
  const double slope = (above - below) / (2.0 * delta);
  double step = 0.0;
  if (at != 0.0) step = slope != 0.0 ? at / slope : std::numeric_limits<double>::infinity();
  c.lambda_shooting = lambda - step;
  c.offset = std::abs(step);
  return c;
}

std::optional<double> polish(const DiscreteProblem& dp, double lo, double hi) {
  double f_lo = scaled_chi(dp, lo);
  const double f_hi = scaled_chi(dp, hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) return std::nullopt;
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f = scaled_chi(dp, mid);
    if (f == 0.0) return mid;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

double default_step(const TimeScale& ts) { return (ts.b() - ts.a()) / 1000.0; }

SpectrumResult spectrum(const DiscreteProblem& dp, double tol, std::optional<std::size_t> count, bool refine) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  SpectrumResult out{dp, {}, {}, {}};
  const SymTridiagonal sym = symmetrize(assemble(dp));
  const std::size_t m = sym.order();
  const std::size_t wanted = std::min(m, count.value_or(m));
  // one extra eigenvalue bounds the gap above the last requested one
  Spectrum all = eigenvalues(sym, tol, std::min(m, wanted + 1));
  auto& lam = all.values;
  if (refine) {
    // Sturm counts are exact only up to rounding of order eps * |A|
    const Interval bounds = gershgorin_bounds(sym);
    const double count_noise = 16.0 * std::numeric_limits<double>::epsilon() *
                               std::max(std::abs(bounds.lo), std::abs(bounds.hi));
    for (std::size_t k = 0; k < wanted; ++k) {
      const double half = std::max(tol * std::max(1.0, std::abs(lam[k])), count_noise);
      double lo = lam[k] - half;
      double hi = lam[k] + half;
      if (k > 0) lo = std::max(lo, 0.5 * (lam[k - 1] + lam[k]));
      if (k + 1 < lam.size()) hi = std::min(hi, 0.5 * (lam[k] + lam[k + 1]));
      if (const auto root = polish(dp, lo, hi)) lam[k] = *root;
    }
  }
  out.spectrum.values.assign(lam.begin(), lam.begin() + static_cast<std::ptrdiff_t>(wanted));
  for (std::size_t k = 0; k < wanted; ++k) {
    double gap = std::numeric_limits<double>::infinity();
    if (k > 0) gap = std::min(gap, lam[k] - lam[k - 1]);
    if (k + 1 < lam.size()) gap = std::min(gap, lam[k + 1] - lam[k]);
    if (gap <= tol * std::max(1.0, std::abs(lam[k]))) {
      std::ostringstream os;
      os << "eigenvalues " << k << " and a neighbour are not separated by more than tol";
      throw Error(ErrorKind::InvariantBreach, os.str());
    }

    CrossCheck c = cross_check(dp, lam[k], gap, tol);
    if (!c.sign_change || !(c.offset <= c.allowed)) {
      std::ostringstream os;
      os.precision(17);
      os << "matrix/shooting cross-check failed for eigenvalue " << k << ": matrix " << c.lambda_matrix
         << ", shooting " << c.lambda_shooting << (c.sign_change ? "" : " (no sign change of chi)");
      throw Error(ErrorKind::InvariantBreach, os.str());
    }
    out.checks.push_back(c);
    out.pairs.push_back(eigenpair(dp, lam[k], tol));
  }
  return out;
}

SpectrumResult spectrum(const SLProblem& problem, const SolveOptions& options) {
  const double step = options.step > 0.0 ? options.step : default_step(problem.ts);
  return spectrum(discretize(problem, step), options.tol, options.count, options.polish);
}

}  // namespace tscale
