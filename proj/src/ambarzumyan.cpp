#include "tscale/ambarzumyan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tscale/delta_calculus.hpp"
#include "tscale/error.hpp"

namespace tscale {

namespace {

struct Analysis {
  SpectrumResult solved;
  double tau = 0.0;
  double lambda1 = 0.0;
  double ver_tol = 0.0;
  double q_deviation = 0.0;
  double q_integral = 0.0;
  double q_max = 0.0;      // over equation points t_0..t_{N-2}
  double q_max_all = 0.0;  // over every grid point
  double q_absmax = 0.0;   // over equation points
};

Analysis analyze(const SLProblem& problem, const SolveOptions& options) {
  const double step = options.step > 0.0 ? options.step : default_step(problem.ts);
  const DiscreteProblem dp = discretize(problem, step);
  Analysis an{spectrum(dp, options.tol, 1, options.polish)};
  const std::size_t n = dp.last();

  an.lambda1 = an.solved.spectrum.values.front();
  an.tau = threshold(dp);
  an.ver_tol = verification_tolerance(an.tau, an.lambda1);
  an.q_integral = delta_integral(GridFunction(*dp.grid, dp.q), 0, n - 1);
  an.q_max = dp.q[0];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    an.q_deviation = std::max(an.q_deviation, std::abs(dp.q[i] - an.lambda1));
    an.q_max = std::max(an.q_max, dp.q[i]);
    an.q_absmax = std::max(an.q_absmax, std::abs(dp.q[i]));
  }
  an.q_max_all = *std::max_element(dp.q.begin(), dp.q.end());
  return an;
}

void require_neumann(const SLProblem& problem, const char* what) {
  if (!problem.is_neumann()) {
    std::ostringstream os;
    os << what << " requires Neumann conditions (h_a = h_b = 0)";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

Corollary1Verdict corollary1_of(const Analysis& an) {
  // with h_a = h_b = 0 the threshold is the delta mean of q
  if (std::abs(an.lambda1 - an.tau) > an.ver_tol) return Corollary1Verdict::MeanMismatch;
  return an.q_deviation <= an.ver_tol ? Corollary1Verdict::Confirmed : Corollary1Verdict::Falsified;
}

Corollary2Verdict corollary2_of(const Analysis& an) {
  if (std::abs(an.q_integral) > an.ver_tol || an.q_absmax <= an.ver_tol) return Corollary2Verdict::NotApplicable;
  return an.lambda1 < -an.ver_tol ? Corollary2Verdict::NegativeEigenvalueFound : Corollary2Verdict::Falsified;
}

RemarkVerdict remark_of(const SLProblem& problem, const Analysis& an) {
  if (!problem.ts.all_isolated()) return RemarkVerdict::NotIsolated;
  if (an.lambda1 < an.q_max - an.ver_tol) return RemarkVerdict::HypothesisNotMet;
  return an.q_deviation <= an.ver_tol ? RemarkVerdict::Applies : RemarkVerdict::Falsified;
}

}  // namespace

const char* to_string(Theorem1Verdict v) {
  switch (v) {
    case Theorem1Verdict::TheoremApplies: return "theorem-applies-q-constant";
    case Theorem1Verdict::HypothesisNotMet: return "hypothesis-not-met";
  }
  return "?";
}

const char* to_string(Corollary1Verdict v) {
  switch (v) {
    case Corollary1Verdict::Confirmed: return "confirmed";
    case Corollary1Verdict::MeanMismatch: return "mean-mismatch";
    case Corollary1Verdict::Falsified: return "falsified";
  }
  return "?";
}

const char* to_string(Corollary2Verdict v) {
  switch (v) {
    case Corollary2Verdict::NegativeEigenvalueFound: return "negative-eigenvalue-found";
    case Corollary2Verdict::NotApplicable: return "not-applicable";
    case Corollary2Verdict::Falsified: return "falsified";
  }
  return "?";
}

const char* to_string(RemarkVerdict v) {
  switch (v) {
    case RemarkVerdict::Applies: return "applies";
    case RemarkVerdict::HypothesisNotMet: return "hypothesis-not-met";
    case RemarkVerdict::NotIsolated: return "not-isolated";
    case RemarkVerdict::Falsified: return "falsified";
  }
  return "?";
}

bool AmbarzumyanReport::falsified() const {
  return theorem_falsified || corollary1 == Corollary1Verdict::Falsified ||
         corollary2 == Corollary2Verdict::Falsified || remark == RemarkVerdict::Falsified;
}

double verification_tolerance(double tau, double lambda1) {
  return 1e-8 * std::max({1.0, std::abs(tau), std::abs(lambda1)});
}

double threshold(const DiscreteProblem& dp) {
  const Grid& g = *dp.grid;
  const std::size_t n = g.last();
  const double span = g.points[n - 1] - g.points[0];
  if (!(span > 0.0)) throw Error(ErrorKind::StandingAssumption, "degenerate time scale: a = rho(b)");
  const double integral = delta_integral(GridFunction(g, dp.q), 0, n - 1);
  return (dp.ha - dp.hb + integral) / span;
}

double threshold(const SLProblem& problem, const Grid& grid) { return threshold(discretize(problem, grid)); }

IdentityResidual proof_identity_residual(const DiscreteProblem& dp, const Eigenpair& first) {
  const Grid& g = *dp.grid;
  const std::size_t n = g.last();
  const GridFunction y(g, first.samples);
  // every quotient below needs y != 0; tiny but nonzero values are fine
  for (std::size_t i = 0; i <= n; ++i) {
    if (y[i] == 0.0 || !std::isfinite(1.0 / y[i])) {
      std::ostringstream os;
      os << "invariant breach: first eigenfunction vanishes at grid index " << i;
      throw Error(ErrorKind::InvariantBreach, os.str());
    }
  }

  const GridFunction dy = delta_derivative(y);   // 0..N-1
  const GridFunction ys = sigma_shift(y);        // 0..N
  const GridFunction ddy = delta_derivative(dy); // 0..N-2

  std::vector<double> integrand(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) integrand[i] = dy[i] * dy[i] / (ys[i] * y[i]);
  const double lhs = delta_integral(GridFunction(g, integrand), 0, n - 1);

  const double span = g.points[n - 1] - g.points[0];
  const double q_int = delta_integral(GridFunction(g, dp.q), 0, n - 1);
  const double rhs = dp.ha - dp.hb + q_int - first.lambda * span;

  std::vector<double> log_derivative(n);
  for (std::size_t i = 0; i < n; ++i) log_derivative[i] = dy[i] / y[i];
  const GridFunction dlog = delta_derivative(GridFunction(g, std::move(log_derivative)));

  double pointwise = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double left = ddy[i] / ys[i];
    const double right = integrand[i] + dlog[i];
    const double scale = std::max({1.0, std::abs(left), std::abs(integrand[i]), std::abs(dlog[i])});
    pointwise = std::max(pointwise, std::abs(left - right) / scale);
  }
  return {std::abs(lhs - rhs), pointwise};
}

AmbarzumyanReport verify(const SLProblem& problem, const SolveOptions& options, const CheckSet& checks) {
  const Analysis an = analyze(problem, options);
  const DiscreteProblem& dp = an.solved.problem;
  const Grid& g = *dp.grid;
  const std::size_t n = g.last();

  AmbarzumyanReport r;
  r.lambda1 = an.lambda1;
  r.threshold = an.tau;
  r.excess = an.lambda1 - an.tau;
  r.ver_tol = an.ver_tol;
  r.q_deviation = an.q_deviation;
  r.boundary_regular = 1.0 + dp.ha * g.graininess[0] > 0.0 && 1.0 + dp.hb * g.graininess[n - 1] > 0.0;
  r.verdict = an.lambda1 >= an.tau - an.ver_tol ? Theorem1Verdict::TheoremApplies : Theorem1Verdict::HypothesisNotMet;

  const IdentityResidual ir = proof_identity_residual(dp, an.solved.pairs.front());
  r.proof_residual = ir.integral;
  r.quotient_residual = ir.pointwise;

  if (checks.theorem1 && r.verdict == Theorem1Verdict::TheoremApplies) {
    r.unexpected_regime = r.excess > an.ver_tol;
    if (r.unexpected_regime) r.notes.push_back("unexpected-regime: lambda1 exceeds the threshold by more than ver_tol");
    if (r.q_deviation > an.ver_tol) {
      if (r.boundary_regular) {
        r.theorem_falsified = true;
        r.notes.push_back("theorem hypothesis met but q is not constant");
      } else {
        r.notes.push_back("hypothesis met with nonconstant q; 1 + h*mu <= 0 at an end, so the first eigenfunction changes sign there");
      }
    }
  }

  const bool neumann = problem.is_neumann();
  if ((checks.corollary1 || checks.corollary2 || checks.remark) && !neumann)
    r.notes.push_back("Neumann-only checks skipped: h_a or h_b is nonzero");
  if (neumann) {
    if (checks.corollary1) r.corollary1 = corollary1_of(an);
    if (checks.corollary2) r.corollary2 = corollary2_of(an);
    if (checks.remark) {
      r.remark = remark_of(problem, an);
      if (problem.ts.all_isolated() && an.q_max_all != an.q_max)
        r.notes.push_back("max q over all points differs from the max over equation points");
    }
  }
  return r;
}

AmbarzumyanReport verify_theorem1(const SLProblem& problem, const SolveOptions& options) {
  return verify(problem, options, CheckSet{true, false, false, false});
}

Corollary1Verdict verify_corollary1(const SLProblem& problem, const SolveOptions& options) {
  require_neumann(problem, "corollary 1");
  return corollary1_of(analyze(problem, options));
}

Corollary2Verdict verify_corollary2(const SLProblem& problem, const SolveOptions& options) {
  require_neumann(problem, "corollary 2");
  return corollary2_of(analyze(problem, options));
}

RemarkVerdict verify_remark(const SLProblem& problem, double tol) {
  require_neumann(problem, "the isolated-scale remark");
  if (!problem.ts.all_isolated()) return RemarkVerdict::NotIsolated;
  SolveOptions options;
  options.tol = tol;
  return remark_of(problem, analyze(problem, options));
}

}  // namespace tscale
