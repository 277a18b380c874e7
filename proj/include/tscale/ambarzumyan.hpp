#pragma once

// Numerical checks of the constant-potential identification results:
//
//   lambda_1 >= tau := (h_a - h_b + int_a^{rho(b)} q) / (rho(b) - a)  ==>  q == lambda_1
//
// together with its Neumann specializations, and the integral identity
//
//   int_a^{rho(b)} (y^D)^2 / (y^sigma y) = h_a - h_b + int_a^{rho(b)} q - lambda_1 (rho(b) - a)
//
// evaluated on the first eigenfunction.

#include <optional>
#include <string>
#include <vector>

#include "tscale/sl_solver.hpp"

namespace tscale {

enum class Theorem1Verdict { TheoremApplies, HypothesisNotMet };
enum class Corollary1Verdict { Confirmed, MeanMismatch, Falsified };
enum class Corollary2Verdict { NegativeEigenvalueFound, NotApplicable, Falsified };
enum class RemarkVerdict { Applies, HypothesisNotMet, NotIsolated, Falsified };

const char* to_string(Theorem1Verdict v);
const char* to_string(Corollary1Verdict v);
const char* to_string(Corollary2Verdict v);
const char* to_string(RemarkVerdict v);

struct AmbarzumyanReport {
  double lambda1 = 0.0;
  double threshold = 0.0;
  double excess = 0.0;  // lambda1 - threshold
  double ver_tol = 0.0;
  Theorem1Verdict verdict = Theorem1Verdict::HypothesisNotMet;
  double q_deviation = 0.0;       // max |q(t_i) - lambda1| over equation points
  double proof_residual = 0.0;    // |LHS - RHS| of the integral identity
  double quotient_residual = 0.0; // pointwise y^DD/y^s vs (y^D)^2/(y^s y) + (y^D/y)^D
  bool boundary_regular = true;   // 1 + h_a mu(a) > 0 and 1 + h_b mu(rho(b)) > 0
  bool unexpected_regime = false; // lambda1 exceeds tau by more than ver_tol
  bool theorem_falsified = false;
  std::optional<Corollary1Verdict> corollary1;
  std::optional<Corollary2Verdict> corollary2;
  std::optional<RemarkVerdict> remark;
  std::vector<std::string> notes;

  bool falsified() const;
};

/// Verdict band 1e-8 * max(1, |tau|, |lambda1|).
double verification_tolerance(double tau, double lambda1);

double threshold(const DiscreteProblem& dp);
double threshold(const SLProblem& problem, const Grid& grid);

struct IdentityResidual {
  double integral = 0.0;  // |LHS - RHS|
  double pointwise = 0.0; // max relative defect of the quotient relation
};

/// Throws InvariantBreach if the eigenfunction vanishes at a grid point.
IdentityResidual proof_identity_residual(const DiscreteProblem& dp, const Eigenpair& first);

AmbarzumyanReport verify_theorem1(const SLProblem& problem, const SolveOptions& options = {});
Corollary1Verdict verify_corollary1(const SLProblem& problem, const SolveOptions& options = {});
Corollary2Verdict verify_corollary2(const SLProblem& problem, const SolveOptions& options = {});
RemarkVerdict verify_remark(const SLProblem& problem, double tol = 1e-10);

struct CheckSet {
  bool theorem1 = true;
  bool corollary1 = true;
  bool corollary2 = true;
  bool remark = true;
};

/// Solves once and fills every requested verdict. Neumann-only checks are
/// skipped with a note for Robin problems.
AmbarzumyanReport verify(const SLProblem& problem, const SolveOptions& options, const CheckSet& checks);

}  // namespace tscale
