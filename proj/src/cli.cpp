#include "tscale/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscale/ambarzumyan.hpp"
#include "tscale/error.hpp"
#include "tscale/problem_io.hpp"

namespace tscale::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string problem;
  double step = 0.0;
  double tol = 1e-10;
  std::size_t num_eigs = 0;
  std::string out;
  std::string eigenfunctions;
  std::string check = "all";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--problem", o.problem, "problem JSON file")->required();
  cmd->add_option("--step", o.step, "sampling step for dense segments (default (b-a)/1000)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
}

void add_solver(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "relative bisection tolerance")->check(CLI::PositiveNumber)->capture_default_str();
}

/// Writes to the named file, or to `fallback` when the name is empty.
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot open output file " + path);
  fn(file);
  if (!file) throw Error(ErrorKind::Io, "failed writing " + path);
}

SolveOptions solve_options(const Options& o) {
  SolveOptions s;
  s.step = o.step;
  s.tol = o.tol;
  return s;
}

int do_solve(const Options& o, std::ostream& out) {
  const SLProblem problem = parse_problem(o.problem);
  const double step = o.step > 0.0 ? o.step : default_step(problem.ts);
  const DiscreteProblem dp = discretize(problem, step);
  const std::size_t m = dp.last() - 1;
  const std::size_t count = o.num_eigs > 0 ? std::min(o.num_eigs, m) : std::min<std::size_t>(m, 8);

  const SpectrumResult result = spectrum(dp, o.tol, count);
  SolveOptions sopts = solve_options(o);
  sopts.step = step;
  const AmbarzumyanReport amb = verify_theorem1(problem, sopts);

  json report;
  report["grid"] = {{"N", dp.last()}, {"points", dp.grid->size()}, {"step", step}};
  json deltas = json::array();
  json residuals = json::array();
  json zeros = json::array();
  for (std::size_t k = 0; k < result.pairs.size(); ++k) {
    deltas.push_back(result.checks[k].offset);
    residuals.push_back(result.pairs[k].residual);
    zeros.push_back(result.pairs[k].zero_count);
  }
  report["solver"] = {{"tol", o.tol}, {"cross_check", deltas}, {"residuals", residuals}};
  report["eigenvalues"] = result.spectrum.values;
  report["zero_counts"] = zeros;
  report["lambda1"] = amb.lambda1;
  report["threshold"] = amb.threshold;
  report["verdicts"] = {{"theorem1", to_string(amb.verdict)}};
  report["proof_residual"] = amb.proof_residual;

  emit(o.out, out, [&](std::ostream& os) { os << std::setprecision(17) << report.dump(2) << '\n'; });
  if (!o.eigenfunctions.empty())
    emit(o.eigenfunctions, out, [&](std::ostream& os) { write_eigenfunctions_csv(os, result); });
  return kOk;
}

json report_json(const AmbarzumyanReport& r, double step, double tol) {
  json j;
  j["lambda1"] = r.lambda1;
  j["threshold"] = r.threshold;
  j["excess"] = r.excess;
  j["ver_tol"] = r.ver_tol;
  j["verdict"] = to_string(r.verdict);
  j["q_deviation"] = r.q_deviation;
  j["proof_residual"] = r.proof_residual;
  j["quotient_residual"] = r.quotient_residual;
  j["boundary_regular"] = r.boundary_regular;
  j["unexpected_regime"] = r.unexpected_regime;
  j["falsified"] = r.falsified();
  if (r.corollary1) j["corollary1"] = to_string(*r.corollary1);
  if (r.corollary2) j["corollary2"] = to_string(*r.corollary2);
  if (r.remark) j["remark"] = to_string(*r.remark);
  j["notes"] = r.notes;
  j["grid"] = {{"step", step}};
  j["solver"] = {{"tol", tol}};
  return j;
}

void print_block(std::ostream& os, const AmbarzumyanReport& r) {
  os << std::setprecision(17);
  os << "lambda1:           " << r.lambda1 << '\n'
     << "threshold:         " << r.threshold << '\n'
     << "excess:            " << r.excess << '\n'
     << "ver_tol:           " << r.ver_tol << '\n'
     << "theorem1:          " << to_string(r.verdict) << '\n'
     << "q_deviation:       " << r.q_deviation << '\n'
     << "proof_residual:    " << r.proof_residual << '\n'
     << "quotient_residual: " << r.quotient_residual << '\n'
     << "boundary_regular:  " << (r.boundary_regular ? "yes" : "no") << '\n';
  if (r.corollary1) os << "corollary1:        " << to_string(*r.corollary1) << '\n';
  if (r.corollary2) os << "corollary2:        " << to_string(*r.corollary2) << '\n';
  if (r.remark) os << "remark:            " << to_string(*r.remark) << '\n';
  for (const std::string& n : r.notes) os << "note:              " << n << '\n';
  os << "consistent:        " << (r.falsified() ? "NO (numerical falsification)" : "yes") << '\n';
}

int do_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const SLProblem problem = parse_problem(o.problem);
  CheckSet checks{false, false, false, false};
  if (o.check == "all") {
    checks = CheckSet{};
  } else {
    if (o.check != "theorem1" && !problem.is_neumann())
      throw Error(ErrorKind::InvalidArgument, "--check " + o.check + " requires Neumann conditions (h_a = h_b = 0)");
    checks.theorem1 = o.check == "theorem1";
    checks.corollary1 = o.check == "corollary1";
    checks.corollary2 = o.check == "corollary2";
    checks.remark = o.check == "remark";
  }
  const double step = o.step > 0.0 ? o.step : default_step(problem.ts);
  SolveOptions sopts = solve_options(o);
  sopts.step = step;
  const AmbarzumyanReport r = verify(problem, sopts, checks);

  print_block(out, r);
  if (!o.out.empty()) {
    const json j = report_json(r, step, o.tol);
    emit(o.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
  if (r.falsified()) {
    err << "numerical falsification detected; see report\n";
    return kFalsified;
  }
  return kOk;
}

int do_grid(const Options& o, std::ostream& out) {
  const SLProblem problem = parse_problem(o.problem);
  const double step = o.step > 0.0 ? o.step : default_step(problem.ts);
  const Grid grid = realize(problem.ts, step);
  emit(o.out, out, [&](std::ostream& os) { write_grid_csv(os, grid); });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of Sturm-Liouville dynamic equations on time scales", "tscale"};
  app.require_subcommand(1);

  Options o;
  CLI::App* solve = app.add_subcommand("solve", "compute eigenvalues and eigenfunctions");
  add_common(solve, o);
  add_solver(solve, o);
  solve->add_option("--num-eigs", o.num_eigs, "number of eigenvalues (default min(M, 8))")->check(CLI::PositiveNumber);
  solve->add_option("--eigenfunctions", o.eigenfunctions, "write eigenfunction samples as CSV");

  CLI::App* verify = app.add_subcommand("verify", "check the constant-potential identification results");
  add_common(verify, o);
  add_solver(verify, o);
  verify->add_option("--check", o.check, "which result to check")
      ->check(CLI::IsMember({"theorem1", "corollary1", "corollary2", "remark", "all"}))
      ->capture_default_str();

  CLI::App* grid = app.add_subcommand("grid", "dump the realized grid as CSV");
  add_common(grid, o);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageOrIo;
  }

  try {
    if (solve->parsed()) return do_solve(o, out);
    if (verify->parsed()) return do_verify(o, out, err);
    if (grid->parsed()) return do_grid(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }
  return kUsageOrIo;
}

}  // namespace tscale::cli
