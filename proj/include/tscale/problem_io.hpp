#pragma once

// Problem files (JSON), report helpers and CSV dumps used by the CLI.
//
// Problem schema:
//   {"timescale": [{"type": "point", "at": x} | {"type": "interval", "from": l, "to": r}, ...],
//    "potential": [{"kind": "const", "value": c}
//                  | {"kind": "poly", "coeffs": [c0, c1, ...]}
//                  | {"kind": "samples", "points": [[t, v], ...]}, ...],
//    "ha": h_a, "hb": h_b}
// Potential pieces refer to the normalized (sorted, merged) segments, by
// position or by an explicit "segment" index.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "tscale/problem.hpp"
#include "tscale/sl_solver.hpp"

namespace tscale {

SLProblem parse_problem_json(std::string_view text);
SLProblem parse_problem(const std::filesystem::path& path);

/// Canonical JSON text; parse_problem_json(emit_problem(p)) == p.
std::string emit_problem(const SLProblem& problem);

/// Header "t,y1,...,yk", one row per grid point, 17 significant digits.
void write_eigenfunctions_csv(std::ostream& os, const SpectrumResult& result);

/// Header "index,t,mu,origin,segment"; mu of the last point is 0.
void write_grid_csv(std::ostream& os, const Grid& grid);

}  // namespace tscale
