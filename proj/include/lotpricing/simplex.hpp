#pragma once

#include <string>
#include <vector>

namespace lotpricing {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

// max objective . x  subject to the constraints and x >= lower_bounds
// (all zeros when lower_bounds is empty).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower_bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // one entry per variable when Optimal
  double objective = 0.0;
};

struct SimplexOptions {
  double feas_tol = 1e-7;    // largest accepted primal residual on exit
  double cost_tol = 1e-9;    // reduced costs below this certify optimality
  double pivot_tol = 1e-11;  // smaller pivots are treated as numerical failure
  long max_iters = 0;        // 0 = derived from problem size
};

// Dense two-phase simplex over the dictionary (basic rows x nonbasic columns)
// representation.  The entering variable follows Dantzig's largest-coefficient
// rule, dropping to Bland's anti-cycling rule only after a long stretch of
// degenerate pivots; phase 1 drives a single artificial variable out of the
// basis.  On Optimal the vertex named by the final basis is recomputed from
// the original data (so pivot drift does not reach the caller) and verified
// against every constraint within feas_tol before returning.  Throws
// std::runtime_error when pivots degenerate below pivot_tol or the iteration
// cap is hit, and std::invalid_argument on malformed input.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt = {});

// Human-readable dump, mainly for debugging small programs.
std::string lp_to_string(const LinearProgram& lp);

}  // namespace lotpricing
