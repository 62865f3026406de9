#pragma once

#include <optional>
#include <vector>

#include "ell/barriers.hpp"
#include "ell/problems.hpp"

namespace ell {

struct NewtonResult {
  Field u;
  int iterations = 0;
  double residual = 0.0;
};

/// Damped Newton for -Lap_h u = lambda f(x,u) + g at fixed lambda. Each
/// step solves the linearized system (which may be indefinite away from the
/// minimal branch) and halves the step, up to 30 times, until the residual
/// norm decreases. Throws SingularJacobian at numerically singular
/// linearizations and NoConvergence otherwise.
NewtonResult newton_solve(const ProblemSpec& p, double lambda,
                          const Field& guess, double tol = 1e-10,
                          int max_iter = 60);

struct BranchPoint {
  double lambda = 0.0;
  Field u;
  double lambda1_lin = 0.0;
  StabilityTag tag = StabilityTag::Semistable;
  double arclength = 0.0;
  int newton_iters = 0;
  double sup_norm = 0.0;
  double l2_norm = 0.0;
};

enum class Termination {
  Fold,
  LambdaMax,
  LambdaMin,
  Asymptote,
  StepCollapse,
  MaxPoints,
};
const char* to_string(Termination t);

struct FoldInfo {
  double lambda_star = 0.0;
  double u_star_supnorm = 0.0;
};

struct Diagram {
  std::vector<BranchPoint> points;
  std::optional<FoldInfo> fold;
  Termination termination = Termination::MaxPoints;
};

struct ContinuationConfig {
  double lambda_max = -1.0;    // < 0: auto from lambda1_h and f'(0)
  double lambda_min = 0.0;     // arclength lower stop
  double initial_step = -1.0;  // < 0: auto 0.05 lambda1_h / f'(0)
  double min_step = 1e-8;
  double norm_cap = 1e3;
  double guard_fraction = 0.2; // halve when lambda1_lin falls below this of previous
  double newton_tol = 1e-10;
  int max_points = 2000;
};

/// Natural continuation of the minimal branch from (lambda=0, u=0) with the
/// exact tangent predictor u_lambda = J^{-1} f(u). The step is halved on
/// Newton failure or when the smallest linearized eigenvalue collapses;
/// termination distinguishes a fold (step collapse at bounded norm) from an
/// asymptote (norm blowup at the cap).
Diagram trace_minimal_branch(const ProblemSpec& p, ContinuationConfig cfg = {});

/// Refines the fold location with a pseudo-arclength bisection on the sign
/// change of lambda1_lin across the fold; the reported lambda* carries
/// |lambda1_lin| <= 1e-6 lambda1_h and is checked against the bound
/// lambda1_h / f'(0) when f'(0) > 0. Fills diagram.fold. Throws NoFold when
/// the diagram did not terminate at a fold.
double estimate_lambda_star(const ProblemSpec& p, Diagram& diagram,
                            ContinuationConfig cfg = {});

/// Continues through the fold onto the unstable branch with pseudo-arclength
/// steps (secant tangent, arclength normalization row). Extends
/// diagram.points until the sup norm exceeds norm_cap, lambda drops below
/// lambda_min, or max_points is reached. Throws StepCollapse when no step
/// succeeds.
void pseudo_arclength_continue(const ProblemSpec& p, Diagram& diagram,
                               ContinuationConfig cfg = {});

/// Minimal solution at a fixed lambda by short natural continuation from 0.
Field minimal_solution(const ProblemSpec& p, double lambda,
                       double newton_tol = 1e-10);

/// Re-solves a diagram point at exactly the requested lambda, seeding Newton
/// from the nearest accepted point on the requested side of the fold.
Field branch_solution_at(const ProblemSpec& p, const Diagram& diagram,
                         double lambda, bool unstable_side,
                         double newton_tol = 1e-10);

}  // namespace ell
