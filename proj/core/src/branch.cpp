#include "ell/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ell/errors.hpp"
#include "ell/log.hpp"

namespace ell {

namespace {

double resid_norm(const ProblemSpec& p, double lambda, const Field& u) {
  return norm_inf(residual(p, lambda, u));
}

// Extended state for arclength stepping.
struct ExtPoint {
  Field u;
  double lambda = 0.0;
};

struct ExtTangent {
  Field du;
  double dlambda = 0.0;
};

// Mesh-independent metric: ||(du, dl)||^2 = ||du||_L2^2 + dl^2.
double ext_dot(const ExtTangent& a, const ExtTangent& b) {
  return dot_l2(a.du, b.du) + a.dlambda * b.dlambda;
}

ExtTangent ext_diff(const ExtPoint& a, const ExtPoint& b) {
  return ExtTangent{a.u - b.u, a.lambda - b.lambda};
}

void ext_normalize(ExtTangent& t) {
  const double n = std::sqrt(ext_dot(t, t));
  if (!(n > 0.0)) throw StepCollapse("zero tangent");
  for (std::size_t i = 0; i < t.du.size(); ++i) t.du[i] /= n;
  t.dlambda /= n;
}

/// One pseudo-arclength corrector: Newton on [R(u,lambda); N] = 0 with
/// N = <X - X_base, t> - ds, solved by bordering with two J-solves.
ExtPoint arclength_correct(const ProblemSpec& p, const ExtPoint& base,
                           const ExtTangent& t, double ds, double tol,
                           int max_iter = 30) {
  const double m = p.grid.measure();
  ExtPoint X{base.u, base.lambda};
  axpy(ds, t.du, X.u);
  X.lambda += ds * t.dlambda;

  for (int it = 0; it < max_iter; ++it) {
    Field R = residual(p, X.lambda, X.u);
    double N = -ds;
    for (std::size_t i = 0; i < X.u.size(); ++i)
      N += m * (X.u[i] - base.u[i]) * t.du[i];
    N += (X.lambda - base.lambda) * t.dlambda;

    const double rn = norm_inf(R);
    if (rn <= tol && std::abs(N) <= 1e-12 * (1.0 + std::abs(ds))) return X;

    ShiftedLaplacian J = linearized(p, X.lambda, X.u);
    Field f = f_nodal(p, X.u);
    Field a = solve_general(J, f);        // J a = f  (= -dR/dlambda)
    Field b = solve_general(J, R);        // J b = R
    double ta = 0.0, tb = 0.0;
    for (std::size_t i = 0; i < X.u.size(); ++i) {
      ta += m * t.du[i] * a[i];
      tb += m * t.du[i] * b[i];
    }
    const double denom = ta + t.dlambda;
    if (std::abs(denom) < 1e-14) throw SingularJacobian("bordered system degenerate");
    const double dl = (tb - N) / denom;
    for (std::size_t i = 0; i < X.u.size(); ++i)
      X.u[i] += -b[i] + dl * a[i];
    X.lambda += dl;
  }
  throw NoConvergence("arclength corrector did not converge");
}

BranchPoint make_point(const ProblemSpec& p, double lambda, Field u,
                       int newton_iters, double arclength) {
  BranchPoint bp;
  bp.lambda = lambda;
  bp.sup_norm = norm_inf(u);
  bp.l2_norm = norm_l2(u);
  bp.newton_iters = newton_iters;
  bp.arclength = arclength;
  StabilityReport rep = stability_classify(p, lambda, u);
  bp.lambda1_lin = rep.lambda1_lin;
  bp.tag = rep.tag;
  bp.u = std::move(u);
  return bp;
}

double auto_lambda_max(double lambda1, double fprime0) {
  return fprime0 > 1e-12 ? 1.2 * lambda1 / fprime0 : 5.0 * lambda1;
}

double auto_initial_step(double lambda1, double fprime0) {
  return fprime0 > 1e-12 ? 0.05 * lambda1 / fprime0 : 0.05 * lambda1;
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Fold: return "fold";
    case Termination::LambdaMax: return "lambda_max";
    case Termination::LambdaMin: return "lambda_min";
    case Termination::Asymptote: return "asymptote";
    case Termination::StepCollapse: return "step_collapse";
    case Termination::MaxPoints: return "max_points";
  }
  return "?";
}

NewtonResult newton_solve(const ProblemSpec& p, double lambda,
                          const Field& guess, double tol, int max_iter) {
  if (!guess.bound_to(p.grid))
    throw BindingMismatch("guess not bound to problem grid");
  if (lambda < 0.0) throw InvalidArgument("lambda must be nonnegative");
  Field u = guess;
  double rn = resid_norm(p, lambda, u);
  for (int it = 0; it < max_iter; ++it) {
    if (rn <= tol) return NewtonResult{u, it, rn};
    ShiftedLaplacian J = linearized(p, lambda, u);
    Field R = residual(p, lambda, u);
    Field delta = solve_general(J, R);  // J delta = R, step is -delta
    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h <= 30; ++h, alpha *= 0.5) {
      Field trial = u;
      axpy(-alpha, delta, trial);
      const double rt = resid_norm(p, lambda, trial);
      if (rt < rn) {
        u = std::move(trial);
        rn = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // the residual cannot decrease further; accept when it sits at the
      // rounding floor of the residual evaluation itself
      const double floor =
          32.0 * std::numeric_limits<double>::epsilon() * J.opscale() *
          (1.0 + norm_inf(u));
      if (rn <= std::max(tol, floor)) return NewtonResult{u, it + 1, rn};
      throw NoConvergence("newton line search stalled at residual " +
                          std::to_string(rn));
    }
  }
  if (rn <= tol) return NewtonResult{u, max_iter, rn};
  throw NoConvergence("newton: residual " + std::to_string(rn) + " after " +
                      std::to_string(max_iter) + " iterations");
}

Diagram trace_minimal_branch(const ProblemSpec& p, ContinuationConfig cfg) {
  const double lambda1 =
      smallest_eigenpair(ShiftedLaplacian::laplacian(p.grid)).value;
  const double fp0 = p.nl.meta().fprime0;
  const double lambda_max =
      cfg.lambda_max > 0.0 ? cfg.lambda_max : auto_lambda_max(lambda1, fp0);
  const double step0 =
      cfg.initial_step > 0.0 ? cfg.initial_step : auto_initial_step(lambda1, fp0);

  Diagram dia;
  dia.points.push_back(make_point(p, 0.0, Field(p.grid, 0.0), 0, 0.0));

  double step = step0;
  while (static_cast<int>(dia.points.size()) < cfg.max_points) {
    const BranchPoint& cur = dia.points.back();
    if (cur.lambda >= lambda_max - 1e-14) {
      dia.termination = Termination::LambdaMax;
      log_info("branch stopped at lambda_max with " +
               std::to_string(dia.points.size()) + " points");
      return dia;
    }
    if (cur.sup_norm >= cfg.norm_cap) {
      dia.termination = Termination::Asymptote;
      log_info("branch hit the norm cap at lambda = " +
               std::to_string(cur.lambda));
      return dia;
    }
    const double dl = std::min(step, lambda_max - cur.lambda);
    if (dl < cfg.min_step) {
      // step collapse: fold at bounded norm, asymptote at blowup
      dia.termination = cur.sup_norm >= 1e-2 * cfg.norm_cap
                            ? Termination::Asymptote
                            : Termination::Fold;
      log_info(std::string("branch steps collapsed: ") +
               to_string(dia.termination) + " at lambda = " +
               std::to_string(cur.lambda));
      return dia;
    }

    bool ok = false;
    Field unew;
    int iters = 0;
    try {
      // exact tangent predictor (one linear solve)
      ShiftedLaplacian J = linearized(p, cur.lambda, cur.u);
      Field ulam = solve_general(J, f_nodal(p, cur.u));
      Field guess = cur.u;
      axpy(dl, ulam, guess);
      NewtonResult nr = newton_solve(p, cur.lambda + dl, guess, cfg.newton_tol);
      unew = std::move(nr.u);
      iters = nr.iterations;
      ok = true;
    } catch (const Error&) {
      ok = false;
    }
    if (ok) {
      BranchPoint cand = make_point(p, cur.lambda + dl, std::move(unew), iters, 0.0);
      // eigen guard: reject steps that jump past the fold
      if (cand.lambda1_lin < cfg.guard_fraction * cur.lambda1_lin) {
        ok = false;
      } else {
        ExtTangent d{cand.u - cur.u, cand.lambda - cur.lambda};
        cand.arclength = cur.arclength + std::sqrt(ext_dot(d, d));
        log_debug("branch point lambda=" + std::to_string(cand.lambda) +
                  " sup=" + std::to_string(cand.sup_norm) +
                  " lam1lin=" + std::to_string(cand.lambda1_lin));
        dia.points.push_back(std::move(cand));
        step = std::min(step * 1.5, 4.0 * step0);
        continue;
      }
    }
    step *= 0.5;
  }
  dia.termination = Termination::MaxPoints;
  return dia;
}

double estimate_lambda_star(const ProblemSpec& p, Diagram& diagram,
                            ContinuationConfig cfg) {
  if (diagram.termination != Termination::Fold)
    throw NoFold("branch did not terminate at a fold (" +
                 std::string(to_string(diagram.termination)) + ")");
  if (diagram.points.size() < 2) throw NoFold("branch too short");

  const double lambda1 =
      smallest_eigenpair(ShiftedLaplacian::laplacian(p.grid)).value;
  const double eig_tol = 1e-6 * lambda1;

  // locate a sign change of lambda1_lin along the curve, crossing the fold
  // with pseudo-arclength steps if the diagram stops on the stable side
  ExtPoint pa{diagram.points.back().u, diagram.points.back().lambda};
  double ya = diagram.points.back().lambda1_lin;
  const BranchPoint& prev = diagram.points[diagram.points.size() - 2];
  ExtTangent t = ext_diff(pa, ExtPoint{prev.u, prev.lambda});
  double ds = std::sqrt(ext_dot(t, t));
  ext_normalize(t);

  ExtPoint pb = pa;
  double yb = ya;
  bool bracketed = false;
  for (int k = 0; k < 400 && !bracketed; ++k) {
    ExtPoint cand;
    try {
      cand = arclength_correct(p, pa, t, ds, cfg.newton_tol);
    } catch (const Error&) {
      ds *= 0.5;
      if (ds < 1e-12) throw NoFold("arclength steps collapsed before bracketing");
      continue;
    }
    const double y = stability_classify(p, cand.lambda, cand.u).lambda1_lin;
    ExtTangent tn = ext_diff(cand, pa);
    ext_normalize(tn);
    if (y < 0.0) {
      pb = cand;
      yb = y;
      bracketed = true;
    } else {
      pa = cand;
      ya = y;
      t = tn;
      ds = std::min(ds * 1.3, 0.5);
    }
  }
  if (!bracketed) throw NoFold("no sign change of lambda1_lin found");

  // bisection along the curve between pa (positive) and pb (negative)
  ExtPoint best = std::abs(ya) < std::abs(yb) ? pa : pb;
  double ybest = std::abs(ya) < std::abs(yb) ? ya : yb;
  for (int k = 0; k < 80 && std::abs(ybest) > eig_tol; ++k) {
    ExtTangent gap = ext_diff(pb, pa);
    const double dist = std::sqrt(ext_dot(gap, gap));
    if (dist < 1e-13) break;
    ExtTangent dir = gap;
    ext_normalize(dir);
    ExtPoint mid;
    try {
      mid = arclength_correct(p, pa, dir, 0.5 * dist, cfg.newton_tol);
    } catch (const Error&) {
      break;
    }
    const double y = stability_classify(p, mid.lambda, mid.u).lambda1_lin;
    if (std::abs(y) < std::abs(ybest)) {
      best = mid;
      ybest = y;
    }
    if (y > 0.0) {
      pa = mid;
      ya = y;
    } else {
      pb = mid;
      yb = y;
    }
  }
  if (std::abs(ybest) > eig_tol)
    throw NoConvergence("fold refinement left |lambda1_lin| = " +
                        std::to_string(ybest));

  const double fp0 = p.nl.meta().fprime0;
  if (fp0 > 1e-12) {
    const double bound = lambda1 / fp0;
    if (best.lambda > bound + 1e-8)
      throw Error("AmannBoundViolated",
                  "lambda* = " + std::to_string(best.lambda) + " exceeds " +
                      std::to_string(bound));
  }
  log_info("fold refined to lambda = " + std::to_string(best.lambda) +
           " with lambda1_lin = " + std::to_string(ybest));
  diagram.fold = FoldInfo{best.lambda, norm_inf(best.u)};
  return best.lambda;
}

void pseudo_arclength_continue(const ProblemSpec& p, Diagram& diagram,
                               ContinuationConfig cfg) {
  if (diagram.termination != Termination::Fold)
    throw NoFold("pseudo-arclength continuation needs a fold");
  if (diagram.points.size() < 2) throw NoFold("branch too short");

  const std::size_t n0 = diagram.points.size();
  ExtPoint cur{diagram.points[n0 - 1].u, diagram.points[n0 - 1].lambda};
  ExtPoint prev{diagram.points[n0 - 2].u, diagram.points[n0 - 2].lambda};
  ExtTangent t = ext_diff(cur, prev);
  double ds = std::sqrt(ext_dot(t, t));
  ext_normalize(t);
  const double ds_max = std::max(8.0 * ds, 0.5);
  double arc = diagram.points.back().arclength;

  int accepted = 0;
  int failures = 0;
  while (static_cast<int>(diagram.points.size()) < cfg.max_points) {
    ExtPoint cand;
    try {
      cand = arclength_correct(p, cur, t, ds, cfg.newton_tol);
    } catch (const Error&) {
      ds *= 0.5;
      if (ds < 1e-9 || ++failures > 100) {
        // steps shrink to nothing once the branch runs into its vertical
        // asymptote; stopping there is a result, not an error
        if (accepted == 0)
          throw StepCollapse("pseudo-arclength made no progress at lambda = " +
                             std::to_string(cur.lambda));
        diagram.termination = Termination::StepCollapse;
        return;
      }
      continue;
    }
    failures = 0;
    ExtTangent tn = ext_diff(cand, cur);
    const double len = std::sqrt(ext_dot(tn, tn));
    if (!(len > 1e-12 * (1.0 + std::abs(ds)))) {
      ds *= 0.5;
      continue;  // corrector landed back on the current point
    }
    arc += len;
    ext_normalize(tn);

    BranchPoint bp = make_point(p, cand.lambda, cand.u, 0, arc);
    diagram.points.push_back(bp);
    ++accepted;
    prev = cur;
    cur = cand;
    t = tn;
    ds = std::min(ds * 2.0, ds_max);

    if (bp.sup_norm >= cfg.norm_cap) {
      diagram.termination = Termination::Asymptote;
      return;
    }
    if (bp.lambda <= cfg.lambda_min) {
      diagram.termination = Termination::LambdaMin;
      return;
    }
  }
  diagram.termination = Termination::MaxPoints;
}

Field minimal_solution(const ProblemSpec& p, double lambda, double newton_tol) {
  if (lambda < 0.0) throw InvalidArgument("lambda must be nonnegative");
  Field u(p.grid, 0.0);
  if (lambda == 0.0) return u;
  double cur = 0.0;
  double step = lambda / 8.0;
  while (cur < lambda) {
    const double dl = std::min(step, lambda - cur);
    if (dl < 1e-12)
      throw NoConvergence("minimal-solution continuation stalled at lambda = " +
                          std::to_string(cur));
    try {
      ShiftedLaplacian J = linearized(p, cur, u);
      Field ulam = solve_general(J, f_nodal(p, u));
      Field guess = u;
      axpy(dl, ulam, guess);
      u = newton_solve(p, cur + dl, guess, newton_tol).u;
      cur += dl;
      step *= 1.5;
    } catch (const Error&) {
      step = 0.5 * dl;
    }
  }
  return u;
}

Field branch_solution_at(const ProblemSpec& p, const Diagram& diagram,
                         double lambda, bool unstable_side, double newton_tol) {
  const BranchPoint* seed = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const BranchPoint& bp : diagram.points) {
    const bool unstable = bp.lambda1_lin < 0.0;
    if (unstable != unstable_side) continue;
    const double d = std::abs(bp.lambda - lambda);
    if (d < best) {
      best = d;
      seed = &bp;
    }
  }
  if (!seed)
    throw NoFold("diagram has no points on the requested side at lambda = " +
                 std::to_string(lambda));
  NewtonResult nr = newton_solve(p, lambda, seed->u, newton_tol);
  return nr.u;
}

}  // namespace ell
