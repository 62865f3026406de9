#pragma once

#include <vector>

#include "ell/problems.hpp"

namespace ell {

enum class Side { Sub, Super };
enum class Direction { FromSub, FromSuper };

struct BarrierCheck {
  bool ok = false;
  double worst_violation = 0.0;  // max signed violation of the inequality
};

/// Nodewise check of -Lap_h u <= lambda f(x,u) + g (sub) or >= (super),
/// with tolerance 1e-10 * (1 + scale). The zero boundary is implicit.
BarrierCheck verify_barrier(const ProblemSpec& p, double lambda,
                            const Field& u, Side side);

struct BarrierPair {
  Field sub, super;
  bool sub_ok = false;
  bool super_ok = false;
  bool ordering_ok = false;  // sub <= super nodewise; checked, never assumed
};

/// Automatic barriers: fit a linear growth bound lambda f(u) sign u <=
/// a|u| + C on a sampled, capped range, take super as the solution of
/// (-Lap_h - a) super = C' and sub = -super; when the linearization at zero
/// is supercritical (lambda f'(0) > lambda1_h) the subsolution is eps * e1
/// with eps halved until it verifies. Throws GrowthBoundUnavailable /
/// EpsilonExhausted.
BarrierPair default_barriers(const ProblemSpec& p, double lambda);

struct MonotoneTrace {
  std::vector<double> sup_norms;     // per-iterate sup norms
  std::vector<double> residuals;     // per-iterate nonlinear residuals
  std::vector<Field> iterates;       // kept when keep_iterates is set
  double shift_a = 0.0;
  Direction direction = Direction::FromSuper;
};

struct MonotoneOptions {
  double tol = 1e-8;        // stop on sup norm of successive difference
  int max_iter = 20000;
  bool keep_iterates = false;
};

struct MonotoneResult {
  Field solution;
  MonotoneTrace trace;
  double residual = 0.0;  // final nonlinear residual, reported as certificate
  int iterations = 0;
};

/// The monotone scheme: with shift a >= max(0, max(-lambda f_u)) over the
/// sandwich (32 samples per nodal interval, margin 1e-6), iterate
///   u_n = solve(-Lap_h + a, lambda f(x, u_{n-1}) + a u_{n-1} + g)
/// from the chosen end of the pair. From the supersolution the iterates
/// decrease to the maximal solution of the pair, from the subsolution they
/// increase to the minimal one. A monotonicity break beyond 1e-12 triggers
/// one retry with the shift doubled, then OrderingViolated.
MonotoneResult monotone_iterate(const ProblemSpec& p, double lambda,
                                const BarrierPair& pair, Direction dir,
                                MonotoneOptions opt = {});

enum class StabilityTag { Stable, Semistable, Unstable };

struct StabilityReport {
  double lambda1_lin = 0.0;
  StabilityTag tag = StabilityTag::Semistable;
};

const char* to_string(StabilityTag tag);

/// Sign of the smallest eigenvalue of -Lap_h - lambda diag(f'(u)), with a
/// relative semistable band 1e-8 * (1 + operator scale).
StabilityReport stability_classify(const ProblemSpec& p, double lambda,
                                   const Field& u);

}  // namespace ell
