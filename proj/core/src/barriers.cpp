#include "ell/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ell/errors.hpp"
#include "ell/log.hpp"

namespace ell {

namespace {

// max over nodes and 32 samples per nodal interval of -lambda f_u
double estimate_shift(const ProblemSpec& p, double lambda, const Field& lo,
                      const Field& hi) {
  constexpr int kSamples = 32;
  double worst = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double x = p.grid.x(i);
    const double b = p.base ? (*p.base)[i] : 0.0;
    const double a = lo[i], c = hi[i];
    for (int s = 0; s <= kSamples; ++s) {
      const double u = a + (c - a) * s / kSamples;
      worst = std::max(worst, -lambda * p.nl.fprime(x, b + u));
    }
  }
  return std::max(0.0, worst) + 1e-6;
}

}  // namespace

BarrierCheck verify_barrier(const ProblemSpec& p, double lambda,
                            const Field& u, Side side) {
  if (!u.bound_to(p.grid)) throw BindingMismatch("barrier not bound to problem grid");
  Field r = residual(p, lambda, u);  // -Lap u - lambda f(u) - g
  double worst = 0.0;
  double scale = 0.0;
  const ShiftedLaplacian lap = ShiftedLaplacian::laplacian(p.grid);
  Field lap_u = lap.apply(u);
  Field fu = f_nodal(p, u);
  for (std::size_t i = 0; i < u.size(); ++i)
    scale = std::max(scale, std::abs(lap_u[i]) + std::abs(lambda * fu[i]));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = side == Side::Sub ? r[i] : -r[i];
    worst = std::max(worst, v);
  }
  return BarrierCheck{worst <= 1e-10 * (1.0 + scale), worst};
}

BarrierPair default_barriers(const ProblemSpec& p, double lambda) {
  const Grid& g = p.grid;
  const ShiftedLaplacian lap = ShiftedLaplacian::laplacian(g);
  const double lambda1 = smallest_eigenpair(lap).value;
  const double a = 0.5 * lambda1;
  const double sup_g = p.forcing ? norm_inf(*p.forcing) : 0.0;

  // Fit lambda f(u) sign u <= a|u| + C on a sampled range; shrink the cap
  // until the constructed supersolution stays inside the certified range
  // and verifies nodewise.
  double cap = 10.0;
  for (int attempt = 0; attempt < 24; ++attempt, cap *= 0.5) {
    constexpr int kSamples = 512;
    double C = 0.0;
    for (int s = 0; s <= kSamples; ++s) {
      const double u = -cap + 2.0 * cap * s / kSamples;
      const double lhs = lambda * p.nl.f(0.0, u) * (u >= 0.0 ? 1.0 : -1.0);
      C = std::max(C, lhs - a * std::abs(u));
    }
    const double Cp = C + sup_g + 1e-12;

    Field mshift(g, -a);
    Field rhs(g, Cp);
    Field super;
    try {
      super = solve(ShiftedLaplacian(g, mshift), rhs);
    } catch (const NotCoercive&) {
      throw GrowthBoundUnavailable("growth slope reached the coercivity limit");
    }
    if (norm_inf(super) > cap) continue;  // left the certified range

    BarrierCheck sc = verify_barrier(p, lambda, super, Side::Super);
    if (!sc.ok) continue;

    BarrierPair pair;
    pair.super = super;
    pair.super_ok = true;

    const bool supercritical = lambda * p.nl.meta().fprime0 > lambda1;
    if (supercritical) {
      // principal-eigenfunction subsolution: eps e1, halved until the
      // nodewise inequality verifies.
      EigenPair e1 = smallest_eigenpair(lap);
      double eps = 1.0;
      bool found = false;
      for (int k = 0; k < 60; ++k, eps *= 0.5) {
        Field sub = eps * e1.vector;
        if (!(norm_inf(sub) <= norm_inf(super))) continue;
        BarrierCheck bc = verify_barrier(p, lambda, sub, Side::Sub);
        if (bc.ok) {
          pair.sub = sub;
          pair.sub_ok = true;
          found = true;
          break;
        }
      }
      if (!found) throw EpsilonExhausted("eps e1 never verified as a subsolution");
    } else {
      pair.sub = -1.0 * super;
      pair.sub_ok = verify_barrier(p, lambda, pair.sub, Side::Sub).ok;
      if (!pair.sub_ok) continue;
    }

    pair.ordering_ok = true;
    for (std::size_t i = 0; i < pair.sub.size(); ++i)
      if (pair.sub[i] > pair.super[i] + 1e-14) pair.ordering_ok = false;
    if (!pair.ordering_ok) continue;
    return pair;
  }
  throw GrowthBoundUnavailable(
      "no sampled growth bound produced a verified barrier pair");
}

MonotoneResult monotone_iterate(const ProblemSpec& p, double lambda,
                                const BarrierPair& pair, Direction dir,
                                MonotoneOptions opt) {
  if (!pair.ordering_ok)
    throw OrderingViolated("barrier pair is not ordered");
  if (!pair.sub_ok || !pair.super_ok)
    throw InvalidArgument("barrier pair is not verified on both sides");
  require_same_grid(pair.sub, pair.super);
  if (!pair.sub.bound_to(p.grid))
    throw BindingMismatch("barriers not bound to problem grid");

  double shift = estimate_shift(p, lambda, pair.sub, pair.super);
  for (int attempt = 0; attempt < 2; ++attempt) {
    MonotoneTrace trace;
    trace.shift_a = shift;
    trace.direction = dir;
    const ShiftedLaplacian A(p.grid, Field(p.grid, shift));
    Field u = dir == Direction::FromSuper ? pair.super : pair.sub;
    if (opt.keep_iterates) trace.iterates.push_back(u);
    trace.sup_norms.push_back(norm_inf(u));
    trace.residuals.push_back(norm_inf(residual(p, lambda, u)));

    bool broke_order = false;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
      Field fu = f_nodal(p, u);
      Field rhs(p.grid, 0.0);
      for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] = lambda * fu[i] + shift * u[i];
        if (p.forcing) rhs[i] += (*p.forcing)[i];
      }
      Field next = solve(A, rhs);

      double step = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = next[i] - u[i];
        step = std::max(step, std::abs(d));
        const bool bad = dir == Direction::FromSuper ? d > 1e-12 : d < -1e-12;
        if (bad) broke_order = true;
      }
      if (broke_order) break;

      u = next;
      if (opt.keep_iterates) trace.iterates.push_back(u);
      trace.sup_norms.push_back(norm_inf(u));
      trace.residuals.push_back(norm_inf(residual(p, lambda, u)));
      if (step <= opt.tol) {
        MonotoneResult res;
        res.solution = u;
        res.residual = trace.residuals.back();
        res.iterations = it + 1;
        res.trace = std::move(trace);
        return res;
      }
    }
    if (broke_order) {
      // one retry with the shift doubled; a second break is an error
      if (attempt == 0) {
        shift = 2.0 * shift + 1.0;
        log_info("monotone ordering broke, retrying with shift " +
                 std::to_string(shift));
        continue;
      }
      throw OrderingViolated("iterates left the monotone chain (shift underestimate)");
    }
    throw MaxIterExceeded("monotone iteration: " + std::to_string(opt.max_iter) +
                          " iterations without reaching tol");
  }
  throw OrderingViolated("unreachable");
}

const char* to_string(StabilityTag tag) {
  switch (tag) {
    case StabilityTag::Stable: return "stable";
    case StabilityTag::Semistable: return "semistable";
    case StabilityTag::Unstable: return "unstable";
  }
  return "?";
}

StabilityReport stability_classify(const ProblemSpec& p, double lambda,
                                   const Field& u) {
  if (!finite(u)) throw InvalidArgument("field has non-finite entries");
  const ShiftedLaplacian L = linearized(p, lambda, u);
  EigenPair pr = smallest_eigenpair(L);
  double cscale = 0.0;
  for (double v : L.shift().values()) cscale = std::max(cscale, std::abs(v));
  const double band = 1e-8 * (1.0 + cscale);
  StabilityReport rep;
  rep.lambda1_lin = pr.value;
  if (pr.value > band)
    rep.tag = StabilityTag::Stable;
  else if (pr.value < -band)
    rep.tag = StabilityTag::Unstable;
  else
    rep.tag = StabilityTag::Semistable;
  return rep;
}

}  // namespace ell
