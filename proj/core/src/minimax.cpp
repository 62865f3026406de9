#include "ell/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ell/errors.hpp"
#include "ell/log.hpp"

namespace ell {

namespace {

double energy_distance(const Field& a, const Field& b) {
  Field d = a - b;
  return std::sqrt(std::max(0.0, dirichlet_energy(d)));
}

// H1_0 inner product <a,b> = measure * a . (-Lap b)
double energy_dot(const Field& a, const Field& b) {
  Field Lb = ShiftedLaplacian::laplacian(b.grid()).apply(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Lb[i];
  return a.grid().measure() * s;
}

// redistribute path nodes to equal arclength in the energy norm, walking
// the existing polygon; endpoints untouched
std::vector<Field> reparametrize(const std::vector<Field>& nodes) {
  const std::size_t m = nodes.size() - 1;
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i)
    cum[i] = cum[i - 1] + energy_distance(nodes[i], nodes[i - 1]);
  const double total = cum[m];
  if (!(total > 0.0)) return nodes;
  std::vector<Field> out;
  out.reserve(m + 1);
  out.push_back(nodes.front());
  std::size_t seg = 1;
  for (std::size_t j = 1; j < m; ++j) {
    const double target = total * j / m;
    while (seg < m && cum[seg] < target) ++seg;
    const double span = cum[seg] - cum[seg - 1];
    const double w = span > 0.0 ? (target - cum[seg - 1]) / span : 0.0;
    Field node = nodes[seg - 1];
    for (std::size_t k = 0; k < node.size(); ++k)
      node[k] += w * (nodes[seg][k] - nodes[seg - 1][k]);
    out.push_back(std::move(node));
  }
  out.push_back(nodes.back());
  return out;
}

}  // namespace

double energy(const ProblemSpec& p, double lambda, const Field& u) {
  if (!u.bound_to(p.grid)) throw BindingMismatch("field not bound to problem grid");
  double e = 0.5 * dirichlet_energy(u) - lambda * integrate(anti_nodal(p, u));
  if (p.forcing) e -= dot_l2(*p.forcing, u);
  return e;
}

Field grad(const ProblemSpec& p, double lambda, const Field& u,
           bool preconditioned) {
  Field r = residual(p, lambda, u);
  if (!preconditioned) return r;
  return solve(ShiftedLaplacian::laplacian(p.grid), r);
}

double grad_norm(const ProblemSpec& p, double lambda, const Field& u,
                 bool preconditioned) {
  Field r = residual(p, lambda, u);
  if (!preconditioned) return norm_l2(r);
  Field g = solve(ShiftedLaplacian::laplacian(p.grid), r);
  // ||g||_{H1_0} = sqrt(g . r * measure), the dual norm of the residual
  return std::sqrt(std::max(0.0, dot_l2(g, r)));
}

MinimaxResult mountain_pass(const ProblemSpec& p, double lambda,
                            const Field& endpoint, MountainPassOptions opt) {
  if (opt.m < 8) throw InvalidArgument("mountain pass path needs m >= 8");
  if (!endpoint.bound_to(p.grid))
    throw BindingMismatch("endpoint not bound to problem grid");
  if (norm_inf(endpoint) == 0.0)
    throw NoMountainGeometry("endpoint is the origin");
  const double e_end = energy(p, lambda, endpoint);
  if (!(e_end < 0.0))
    throw NoMountainGeometry("endpoint energy " + std::to_string(e_end) +
                             " is not below the origin's");

  const std::size_t m = static_cast<std::size_t>(opt.m);
  std::vector<Field> nodes;
  nodes.reserve(m + 1);
  for (std::size_t j = 0; j <= m; ++j)
    nodes.push_back((static_cast<double>(j) / m) * endpoint);

  std::vector<double> energies(m + 1);
  for (std::size_t j = 0; j <= m; ++j) energies[j] = energy(p, lambda, nodes[j]);

  const double floor_energy = std::max(0.0, e_end);

  // golden-section maximization of the energy along one segment
  auto segment_max = [&](const Field& a, const Field& b) {
    auto along = [&](double w) {
      Field cand = a;
      for (std::size_t k = 0; k < cand.size(); ++k)
        cand[k] += w * (b[k] - a[k]);
      return cand;
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 0.0, hi = 1.0;
    double w1 = hi - kInvPhi * (hi - lo), w2 = lo + kInvPhi * (hi - lo);
    double e1 = energy(p, lambda, along(w1));
    double e2 = energy(p, lambda, along(w2));
    for (int q = 0; q < 40 && hi - lo > 1e-10; ++q) {
      if (e1 < e2) {
        lo = w1;
        w1 = w2;
        e1 = e2;
        w2 = lo + kInvPhi * (hi - lo);
        e2 = energy(p, lambda, along(w2));
      } else {
        hi = w2;
        w2 = w1;
        e2 = e1;
        w1 = hi - kInvPhi * (hi - lo);
        e1 = energy(p, lambda, along(w1));
      }
    }
    const double w = 0.5 * (lo + hi);
    Field cand = along(w);
    const double ec = energy(p, lambda, cand);
    return std::pair<double, Field>(ec, std::move(cand));
  };

  MinimaxResult res;
  auto polish_and_return = [&](std::size_t jmax, int it) {
    NewtonResult nr = newton_solve(p, lambda, nodes[jmax], opt.newton_tol);
    const double polished_gn = grad_norm(p, lambda, nr.u, true);
    if (polished_gn > opt.tol)
      throw NoConvergence("polish left gradient norm " +
                          std::to_string(polished_gn));
    res.u = nr.u;
    res.c = energy(p, lambda, res.u);
    res.grad_norm = polished_gn;
    res.iters = it;
    res.path.nodes = std::move(nodes);
    return res;
  };

  int it = 0;
  for (; it < opt.max_iter; ++it) {
    // locate the maximum over the whole piecewise-linear path and pull the
    // adjacent node up to it, so the ridge crossing cannot slip between
    // nodes and the recorded value is the true path maximum
    double best_e = -std::numeric_limits<double>::infinity();
    Field best_u;
    std::size_t best_node = 0;
    for (std::size_t j = 0; j < m; ++j) {
      auto [ec, cand] = segment_max(nodes[j], nodes[j + 1]);
      if (ec > best_e) {
        best_e = ec;
        best_u = std::move(cand);
        best_node = energies[j] >= energies[j + 1] ? j : j + 1;
      }
    }
    if (best_e <= floor_energy + 1e-13)
      throw PathCollapsed("path maximum fell to the endpoint level");
    if (best_node == 0 || best_node == m)
      best_node = best_node == 0 ? 1 : m - 1;
    if (best_e > energies[best_node]) {
      nodes[best_node] = std::move(best_u);
      energies[best_node] = best_e;
    }
    const std::size_t jmax = best_node;

    // hand over to the polish step as soon as the path max stops falling;
    // the m-node resolution bounds what the deformation can still achieve
    if (!res.max_energy_trace.empty() &&
        energies[jmax] >= res.max_energy_trace.back() - 1e-13 && it > 4) {
      return polish_and_return(jmax, it);
    }
    res.max_energy_trace.push_back(energies[jmax]);

    const double gn = grad_norm(p, lambda, nodes[jmax], true);
    if (gn <= opt.tol) return polish_and_return(jmax, it);

    // one preconditioned descent step with backtracking on the max node.
    // First try the gradient with its path-tangent component projected out
    // (the node descends the ridge transversally and cannot slide into a
    // basin); when that direction stalls, take a full-gradient step capped
    // at a fraction of the local node spacing.
    Field g_full = grad(p, lambda, nodes[jmax], true);
    Field g_proj = g_full;
    Field tau = nodes[jmax + 1] - nodes[jmax - 1];
    const double tau2 = energy_dot(tau, tau);
    if (tau2 > 0.0) axpy(-energy_dot(g_proj, tau) / tau2, tau, g_proj);

    auto backtrack = [&](const Field& dir, double alpha0) {
      double alpha = alpha0;
      for (int h = 0; h <= 40; ++h, alpha *= 0.5) {
        Field trial = nodes[jmax];
        axpy(-alpha, dir, trial);
        const double et = energy(p, lambda, trial);
        if (et < energies[jmax]) {
          nodes[jmax] = std::move(trial);
          energies[jmax] = et;
          return true;
        }
      }
      return false;
    };

    const double spacing =
        std::min(energy_distance(nodes[jmax], nodes[jmax - 1]),
                 energy_distance(nodes[jmax + 1], nodes[jmax]));
    bool accepted = false;
    const double gplen = std::sqrt(std::max(0.0, dirichlet_energy(g_proj)));
    if (gplen > 1e-3 * opt.tol)
      accepted = backtrack(g_proj, std::min(1.0, 0.5 * spacing / gplen));
    if (!accepted) {
      const double gflen = std::sqrt(std::max(0.0, dirichlet_energy(g_full)));
      const double alpha0 =
          gflen > 0.0 ? std::min(1.0, 0.05 * spacing / gflen) : 1.0;
      accepted = backtrack(g_full, alpha0);
    }
    if (!accepted)
      throw NoConvergence("max-node descent stalled with gradient norm " +
                          std::to_string(gn));

    if (opt.reparam_every > 0 && (it + 1) % opt.reparam_every == 0) {
      std::vector<Field> redis = reparametrize(nodes);
      std::vector<double> new_e(m + 1);
      double new_max = -std::numeric_limits<double>::infinity();
      double old_max = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j <= m; ++j) {
        new_e[j] = energy(p, lambda, redis[j]);
        new_max = std::max(new_max, new_e[j]);
        old_max = std::max(old_max, energies[j]);
      }
      // resampling may not raise the path max
      if (new_max <= old_max + 1e-12) {
        nodes = std::move(redis);
        energies = std::move(new_e);
      }
    }
  }
  throw MaxIterExceeded("mountain pass: " + std::to_string(opt.max_iter) +
                        " iterations");
}

SecondSolutionResult second_solution(const ProblemSpec& p, double lambda,
                                     MountainPassOptions opt) {
  Field minimal = minimal_solution(p, lambda);
  ProblemSpec tp = translated(p, minimal);

  EigenPair e1 = smallest_eigenpair(ShiftedLaplacian::laplacian(p.grid));
  const double scale = std::max(norm_inf(minimal), 1e-8);
  Field endpoint;
  bool found = false;
  for (int k = 0; k <= 16; ++k) {
    const double t = std::ldexp(scale, k);  // 2^k * scale
    Field e = t * e1.vector;
    if (energy(tp, lambda, e) < 0.0) {
      endpoint = std::move(e);
      found = true;
      break;
    }
  }
  if (!found)
    throw NoMountainGeometry("no dyadic multiple of e1 has negative translated energy");

  MinimaxResult mp = mountain_pass(tp, lambda, endpoint, opt);
  const Field& v = mp.u;
  double vmin = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) vmin = std::min(vmin, v[i]);
  if (vmin < -1e-10)
    throw OrderingFailed("translate dips to " + std::to_string(vmin));

  SecondSolutionResult out;
  out.u2 = minimal + v;
  out.minimal = std::move(minimal);
  StabilityReport rep = stability_classify(p, lambda, out.u2);
  out.cert.residual = norm_inf(residual(p, lambda, out.u2));
  out.cert.lambda1_lin = rep.lambda1_lin;
  out.cert.tag = rep.tag;
  out.cert.ordering_ok = vmin >= -1e-10;
  out.cert.gap_sup = norm_inf(v);
  out.mp = std::move(mp);
  return out;
}

EkelandResult ekeland_point(const ProblemSpec& p, double lambda, double eps,
                            const Field& start, int max_iter) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  Field z = start;
  double ez = energy(p, lambda, z);
  int it = 0;
  for (; it < max_iter; ++it) {
    const double gn = grad_norm(p, lambda, z, true);
    if (gn <= eps) break;
    Field g = grad(p, lambda, z, true);
    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h <= 40; ++h, alpha *= 0.5) {
      Field trial = z;
      axpy(-alpha, g, trial);
      const double et = energy(p, lambda, trial);
      if (et < ez) {
        z = std::move(trial);
        ez = et;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw NoConvergence("descent stalled with gradient norm " +
                          std::to_string(gn) + " above eps");
  }
  if (it >= max_iter)
    throw MaxIterExceeded("ekeland descent: " + std::to_string(max_iter) +
                          " iterations");

  EkelandResult res;
  res.z = std::move(z);
  res.iters = it;
  // re-verify both inequalities with fresh evaluations
  res.energy_z = energy(p, lambda, res.z);
  res.energy_start = energy(p, lambda, start);
  res.grad_norm = grad_norm(p, lambda, res.z, true);
  res.energy_ok = res.energy_z <= res.energy_start;
  res.grad_ok = res.grad_norm <= eps;
  return res;
}

}  // namespace ell
