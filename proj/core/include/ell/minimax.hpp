#pragma once

#include <vector>

#include "ell/branch.hpp"
#include "ell/problems.hpp"

namespace ell {

/// Discrete energy E(u) = 1/2 int |grad u|^2 - lambda int F(x,u) - int g u.
double energy(const ProblemSpec& p, double lambda, const Field& u);

/// Raw gradient is the residual r = -Lap_h u - lambda f(x,u) - g; the
/// preconditioned form returns solve(-Lap_h, r), the energy-space
/// representative used for descent.
Field grad(const ProblemSpec& p, double lambda, const Field& u,
           bool preconditioned);

/// Norm matching the gradient flavour: discrete L2 for the raw residual,
/// the H1_0 energy norm of the preconditioned representative otherwise.
double grad_norm(const ProblemSpec& p, double lambda, const Field& u,
                 bool preconditioned);

/// Discretized path of fields joining two fixed endpoints.
struct Path {
  std::vector<Field> nodes;  // m+1 nodes; endpoints never move
};

struct MinimaxResult {
  double c = 0.0;       // energy at the returned saddle
  Field u;              // polished max-energy node
  double grad_norm = 0.0;
  Path path;
  int iters = 0;
  std::vector<double> max_energy_trace;  // nonincreasing
};

struct MountainPassOptions {
  int m = 32;            // path segments (m+1 nodes, m >= 8)
  double tol = 1e-6;     // preconditioned gradient norm at the max node
  int max_iter = 20000;
  int reparam_every = 10;
  double newton_tol = 1e-10;  // final polish
};

/// The numerical mountain pass scheme: straight-line initial path from 0 to
/// the endpoint, repeated preconditioned-gradient descent of the maximal
/// energy node with backtracking, arclength reparametrization in the energy
/// norm every few iterations (accepted only when the path max does not
/// rise), Newton polish of the converged max node. Requires energy(e) < 0.
/// Throws PathCollapsed when the maximum migrates to an endpoint.
MinimaxResult mountain_pass(const ProblemSpec& p, double lambda,
                            const Field& endpoint, MountainPassOptions opt = {});

struct SecondSolutionCertificate {
  double residual = 0.0;       // original-problem residual at u2
  double lambda1_lin = 0.0;    // expected < 0
  StabilityTag tag = StabilityTag::Semistable;
  bool ordering_ok = false;    // minimal <= u2 nodewise (within 1e-10)
  double gap_sup = 0.0;        // ||u2 - minimal||_inf
};

struct SecondSolutionResult {
  Field u2;
  Field minimal;
  SecondSolutionCertificate cert;
  MinimaxResult mp;
};

/// Second solution above the minimal one via the translated functional
/// J(v) = 1/2 int |grad v|^2 - lambda int [F(ul+v) - F(ul) - f(ul) v],
/// with the endpoint chosen by dyadic scaling of e1. Throws
/// NoMountainGeometry when no scaling makes J negative and OrderingFailed
/// when the returned translate dips below -1e-10.
SecondSolutionResult second_solution(const ProblemSpec& p, double lambda,
                                     MountainPassOptions opt = {});

struct EkelandResult {
  Field z;
  double energy_z = 0.0;
  double energy_start = 0.0;
  double grad_norm = 0.0;  // preconditioned (energy-dual) norm
  bool energy_ok = false;  // energy(z) <= energy(start), re-verified
  bool grad_ok = false;    // grad_norm  <= eps, re-verified
  int iters = 0;
};

/// Preconditioned gradient descent with backtracking until the gradient
/// norm drops to eps; both returned inequalities are re-checked with fresh
/// evaluations. The caller asserts the energy is bounded below.
EkelandResult ekeland_point(const ProblemSpec& p, double lambda, double eps,
                            const Field& start, int max_iter = 50000);

}  // namespace ell
