#pragma once

#include "ell/grid.hpp"

namespace ell {

/// The shifted discrete Laplacian -Lap_h + diag(c) with homogeneous
/// Dirichlet data, realized by the 3-point (1-D) or 5-point (2-D)
/// second-difference stencil. Symmetric as a quadratic form; positive
/// definite whenever c >= 0. Immutable after assembly.
class ShiftedLaplacian {
public:
  ShiftedLaplacian(const Grid& g, Field c);
  static ShiftedLaplacian laplacian(const Grid& g) {
    return ShiftedLaplacian(g, Field(g, 0.0));
  }

  const Grid& grid() const { return grid_; }
  const Field& shift() const { return c_; }

  Field apply(const Field& u) const;

  /// Gershgorin lower bound on the spectrum.
  double gershgorin_lower() const;
  /// Magnitude scale of the operator (max absolute row sum).
  double opscale() const;
  double min_shift() const { return cmin_; }

private:
  Grid grid_;
  Field c_;
  double cmin_ = 0.0;
};

struct EigenPair {
  double value = 0.0;
  Field vector;        // unit L2 norm, nonnegative first extremum
  double residual = 0.0;
  int iterations = 0;
};

struct EigenOptions {
  double value_tol = 1e-12;   // relative increment stop
  double resid_tol = 1e-10;   // residual stop (inf norm)
  int max_iter = 4000;
};

/// Linear solve for coercive operators. c >= 0 passes directly; otherwise
/// an explicit eigensolve must certify the smallest eigenvalue > 1e-12 or
/// NotCoercive is thrown. 1-D uses exact tridiagonal elimination with one
/// step of iterative refinement, 2-D conjugate gradients. The residual
/// lands at max(1e-12 * (1 + ||rhs||_inf), the rounding floor of one
/// operator application), the floor growing like eps/h^2.
Field solve(const ShiftedLaplacian& A, const Field& rhs);

/// Linear solve for possibly indefinite (but nonsingular) operators:
/// banded LU with partial pivoting in 1-D, MINRES in 2-D.
/// Throws SingularJacobian when the matrix is numerically singular.
Field solve_general(const ShiftedLaplacian& A, const Field& rhs);

/// Algebraically smallest eigenpair by shifted inverse power iteration.
/// The shift is an automatic lower bound from Gershgorin's theorem, so the
/// iteration handles indefinite operators. Stops when the eigenvalue
/// increment and the residual are both below their tolerances.
EigenPair smallest_eigenpair(const ShiftedLaplacian& A, EigenOptions opt = {});

/// Discrete Dirichlet energy: integral of |grad u|^2, computed as
/// measure * u . (-Lap_h u).
double dirichlet_energy(const Field& u);

/// H1_0 (energy) norm sqrt(int |grad u|^2).
double energy_norm(const Field& u);

}  // namespace ell
