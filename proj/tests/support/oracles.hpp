#pragma once

// Test-only oracles, deliberately independent of the library solvers:
// dense matrices, Jacobi eigenvalues, LU with partial pivoting, and the
// closed-form discrete solution of constant-coefficient two-point problems.

#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

struct Dense {
  std::size_t n = 0;
  std::vector<double> a;  // row-major
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  static Dense zero(std::size_t n) { return Dense{n, std::vector<double>(n * n, 0.0)}; }
};

/// Dense 1-D operator -D2/h^2 + diag(c) for n interior nodes.
Dense tridiag_operator(std::size_t n, double h, const std::vector<double>& c);

/// Dense 2-D five-point operator on an nx*ny interior grid.
Dense five_point_operator(std::size_t nx, std::size_t ny, double hx, double hy,
                          const std::vector<double>& c);

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// ascending order.
std::vector<double> jacobi_eigenvalues(Dense A, int sweeps = 100);

/// Solve A x = b by LU with partial pivoting.
std::vector<double> lu_solve(Dense A, std::vector<double> b);

/// Dense inverse via LU column solves.
Dense lu_inverse(const Dense& A);

/// Closed-form solution of the constant-coefficient discrete problem
/// (-D2/h^2 + mu) u = b (b constant) on n interior nodes with zero
/// boundary, via characteristic roots of the three-term recurrence.
std::vector<double> const_coeff_solution(std::size_t n, double h, double mu,
                                         double b);

/// Centered finite difference of a scalar functional along direction v.
template <typename F>
double directional_fd(F&& func, double eps) {
  return (func(eps) - func(-eps)) / (2.0 * eps);
}

}  // namespace oracle
