#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "ell/grid.hpp"
#include "ell/linops.hpp"
#include "oracles.hpp"

using namespace ell;

namespace {

double closed_form_lambda1(const Grid& g) {
  const double h = g.hx();
  return 4.0 / (h * h) * std::pow(std::sin(M_PI * h / 2.0), 2);
}

Field random_field(const Grid& g, std::mt19937_64& rng, double lo = -1.0,
                   double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Field u(g, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = dist(rng);
  return u;
}

}  // namespace

TEST_CASE("apply reproduces the 3x3 eigenvector") {
  // hand oracle: (s, 1, s) with s = 1/sqrt(2) is the first eigenvector of
  // the n=3 Dirichlet second-difference matrix, eigenvalue (2 - sqrt(2))/h^2
  Grid g = Grid::interval(3);
  const double s = 1.0 / std::sqrt(2.0);
  Field v(g, {s, 1.0, s});
  Field Av = ShiftedLaplacian::laplacian(g).apply(v);
  const double mu = (2.0 - std::sqrt(2.0)) / (g.hx() * g.hx());
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(Av[i] == doctest::Approx(mu * v[i]).epsilon(1e-13));
}

TEST_CASE("apply on zero field and diagonal shift") {
  Grid g = Grid::interval(12);
  std::mt19937_64 rng(5);
  Field u = random_field(g, rng);
  CHECK(norm_inf(ShiftedLaplacian::laplacian(g).apply(Field(g, 0.0))) == 0.0);
  Field a0 = ShiftedLaplacian::laplacian(g).apply(u);
  Field a1 = ShiftedLaplacian(g, Field(g, 1.0)).apply(u);
  const double scale = norm_inf(a0);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(std::abs(a1[i] - a0[i] - u[i]) <= 1e-15 * scale);
}

TEST_CASE("symmetry as a quadratic form") {
  std::mt19937_64 rng(17);
  for (const Grid& g : {Grid::interval(25), Grid::unit_square(8)}) {
    Field c = random_field(g, rng, 0.0, 3.0);
    ShiftedLaplacian A(g, c);
    for (int rep = 0; rep < 10; ++rep) {
      Field u = random_field(g, rng), v = random_field(g, rng);
      double uAv = 0.0, vAu = 0.0, nu = 0.0, nv = 0.0;
      Field Av = A.apply(v), Au = A.apply(u);
      for (std::size_t i = 0; i < u.size(); ++i) {
        uAv += u[i] * Av[i];
        vAu += v[i] * Au[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
      }
      CHECK(std::abs(uAv - vAu) <=
            1e-12 * A.opscale() * std::sqrt(nu) * std::sqrt(nv));
    }
  }
}

TEST_CASE("solve: zero rhs and the quadratic exact solution") {
  Grid g = Grid::interval(99);
  ShiftedLaplacian A = ShiftedLaplacian::laplacian(g);
  CHECK(norm_inf(solve(A, Field(g, 0.0))) == 0.0);
  // -u'' = 1 has u = x(1-x)/2; the stencil is exact for quadratics
  Field u = solve(A, Field(g, 1.0));
  // x = 0.5 is node 49 (h = 1/100)
  CHECK(std::abs(u[49] - 0.125) < 2e-5);
  CHECK(std::abs(u[49] - 0.125) < 1e-12);  // exactness up to rounding
  Field r = A.apply(u) - Field(g, 1.0);
  CHECK(norm_inf(r) <= 1e-12 * (1.0 + 1.0));
}

TEST_CASE("solve matches the characteristic-root closed form") {
  Grid g = Grid::interval(57);
  for (double mu : {4.0, -3.0, 0.0}) {
    ShiftedLaplacian A(g, Field(g, mu));
    Field x = mu < 0.0 ? solve_general(A, Field(g, 2.5)) : solve(A, Field(g, 2.5));
    auto exact = oracle::const_coeff_solution(g.size(), g.hx(), mu, 2.5);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(x[i] == doctest::Approx(exact[i]).epsilon(1e-10));
  }
}

TEST_CASE("discrete maximum principle") {
  // M-matrix inverse nonnegativity, cross-checked against a dense inverse
  Grid g = Grid::interval(10);
  std::mt19937_64 rng(23);
  Field c = random_field(g, rng, 0.0, 2.0);
  ShiftedLaplacian A(g, c);
  auto inv = oracle::lu_inverse(
      oracle::tridiag_operator(g.size(), g.hx(), c.values()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(inv.at(i, j) >= -1e-14);
  for (int rep = 0; rep < 20; ++rep) {
    Field rhs = random_field(g, rng, 0.0, 5.0);
    Field u = solve(A, rhs);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] >= -1e-12);
  }
}

TEST_CASE("solve after apply is the identity") {
  std::mt19937_64 rng(41);
  for (const Grid& g : {Grid::interval(30), Grid::unit_square(7)}) {
    Field c = random_field(g, rng, 0.0, 4.0);
    ShiftedLaplacian A(g, c);
    Field u = random_field(g, rng);
    Field v = solve(A, A.apply(u));
    CHECK(norm_inf(v - u) <= 1e-9 * (1.0 + norm_inf(u)));
  }
}

TEST_CASE("coercivity gate") {
  Grid g = Grid::interval(20);
  const double lam1 = closed_form_lambda1(g);
  ShiftedLaplacian bad(g, Field(g, -2.0 * lam1));
  CHECK_THROWS_AS(solve(bad, Field(g, 1.0)), NotCoercive);
  // mildly negative shift passes through the explicit eigensolve
  ShiftedLaplacian ok(g, Field(g, -0.5 * lam1));
  Field u = solve(ok, Field(g, 1.0));
  CHECK(norm_inf(ok.apply(u) - Field(g, 1.0)) < 1e-10);
}

TEST_CASE("smallest eigenpair: closed form and dense cross-check") {
  Grid g = Grid::interval(99);
  EigenPair p = smallest_eigenpair(ShiftedLaplacian::laplacian(g));
  CHECK(std::abs(p.value - closed_form_lambda1(g)) < 1e-10);
  CHECK(std::abs(norm_l2(p.vector) - 1.0) < 1e-12);

  Grid g10 = Grid::interval(10);
  EigenPair p10 = smallest_eigenpair(ShiftedLaplacian::laplacian(g10));
  auto ev = oracle::jacobi_eigenvalues(
      oracle::tridiag_operator(10, g10.hx(), std::vector<double>(10, 0.0)));
  CHECK(std::abs(p10.value - ev[0]) < 1e-12);
}

TEST_CASE("eigenpair under diagonal shifts") {
  Grid g = Grid::interval(40);
  EigenPair base = smallest_eigenpair(ShiftedLaplacian::laplacian(g));
  EigenPair shifted = smallest_eigenpair(ShiftedLaplacian(g, Field(g, 5.0)));
  CHECK(shifted.value - base.value == doctest::Approx(5.0).epsilon(1e-11));
  CHECK(norm_inf(shifted.vector - base.vector) < 1e-8);
  // shift by the negated eigenvalue lands on zero
  EigenPair zero = smallest_eigenpair(ShiftedLaplacian(g, Field(g, -base.value)));
  CHECK(std::abs(zero.value) < 1e-10);
}

TEST_CASE("principal eigenvector has no sign change") {
  std::mt19937_64 rng(3);
  for (const Grid& g : {Grid::interval(30), Grid::unit_square(6)}) {
    Field c = random_field(g, rng, -1.0, 3.0);
    EigenPair p = smallest_eigenpair(ShiftedLaplacian(g, c));
    for (std::size_t i = 0; i < p.vector.size(); ++i) CHECK(p.vector[i] > 0.0);
    CHECK(p.residual <= 1e-9);
  }
}

TEST_CASE("eigenvalue monotone in the shift") {
  Grid g = Grid::interval(24);
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    Field c1 = random_field(g, rng, -2.0, 2.0);
    Field c2 = c1;
    std::uniform_real_distribution<double> bump(0.0, 3.0);
    for (std::size_t i = 0; i < c2.size(); ++i) c2[i] += bump(rng);
    const double l1 = smallest_eigenpair(ShiftedLaplacian(g, c1)).value;
    const double l2 = smallest_eigenpair(ShiftedLaplacian(g, c2)).value;
    CHECK(l1 <= l2 + 1e-10);
  }
}

TEST_CASE("lambda1 converges at second order") {
  SUBCASE("interval to pi^2") {
    double err[3];
    double hs[3];
    int k = 0;
    for (int n : {50, 100, 200}) {
      Grid g = Grid::interval(n);
      err[k] = std::abs(smallest_eigenpair(ShiftedLaplacian::laplacian(g)).value -
                        M_PI * M_PI);
      hs[k] = g.hx();
      ++k;
    }
    for (int i = 0; i + 1 < 3; ++i) {
      const double order = std::log(err[i] / err[i + 1]) / std::log(hs[i] / hs[i + 1]);
      CHECK(order > 1.9);
      CHECK(order < 2.1);
    }
  }
  SUBCASE("unit square to 2 pi^2") {
    double err[2];
    double hs[2];
    int k = 0;
    for (int n : {12, 24}) {
      Grid g = Grid::unit_square(n);
      err[k] = std::abs(smallest_eigenpair(ShiftedLaplacian::laplacian(g)).value -
                        2.0 * M_PI * M_PI);
      hs[k] = g.hx();
      ++k;
    }
    const double order = std::log(err[0] / err[1]) / std::log(hs[0] / hs[1]);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
  }
}

TEST_CASE("concurrent solves on one operator agree with serial ones") {
  Grid g = Grid::interval(60);
  ShiftedLaplacian A(g, Field(g, 2.0));
  std::mt19937_64 rng(61);
  std::vector<Field> rhs, serial(4, Field(g, 0.0)), parallel(4, Field(g, 0.0));
  for (int k = 0; k < 4; ++k) rhs.push_back(random_field(g, rng));
  for (int k = 0; k < 4; ++k) serial[k] = solve(A, rhs[k]);
  std::vector<std::thread> pool;
  for (int k = 0; k < 4; ++k)
    pool.emplace_back([&, k] { parallel[k] = solve(A, rhs[k]); });
  for (auto& t : pool) t.join();
  for (int k = 0; k < 4; ++k) CHECK(norm_inf(serial[k] - parallel[k]) == 0.0);
}

TEST_CASE("general solver handles indefinite operators") {
  std::mt19937_64 rng(77);
  SUBCASE("banded lu vs dense, 1-D") {
    Grid g = Grid::interval(10);
    std::vector<double> c(10);
    for (int i = 0; i < 10; ++i) c[i] = -30.0 - 3.0 * i;
    ShiftedLaplacian A(g, Field(g, std::vector<double>(c)));
    CHECK(smallest_eigenpair(A).value < 0.0);
    Field rhs = random_field(g, rng);
    Field x = solve_general(A, rhs);
    std::vector<double> b(rhs.values());
    auto xd = oracle::lu_solve(oracle::tridiag_operator(10, g.hx(), c), b);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(x[i] == doctest::Approx(xd[i]).epsilon(1e-11));
  }
  SUBCASE("minres vs dense, 2-D") {
    Grid g = Grid::unit_square(8);
    std::vector<double> c(64);
    for (int i = 0; i < 64; ++i) c[i] = -150.0 - 2.0 * i;
    ShiftedLaplacian A(g, Field(g, std::vector<double>(c)));
    Field rhs = random_field(g, rng);
    Field x = solve_general(A, rhs);
    std::vector<double> b(rhs.values());
    auto xd = oracle::lu_solve(oracle::five_point_operator(8, 8, g.hx(), g.hy(), c), b);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(x[i] == doctest::Approx(xd[i]).epsilon(1e-9));
  }
  SUBCASE("singular matrix is reported") {
    // c = -2/h^2 zeroes the whole diagonal at n=3; rows 0 and 2 coincide
    Grid g = Grid::interval(3);
    ShiftedLaplacian A(g, Field(g, -2.0 / (g.hx() * g.hx())));
    CHECK_THROWS_AS(solve_general(A, Field(g, 1.0)), SingularJacobian);
  }
}
