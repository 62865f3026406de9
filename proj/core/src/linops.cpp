#include "ell/linops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ell/errors.hpp"

namespace ell {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ----------------------------------------------------------------------
// Tridiagonal elimination (Thomas) for SPD systems, constant off-diagonal.
// One step of iterative refinement keeps the residual near rounding level.
struct TridiagFactor {
  std::vector<double> diag;   // modified pivots
  std::vector<double> lower;  // multipliers
  double off;                 // constant off-diagonal entry
};

TridiagFactor thomas_factor(const std::vector<double>& d, double off) {
  const std::size_t n = d.size();
  TridiagFactor f{d, std::vector<double>(n, 0.0), off};
  for (std::size_t i = 1; i < n; ++i) {
    const double m = off / f.diag[i - 1];
    f.lower[i] = m;
    f.diag[i] -= m * off;
  }
  return f;
}

void thomas_solve_inplace(const TridiagFactor& f, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) b[i] -= f.lower[i] * b[i - 1];
  b[n - 1] /= f.diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    b[i] = (b[i] - f.off * b[i + 1]) / f.diag[i];
}

// ----------------------------------------------------------------------
// Banded LU with partial pivoting for general (possibly indefinite)
// symmetric tridiagonal systems; gttrf/gtts2 layout.
struct BandLU {
  std::vector<double> dl, d, du, du2;
  std::vector<int> ipiv;
  bool singular = false;
};

BandLU band_factor(std::vector<double> d, double off, double pivot_floor) {
  const std::size_t n = d.size();
  BandLU f;
  f.dl.assign(n > 1 ? n - 1 : 0, off);
  f.d = std::move(d);
  f.du.assign(n > 1 ? n - 1 : 0, off);
  f.du2.assign(n > 2 ? n - 2 : 0, 0.0);
  f.ipiv.assign(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(f.d[i]) >= std::abs(f.dl[i])) {
      f.ipiv[i] = static_cast<int>(i);
      if (std::abs(f.d[i]) <= pivot_floor) {
        f.singular = true;
        return f;
      }
      const double fact = f.dl[i] / f.d[i];
      f.dl[i] = fact;
      f.d[i + 1] -= fact * f.du[i];
      if (i + 2 < n) f.du2[i] = 0.0;
    } else {
      f.ipiv[i] = static_cast<int>(i) + 1;
      const double fact = f.d[i] / f.dl[i];
      f.d[i] = f.dl[i];
      f.dl[i] = fact;
      const double tmp = f.du[i];
      f.du[i] = f.d[i + 1];
      f.d[i + 1] = tmp - fact * f.d[i + 1];
      if (i + 2 < n) {
        f.du2[i] = f.du[i + 1];
        f.du[i + 1] = -fact * f.du[i + 1];
      }
    }
  }
  f.ipiv[n - 1] = static_cast<int>(n) - 1;
  if (std::abs(f.d[n - 1]) <= pivot_floor) f.singular = true;
  return f;
}

void band_solve_inplace(const BandLU& f, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (f.ipiv[i] == static_cast<int>(i)) {
      b[i + 1] -= f.dl[i] * b[i];
    } else {
      const double tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - f.dl[i] * b[i];
    }
  }
  b[n - 1] /= f.d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - f.du[n - 2] * b[n - 1]) / f.d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;)
    b[i] = (b[i] - f.du[i] * b[i + 1] - f.du2[i] * b[i + 2]) / f.d[i];
}

std::vector<double> diagonal_of(const ShiftedLaplacian& A) {
  const Grid& g = A.grid();
  std::vector<double> d(g.size());
  const double sx = 2.0 / (g.hx() * g.hx());
  const double sy = g.dim() == 2 ? 2.0 / (g.hy() * g.hy()) : 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = sx + sy + A.shift()[i];
  return d;
}

// ----------------------------------------------------------------------
// Conjugate gradients for SPD operators (2-D path).
Field cg_solve(const ShiftedLaplacian& A, const Field& rhs, double rel_tol,
               int max_iter) {
  const std::size_t n = rhs.size();
  Field x(rhs.grid(), 0.0);
  Field r = rhs;
  Field p = r;
  double rs = 0.0;
  for (std::size_t i = 0; i < n; ++i) rs += r[i] * r[i];
  const double b2 = std::sqrt(rs);
  if (b2 == 0.0) return x;
  const double stop = rel_tol * b2;
  for (int it = 0; it < max_iter; ++it) {
    Field Ap = A.apply(p);
    double pAp = 0.0;
    for (std::size_t i = 0; i < n; ++i) pAp += p[i] * Ap[i];
    if (!(pAp > 0.0))
      throw NotCoercive("conjugate gradients met a nonpositive curvature direction");
    const double alpha = rs / pAp;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    double rs_new = 0.0;
    for (std::size_t i = 0; i < n; ++i) rs_new += r[i] * r[i];
    if (std::sqrt(rs_new) <= stop) return x;
    const double beta = rs_new / rs;
    rs = rs_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  throw NoConvergence("conjugate gradients stalled after " +
                      std::to_string(max_iter) + " iterations");
}

// MINRES for symmetric indefinite operators (2-D general path).
Field minres_solve(const ShiftedLaplacian& A, const Field& b, double rel_tol,
                   int max_iter) {
  const std::size_t n = b.size();
  Field x(b.grid(), 0.0);
  double beta1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) beta1 += b[i] * b[i];
  beta1 = std::sqrt(beta1);
  if (beta1 == 0.0) return x;

  Field r1 = b, r2 = b, y = b;
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
  double phibar = beta1, cs = -1.0, sn = 0.0;
  Field w(b.grid(), 0.0), w2(b.grid(), 0.0);

  for (int itn = 1; itn <= max_iter; ++itn) {
    const double s = 1.0 / beta;
    Field v = s * y;
    y = A.apply(v);
    if (itn >= 2) axpy(-beta / oldb, r1, y);
    double alfa = 0.0;
    for (std::size_t i = 0; i < n; ++i) alfa += v[i] * y[i];
    axpy(-alfa / beta, r2, y);
    r1 = r2;
    r2 = y;
    oldb = beta;
    beta = 0.0;
    for (std::size_t i = 0; i < n; ++i) beta += r2[i] * r2[i];
    beta = std::sqrt(beta);

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::sqrt(gbar * gbar + beta * beta);
    gamma = std::max(gamma, kEps * beta1);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    Field w1 = w2;
    w2 = w;
    w = v;
    axpy(-oldeps, w1, w);
    axpy(-delta, w2, w);
    for (std::size_t i = 0; i < n; ++i) w[i] /= gamma;
    axpy(phi, w, x);

    if (phibar <= rel_tol * beta1) return x;
  }
  throw NoConvergence("minres stalled after " + std::to_string(max_iter) +
                      " iterations");
}

Field tridiag_spd_solve(const ShiftedLaplacian& A, const Field& rhs) {
  const Grid& g = A.grid();
  const double off = -1.0 / (g.hx() * g.hx());
  TridiagFactor f = thomas_factor(diagonal_of(A), off);
  std::vector<double> x = rhs.values();
  thomas_solve_inplace(f, x);
  // one refinement pass
  Field xf(g, std::move(x));
  Field r = rhs - A.apply(xf);
  std::vector<double> dx = r.values();
  thomas_solve_inplace(f, dx);
  for (std::size_t i = 0; i < xf.size(); ++i) xf[i] += dx[i];
  return xf;
}

Field spd_solve_unchecked(const ShiftedLaplacian& A, const Field& rhs) {
  if (A.grid().dim() == 1) return tridiag_spd_solve(A, rhs);
  Field x = cg_solve(A, rhs, 1e-13, 20 * static_cast<int>(rhs.size()) + 200);
  // refinement pass for the iterative path as well
  Field r = rhs - A.apply(x);
  double rn = norm_inf(r);
  if (rn > 0.0) {
    Field dx = cg_solve(A, r, 1e-8, 10 * static_cast<int>(rhs.size()) + 200);
    x += dx;
  }
  return x;
}

}  // namespace

ShiftedLaplacian::ShiftedLaplacian(const Grid& g, Field c)
    : grid_(g), c_(std::move(c)) {
  if (!c_.bound_to(grid_))
    throw BindingMismatch("shift field not bound to operator grid");
  if (!finite(c_)) throw InvalidArgument("shift field has non-finite entries");
  cmin_ = c_.size() ? *std::min_element(c_.values().begin(), c_.values().end())
                    : 0.0;
}

Field ShiftedLaplacian::apply(const Field& u) const {
  if (!u.bound_to(grid_))
    throw BindingMismatch("operand field not bound to operator grid");
  const double ihx2 = 1.0 / (grid_.hx() * grid_.hx());
  Field out(grid_, 0.0);
  if (grid_.dim() == 1) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
      double v = 2.0 * u[i];
      if (i > 0) v -= u[i - 1];
      if (i + 1 < n) v -= u[i + 1];
      out[i] = v * ihx2 + c_[i] * u[i];
    }
  } else {
    const double ihy2 = 1.0 / (grid_.hy() * grid_.hy());
    const int nx = grid_.nx(), ny = grid_.ny();
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * nx + i;
        double vx = 2.0 * u[k];
        if (i > 0) vx -= u[k - 1];
        if (i + 1 < nx) vx -= u[k + 1];
        double vy = 2.0 * u[k];
        if (j > 0) vy -= u[k - nx];
        if (j + 1 < ny) vy -= u[k + nx];
        out[k] = vx * ihx2 + vy * ihy2 + c_[k] * u[k];
      }
    }
  }
  return out;
}

double ShiftedLaplacian::gershgorin_lower() const {
  const double ihx2 = 1.0 / (grid_.hx() * grid_.hx());
  double lo = std::numeric_limits<double>::infinity();
  if (grid_.dim() == 1) {
    const std::size_t n = c_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double offsum = ((i > 0) + (i + 1 < n)) * ihx2;
      lo = std::min(lo, 2.0 * ihx2 + c_[i] - offsum);
    }
  } else {
    const double ihy2 = 1.0 / (grid_.hy() * grid_.hy());
    const int nx = grid_.nx(), ny = grid_.ny();
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * nx + i;
        const double offsum =
            ((i > 0) + (i + 1 < nx)) * ihx2 + ((j > 0) + (j + 1 < ny)) * ihy2;
        lo = std::min(lo, 2.0 * (ihx2 + ihy2) + c_[k] - offsum);
      }
    }
  }
  return lo;
}

double ShiftedLaplacian::opscale() const {
  const double ihx2 = 1.0 / (grid_.hx() * grid_.hx());
  const double ihy2 = grid_.dim() == 2 ? 1.0 / (grid_.hy() * grid_.hy()) : 0.0;
  double cmax = 0.0;
  for (double v : c_.values()) cmax = std::max(cmax, std::abs(v));
  return 4.0 * ihx2 + 4.0 * ihy2 + cmax;
}

Field solve(const ShiftedLaplacian& A, const Field& rhs) {
  if (!rhs.bound_to(A.grid()))
    throw BindingMismatch("rhs not bound to operator grid");
  if (A.min_shift() < 0.0) {
    // coercivity gate: mirror of "the operator -Delta + aI is coercive"
    EigenPair p = smallest_eigenpair(A);
    if (!(p.value > 1e-12))
      throw NotCoercive("smallest eigenvalue " + std::to_string(p.value) +
                        " fails the coercivity gate");
  }
  return spd_solve_unchecked(A, rhs);
}

Field solve_general(const ShiftedLaplacian& A, const Field& rhs) {
  if (!rhs.bound_to(A.grid()))
    throw BindingMismatch("rhs not bound to operator grid");
  if (A.grid().dim() == 1) {
    const Grid& g = A.grid();
    const double off = -1.0 / (g.hx() * g.hx());
    const double floor = 64.0 * kEps * A.opscale();
    BandLU f = band_factor(diagonal_of(A), off, floor);
    if (f.singular) throw SingularJacobian("tridiagonal factorization met a zero pivot");
    std::vector<double> x = rhs.values();
    band_solve_inplace(f, x);
    Field xf(g, std::move(x));
    Field r = rhs - A.apply(xf);
    std::vector<double> dx = r.values();
    band_solve_inplace(f, dx);
    for (std::size_t i = 0; i < xf.size(); ++i) xf[i] += dx[i];
    return xf;
  }
  return minres_solve(A, rhs, 1e-12, 40 * static_cast<int>(rhs.size()) + 400);
}

EigenPair smallest_eigenpair(const ShiftedLaplacian& A, EigenOptions opt) {
  const Grid& g = A.grid();
  const std::size_t n = g.size();
  const double gl = A.gershgorin_lower();
  const double sigma = gl - std::max(1.0, 1e-2 * std::abs(gl));

  Field cshift = A.shift();
  for (std::size_t i = 0; i < n; ++i) cshift[i] -= sigma;
  const ShiftedLaplacian B(g, cshift);

  // deterministic start with mass on every mode
  Field v(g, 1.0);
  for (std::size_t i = 0; i < n; ++i) v[i] += 1e-4 * std::sin(1.0 + 7.0 * i);
  double vn = norm_l2(v);
  for (std::size_t i = 0; i < n; ++i) v[i] /= vn;

  const double resid_floor = 8.0 * kEps * A.opscale();
  double rho_prev = std::numeric_limits<double>::infinity();
  double resid = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opt.max_iter; ++it) {
    Field w = spd_solve_unchecked(B, v);
    const double wn = norm_l2(w);
    if (!(wn > 0.0)) throw NoConvergence("inverse iteration produced a zero vector");
    for (std::size_t i = 0; i < n; ++i) w[i] /= wn;

    Field Aw = A.apply(w);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += w[i] * Aw[i];
      den += w[i] * w[i];
    }
    const double rho = num / den;
    resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      resid = std::max(resid, std::abs(Aw[i] - rho * w[i]));
    v = w;
    const bool value_ok = std::abs(rho - rho_prev) <= opt.value_tol * (1.0 + std::abs(rho));
    const bool resid_ok = resid <= std::max(opt.resid_tol, resid_floor) * std::max(1.0, norm_inf(w));
    rho_prev = rho;
    if (value_ok && resid_ok) {
      // unit L2 norm, nonnegative first extremum
      double mx = 0.0;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v[i]) > mx) {
          mx = std::abs(v[i]);
          arg = i;
        }
      }
      if (v[arg] < 0.0)
        for (std::size_t i = 0; i < n; ++i) v[i] = -v[i];
      return EigenPair{rho, v, resid, it};
    }
  }
  throw NoConvergence("inverse power iteration: residual " + std::to_string(resid) +
                      " after " + std::to_string(opt.max_iter) + " iterations");
}

double dirichlet_energy(const Field& u) {
  const ShiftedLaplacian L = ShiftedLaplacian::laplacian(u.grid());
  Field Au = L.apply(u);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * Au[i];
  return u.grid().measure() * s;
}

double energy_norm(const Field& u) {
  return std::sqrt(std::max(0.0, dirichlet_energy(u)));
}

}  // namespace ell
