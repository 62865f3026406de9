#include "ell/problems.hpp"

#include <cmath>
#include <utility>

#include "ell/errors.hpp"

namespace ell {

namespace {

double require_param(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw ParamOutOfRange("missing parameter '" + key + "'");
  return it->second;
}

double param_or(const ParamMap& params, const std::string& key, double dflt) {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

void reject_unknown(const ParamMap& params,
                    std::initializer_list<const char*> known) {
  for (const auto& kv : params) {
    bool ok = false;
    for (const char* k : known)
      if (kv.first == k) ok = true;
    if (!ok) throw ParamOutOfRange("unknown parameter '" + kv.first + "'");
  }
}

// odd power |u|^(p-1) u, smooth extension of u^p to the real line
double odd_pow(double u, double p) {
  return std::copysign(std::pow(std::abs(u), p), u);
}

}  // namespace

Nonlinearity catalog(const std::string& name, const ParamMap& params) {
  if (name == "gelfand") {
    reject_unknown(params, {});
    NonlinearityMeta m;
    m.convex = true;
    m.positive = true;
    m.f0 = 1.0;
    m.fprime0 = 1.0;
    m.ar = ArPair{2.0, 2.0};  // t e^t >= mu e^t for t >= mu
    return Nonlinearity(
        "gelfand",
        [](double, double u) { return std::exp(u); },
        [](double, double u) { return std::exp(u); },
        [](double, double u) { return std::exp(u) - 1.0; }, m);
  }
  if (name == "affine") {
    reject_unknown(params, {"a", "b"});
    const double a = require_param(params, "a");
    const double b = require_param(params, "b");
    if (!(a > 0.0) || !(b > 0.0))
      throw ParamOutOfRange("affine needs a > 0 and b > 0");
    NonlinearityMeta m;
    m.convex = true;
    m.positive = true;
    m.f0 = b;
    m.fprime0 = a;
    m.slope_a = a;
    m.offset_l = b;
    return Nonlinearity(
        "affine",
        [a, b](double, double u) { return a * u + b; },
        [a](double, double) { return a; },
        [a, b](double, double u) { return 0.5 * a * u * u + b * u; }, m);
  }
  if (name == "power") {
    reject_unknown(params, {"p"});
    const double p = param_or(params, "p", 3.0);
    if (!(p > 1.0)) throw ParamOutOfRange("power needs p > 1");
    NonlinearityMeta m;
    m.convex = true;
    m.positive = false;  // f(0) = 0
    m.f0 = 0.0;
    m.fprime0 = 0.0;
    m.ar = ArPair{p, 0.0};  // t f'(t) = p f(t) on t >= 0
    return Nonlinearity(
        "power",
        [p](double, double u) { return u > 0.0 ? std::pow(u, p) : 0.0; },
        [p](double, double u) { return u > 0.0 ? p * std::pow(u, p - 1.0) : 0.0; },
        [p](double, double u) {
          return u > 0.0 ? std::pow(u, p + 1.0) / (p + 1.0) : 0.0;
        },
        m);
  }
  if (name == "cubic") {
    reject_unknown(params, {"c", "p"});
    const double c = require_param(params, "c");
    const double p = param_or(params, "p", 3.0);
    if (!(p > 1.0)) throw ParamOutOfRange("cubic needs p > 1");
    NonlinearityMeta m;
    m.convex = false;
    m.positive = false;
    m.f0 = 0.0;
    m.fprime0 = c;
    return Nonlinearity(
        "cubic",
        [c, p](double, double u) { return c * u - odd_pow(u, p); },
        [c, p](double, double u) {
          return c - p * std::pow(std::abs(u), p - 1.0);
        },
        [c, p](double, double u) {
          return 0.5 * c * u * u - std::pow(std::abs(u), p + 1.0) / (p + 1.0);
        },
        m);
  }
  if (name == "asym_neg") {
    reject_unknown(params, {"a", "l"});
    const double a = require_param(params, "a");
    const double l = require_param(params, "l");
    if (!(a > 1.0)) throw ParamOutOfRange("asym_neg needs a > 1");
    if (!(l > -1.0 && l < 0.0))
      throw ParamOutOfRange("asym_neg needs l in (-1, 0)");
    NonlinearityMeta m;
    m.convex = true;   // f'' = exp(-u) > 0
    m.positive = true; // min over R is a(1 - ln a) + l > 0 for the admitted range
    m.f0 = l + 1.0;
    m.fprime0 = a - 1.0;
    m.slope_a = a;
    m.offset_l = l;
    return Nonlinearity(
        "asym_neg",
        [a, l](double, double u) { return a * u + l + std::exp(-u); },
        [a](double, double u) { return a - std::exp(-u); },
        [a, l](double, double u) {
          return 0.5 * a * u * u + l * u - std::expm1(-u);
        },
        m);
  }
  throw UnknownName("no catalog entry named '" + name + "'");
}

std::vector<CatalogInfo> catalog_list() {
  return {
      {"gelfand", "(none)", "f(u) = exp(u); convex positive, f(0)=1, f'(0)=1"},
      {"affine", "a>0, b>0", "f(u) = a u + b; linear branch with asymptote at lambda1/a"},
      {"power", "p>1 (default 3)", "f(u) = (u+)^p; superlinear, f(0)=f'(0)=0"},
      {"cubic", "c, p>1 (default 3)", "f(u) = c u - |u|^(p-1) u; odd, concave for u>0"},
      {"asym_neg", "a>1, -1<l<0", "f(u) = a u + l + exp(-u); asymptotically linear, offset l<0"},
  };
}

ProblemSpec make_problem(const Grid& g, Nonlinearity nl) {
  return ProblemSpec{g, std::move(nl), std::nullopt, std::nullopt};
}

ProblemSpec translated(const ProblemSpec& p, Field base) {
  if (!base.bound_to(p.grid))
    throw BindingMismatch("translation base not bound to problem grid");
  ProblemSpec t = p;
  t.base = std::move(base);
  return t;
}

Field f_nodal(const ProblemSpec& p, const Field& u) {
  if (!u.bound_to(p.grid)) throw BindingMismatch("field not bound to problem grid");
  Field out(p.grid, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = p.grid.x(i);
    if (p.base) {
      const double b = (*p.base)[i];
      out[i] = p.nl.f(x, b + u[i]) - p.nl.f(x, b);
    } else {
      out[i] = p.nl.f(x, u[i]);
    }
  }
  return out;
}

Field fprime_nodal(const ProblemSpec& p, const Field& u) {
  if (!u.bound_to(p.grid)) throw BindingMismatch("field not bound to problem grid");
  Field out(p.grid, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = p.grid.x(i);
    const double b = p.base ? (*p.base)[i] : 0.0;
    out[i] = p.nl.fprime(x, b + u[i]);
  }
  return out;
}

Field anti_nodal(const ProblemSpec& p, const Field& u) {
  if (!u.bound_to(p.grid)) throw BindingMismatch("field not bound to problem grid");
  Field out(p.grid, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = p.grid.x(i);
    if (p.base) {
      const double b = (*p.base)[i];
      out[i] = p.nl.anti(x, b + u[i]) - p.nl.anti(x, b) - p.nl.f(x, b) * u[i];
    } else {
      out[i] = p.nl.anti(x, u[i]);
    }
  }
  return out;
}

Field residual(const ProblemSpec& p, double lambda, const Field& u) {
  if (p.forcing && !p.forcing->bound_to(p.grid))
    throw BindingMismatch("forcing field not bound to problem grid");
  const ShiftedLaplacian lap = ShiftedLaplacian::laplacian(p.grid);
  Field r = lap.apply(u);
  Field fu = f_nodal(p, u);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] -= lambda * fu[i];
    if (p.forcing) r[i] -= (*p.forcing)[i];
  }
  return r;
}

ShiftedLaplacian linearized(const ProblemSpec& p, double lambda, const Field& u) {
  Field c = fprime_nodal(p, u);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -lambda * c[i];
  return ShiftedLaplacian(p.grid, std::move(c));
}

// ----------------------------------------------------------------------
// Bratu oracle

BratuOracle::BratuOracle() {
  // dlambda/dtheta = lambda(theta) * (2/theta - tanh(theta/4)/2); the zero
  // of the bracketed factor is bracketed in [4, 6] and bisected to 1e-12.
  auto slope = [](double theta) {
    return 2.0 / theta - 0.5 * std::tanh(0.25 * theta);
  };
  double lo = 4.0, hi = 6.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  theta_star_ = 0.5 * (lo + hi);
  lambda_star_ = lambda(theta_star_);
}

double BratuOracle::lambda(double theta) const {
  const double c = std::cosh(0.25 * theta);
  return theta * theta / (2.0 * c * c);
}

double BratuOracle::dlambda_dtheta(double theta) const {
  return lambda(theta) * (2.0 / theta - 0.5 * std::tanh(0.25 * theta));
}

double BratuOracle::sup_norm(double theta) const {
  return 2.0 * std::log(std::cosh(0.25 * theta));
}

double BratuOracle::profile(double theta, double x) const {
  return -2.0 * std::log(std::cosh(0.5 * theta * (x - 0.5)) /
                         std::cosh(0.25 * theta));
}

BratuOracle::Roots BratuOracle::theta_roots(double lam) const {
  Roots roots;
  if (!(lam > 0.0) || lam > lambda_star_) return roots;
  auto bisect = [&](double lo, double hi) {
    const double flo = lambda(lo) - lam;
    for (int it = 0; it < 240 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((lambda(mid) - lam) * flo > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  // lambda(theta) increases on (0, theta*), decreases beyond
  if (lam < lambda_star_) {
    roots.low = bisect(1e-8, theta_star_);
    double hi = theta_star_ + 1.0;
    while (lambda(hi) > lam && hi < 400.0) hi *= 1.5;
    roots.high = bisect(theta_star_, hi);
  } else {
    roots.low = roots.high = theta_star_;
  }
  return roots;
}

BratuOracle bratu_oracle() { return BratuOracle{}; }

// ----------------------------------------------------------------------
// Shooting oracle: fixed-step RK4 on u'' = -lambda f(u), autonomous in x.

namespace {

struct ShotResult {
  double u_end;
  double sup;
};

ShotResult shoot(const Nonlinearity& nl, double lambda, double s, double step) {
  const int nsteps = static_cast<int>(std::ceil(1.0 / step));
  const double h = 1.0 / nsteps;
  double u = 0.0, v = s, sup = 0.0;
  auto acc = [&](double uu) { return -lambda * nl.f(0.0, uu); };
  for (int k = 0; k < nsteps; ++k) {
    const double k1u = v, k1v = acc(u);
    const double k2u = v + 0.5 * h * k1v, k2v = acc(u + 0.5 * h * k1u);
    const double k3u = v + 0.5 * h * k2v, k3v = acc(u + 0.5 * h * k2u);
    const double k4u = v + h * k3v, k4v = acc(u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    sup = std::max(sup, std::abs(u));
    if (!std::isfinite(u) || std::abs(u) > 1e8) return {u, sup};
  }
  return {u, sup};
}

}  // namespace

std::vector<ShootingSolution> shooting_oracle(const Nonlinearity& nl,
                                              double lambda,
                                              ShootingOptions opt) {
  std::vector<ShootingSolution> out;
  const int N = opt.scan_points;
  double s_prev = opt.s_min;
  double f_prev = shoot(nl, lambda, s_prev, opt.step).u_end;
  for (int k = 1; k <= N; ++k) {
    const double s = opt.s_min + (opt.s_max - opt.s_min) * k / N;
    const double f = shoot(nl, lambda, s, opt.step).u_end;
    if (std::isfinite(f_prev) && std::isfinite(f) && f_prev * f < 0.0) {
      double lo = s_prev, hi = s, flo = f_prev;
      for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = shoot(nl, lambda, mid, opt.step).u_end;
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      const double root = 0.5 * (lo + hi);
      out.push_back({root, shoot(nl, lambda, root, opt.step).sup});
    }
    s_prev = s;
    f_prev = f;
  }
  return out;
}

Field shooting_profile(const Nonlinearity& nl, double lambda, double slope,
                       const Grid& g, double step) {
  if (g.dim() != 1) throw InvalidArgument("shooting profiles are 1-D only");
  // integrate on a refinement of the grid so nodes are hit exactly
  const int per_cell = std::max(1, static_cast<int>(std::ceil(g.hx() / step)));
  const double h = g.hx() / per_cell;
  const double scale = (g.hx() * (g.nx() + 1));  // physical length
  if (std::abs(scale - 1.0) > 1e-12)
    throw InvalidArgument("shooting profiles assume the unit interval");
  double u = 0.0, v = slope;
  auto acc = [&](double uu) { return -lambda * nl.f(0.0, uu); };
  Field out(g, 0.0);
  std::size_t node = 0;
  for (int cell = 0; cell < g.nx() + 1 && node < out.size(); ++cell) {
    for (int k = 0; k < per_cell; ++k) {
      const double k1u = v, k1v = acc(u);
      const double k2u = v + 0.5 * h * k1v, k2v = acc(u + 0.5 * h * k1u);
      const double k3u = v + 0.5 * h * k2v, k3v = acc(u + 0.5 * h * k2u);
      const double k4u = v + h * k3v, k4v = acc(u + h * k3u);
      u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    if (node < out.size()) out[node++] = u;
  }
  return out;
}

}  // namespace ell
