#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ell/grid.hpp"
#include "ell/linops.hpp"

namespace ell {

struct ArPair {
  double mu = 0.0;  // superlinearity constant, > 1
  double r = 0.0;   // threshold: t f'(t) >= mu f(t) for t >= r
};

/// Structural metadata attached to a catalog nonlinearity.
struct NonlinearityMeta {
  bool convex = false;
  bool positive = false;  // f(t) > 0 for all t >= 0
  double f0 = 0.0;        // f(., 0)
  double fprime0 = 0.0;   // f'(., 0)
  std::optional<double> slope_a;  // lim f(t)/t at +infinity
  std::optional<double> offset_l; // lim (f(t) - a t) at +infinity
  std::optional<ArPair> ar;
};

/// Evaluation rules for f, f' and the antiderivative F with F(x,0)=0.
/// Rules take the node coordinate x (ignored by the autonomous catalog) so
/// the API admits x-dependent nonlinearities.
class Nonlinearity {
public:
  using Rule = std::function<double(double x, double u)>;

  Nonlinearity(std::string name, Rule f, Rule fprime, Rule anti,
               NonlinearityMeta meta)
      : name_(std::move(name)), f_(std::move(f)), fp_(std::move(fprime)),
        F_(std::move(anti)), meta_(meta) {}

  double f(double x, double u) const { return f_(x, u); }
  double fprime(double x, double u) const { return fp_(x, u); }
  double anti(double x, double u) const { return F_(x, u); }
  const NonlinearityMeta& meta() const { return meta_; }
  const std::string& name() const { return name_; }

private:
  std::string name_;
  Rule f_, fp_, F_;
  NonlinearityMeta meta_;
};

using ParamMap = std::map<std::string, double>;

/// Constructs a named catalog nonlinearity. Entries:
///   gelfand            f(u) = exp(u)
///   affine   (a,b)     f(u) = a u + b,            a, b > 0
///   power    (p)       f(u) = (u+)^p,             p > 1
///   cubic    (c,p)     f(u) = c u - |u|^(p-1) u,  p > 1
///   asym_neg (a,l)     f(u) = a u + l + exp(-u),  a > 1, l in (-1,0)
/// Throws UnknownName / ParamOutOfRange.
Nonlinearity catalog(const std::string& name, const ParamMap& params = {});

struct CatalogInfo {
  std::string name;
  std::string params;       // parameter schema, human readable
  std::string description;
};
std::vector<CatalogInfo> catalog_list();

/// A boundary value problem -Lap u = lambda f(x,u) + g(x) on one grid,
/// optionally translated by a baseline field: with base set, the
/// nonlinearity acts as f(x, base + u) - f(x, base) and the antiderivative
/// is adjusted accordingly (the translated functional of the second
/// solution machinery).
struct ProblemSpec {
  Grid grid;
  Nonlinearity nl;
  std::optional<Field> forcing;
  std::optional<Field> base;
};

ProblemSpec make_problem(const Grid& g, Nonlinearity nl);
ProblemSpec translated(const ProblemSpec& p, Field base);

// Nodal evaluation (translation and forcing aware).
Field f_nodal(const ProblemSpec& p, const Field& u);
Field fprime_nodal(const ProblemSpec& p, const Field& u);
Field anti_nodal(const ProblemSpec& p, const Field& u);

/// Nonlinear residual -Lap_h u - lambda f(x,u) - g.
Field residual(const ProblemSpec& p, double lambda, const Field& u);

/// Linearized operator -Lap_h - lambda diag(f'(x,u)).
ShiftedLaplacian linearized(const ProblemSpec& p, double lambda, const Field& u);

// ----------------------------------------------------------------------
// Independent oracles (no code shared with the solvers they check).

/// Closed-form branch of the 1-D Gelfand problem -u'' = lambda e^u on (0,1):
/// parametrized by theta > 0 with
///   u(x; theta) = -2 ln( cosh(theta (x - 1/2) / 2) / cosh(theta / 4) )
///   lambda(theta) = theta^2 / (2 cosh^2(theta / 4)).
/// lambda_star is located by bracketing the zero of d lambda / d theta.
class BratuOracle {
public:
  BratuOracle();  // locates theta_star to 1e-12

  double lambda_star() const { return lambda_star_; }
  double theta_star() const { return theta_star_; }
  double u_star_mid() const { return sup_norm(theta_star_); }

  double lambda(double theta) const;
  double dlambda_dtheta(double theta) const;
  double sup_norm(double theta) const;  // u(1/2; theta)
  double profile(double theta, double x) const;

  struct Roots {
    std::optional<double> low, high;  // minimal / unstable theta at given lambda
  };
  Roots theta_roots(double lam) const;

private:
  double theta_star_ = 0.0;
  double lambda_star_ = 0.0;
};

BratuOracle bratu_oracle();

/// One certified root of the shooting map for -u'' = lambda f(u), u(0)=0.
struct ShootingSolution {
  double slope;     // u'(0)
  double sup_norm;  // max |u| along the trajectory
};

struct ShootingOptions {
  double s_min = 1e-2;
  double s_max = 100.0;
  int scan_points = 400;
  double step = 1e-4;  // fixed RK4 step
};

/// Scans u'(0) = s over [s_min, s_max], bisects sign changes of u(1; s) to
/// 1e-12 and returns all isolated roots. 1-D only; an empty list is valid.
std::vector<ShootingSolution> shooting_oracle(const Nonlinearity& nl,
                                              double lambda,
                                              ShootingOptions opt = {});

/// Samples the shooting trajectory with slope s at the interior nodes of g.
Field shooting_profile(const Nonlinearity& nl, double lambda, double slope,
                       const Grid& g, double step = 1e-4);

}  // namespace ell
