#include "ell/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

namespace ell {

Grid Grid::interval(int n, double a, double b) {
  if (n < 3) throw InvalidArgument("interval grid needs at least 3 interior nodes");
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgument("degenerate interval extent");
  Grid g;
  g.dim_ = 1;
  g.nx_ = n;
  g.ny_ = 1;
  g.ax_ = a;
  g.bx_ = b;
  g.hx_ = (b - a) / (n + 1);
  g.hy_ = 1.0;
  return g;
}

Grid Grid::rectangle(int nx, int ny, double ax, double bx, double ay, double by) {
  if (nx < 3 || ny < 3)
    throw InvalidArgument("rectangle grid needs at least 3 interior nodes per axis");
  if (!(bx > ax) || !(by > ay) || !std::isfinite(ax) || !std::isfinite(bx) ||
      !std::isfinite(ay) || !std::isfinite(by))
    throw InvalidArgument("degenerate rectangle extent");
  Grid g;
  g.dim_ = 2;
  g.nx_ = nx;
  g.ny_ = ny;
  g.ax_ = ax;
  g.bx_ = bx;
  g.ay_ = ay;
  g.by_ = by;
  g.hx_ = (bx - ax) / (nx + 1);
  g.hy_ = (by - ay) / (ny + 1);
  return g;
}

Field::Field(const Grid& g, std::vector<double> values)
    : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.size())
    throw BindingMismatch("field length does not match grid interior node count");
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid()))
    throw BindingMismatch("fields bound to different grids");
}

double integrate(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return f.grid().measure() * s;
}

double norm_inf(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double norm_l2(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(f.grid().measure() * s);
}

double dot_l2(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return a.grid().measure() * s;
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Field operator*(double s, const Field& a) {
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= s;
  return r;
}

Field& operator+=(Field& a, const Field& b) {
  require_same_grid(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Field& operator-=(Field& a, const Field& b) {
  require_same_grid(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

void axpy(double alpha, const Field& x, Field& y) {
  require_same_grid(x, y);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

bool finite(const Field& f) {
  for (double v : f.values())
    if (!std::isfinite(v)) return false;
  return true;
}

void write_csv(std::ostream& os, const Field& f) {
  const Grid& g = f.grid();
  char buf[128];
  if (g.dim() == 1) {
    os << "x,u\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.x(k), f[k]);
      os << buf;
    }
  } else {
    os << "x,y,u\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x(k), g.y(k), f[k]);
      os << buf;
    }
  }
}

}  // namespace ell
