#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ell/errors.hpp"

namespace ell {

/// Uniform tensor grid over an interval or a rectangle. Only interior nodes
/// are indexed; the boundary carries homogeneous Dirichlet data and is never
/// stored. Immutable after construction.
class Grid {
public:
  static Grid interval(int n, double a = 0.0, double b = 1.0);
  static Grid rectangle(int nx, int ny, double ax = 0.0, double bx = 1.0,
                        double ay = 0.0, double by = 1.0);
  static Grid unit_square(int n) { return rectangle(n, n); }

  int dim() const { return dim_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const {
    return static_cast<std::size_t>(nx_) * (dim_ == 2 ? ny_ : 1);
  }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  /// Measure of one quadrature cell: hx in 1-D, hx*hy in 2-D.
  double measure() const { return dim_ == 2 ? hx_ * hy_ : hx_; }

  /// Coordinates of interior node k (row-major, x fastest in 2-D).
  double x(std::size_t k) const {
    return ax_ + hx_ * (static_cast<double>(k % static_cast<std::size_t>(nx_)) + 1.0);
  }
  double y(std::size_t k) const {
    return ay_ + hy_ * (static_cast<double>(k / static_cast<std::size_t>(nx_)) + 1.0);
  }

  bool operator==(const Grid& o) const = default;

  /// Empty grid; real grids come from the factory functions.
  Grid() = default;

private:
  int dim_ = 1;
  int nx_ = 0, ny_ = 0;
  double ax_ = 0, bx_ = 1, ay_ = 0, by_ = 1;
  double hx_ = 0, hy_ = 0;
};

/// Nodal values of a function on the interior nodes of one Grid, with the
/// zero boundary implicit. Value semantics; safe to share across threads
/// once constructed.
class Field {
public:
  Field() = default;
  explicit Field(const Grid& g, double fill = 0.0)
      : grid_(g), v_(g.size(), fill) {}
  Field(const Grid& g, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  bool bound_to(const Grid& g) const { return grid_ == g; }

private:
  Grid grid_;
  std::vector<double> v_;
};

void require_same_grid(const Field& a, const Field& b);

// Quadrature and norms. integrate is the interior-node rectangle rule,
// exact for the zero function and linear in the integrand.
double integrate(const Field& f);
double norm_inf(const Field& f);
double norm_l2(const Field& f);              // sqrt(measure * sum v_i^2)
double dot_l2(const Field& a, const Field& b);  // measure-weighted dot

// Elementwise helpers.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field& operator+=(Field& a, const Field& b);
Field& operator-=(Field& a, const Field& b);
void axpy(double alpha, const Field& x, Field& y);  // y += alpha*x
bool finite(const Field& f);

/// CSV serialization: columns x[,y],u, one row per interior node,
/// 17 significant digits.
void write_csv(std::ostream& os, const Field& f);

}  // namespace ell
