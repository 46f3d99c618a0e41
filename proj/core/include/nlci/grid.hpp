#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace nlci {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Uniform mesh of interior nodes x_i = i*h, i = 1..n, with homogeneous
/// Dirichlet values baked into every operation (boundary nodes are never
/// stored). build_grid() pins h = pi/(n+1); subinterval grids produced by
/// the spectral module keep h and shrink n, so h*(n+1) is the domain length.
class Grid {
 public:
  static Grid dirichlet(int interior_nodes);  // [0, pi], throws if n < 3
  static Grid with_spacing(int interior_nodes, double spacing);

  int size() const { return n_; }
  double spacing() const { return h_; }
  double length() const { return h_ * (n_ + 1); }
  /// Node coordinate for the 0-based storage index i (x = (i+1)h).
  double node(int i) const { return h_ * (i + 1); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(int n, double h) : n_(n), h_(h) {}
  int n_;
  double h_;
};

/// Spec-level constructor: n interior nodes on (0, pi).
Grid build_grid(int n);

/// Real-valued nodal function vanishing at both endpoints. Immutable after
/// construction; all values are checked finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction zero(const Grid& grid);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) v[static_cast<std::size_t>(i)] = f(grid.node(i));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Trapezoid rule with zero boundary values: h * sum of nodal values.
double integral(const GridFunction& g);

/// L^2(0,pi) inner product h * sum a_i b_i (trapezoid, zero boundary).
double l2_inner(const GridFunction& a, const GridFunction& b);

double l2_norm(const GridFunction& g);

double sup_norm(const GridFunction& g);

/// Forward-difference Dirichlet energy sum_{i=0..n} (u_{i+1}-u_i)^2 / h,
/// the discrete ||u'||^2.
double h1_seminorm_sq(const GridFunction& u);

/// H^1_0 seminorm distance between two functions on the same grid.
double h1_distance(const GridFunction& a, const GridFunction& b);

/// Central second difference (u_{i-1} - 2u_i + u_{i+1})/h^2, zero boundary.
GridFunction second_difference(const GridFunction& u);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a);
GridFunction operator*(double s, const GridFunction& a);

template <class F>
GridFunction apply_pointwise(const GridFunction& g, F&& f) {
  std::vector<double> v(g.values().begin(), g.values().end());
  for (double& x : v) x = f(x);
  return GridFunction(g.grid(), std::move(v));
}

namespace detail {
/// Raw-buffer versions used by integrator hot loops.
double h1_seminorm_sq(std::span<const double> u, double h);
double sup_abs(std::span<const double> u);
}  // namespace detail

}  // namespace nlci
