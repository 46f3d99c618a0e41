#include "nlci/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nlci {

Grid Grid::dirichlet(int interior_nodes) {
  if (interior_nodes < 3) {
    throw std::invalid_argument("Grid: need at least 3 interior nodes, got " +
                                std::to_string(interior_nodes));
  }
  return Grid(interior_nodes, kPi / (interior_nodes + 1));
}

Grid Grid::with_spacing(int interior_nodes, double spacing) {
  if (interior_nodes < 3 || !(spacing > 0.0)) {
    throw std::invalid_argument("Grid: invalid size or spacing");
  }
  return Grid(interior_nodes, spacing);
}

Grid build_grid(int n) { return Grid::dirichlet(n); }

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.size())) {
    throw std::invalid_argument("GridFunction: value count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
  }
}

GridFunction GridFunction::zero(const Grid& grid) {
  return GridFunction(grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0));
}

double integral(const GridFunction& g) {
  double s = 0.0;
  for (double v : g.values()) s += v;
  return g.grid().spacing() * s;
}

double l2_inner(const GridFunction& a, const GridFunction& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("l2_inner: grid mismatch");
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return a.grid().spacing() * s;
}

double l2_norm(const GridFunction& g) { return std::sqrt(l2_inner(g, g)); }

double sup_norm(const GridFunction& g) { return detail::sup_abs(g.values()); }

double h1_seminorm_sq(const GridFunction& u) {
  return detail::h1_seminorm_sq(u.values(), u.grid().spacing());
}

double h1_distance(const GridFunction& a, const GridFunction& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("h1_distance: grid mismatch");
  const double h = a.grid().spacing();
  const int n = a.size();
  double prev = 0.0, s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += (d - prev) * (d - prev);
    prev = d;
  }
  s += prev * prev;  // last interval down to the zero boundary
  return std::sqrt(s / h);
}

GridFunction second_difference(const GridFunction& u) {
  const int n = u.size();
  const double h2 = u.grid().spacing() * u.grid().spacing();
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double left = (i > 0) ? u[i - 1] : 0.0;
    const double right = (i < n - 1) ? u[i + 1] : 0.0;
    v[static_cast<std::size_t>(i)] = (left - 2.0 * u[i] + right) / h2;
  }
  return GridFunction(u.grid(), std::move(v));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("GridFunction +: grid mismatch");
  std::vector<double> v(a.values().begin(), a.values().end());
  for (int i = 0; i < b.size(); ++i) v[static_cast<std::size_t>(i)] += b[i];
  return GridFunction(a.grid(), std::move(v));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("GridFunction -: grid mismatch");
  std::vector<double> v(a.values().begin(), a.values().end());
  for (int i = 0; i < b.size(); ++i) v[static_cast<std::size_t>(i)] -= b[i];
  return GridFunction(a.grid(), std::move(v));
}

GridFunction operator-(const GridFunction& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x = -x;
  return GridFunction(a.grid(), std::move(v));
}

GridFunction operator*(double s, const GridFunction& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= s;
  return GridFunction(a.grid(), std::move(v));
}

namespace detail {

double h1_seminorm_sq(std::span<const double> u, double h) {
  double prev = 0.0, s = 0.0;
  for (double v : u) {
    s += (v - prev) * (v - prev);
    prev = v;
  }
  s += prev * prev;
  return s / h;
}

double sup_abs(std::span<const double> u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace detail

}  // namespace nlci
