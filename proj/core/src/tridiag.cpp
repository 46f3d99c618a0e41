#include "nlci/tridiag.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlci {
namespace {

double pivot_floor(const SymTridiag& t) {
  double scale = 0.0;
  for (double d : t.diag) scale = std::max(scale, std::abs(d));
  for (double e : t.off) scale = std::max(scale, std::abs(e));
  return std::max(scale, 1.0) * 1e-290;
}

double guard(double piv, double floor_val) {
  if (std::abs(piv) >= floor_val) return piv;
  return piv < 0.0 ? -floor_val : floor_val;
}

}  // namespace

std::vector<double> solve_shifted(const SymTridiag& t, double sigma, std::span<const double> b) {
  const std::size_t n = t.diag.size();
  if (b.size() != n) throw std::invalid_argument("solve_shifted: size mismatch");
  const double floor_val = pivot_floor(t);
  std::vector<double> d(n);
  std::vector<double> x(b.begin(), b.end());
  d[0] = guard(t.diag[0] - sigma, floor_val);
  for (std::size_t i = 1; i < n; ++i) {
    const double l = t.off[i - 1] / d[i - 1];
    d[i] = guard(t.diag[i] - sigma - l * t.off[i - 1], floor_val);
    x[i] -= l * x[i - 1];
  }
  x[n - 1] /= d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (x[i] - t.off[i] * x[i + 1]) / d[i];
  }
  return x;
}

std::vector<double> solve_shifted_rank_one(const SymTridiag& t, double sigma, double rho,
                                           std::span<const double> v, std::span<const double> b) {
  if (rho == 0.0) return solve_shifted(t, sigma, b);
  std::vector<double> y = solve_shifted(t, sigma, b);
  std::vector<double> z = solve_shifted(t, sigma, v);
  double vy = 0.0, vz = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    vy += v[i] * y[i];
    vz += v[i] * z[i];
  }
  double denom = 1.0 + rho * vz;
  if (denom == 0.0) denom = std::numeric_limits<double>::min();
  const double coef = rho * vy / denom;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= coef * z[i];
  return y;
}

void solve_constant_tridiag(double d, double e, std::span<double> rhs) {
  const std::size_t n = rhs.size();
  if (n == 0) return;
  static thread_local std::vector<double> c;
  c.resize(n);
  c[0] = e / d;
  rhs[0] /= d;
  for (std::size_t i = 1; i < n; ++i) {
    const double m = 1.0 / (d - e * c[i - 1]);
    c[i] = e * m;
    rhs[i] = (rhs[i] - e * rhs[i - 1]) * m;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] -= c[i] * rhs[i + 1];
  }
}

int count_below(const SymTridiag& t, double sigma) {
  const std::size_t n = t.diag.size();
  const double floor_val = pivot_floor(t);
  int count = 0;
  double q = t.diag[0] - sigma;
  for (std::size_t i = 0;;) {
    if (q < 0.0) ++count;
    if (++i == n) break;
    const double e = t.off[i - 1];
    q = (t.diag[i] - sigma) - e * e / guard(q, floor_val);
  }
  return count;
}

int count_below(const SymTridiag& t, double rho, std::span<const double> v, double sigma) {
  if (rho == 0.0) return count_below(t, sigma);
  const std::size_t n = t.diag.size();
  if (v.size() != n) throw std::invalid_argument("count_below: size mismatch");
  const double floor_val = pivot_floor(t);
  int count = 0;
  double corner = -1.0 / rho;  // pivot of the bordered scalar block
  double d = t.diag[0] - sigma;
  double w = v[0];
  for (std::size_t i = 0;; ) {
    if (d < 0.0) ++count;
    const double dg = guard(d, floor_val);
    corner -= (w / dg) * w;
    if (++i == n) break;
    const double e = t.off[i - 1];
    const double l = e / dg;
    const double w_next = v[i] - l * w;
    d = (t.diag[i] - sigma) - l * e;
    w = w_next;
  }
  if (corner < 0.0 || std::isnan(corner)) ++count;
  if (rho > 0.0) --count;
  return count;
}

std::pair<double, double> spectrum_bounds(const SymTridiag& t, double rho,
                                          std::span<const double> v) {
  const std::size_t n = t.diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = (i > 0) ? std::abs(t.off[i - 1]) : 0.0;
    const double right = (i + 1 < n) ? std::abs(t.off[i]) : 0.0;
    lo = std::min(lo, t.diag[i] - left - right);
    hi = std::max(hi, t.diag[i] + left + right);
  }
  double vv = 0.0;
  for (double x : v) vv += x * x;
  if (rho < 0.0) lo += rho * vv;
  if (rho > 0.0) hi += rho * vv;
  const double pad = 1e-10 * std::max({std::abs(lo), std::abs(hi), 1.0});
  return {lo - pad, hi + pad};
}

}  // namespace nlci
