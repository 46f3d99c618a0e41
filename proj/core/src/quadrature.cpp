#include "nlci/quadrature.hpp"

#include <cmath>

namespace nlci {
namespace {

double simpson(double fa, double fm, double fb, double width) {
  return width * (fa + 4.0 * fm + fb) / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol) {
  if (lo == hi) return 0.0;
  double sign = 1.0;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
  const double whole = simpson(fa, fm, fb, hi - lo);
  return sign * adapt(f, lo, hi, fa, fm, fb, whole, abs_tol, 48);
}

}  // namespace nlci
