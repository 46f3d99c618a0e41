#pragma once

#include <functional>

namespace nlci {

/// Adaptive Simpson quadrature of f over [lo, hi] to the given absolute
/// tolerance. Used for antiderivatives of the diffusion coefficient.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol);

}  // namespace nlci
