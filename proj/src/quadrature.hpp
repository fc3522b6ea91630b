#pragma once

#include <functional>

#include "qtet/scaled_complex.hpp"

namespace qtet::detail {

struct QuadResult {
  cplx value;
  double error;
};

// Adaptive 21-point Gauss-Kronrod on [a, b] for a complex integrand. Refinement
// stops at rel_tol, or earlier once the error is below abs_tol (0 disables).
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                        double abs_tol = 0.0);

}  // namespace qtet::detail
