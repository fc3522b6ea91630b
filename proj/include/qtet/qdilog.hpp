#pragma once

#include "qtet/qkernel.hpp"
#include "qtet/scaled_complex.hpp"

namespace qtet {

/// Contour for phi_r: a semicircle of radius epsilon around 0 (upper half
/// plane) joined to the two real rays.
struct ContourSpec {
  double epsilon = 0.5;
  double truncation = 0.0;  // ray cutoff; 0 picks it from the tail bound
  double abs_tol = 1e-10;

  void validate() const;
};

/// Quantum dilogarithm on the strip -pi/r < Re z < pi + pi/r.
cplx phi_r(cplx z, const QContext& ctx, const ContourSpec& spec = {});

/// Meromorphic extension of phi_r to the whole plane via the product
/// recursion. Throws PoleError within 1e-8 of a pole.
cplx phi_r_extended(cplx z, const QContext& ctx, const ContourSpec& spec = {});

/// Central difference derivative of phi_r_extended, step 1e-5.
cplx phi_r_prime(cplx z, const QContext& ctx, const ContourSpec& spec = {});

/// Distance from z to the nearest pole of phi_r_extended.
double phi_r_pole_distance(cplx z, const QContext& ctx);

/// Principal dilogarithm; on the cut (1, inf) returns the limit from below.
cplx li2(cplx z);

/// Lobachevsky function, -int_0^theta log|2 sin t| dt.
double lobachevsky(double theta);

}  // namespace qtet
