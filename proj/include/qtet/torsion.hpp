#pragma once

#include <string>
#include <vector>

#include "qtet/scaled_complex.hpp"

namespace qtet {

// Gram-determinant torsion formulas. Torsions live in C* / {+-1}: every
// result here is defined only up to sign. Square roots of Gram determinants
// use the principal branch.

struct TorsionInput {
  int blocks = 0;                // building-block tetrahedra (c or |T|)
  std::vector<cplx> gram_dets;   // det G_s, one per block
  cplx jac_det{1.0, 0.0};        // Jacobian determinant of the curve system
  std::vector<cplx> aux;         // sinh^2 factors, one per filled component
  int edge_count = 0;            // n or |E|

  void validate() const;
};

enum class DoubleVariant { longitudes, meridians, filled };
DoubleVariant parse_double_variant(const std::string& name);

/// 2^{3c} prod sqrt(det G_s).
cplx fsl_torsion_meridians(const TorsionInput& in);
/// 2^{3c} jac_det prod sqrt(det G_s).
cplx fsl_torsion_curves(const TorsionInput& in);
/// 2^{3c - 2n} jac_det prod sqrt(det G_s) prod 1/aux_i, n = aux.size().
cplx fsl_torsion_surgery(const TorsionInput& in);
/// Double of a polyhedral manifold:
///   longitudes: 2^{3|T|} prod sqrt(det G_s)
///   meridians:  (-1)^{3|E|/2} 2^{3|T| - |E|} jac_det prod sqrt(det G_s)
///   filled:     (-1)^{3|E|/2} 2^{3|T| - 3|E|} jac_det prod sqrt(det G_s) prod 1/aux_i
cplx double_torsion(const TorsionInput& in, DoubleVariant variant);

}  // namespace qtet
