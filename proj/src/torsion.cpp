#include "qtet/torsion.hpp"

#include <cmath>

#include "qtet/errors.hpp"

namespace qtet {

void TorsionInput::validate() const {
  if (blocks < 0) throw InputError("torsion: negative block count");
  if (static_cast<int>(gram_dets.size()) != blocks) {
    throw InputError("torsion: expected one Gram determinant per block");
  }
  for (const cplx& d : gram_dets) {
    if (d == cplx{0.0, 0.0}) throw InputError("torsion: zero Gram determinant");
  }
  for (const cplx& a : aux) {
    if (a == cplx{0.0, 0.0}) throw InputError("torsion: zero sinh^2 factor");
  }
  if (edge_count < 0) throw InputError("torsion: negative edge count");
}

DoubleVariant parse_double_variant(const std::string& name) {
  if (name == "longitudes") return DoubleVariant::longitudes;
  if (name == "meridians") return DoubleVariant::meridians;
  if (name == "filled") return DoubleVariant::filled;
  throw InputError("unknown torsion variant '" + name + "'");
}

namespace {

cplx sqrt_product(const TorsionInput& in) {
  cplx p{1.0, 0.0};
  for (const cplx& d : in.gram_dets) p *= std::sqrt(d);
  return p;
}

cplx inverse_aux_product(const TorsionInput& in) {
  cplx p{1.0, 0.0};
  for (const cplx& a : in.aux) p /= a;
  return p;
}

}  // namespace

cplx fsl_torsion_meridians(const TorsionInput& in) {
  in.validate();
  return std::ldexp(1.0, 3 * in.blocks) * sqrt_product(in);
}

cplx fsl_torsion_curves(const TorsionInput& in) { return fsl_torsion_meridians(in) * in.jac_det; }

cplx fsl_torsion_surgery(const TorsionInput& in) {
  const int n = static_cast<int>(in.aux.size());
  return std::ldexp(1.0, -2 * n) * fsl_torsion_curves(in) * inverse_aux_product(in);
}

cplx double_torsion(const TorsionInput& in, DoubleVariant variant) {
  in.validate();
  const int T = in.blocks;
  const int E = in.edge_count;
  const cplx sign = std::polar(1.0, kPi * 1.5 * E);
  switch (variant) {
    case DoubleVariant::longitudes:
      return std::ldexp(1.0, 3 * T) * sqrt_product(in);
    case DoubleVariant::meridians:
      return sign * std::ldexp(1.0, 3 * T - E) * in.jac_det * sqrt_product(in);
    case DoubleVariant::filled:
      if (static_cast<int>(in.aux.size()) != E) throw InputError("torsion: filled variant needs one sinh^2 l per edge");
      return sign * std::ldexp(1.0, 3 * T - 3 * E) * in.jac_det * sqrt_product(in) * inverse_aux_product(in);
  }
  throw InputError("unknown torsion variant");
}

}  // namespace qtet
