#include "quadrature.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qtet::detail {

QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double rel_tol, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  double l1 = 0.0;
  const cplx coarse = gauss_kronrod<double, 21>::integrate(f, a, b, 0, rel_tol, &err, &l1);
  if (abs_tol > 0.0 && err <= abs_tol) return {coarse, err};
  double tol = rel_tol;
  if (abs_tol > 0.0 && l1 > 0.0) tol = std::max(rel_tol, abs_tol / l1);
  const cplx v = gauss_kronrod<double, 21>::integrate(f, a, b, 20, tol, &err);
  return {v, err};
}

}  // namespace qtet::detail
