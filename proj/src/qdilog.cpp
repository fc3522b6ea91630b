#include "qtet/qdilog.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qtet/errors.hpp"
#include "quadrature.hpp"

namespace qtet {

namespace {

constexpr double kPoleTol = 1e-8;
constexpr double kQuadRelTol = 1e-13;

// Bound on the ray tail: for x >= L the folded integrand is dominated by
// 2 e^{-delta x} / (x c0) with c0 = (1 - e^{-2 pi eps})(1 - e^{-2 b eps}).
double tail_bound(double L, double delta, double c0) {
  return 2.0 * std::exp(-delta * L) / (delta * L * c0);
}

}  // namespace

void ContourSpec::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("contour radius must lie in (0, 1)");
  if (!(abs_tol > 0.0)) throw InputError("abs_tol must be positive");
  if (truncation < 0.0) throw InputError("truncation must be positive (or 0 for automatic)");
  if (truncation > 0.0 && truncation <= epsilon) throw InputError("truncation must exceed the contour radius");
}

cplx phi_r(cplx z, const QContext& ctx, const ContourSpec& spec) {
  spec.validate();
  const int r = ctx.r();
  const double x0 = z.real();
  if (!(x0 > -kPi / r && x0 < kPi + kPi / r)) {
    throw InputError("phi_r: Re z outside the strip (-pi/r, pi + pi/r); use phi_r_extended");
  }
  const cplx a = 2.0 * z - kPi;
  const double b = 2.0 * kPi / r;
  const double eps = spec.epsilon;
  const double prefactor = 4.0 * kPi / r;

  // Semicircle from -eps to eps through the upper half plane.
  auto f = [&](cplx x) { return std::exp(a * x) / (4.0 * x * std::sinh(kPi * x) * std::sinh(b * x)); };
  auto arc = [&](double t) {
    const cplx x = std::polar(eps, t);
    return -f(x) * kI * x;
  };
  // each quadrature call gets a slice of the absolute budget
  const double piece_tol = spec.abs_tol / (100.0 * prefactor);
  detail::QuadResult semi = detail::integrate_gk(arc, 0.0, kPi, kQuadRelTol, piece_tol);

  // The two rays folded onto (eps, inf), written with expm1 so that large x
  // neither overflows nor cancels.
  auto ray = [&](double x) {
    const cplx num = std::exp((a - kPi - b) * x) - std::exp((-a - kPi - b) * x);
    return num / (x * -std::expm1(-2.0 * kPi * x) * -std::expm1(-2.0 * b * x));
  };
  const double delta = kPi + b - std::abs(a.real());
  const double c0 = -std::expm1(-2.0 * kPi * eps) * -std::expm1(-2.0 * b * eps);
  const double tail_target = spec.abs_tol / 10.0 / prefactor;

  double L = spec.truncation;
  if (L > 0.0) {
    if (tail_bound(L, delta, c0) > tail_target) {
      throw NumericError("phi_r: truncation " + std::to_string(L) + " leaves a tail above abs_tol/10");
    }
  } else {
    L = std::max(2.0 * eps, 1.0);
    while (tail_bound(L, delta, c0) > tail_target) L *= 1.25;
  }

  // Geometric panels: the integrand decays exponentially, so doubling
  // widths keep the per-panel work roughly constant.
  cplx ray_sum{0.0, 0.0};
  double ray_err = 0.0;
  double lo = eps;
  double width = 0.5;
  while (lo < L) {
    const double hi = std::min(L, lo + width);
    detail::QuadResult p = detail::integrate_gk(ray, lo, hi, kQuadRelTol, piece_tol);
    ray_sum += p.value;
    ray_err += p.error;
    lo = hi;
    width *= 2.0;
  }

  const double err = prefactor * (semi.error + ray_err);
  if (!(err <= spec.abs_tol)) {
    throw NumericError("phi_r: quadrature error estimate " + std::to_string(err) + " exceeds abs_tol");
  }
  return prefactor * kI * (semi.value + ray_sum);
}

double phi_r_pole_distance(cplx z, const QContext& ctx) {
  // All poles are real, at m pi / r with m = r(a+1) + b (right family) or
  // m = -(r a + b) (left family), a >= 0 and b odd positive.
  const int r = ctx.r();
  auto is_pole = [r](long long m) {
    if (m >= r + 1) return ((m - r) % 2 != 0) || (m >= 2LL * r + 1);
    if (m <= -1) {
      const long long n = -m;
      return (n % 2 != 0) || (n >= r + 1);
    }
    return false;
  };
  const double t = z.real() * r / kPi;
  const long long m0 = std::llround(t);
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](long long m) {
    if (is_pole(m)) best = std::min(best, std::abs(z - cplx{static_cast<double>(m) * kPi / r, 0.0}));
  };
  for (long long m = m0 - 2; m <= m0 + 2; ++m) consider(m);
  // Inside the pole-free gap the nearest poles are the two innermost ones.
  consider(r + 1);
  consider(-1);
  return best;
}

cplx phi_r_extended(cplx z, const QContext& ctx, const ContourSpec& spec) {
  const double dist = phi_r_pole_distance(z, ctx);
  if (dist < kPoleTol) throw PoleError("phi_r_extended: z is within 1e-8 of a pole");
  const int r = ctx.r();
  const double x = z.real();
  const double shift = 2.0 * kPi / r;
  const cplx c = 4.0 * kPi * kI / static_cast<double>(r);
  if (x > -kPi / r && x < kPi + kPi / r) return phi_r(z, ctx, spec);

  if (x >= kPi + kPi / r) {
    const long long n = static_cast<long long>(std::floor((x - kPi - kPi / r) / shift)) + 1;
    cplx acc = phi_r(z - static_cast<double>(n) * shift, ctx, spec);
    for (long long k = 1; k <= n; ++k) {
      acc -= c * std::log(1.0 - std::exp(2.0 * kI * (z - (2.0 * k - 1.0) * kPi / r)));
    }
    return acc;
  }
  const long long n = static_cast<long long>(std::floor((-kPi / r - x) / shift)) + 1;
  cplx acc = phi_r(z + static_cast<double>(n) * shift, ctx, spec);
  for (long long k = 1; k <= n; ++k) {
    acc += c * std::log(1.0 - std::exp(2.0 * kI * (z + (2.0 * k - 1.0) * kPi / r)));
  }
  return acc;
}

cplx phi_r_prime(cplx z, const QContext& ctx, const ContourSpec& spec) {
  constexpr double h = 1e-5;
  return (phi_r_extended(z + h, ctx, spec) - phi_r_extended(z - h, ctx, spec)) / (2.0 * h);
}

namespace {

// Li2 = u - u^2/4 + sum_k B_{2k} u^{2k+1} / (2k+1)!, u = -log(1 - z).
cplx li2_series(cplx u) {
  static const std::array<double, 10> coeff = {
      1.0 / 36.0,
      -1.0 / 3600.0,
      1.0 / 211680.0,
      -1.0 / 10886400.0,
      (5.0 / 66.0) / 39916800.0,
      (-691.0 / 2730.0) / 6227020800.0,
      (7.0 / 6.0) / 1307674368000.0,
      (-3617.0 / 510.0) / 355687428096000.0,
      (43867.0 / 798.0) / 121645100408832000.0,
      (-174611.0 / 330.0) / 51090942171709440000.0,
  };
  const cplx u2 = u * u;
  cplx sum{0.0, 0.0};
  for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k) sum = sum * u2 + coeff[k];
  return u - u2 / 4.0 + sum * u2 * u;
}

}  // namespace

cplx li2(cplx z) {
  constexpr double zeta2 = kPi * kPi / 6.0;
  const double x = z.real();
  const double y = z.imag();
  if (y == 0.0 && x > 1.0) {
    // Limit from below the cut.
    const double lx = std::log(x);
    const double re = kPi * kPi / 3.0 - 0.5 * lx * lx - li2(cplx{1.0 / x, 0.0}).real();
    return {re, -kPi * lx};
  }
  if (y == 0.0 && x == 1.0) return {zeta2, 0.0};
  if (x == 0.0 && y == 0.0) return {0.0, 0.0};

  const double nz = std::norm(z);
  if (x <= 0.5) {
    if (nz <= 1.0) return li2_series(-std::log(1.0 - z));
    const cplx lm = std::log(-z);
    return -li2_series(-std::log(1.0 - 1.0 / z)) - zeta2 - 0.5 * lm * lm;
  }
  if (nz <= 2.0 * x) {
    // |1 - z| <= 1: reflect.
    return -li2_series(-std::log(z)) + zeta2 - std::log(z) * std::log(1.0 - z);
  }
  const cplx lm = std::log(-z);
  return -li2_series(-std::log(1.0 - 1.0 / z)) - zeta2 - 0.5 * lm * lm;
}

double lobachevsky(double theta) {
  // Reduce to (-pi/2, pi/2] using oddness and pi-periodicity, then
  // Lambda(t) = t(1 - log 2|t|) + t sum_n zeta(2n) (t/pi)^{2n} / (n (2n+1)).
  double t = std::remainder(theta, kPi);
  if (t == 0.0) return 0.0;
  const double s = (t / kPi) * (t / kPi);
  double sum = 0.0;
  double p = 1.0;
  for (int n = 1; n < 200; ++n) {
    p *= s;
    const double term = std::riemann_zeta(2.0 * n) * p / (n * (2.0 * n + 1.0));
    sum += term;
    if (term < 1e-18) break;
  }
  return t * (1.0 - std::log(2.0 * std::abs(t))) + t * sum;
}

}  // namespace qtet
