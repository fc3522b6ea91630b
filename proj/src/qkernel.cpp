#include "qtet/qkernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "qtet/errors.hpp"
#include "qtet/qdilog.hpp"

namespace qtet {

namespace {

void check_color_range(const ColorTuple6& a, const QContext& ctx) {
  for (int c : a) {
    if (c < 0 || c > ctx.r() - 2) {
      throw InputError("color " + std::to_string(c) + " outside {0, ..., r-2} for r = " +
                       std::to_string(ctx.r()));
    }
  }
}

struct TetIndices {
  std::array<int, 4> t;  // face half-sums
  std::array<int, 3> q;  // quadruple half-sums
};

TetIndices tet_indices(const ColorTuple6& a) {
  TetIndices out{};
  for (int f = 0; f < 4; ++f) {
    const auto& s = kFaceSlots[f];
    out.t[f] = (a[s[0]] + a[s[1]] + a[s[2]]) / 2;
  }
  for (int j = 0; j < 3; ++j) {
    const auto& s = kQuadSlots[j];
    out.q[j] = (a[s[0]] + a[s[1]] + a[s[2]] + a[s[3]]) / 2;
  }
  return out;
}

}  // namespace

QContext::QContext(int r) : r_(r) {
  if (r < 3) throw InputError("r must be >= 3");
  if (r % 2 == 0) throw InputError("r must be odd");
  q_ = std::polar(1.0, 2.0 * kPi / r);
  const double s1 = std::sin(2.0 * kPi / r);
  qint_.resize(r + 1);
  for (int n = 0; n <= r; ++n) qint_[n] = std::sin(2.0 * kPi * n / r) / s1;
  qint_[0] = 0.0;
  qint_[r] = 0.0;
  qfact_.resize(r);
  qfact_[0] = ScaledComplex::one();
  for (int n = 1; n < r; ++n) qfact_[n] = qfact_[n - 1] * ScaledComplex::from_real(qint_[n]);
}

double QContext::qint_real(int n) const {
  if (n < 0 || n > r_) throw InputError("quantum integer index out of table range");
  return qint_[n];
}

const ScaledComplex& QContext::qfact_table(int n) const {
  if (n < 0 || n >= r_) throw InputError("quantum factorial index out of table range");
  return qfact_[n];
}

cplx quantum_integer(int n, const QContext& ctx) {
  const cplx q = ctx.q();
  const cplx qn = std::pow(q, n);
  return (qn - 1.0 / qn) / (q - 1.0 / q);
}

ScaledComplex quantum_factorial(int n, const QContext& ctx) {
  if (n < 0 || n > ctx.r() - 2) {
    throw InputError("quantum factorial requires 0 <= n <= r-2, got n = " + std::to_string(n));
  }
  return ctx.qfact_table(n);
}

ScaledComplex curly_factorial(int n, const QContext& ctx) {
  if (n < 0 || n > ctx.r() - 2) {
    throw InputError("quantum factorial requires 0 <= n <= r-2, got n = " + std::to_string(n));
  }
  // {k} = 2i sin(2 pi k / r) = [k] * {1}.
  const ScaledComplex curly_one = ScaledComplex::from_complex(ctx.q() - 1.0 / ctx.q());
  return ctx.qfact_table(n) * curly_one.pow(n);
}

bool is_admissible_triple(int a1, int a2, int a3, const QContext& ctx) {
  const int hi = ctx.r() - 2;
  for (int c : {a1, a2, a3}) {
    if (c < 0 || c > hi) return false;
  }
  const int sum = a1 + a2 + a3;
  if (sum % 2 != 0 || sum > 2 * hi) return false;
  return a1 + a2 >= a3 && a2 + a3 >= a1 && a3 + a1 >= a2;
}

bool is_admissible_six(const ColorTuple6& a, const QContext& ctx) {
  return std::all_of(kFaceSlots.begin(), kFaceSlots.end(), [&](const auto& s) {
    return is_admissible_triple(a[s[0]], a[s[1]], a[s[2]], ctx);
  });
}

bool is_hyperideal_colors(const ColorTuple6& a, const QContext& ctx) {
  const int hi = ctx.r() - 2;
  for (int c : a) {
    if (c < 0 || c > hi) return false;
  }
  for (const auto& s : kFaceSlots) {
    const int x = a[s[0]], y = a[s[1]], z = a[s[2]];
    const int sum = x + y + z;
    if (sum % 2 != 0 || sum <= hi || sum > 2 * hi) return false;
    for (int d : {x + y - z, y + z - x, z + x - y}) {
      if (d < 0 || d >= hi) return false;
    }
  }
  return true;
}

ScaledComplex delta_symbol(int a1, int a2, int a3, const QContext& ctx) {
  if (!is_admissible_triple(a1, a2, a3, ctx)) {
    throw InputError("Delta symbol of a non-admissible triple");
  }
  ScaledComplex x = ctx.qfact_table((a1 + a2 - a3) / 2) * ctx.qfact_table((a2 + a3 - a1) / 2) *
                    ctx.qfact_table((a3 + a1 - a2) / 2) / ctx.qfact_table((a1 + a2 + a3) / 2 + 1);
  // x is real: its phase is 0 or pi.
  const bool negative = std::abs(x.phase()) > kPi / 2;
  return {0.5 * x.log_mag(), negative ? kPi / 2 : 0.0};
}

ScaledComplex sixj_scaled(const ColorTuple6& a, const QContext& ctx) {
  check_color_range(a, ctx);
  if (!is_admissible_six(a, ctx)) throw InputError("6-tuple is not r-admissible");

  const TetIndices ix = tet_indices(a);
  const int kmin = *std::max_element(ix.t.begin(), ix.t.end());
  // [k+1]! vanishes once k+1 reaches r.
  const int kmax = std::min(*std::min_element(ix.q.begin(), ix.q.end()), ctx.r() - 2);

  ScaledSum sum;
  for (int k = kmin; k <= kmax; ++k) {
    ScaledComplex term = ctx.qfact_table(k + 1);
    for (int t : ix.t) term /= ctx.qfact_table(k - t);
    for (int q : ix.q) term /= ctx.qfact_table(q - k);
    sum.add(k % 2 == 0 ? term : -term);
  }
  ScaledComplex value = sum.value();
  if (value.is_zero()) return value;

  int total = 0;
  for (int c : a) total += c;
  value *= ScaledComplex(0.0, -kPi * total / 2.0);
  for (const auto& s : kFaceSlots) value *= delta_symbol(a[s[0]], a[s[1]], a[s[2]], ctx);
  return value;
}

cplx sixj(const ColorTuple6& a, const QContext& ctx) { return sixj_scaled(a, ctx).to_complex(); }

int qdilog_sign(const ColorTuple6& a, const QContext& ctx) {
  check_color_range(a, ctx);
  const int r = ctx.r();
  // [k] < 0 exactly for r/2 < k < r
  auto fact_sign = [r](int n) {
    int s = 1;
    for (int k = 1; k <= n; ++k) {
      if (2 * (k % r) > r) s = -s;
    }
    return s;
  };
  int negative = 0;
  int sum = 0;
  for (const auto& f : kFaceSlots) {
    const int x = a[f[0]], y = a[f[1]], z = a[f[2]];
    const int sign = fact_sign((x + y - z) / 2) * fact_sign((y + z - x) / 2) * fact_sign((z + x - y) / 2) *
                     fact_sign((x + y + z) / 2 + 1);
    if (sign < 0) ++negative;
  }
  for (int v : a) sum += v;
  return ((sum / 2 + negative / 2) % 2 == 0) ? 1 : -1;
}

cplx sixj_via_qdilog(const ColorTuple6& a, const QContext& ctx, const ContourSpec& spec) {
  const cplx bare = qdilog_sum(a, ctx, spec);
  return static_cast<double>(qdilog_sign(a, ctx)) * bare;
}

cplx qdilog_sum(const ColorTuple6& a, const QContext& ctx, const ContourSpec& spec) {
  check_color_range(a, ctx);
  if (!is_hyperideal_colors(a, ctx)) {
    throw InputError("dilogarithm form of the 6j-symbol implemented for hyperideal colors only");
  }
  const int r = ctx.r();
  const double step = kPi / r;  // every dilogarithm argument is an integer multiple of pi/r
  std::map<int, cplx> cache;
  auto phi_at = [&](int m) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    const cplx v = phi_r(cplx{m * step, 0.0}, ctx, spec);
    cache.emplace(m, v);
    return v;
  };

  // Work in units of pi/r: alpha_i = 2 a_i, tau = sum over a face, eta = sum over a quadruple.
  const TetIndices ix = tet_indices(a);
  std::array<int, 4> tau_m{};
  std::array<int, 3> eta_m{};
  for (int i = 0; i < 4; ++i) tau_m[i] = 2 * ix.t[i];
  for (int j = 0; j < 3; ++j) eta_m[j] = 2 * ix.q[j];

  auto sq = [](double x) { return x * x; };
  const double two_pi_r = 2.0 * kPi / r;

  cplx fixed = kPi * kPi - sq(two_pi_r);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) fixed += 0.5 * sq((eta_m[j] - tau_m[i]) * step);
    fixed -= 0.5 * sq(tau_m[i] * step + two_pi_r - kPi);
  }
  fixed -= 2.0 * phi_at(1);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) fixed -= 0.5 * phi_at(eta_m[j] - tau_m[i] + 1);
    fixed += 0.5 * phi_at(tau_m[i] - r + 3);
  }

  const int kmin = *std::max_element(ix.t.begin(), ix.t.end());
  const int kmax = std::min(*std::min_element(ix.q.begin(), ix.q.end()), r - 2);
  const cplx scale = static_cast<double>(r) / (4.0 * kPi * kI);
  cplx total{0.0, 0.0};
  for (int k = kmin; k <= kmax; ++k) {
    const int xi_m = 2 * k;
    const double xi = xi_m * step;
    cplx u = fixed + sq(xi + two_pi_r - kPi);
    for (int i = 0; i < 4; ++i) u -= sq(xi - tau_m[i] * step);
    for (int j = 0; j < 3; ++j) u -= sq(eta_m[j] * step - xi);
    u -= phi_at(xi_m - r + 3);
    for (int i = 0; i < 4; ++i) u += phi_at(xi_m - tau_m[i] + 1);
    for (int j = 0; j < 3; ++j) u += phi_at(eta_m[j] - xi_m + 1);
    total += std::exp(scale * u);
  }
  const cplx curly_one = ctx.q() - 1.0 / ctx.q();
  return 0.5 * curly_one * total;
}

}  // namespace qtet
