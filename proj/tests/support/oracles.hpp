#pragma once

// Independent reference evaluations used only by tests. Everything here is
// plain unscaled complex arithmetic on powers of q, written without the
// library's tables or scaled accumulators.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

inline cplx qpow(int r, long long n) {
  const long long m = ((n % r) + r) % r;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(m) / r);
}

inline cplx qint(int r, int n) { return (qpow(r, n) - qpow(r, -n)) / (qpow(r, 1) - qpow(r, -1)); }

inline cplx qfact(int r, int n) {
  cplx p = 1.0;
  for (int k = 1; k <= n; ++k) p *= qint(r, k);
  return p;
}

inline bool triple_ok(int r, int a, int b, int c) {
  return a + b - c >= 0 && b + c - a >= 0 && c + a - b >= 0 && a + b + c <= 2 * (r - 2) && (a + b + c) % 2 == 0;
}

inline bool six_ok(int r, const std::array<int, 6>& a) {
  return triple_ok(r, a[0], a[1], a[2]) && triple_ok(r, a[0], a[4], a[5]) && triple_ok(r, a[1], a[3], a[5]) &&
         triple_ok(r, a[2], a[3], a[4]);
}

inline cplx delta(int r, int a, int b, int c) {
  const double x = (qfact(r, (a + b - c) / 2) * qfact(r, (b + c - a) / 2) * qfact(r, (c + a - b) / 2) /
                    qfact(r, (a + b + c) / 2 + 1))
                       .real();
  return x < 0 ? cplx(0.0, std::sqrt(-x)) : cplx(std::sqrt(x), 0.0);
}

/// Direct summation, k running downward.
inline cplx sixj(int r, const std::array<int, 6>& a) {
  const int T[4] = {(a[0] + a[1] + a[2]) / 2, (a[0] + a[4] + a[5]) / 2, (a[1] + a[3] + a[5]) / 2,
                    (a[2] + a[3] + a[4]) / 2};
  const int Q[3] = {(a[0] + a[1] + a[3] + a[4]) / 2, (a[0] + a[2] + a[3] + a[5]) / 2,
                    (a[1] + a[2] + a[4] + a[5]) / 2};
  const int lo = std::max({T[0], T[1], T[2], T[3]});
  const int hi = std::min({Q[0], Q[1], Q[2]});
  cplx sum = 0.0;
  for (int k = hi; k >= lo; --k) {
    cplx den = 1.0;
    for (int t : T) den *= qfact(r, k - t);
    for (int q : Q) den *= qfact(r, q - k);
    sum += (k % 2 ? -1.0 : 1.0) * qfact(r, k + 1) / den;
  }
  int s = 0;
  for (int v : a) s += v;
  const cplx phase = std::polar(1.0, -kPi * s / 2.0);
  return phase * delta(r, a[0], a[1], a[2]) * delta(r, a[0], a[4], a[5]) * delta(r, a[1], a[3], a[5]) *
         delta(r, a[2], a[3], a[4]) * sum;
}

inline cplx h(int r, int a, int b) {
  return ((a + b) % 2 ? -1.0 : 1.0) * qint(r, (a + 1) * (b + 1));
}

/// Yhat by an odometer over the I slots, first slot fastest, no pruning.
inline cplx yhat(int r, std::array<int, 6> colors, unsigned mask) {
  std::vector<int> slots;
  for (int k = 0; k < 6; ++k)
    if ((mask >> k) & 1U) slots.push_back(k);
  std::array<int, 6> a = colors;
  for (int k : slots) a[k] = 0;
  cplx sum = 0.0;
  while (true) {
    if (six_ok(r, a)) {
      cplx t = sixj(r, a);
      t *= t;
      for (int k : slots) t *= h(r, a[k], colors[k]);
      sum += t;
    }
    std::size_t d = 0;
    while (d < slots.size() && ++a[slots[d]] > r - 2) a[slots[d++]] = 0;
    if (d == slots.size()) break;
  }
  return sum;
}

/// Turaev-Viro state sum; odometer with edge 0 fastest and admissibility
/// checked only on complete colorings.
inline cplx tv(int r, int num_edges, const std::vector<std::array<int, 6>>& tets, const std::vector<int>& b) {
  std::vector<int> a(static_cast<std::size_t>(num_edges), 0);
  cplx sum = 0.0;
  while (true) {
    bool ok = true;
    for (const auto& t : tets) {
      std::array<int, 6> c{};
      for (int k = 0; k < 6; ++k) c[k] = a[t[k]];
      if (!six_ok(r, c)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      cplx term = 1.0;
      for (int e = 0; e < num_edges; ++e) term *= h(r, a[e], b[e]);
      for (const auto& t : tets) {
        std::array<int, 6> c{};
        for (int k = 0; k < 6; ++k) c[k] = a[t[k]];
        term *= sixj(r, c);
      }
      sum += term;
    }
    int d = 0;
    while (d < num_edges && ++a[d] > r - 2) a[d++] = 0;
    if (d == num_edges) break;
  }
  return sum;
}

/// Lobachevsky function from its Fourier series 1/2 sum sin(2 n t) / n^2,
/// with the tail estimated by the integral bound.
inline double lobachevsky_fourier(double t, int terms = 2000000) {
  double s = 0.0;
  for (int n = terms; n >= 1; --n) s += std::sin(2.0 * n * t) / (static_cast<double>(n) * n);
  return 0.5 * s;
}

/// Li2 by its power series; only for |z| well inside the unit disk.
inline cplx li2_series(cplx z, int terms = 200000) {
  cplx s = 0.0, p = z;
  for (int n = 1; n <= terms; ++n) {
    s += p / (static_cast<double>(n) * n);
    p *= z;
  }
  return s;
}

}  // namespace oracle
