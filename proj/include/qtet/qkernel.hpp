#pragma once

#include <array>
#include <vector>

#include "qtet/scaled_complex.hpp"

namespace qtet {

struct ContourSpec;

// Six colors a1..a6 in {0, ..., r-2}. Slot order follows the tetrahedron
// convention: (a1, a2, a3) is a face, a4 is opposite a1, a5 opposite a2,
// a6 opposite a3.
using ColorTuple6 = std::array<int, 6>;

// The four faces (admissible triples) and three opposite-edge quadruples of
// the tetrahedron, as 0-based slot indices.
inline constexpr std::array<std::array<int, 3>, 4> kFaceSlots{{{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}}};
inline constexpr std::array<std::array<int, 4>, 3> kQuadSlots{{{0, 1, 3, 4}, {0, 2, 3, 5}, {1, 2, 4, 5}}};

/// Odd level r >= 3 together with q = exp(2 pi i / r).
///
/// Construction tabulates [n] for 0 <= n <= r and [n]! for 0 <= n <= r - 1,
/// so every 6j-symbol evaluation is table lookups plus one scaled sum.
/// Immutable after construction.
class QContext {
 public:
  explicit QContext(int r);

  int r() const { return r_; }
  cplx q() const { return q_; }

  /// True when r exceeds the range validated in double precision (1001).
  bool beyond_precision_ceiling() const { return r_ > kPrecisionCeiling; }

  double qint_real(int n) const;                   // [n] for 0 <= n <= r
  const ScaledComplex& qfact_table(int n) const;   // [n]! for 0 <= n <= r-1

  static constexpr int kPrecisionCeiling = 1001;

 private:
  int r_;
  cplx q_;
  std::vector<double> qint_;
  std::vector<ScaledComplex> qfact_;
};

/// [n] = (q^n - q^{-n}) / (q - q^{-1}) by direct complex arithmetic.
cplx quantum_integer(int n, const QContext& ctx);

/// [n]! for 0 <= n <= r-2.
ScaledComplex quantum_factorial(int n, const QContext& ctx);

/// {n}! = prod_{k=1}^n (q^k - q^{-k}) for 0 <= n <= r-2.
ScaledComplex curly_factorial(int n, const QContext& ctx);

bool is_admissible_triple(int a1, int a2, int a3, const QContext& ctx);
bool is_admissible_six(const ColorTuple6& a, const QContext& ctx);
bool is_hyperideal_colors(const ColorTuple6& a, const QContext& ctx);

/// Delta(a1, a2, a3); a negative radicand x gives sqrt(|x|) * i.
ScaledComplex delta_symbol(int a1, int a2, int a3, const QContext& ctx);

/// Quantum 6j-symbol in scaled form. Throws InputError if not r-admissible.
ScaledComplex sixj_scaled(const ColorTuple6& a, const QContext& ctx);

/// Quantum 6j-symbol as a complex number (overflows for r beyond ~1500).
cplx sixj(const ColorTuple6& a, const QContext& ctx);

/// Sign relating the bare dilogarithm sum to the 6j-symbol:
/// (-1)^(sum(a)/2 + floor(n/2)), n = number of faces whose Delta radicand is negative.
int qdilog_sign(const ColorTuple6& a, const QContext& ctx);

/// ({1}/2) sum_k exp((r / 4 pi i) U_r(2 pi a / r, 2 pi k / r)) with U_r assembled
/// from quantum dilogarithms, without any sign correction. Hyperideal colors only.
cplx qdilog_sum(const ColorTuple6& a, const QContext& ctx, const ContourSpec& spec);

/// 6j-symbol through the dilogarithm sum: qdilog_sign(a) * qdilog_sum(a).
cplx sixj_via_qdilog(const ColorTuple6& a, const QContext& ctx, const ContourSpec& spec);

}  // namespace qtet
