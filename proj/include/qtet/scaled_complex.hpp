#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace qtet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

/// Normalizes an angle to (-pi, pi].
double normalize_phase(double phase);

/// A complex number stored as (log|z|, arg z).
///
/// Quantum factorials, 6j-symbols and their squared sums grow like e^{c r};
/// carrying the logarithm of the modulus keeps products exact in range up to
/// r in the thousands. A log-magnitude of -inf encodes exact zero.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(double log_mag, double phase);

  static ScaledComplex zero() { return {}; }
  static ScaledComplex one() { return {0.0, 0.0}; }
  static ScaledComplex from_complex(cplx z);
  static ScaledComplex from_real(double x) { return from_complex(cplx{x, 0.0}); }

  double log_mag() const { return log_mag_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_mag_ == -std::numeric_limits<double>::infinity(); }

  /// Value as an ordinary complex number; overflows to inf for huge moduli.
  cplx to_complex() const;
  /// Value multiplied by e^{-ref_log_mag}.
  cplx scaled_to(double ref_log_mag) const;

  ScaledComplex& operator*=(const ScaledComplex& o);
  ScaledComplex& operator/=(const ScaledComplex& o);
  ScaledComplex operator-() const;

  /// Principal square root.
  ScaledComplex sqrt() const;
  ScaledComplex conj() const;
  ScaledComplex pow(int n) const;

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b);
ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b);
ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);

/// Ratio a/b as an ordinary complex number (the common case of comparing two
/// large quantities).
cplx ratio(const ScaledComplex& a, const ScaledComplex& b);

// Running sum of ScaledComplex terms. The accumulator is kept relative to the
// largest log-magnitude seen so far and rescaled when a larger term arrives.
class ScaledSum {
 public:
  void add(const ScaledComplex& term);
  void add(const ScaledSum& other) { add(other.value()); }
  ScaledComplex value() const;
  double max_term_log_mag() const { return ref_; }

 private:
  double ref_ = -std::numeric_limits<double>::infinity();
  cplx acc_{0.0, 0.0};
};

}  // namespace qtet
