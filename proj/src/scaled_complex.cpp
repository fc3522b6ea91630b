#include "qtet/scaled_complex.hpp"

namespace qtet {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double normalize_phase(double phase) {
  double p = std::remainder(phase, 2.0 * kPi);
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

ScaledComplex::ScaledComplex(double log_mag, double phase)
    : log_mag_(log_mag), phase_(log_mag == kNegInf ? 0.0 : normalize_phase(phase)) {}

ScaledComplex ScaledComplex::from_complex(cplx z) {
  if (z == cplx{0.0, 0.0}) return {};
  // hypot-based log avoids overflow of |z|^2.
  return {std::log(std::abs(z)), std::arg(z)};
}

cplx ScaledComplex::to_complex() const { return scaled_to(0.0); }

cplx ScaledComplex::scaled_to(double ref_log_mag) const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_ - ref_log_mag), phase_);
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& o) {
  if (is_zero() || o.is_zero()) {
    *this = ScaledComplex{};
    return *this;
  }
  *this = ScaledComplex{log_mag_ + o.log_mag_, phase_ + o.phase_};
  return *this;
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& o) {
  if (is_zero()) return *this;
  *this = ScaledComplex{log_mag_ - o.log_mag_, phase_ - o.phase_};
  return *this;
}

ScaledComplex ScaledComplex::operator-() const {
  if (is_zero()) return *this;
  return {log_mag_, phase_ + kPi};
}

ScaledComplex ScaledComplex::sqrt() const {
  if (is_zero()) return *this;
  return {0.5 * log_mag_, 0.5 * phase_};
}

ScaledComplex ScaledComplex::conj() const {
  if (is_zero()) return *this;
  return {log_mag_, -phase_};
}

ScaledComplex ScaledComplex::pow(int n) const {
  if (n == 0) return one();
  if (is_zero()) return *this;
  return {n * log_mag_, n * phase_};
}

ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  ScaledSum s;
  s.add(a);
  s.add(b);
  return s.value();
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

cplx ratio(const ScaledComplex& a, const ScaledComplex& b) { return (a / b).to_complex(); }

void ScaledSum::add(const ScaledComplex& term) {
  if (term.is_zero()) return;
  if (term.log_mag() > ref_) {
    if (ref_ != kNegInf) acc_ *= std::exp(ref_ - term.log_mag());
    ref_ = term.log_mag();
  }
  acc_ += term.scaled_to(ref_);
}

ScaledComplex ScaledSum::value() const {
  if (ref_ == kNegInf) return {};
  ScaledComplex v = ScaledComplex::from_complex(acc_);
  if (v.is_zero()) return v;
  return {v.log_mag() + ref_, v.phase()};
}

}  // namespace qtet
