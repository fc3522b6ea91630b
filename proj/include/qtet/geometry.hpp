#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtet/scaled_complex.hpp"

namespace qtet {

/// Split of the six edges into deep-truncation edges I and regular edges J.
/// Stored as a bitmask over 0-based edge slots.
class Partition {
 public:
  Partition() = default;
  static Partition from_mask(std::uint8_t mask);
  /// 1-based edge numbers in I.
  static Partition from_indices(const std::vector<int>& one_based);
  /// Parses "1,3,5" (1-based); the empty string is I = {}.
  static Partition parse(const std::string& text);

  bool in_I(int slot) const { return (mask_ >> slot) & 1U; }
  std::uint8_t mask() const { return mask_; }
  std::vector<int> I() const;  // 0-based slots, increasing
  std::vector<int> J() const;
  int size_I() const;
  std::string to_string() const;  // 1-based, comma separated

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::uint8_t mask_ = 0;
};

using AngleTuple = std::array<cplx, 6>;
using Mat4c = Eigen::Matrix<cplx, 4, 4>;

struct HalfSums {
  std::array<cplx, 4> tau;
  std::array<cplx, 3> eta;
};
HalfSums half_sums(const AngleTuple& alpha);

/// Gram matrix function: 1 on the diagonal, -cosh z_k off it.
Mat4c gram(const std::array<cplx, 6>& z);
/// The matrix whose determinant is (B^2 - 4AC)/16: cos(alpha_k) off-diagonal.
Mat4c cos_gram(const AngleTuple& alpha);

struct QuadCoeffs {
  cplx A, B, C;
};
/// Coefficients of A z^2 + B z + C = 0 in u_k = exp(i alpha_k).
QuadCoeffs quad_coeffs(const AngleTuple& alpha);

/// True if Re(alpha) is of hyperideal type and
/// max Re tau <= Re xi <= min(Re eta, 2 pi), all up to tol.
bool in_domain(const AngleTuple& alpha, cplx xi, double tol = 1e-9);
bool is_hyperideal_angles(const AngleTuple& alpha, double tol = 1e-9);

struct XiSolution {
  cplx xi;         // selected critical point
  cplx z;          // exp(-2 i xi)
  cplx z_other;    // the other root of the quadratic
  cplx sqrt_disc;  // A (z - z_other): the branch of sqrt(B^2 - 4AC) in use
  QuadCoeffs coeffs;
  int candidates;  // number of in-domain candidates considered
};

/// Critical point of U(alpha, .): among the roots z of the quadratic and the
/// lifts xi = (i/2) log z + k pi with Re xi in [pi, 2 pi] inside the domain,
/// takes the one maximizing Im U.
XiSolution solve_xi(const AngleTuple& alpha);
cplx xi_of_alpha(const AngleTuple& alpha);

/// Value, gradient and Hessian of U in the variables (alpha_1..alpha_6, xi).
/// No domain check.
struct PotentialJet {
  cplx value;
  Eigen::Matrix<cplx, 7, 1> grad;
  Eigen::Matrix<cplx, 7, 7> hess;
};
PotentialJet u_jet(const AngleTuple& alpha, cplx xi);

// The following throw DomainError outside the domain.
cplx u_func(const AngleTuple& alpha, cplx xi);
cplx u_dxi(const AngleTuple& alpha, cplx xi);
cplx u_dxi2(const AngleTuple& alpha, cplx xi);
cplx u_dalpha(const AngleTuple& alpha, cplx xi, int k);  // k 0-based
cplx kappa_func(const AngleTuple& alpha, cplx xi);
cplx w_func(const AngleTuple& alpha);

/// alpha_i = pi + i l_i on I and alpha_j = pi - theta_j on J. The array
/// holds l_k for k in I and theta_k for k in J.
AngleTuple geometric_alpha(const std::array<double, 6>& mixed, const Partition& p);

/// Gram matrix function at (l_I, theta_J), i.e. z_i = l_i, z_j = i theta_j.
Mat4c gram_at(const std::array<double, 6>& mixed, const Partition& p);

/// (W - 2 pi^2) / (2i) at the geometric alpha. Throws NumericError if the
/// imaginary part exceeds 1e-8 relative.
double covolume(const std::array<double, 6>& mixed, const Partition& p);

struct TetGeometry {
  Partition partition;
  std::array<double, 6> l{};
  std::array<double, 6> theta{};
  double vol = 0.0;
  double cov = 0.0;
  double gram_det = 0.0;
  Eigen::MatrixXd jac;  // d theta_{I[a]} / d l_{I[b]}
  AngleTuple alpha{};
  cplx xi{};
  int iterations = 0;
};

/// Geometry at given l_I and theta_J (no solve).
TetGeometry geometry_at(const std::array<double, 6>& mixed, const Partition& p);

/// Solves for l_I so that the dihedral angles at I edges equal the targets.
/// theta holds target angles on all six edges.
TetGeometry solve_geometry(const std::array<double, 6>& theta, const Partition& p, double tol = 1e-12);

/// d theta_I / d l_I by Richardson-extrapolated central differences of
/// 2 dCov/dl; reference for the analytic Jacobian.
Eigen::MatrixXd angle_jacobian_fd(const std::array<double, 6>& mixed, const Partition& p, double h = 1e-4);

}  // namespace qtet
