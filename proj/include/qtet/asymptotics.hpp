#pragma once

#include <array>
#include <string>
#include <vector>

#include "qtet/dft.hpp"
#include "qtet/geometry.hpp"
#include "qtet/qkernel.hpp"
#include "qtet/scaled_complex.hpp"

namespace qtet {

/// Colors for target angles: b_i = round(r (pi + mu_i theta_i) / (2 pi)) on I,
/// a_j the nearest integer of parity parity[j] to the same quantity on J.
ColoringSpec coloring_for_angles(const std::array<double, 6>& theta, const std::array<int, 6>& mu,
                                 const Partition& p, int r, const std::array<int, 6>& parity = {});

/// theta_k = mu_k (2 pi c_k / r - pi).
std::array<double, 6> realized_angles(const ColoringSpec& spec, int r);

/// Closed-form prediction for Yhat_r: C e^{-sum mu_k l_k} / sqrt(-det(dtheta/dl) det G)
/// r^{(3|I|-6)/2} e^{(r/pi) Vol}. geom must be solved at the realized angles.
ScaledComplex cdft_rhs(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom, const QContext& ctx);

/// The same without the factor e^{(r/pi) Vol}.
cplx closed_form_prefactor(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom,
                           const QContext& ctx);

/// Sum over eps in {+-1}^I of C^eps / sqrt(-det Hess(W^eps / 4 pi i)) at the
/// critical points z^eps, with C^eps assembled from kappa. Principal square roots.
cplx hessian_form_prefactor(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom,
                            const QContext& ctx);

/// The critical point alpha*_i = pi + eps_i mu_i i l_i (I), alpha_j = 2 pi a_j / r (J).
struct StarPoint {
  AngleTuple alpha;
  XiSolution xi;
};
StarPoint star_point(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom, const QContext& ctx,
                     const std::array<int, 6>& eps);

/// Relative gap between -det Hess W^eps at z^eps (central differences) and
/// -(-1)^{3|I|/2} det(dtheta/dl) (d^2U/dxi^2)^2.
double hess_check(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom, const QContext& ctx,
                  const std::array<int, 6>& eps = {1, 1, 1, 1, 1, 1});

/// kappa at the critical point and its expression through angles and lengths.
struct KappaBridge {
  cplx kappa;
  cplx via_geometry;
};
KappaBridge kappa_bridge(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom,
                         const QContext& ctx, const std::array<int, 6>& eps = {1, 1, 1, 1, 1, 1});

/// The exponential quotient over d^2U/dxi^2 at the critical point, together
/// with sqrt(B^2 - 4AC) / 4 (the branch of sqrt(det G) it pairs with) and det G.
struct GramQuotient {
  cplx lhs;
  cplx sqrt_det;
  cplx gram_det;
};
GramQuotient gram_quotient(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom,
                           const QContext& ctx, const std::array<int, 6>& eps = {1, 1, 1, 1, 1, 1});

struct SweepOptions {
  std::array<int, 6> parity{};  // a_j mod 2 for j in J
  double max_angle = 0.5;
  int threads = 1;
  std::uint64_t budget = 1'000'000'000ULL;
  double geom_tol = 1e-12;
};

struct SweepRow {
  int r = 0;
  ColoringSpec spec;
  std::array<double, 6> theta{};  // realized
  bool skipped = false;
  std::string reason;
  ScaledComplex yhat;
  ScaledComplex rhs;
  cplx ratio{};
  double abs_ratio = 0.0;
  double arg_ratio = 0.0;
  double vol = 0.0;
  double growth_err = 0.0;
  // Yhat over the eps-sum prefactor (Hessian form) times e^{(r/pi) Vol}.
  cplx ratio_hessian_form{};
};

/// |ratio| - 1 = c1 / r + c2 / r^2 by least squares; r2 uses centered totals.
struct FitResult {
  bool ok = false;
  double c1 = 0.0;
  double c2 = 0.0;
  double r2 = 0.0;
  int points = 0;
};

struct SweepReport {
  std::array<double, 6> theta{};
  std::array<int, 6> mu{};
  Partition partition;
  SweepOptions options;
  std::vector<int> r_list;
  std::vector<SweepRow> rows;
  FitResult fit;
  int skipped = 0;
};

FitResult fit_inverse_r(const std::vector<SweepRow>& rows);

SweepReport run_sweep(const std::array<double, 6>& theta, const std::array<int, 6>& mu, const Partition& p,
                      const std::vector<int>& r_list, const SweepOptions& opt = {});

/// Parses "start:stop:step" (odd start, even step) or a comma list of odd r.
std::vector<int> parse_r_list(const std::string& text);

}  // namespace qtet
