#include "qtet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qtet/errors.hpp"
#include "qtet/qdilog.hpp"
#include "qtet/qkernel.hpp"

namespace qtet {

// ---------------------------------------------------------------- Partition

Partition Partition::from_mask(std::uint8_t mask) {
  if (mask >= 64) throw InputError("partition mask has bits beyond six edges");
  Partition p;
  p.mask_ = mask;
  return p;
}

Partition Partition::from_indices(const std::vector<int>& one_based) {
  std::uint8_t mask = 0;
  for (int k : one_based) {
    if (k < 1 || k > 6) throw InputError("partition index " + std::to_string(k) + " not in 1..6");
    const auto bit = static_cast<std::uint8_t>(1U << (k - 1));
    if (mask & bit) throw InputError("partition index " + std::to_string(k) + " repeated");
    mask |= bit;
  }
  return from_mask(mask);
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> idx;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InputError("bad partition entry '" + tok + "'");
    }
    if (used != tok.size()) throw InputError("bad partition entry '" + tok + "'");
    idx.push_back(v);
  }
  return from_indices(idx);
}

std::vector<int> Partition::I() const {
  std::vector<int> out;
  for (int k = 0; k < 6; ++k) {
    if (in_I(k)) out.push_back(k);
  }
  return out;
}

std::vector<int> Partition::J() const {
  std::vector<int> out;
  for (int k = 0; k < 6; ++k) {
    if (!in_I(k)) out.push_back(k);
  }
  return out;
}

int Partition::size_I() const { return static_cast<int>(I().size()); }

std::string Partition::to_string() const {
  std::string s;
  for (int k : I()) {
    if (!s.empty()) s += ",";
    s += std::to_string(k + 1);
  }
  return s;
}

// ------------------------------------------------------------ basic objects

HalfSums half_sums(const AngleTuple& a) {
  HalfSums h{};
  for (int f = 0; f < 4; ++f) {
    const auto& s = kFaceSlots[f];
    h.tau[f] = (a[s[0]] + a[s[1]] + a[s[2]]) / 2.0;
  }
  for (int j = 0; j < 3; ++j) {
    const auto& s = kQuadSlots[j];
    h.eta[j] = (a[s[0]] + a[s[1]] + a[s[2]] + a[s[3]]) / 2.0;
  }
  return h;
}

namespace {

// Entries (row, col) -> edge slot for the 4x4 Gram layout.
Mat4c gram_layout(const std::array<cplx, 6>& off) {
  Mat4c g;
  g << 1.0, off[0], off[1], off[5],
       off[0], 1.0, off[2], off[4],
       off[1], off[2], 1.0, off[3],
       off[5], off[4], off[3], 1.0;
  return g;
}

}  // namespace

Mat4c gram(const std::array<cplx, 6>& z) {
  std::array<cplx, 6> off;
  for (int k = 0; k < 6; ++k) off[k] = -std::cosh(z[k]);
  return gram_layout(off);
}

Mat4c cos_gram(const AngleTuple& alpha) {
  std::array<cplx, 6> off;
  for (int k = 0; k < 6; ++k) off[k] = std::cos(alpha[k]);
  return gram_layout(off);
}

QuadCoeffs quad_coeffs(const AngleTuple& alpha) {
  std::array<cplx, 6> u;
  for (int k = 0; k < 6; ++k) u[k] = std::exp(kI * alpha[k]);
  const auto& [u1, u2, u3, u4, u5, u6] = u;
  auto poly = [](cplx v1, cplx v2, cplx v3, cplx v4, cplx v5, cplx v6) {
    return v1 * v4 + v2 * v5 + v3 * v6 - v1 * v2 * v6 - v1 * v3 * v5 - v2 * v3 * v4 - v4 * v5 * v6 +
           v1 * v2 * v3 * v4 * v5 * v6;
  };
  auto m = [](cplx v) { return v - 1.0 / v; };
  QuadCoeffs c;
  c.A = poly(u1, u2, u3, u4, u5, u6);
  c.B = -m(u1) * m(u4) - m(u2) * m(u5) - m(u3) * m(u6);
  c.C = poly(1.0 / u1, 1.0 / u2, 1.0 / u3, 1.0 / u4, 1.0 / u5, 1.0 / u6);
  return c;
}

bool is_hyperideal_angles(const AngleTuple& alpha, double tol) {
  for (const auto& s : kFaceSlots) {
    const double x = alpha[s[0]].real(), y = alpha[s[1]].real(), z = alpha[s[2]].real();
    for (double d : {x + y - z, y + z - x, z + x - y}) {
      if (d < -tol || d > 2.0 * kPi + tol) return false;
    }
    const double sum = x + y + z;
    if (sum < 2.0 * kPi - tol || sum > 4.0 * kPi + tol) return false;
  }
  return true;
}

bool in_domain(const AngleTuple& alpha, cplx xi, double tol) {
  if (!is_hyperideal_angles(alpha, tol)) return false;
  const HalfSums h = half_sums(alpha);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = 2.0 * kPi;
  for (const cplx& t : h.tau) lo = std::max(lo, t.real());
  for (const cplx& e : h.eta) hi = std::min(hi, e.real());
  return xi.real() >= lo - tol && xi.real() <= hi + tol;
}

// ---------------------------------------------------------------- potential

namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;

// A real-affine form lambda . (alpha, xi) + c0.
struct Affine {
  Vec7 lambda = Vec7::Zero();
  double c0 = 0.0;
  cplx eval(const AngleTuple& a, cplx xi) const {
    cplx s = c0;
    for (int k = 0; k < 6; ++k) s += lambda[k] * a[k];
    return s + lambda[6] * xi;
  }
};

struct Term {
  double coef;
  Affine form;
};

struct PotentialTerms {
  std::vector<Term> quad;   // coef * form^2
  std::vector<Term> li2;    // coef * Li2(exp(2 i form))
  std::vector<Term> logs;   // coef * log(1 - exp(2 i form)), for kappa
};

Affine tau_form(int f) {
  Affine a;
  for (int s : kFaceSlots[f]) a.lambda[s] = 0.5;
  return a;
}

Affine eta_form(int j) {
  Affine a;
  for (int s : kQuadSlots[j]) a.lambda[s] = 0.5;
  return a;
}

Affine xi_form() {
  Affine a;
  a.lambda[6] = 1.0;
  return a;
}

Affine diff(Affine x, const Affine& y) {
  x.lambda -= y.lambda;
  x.c0 -= y.c0;
  return x;
}

Affine shift(Affine x, double c) {
  x.c0 += c;
  return x;
}

const PotentialTerms& terms() {
  static const PotentialTerms t = [] {
    PotentialTerms p;
    const Affine xi = xi_form();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Affine et = diff(eta_form(j), tau_form(i));
        p.quad.push_back({0.5, et});
        p.li2.push_back({-0.5, et});
        p.logs.push_back({0.25, et});
      }
    }
    for (int i = 0; i < 4; ++i) {
      const Affine tp = shift(tau_form(i), -kPi);
      p.quad.push_back({-0.5, tp});
      p.li2.push_back({0.5, tp});
      p.logs.push_back({-0.75, tp});
    }
    const Affine xp = shift(xi, -kPi);
    p.quad.push_back({1.0, xp});
    p.li2.push_back({-1.0, xp});
    p.logs.push_back({1.5, xp});
    for (int i = 0; i < 4; ++i) {
      const Affine xt = diff(xi, tau_form(i));
      p.quad.push_back({-1.0, xt});
      p.li2.push_back({1.0, xt});
      p.logs.push_back({-0.5, xt});
    }
    for (int j = 0; j < 3; ++j) {
      const Affine ex = diff(eta_form(j), xi);
      p.quad.push_back({-1.0, ex});
      p.li2.push_back({1.0, ex});
      p.logs.push_back({-0.5, ex});
    }
    return p;
  }();
  return t;
}

void require_domain(const AngleTuple& alpha, cplx xi) {
  if (!in_domain(alpha, xi)) throw DomainError("(alpha, xi) lies outside the analytic domain of U");
}

}  // namespace

PotentialJet u_jet(const AngleTuple& alpha, cplx xi) {
  const PotentialTerms& t = terms();
  PotentialJet jet;
  jet.value = kPi * kPi - 2.0 * (kPi * kPi / 6.0);
  jet.grad.setZero();
  jet.hess.setZero();
  for (const Term& q : t.quad) {
    const cplx v = q.form.eval(alpha, xi);
    const Vec7& l = q.form.lambda;
    jet.value += q.coef * v * v;
    jet.grad += (2.0 * q.coef * v) * l.cast<cplx>();
    jet.hess += (2.0 * q.coef) * (l * l.transpose()).cast<cplx>();
  }
  for (const Term& q : t.li2) {
    const cplx w = q.form.eval(alpha, xi);
    const cplx e = std::exp(2.0 * kI * w);
    const Vec7& l = q.form.lambda;
    jet.value += q.coef * li2(e);
    // d/dw Li2(e^{2iw}) = -2i log(1 - e^{2iw}); second derivative -4 e / (1 - e).
    jet.grad += (q.coef * -2.0 * kI * std::log(1.0 - e)) * l.cast<cplx>();
    jet.hess += (q.coef * -4.0 * e / (1.0 - e)) * (l * l.transpose()).cast<cplx>();
  }
  return jet;
}

cplx u_func(const AngleTuple& alpha, cplx xi) {
  require_domain(alpha, xi);
  return u_jet(alpha, xi).value;
}

cplx u_dxi(const AngleTuple& alpha, cplx xi) {
  require_domain(alpha, xi);
  return u_jet(alpha, xi).grad[6];
}

cplx u_dxi2(const AngleTuple& alpha, cplx xi) {
  require_domain(alpha, xi);
  return u_jet(alpha, xi).hess(6, 6);
}

cplx u_dalpha(const AngleTuple& alpha, cplx xi, int k) {
  if (k < 0 || k > 5) throw InputError("u_dalpha: index must be 0..5");
  require_domain(alpha, xi);
  return u_jet(alpha, xi).grad[k];
}

cplx kappa_func(const AngleTuple& alpha, cplx xi) {
  require_domain(alpha, xi);
  const HalfSums h = half_sums(alpha);
  cplx k = -kI * xi - 1.5 * kI * kPi;
  for (const cplx& t : h.tau) k += 0.5 * kI * t;
  for (const Term& q : terms().logs) {
    const cplx one_minus = 1.0 - std::exp(2.0 * kI * q.form.eval(alpha, xi));
    if (std::abs(one_minus) == 0.0) throw NumericError("kappa: logarithm of zero");
    k += q.coef * std::log(one_minus);
  }
  return k;
}

// ----------------------------------------------------------- critical point

XiSolution solve_xi(const AngleTuple& alpha) {
  const QuadCoeffs c = quad_coeffs(alpha);
  const double scale = std::max({1.0, std::abs(c.A), std::abs(c.B), std::abs(c.C)});
  if (std::abs(c.A) < 1e-14 * scale) throw NumericError("xi_of_alpha: leading coefficient A vanishes");
  const cplx disc = c.B * c.B - 4.0 * c.A * c.C;
  if (std::abs(disc) < 1e-13 * scale * scale) throw NumericError("xi_of_alpha: double root (discriminant vanishes)");
  const cplx sd = std::sqrt(disc);

  XiSolution best{};
  double best_im = -std::numeric_limits<double>::infinity();
  int count = 0;
  for (int sgn : {1, -1}) {
    const cplx z = (-c.B + static_cast<double>(sgn) * sd) / (2.0 * c.A);
    const cplx zo = (-c.B - static_cast<double>(sgn) * sd) / (2.0 * c.A);
    const cplx xi0 = 0.5 * kI * std::log(z);
    for (int k = -3; k <= 4; ++k) {
      const cplx xi = xi0 + static_cast<double>(k) * kPi;
      if (xi.real() < kPi - 1e-12 || xi.real() > 2.0 * kPi + 1e-12) continue;
      if (!in_domain(alpha, xi)) continue;
      ++count;
      const double im = u_jet(alpha, xi).value.imag();
      if (im > best_im) {
        best_im = im;
        best = {xi, z, zo, static_cast<double>(sgn) * sd, c, 0};
      }
    }
  }
  if (count == 0) throw DomainError("xi_of_alpha: no critical point lies in the analytic domain");
  best.candidates = count;
  return best;
}

cplx xi_of_alpha(const AngleTuple& alpha) { return solve_xi(alpha).xi; }

cplx w_func(const AngleTuple& alpha) {
  const XiSolution s = solve_xi(alpha);
  return u_jet(alpha, s.xi).value;
}

// ----------------------------------------------------------------- geometry

AngleTuple geometric_alpha(const std::array<double, 6>& mixed, const Partition& p) {
  AngleTuple a;
  for (int k = 0; k < 6; ++k) a[k] = p.in_I(k) ? cplx{kPi, mixed[k]} : cplx{kPi - mixed[k], 0.0};
  return a;
}

Mat4c gram_at(const std::array<double, 6>& mixed, const Partition& p) {
  std::array<cplx, 6> z;
  for (int k = 0; k < 6; ++k) z[k] = p.in_I(k) ? cplx{mixed[k], 0.0} : cplx{0.0, mixed[k]};
  return gram(z);
}

namespace {

double checked_real(cplx v, const char* what) {
  if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real()))) {
    throw NumericError(std::string(what) + " is not real (outside the geometric region)");
  }
  return v.real();
}

}  // namespace

double covolume(const std::array<double, 6>& mixed, const Partition& p) {
  const cplx w = w_func(geometric_alpha(mixed, p));
  return checked_real((w - 2.0 * kPi * kPi) / (2.0 * kI), "co-volume");
}

TetGeometry geometry_at(const std::array<double, 6>& mixed, const Partition& p) {
  TetGeometry g;
  g.partition = p;
  g.alpha = geometric_alpha(mixed, p);
  const XiSolution s = solve_xi(g.alpha);
  g.xi = s.xi;
  const PotentialJet jet = u_jet(g.alpha, g.xi);
  g.cov = checked_real((jet.value - 2.0 * kPi * kPi) / (2.0 * kI), "co-volume");

  const std::vector<int> I = p.I();
  double correction = 0.0;
  for (int k = 0; k < 6; ++k) {
    if (p.in_I(k)) {
      g.l[k] = mixed[k];
      g.theta[k] = checked_real(jet.grad[k], "dihedral angle");
      correction += g.theta[k] * g.l[k];
    } else {
      g.theta[k] = mixed[k];
      g.l[k] = checked_real(-kI * jet.grad[k], "edge length");
    }
  }
  g.vol = g.cov - 0.5 * correction;

  // Implicit differentiation through xi(alpha): the reduced Hessian
  // H_aa - H_axi H_xia / H_xixi, times d alpha_i / d l_i = i.
  const cplx hxx = jet.hess(6, 6);
  const auto n = static_cast<Eigen::Index>(I.size());
  g.jac.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const int i = I[a], k = I[b];
      const cplx red = jet.hess(i, k) - jet.hess(i, 6) * jet.hess(6, k) / hxx;
      g.jac(a, b) = (kI * red).real();
    }
  }
  g.gram_det = gram_at(mixed, p).determinant().real();
  return g;
}

Eigen::MatrixXd angle_jacobian_fd(const std::array<double, 6>& mixed, const Partition& p, double h) {
  const std::vector<int> I = p.I();
  const auto n = static_cast<Eigen::Index>(I.size());
  Eigen::MatrixXd jac(n, n);
  auto angles = [&](const std::array<double, 6>& m) { return geometry_at(m, p).theta; };
  for (Eigen::Index b = 0; b < n; ++b) {
    auto central = [&](double step) {
      std::array<double, 6> up = mixed, dn = mixed;
      up[I[b]] += step;
      dn[I[b]] -= step;
      const auto tu = angles(up), td = angles(dn);
      Eigen::VectorXd d(n);
      for (Eigen::Index a = 0; a < n; ++a) d[a] = (tu[I[a]] - td[I[a]]) / (2.0 * step);
      return d;
    };
    jac.col(b) = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  }
  return jac;
}

TetGeometry solve_geometry(const std::array<double, 6>& theta, const Partition& p, double tol) {
  for (double t : theta) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("dihedral angles must be finite and nonnegative");
  }
  const std::vector<int> I = p.I();
  std::array<double, 6> mixed = theta;
  for (int i : I) mixed[i] = 0.5;
  if (I.empty()) return geometry_at(mixed, p);

  const auto n = static_cast<Eigen::Index>(I.size());
  auto residual = [&](const TetGeometry& g) {
    Eigen::VectorXd r(n);
    for (Eigen::Index a = 0; a < n; ++a) r[a] = g.theta[I[a]] - theta[I[a]];
    return r;
  };

  TetGeometry g = geometry_at(mixed, p);
  Eigen::VectorXd res = residual(g);
  for (int iter = 1; iter <= 100; ++iter) {
    if (res.lpNorm<Eigen::Infinity>() < tol) {
      g.iterations = iter - 1;
      return g;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g.jac);
    if (!lu.isInvertible()) throw NumericError("solve_geometry: singular angle-length Jacobian");
    const Eigen::VectorXd step = lu.solve(-res);

    double damping = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40 && !accepted; ++halving, damping *= 0.5) {
      std::array<double, 6> trial = mixed;
      bool positive = true;
      for (Eigen::Index a = 0; a < n; ++a) {
        trial[I[a]] += damping * step[a];
        positive = positive && trial[I[a]] > 0.0;
      }
      if (!positive) continue;
      try {
        TetGeometry gt = geometry_at(trial, p);
        Eigen::VectorXd rt = residual(gt);
        if (rt.lpNorm<Eigen::Infinity>() < res.lpNorm<Eigen::Infinity>()) {
          mixed = trial;
          g = std::move(gt);
          res = std::move(rt);
          accepted = true;
        }
      } catch (const NumericError&) {
        // step left the region where the geometry is defined; shorten it
      }
    }
    if (!accepted) throw NumericError("solve_geometry: damped Newton step failed to reduce the residual");
  }
  if (res.lpNorm<Eigen::Infinity>() < tol) {
    g.iterations = 100;
    return g;
  }
  throw NumericError("solve_geometry: no convergence in 100 iterations");
}

}  // namespace qtet
