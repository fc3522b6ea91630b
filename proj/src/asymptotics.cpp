#include "qtet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qtet/errors.hpp"

namespace qtet {

namespace {

// (-1)^x taken as e^{i pi x}.
cplx minus_one_pow(double x) { return std::polar(1.0, kPi * x); }

std::vector<std::array<int, 6>> sign_vectors(const std::vector<int>& I) {
  std::vector<std::array<int, 6>> out;
  const int n = static_cast<int>(I.size());
  for (int m = 0; m < (1 << n); ++m) {
    std::array<int, 6> eps{1, 1, 1, 1, 1, 1};
    for (int a = 0; a < n; ++a) {
      if ((m >> a) & 1) eps[I[a]] = -1;
    }
    out.push_back(eps);
  }
  return out;
}

double jac_det(const TetGeometry& g) { return g.jac.size() == 0 ? 1.0 : g.jac.determinant(); }

void check_geometry_matches(const Partition& p, const TetGeometry& g) {
  if (!(g.partition == p)) throw InputError("geometry was solved for a different partition");
}

// Hessian of W^eps in (alpha_I, xi_1, xi_2) at (alpha, xi, xi).
Eigen::MatrixXcd wcal_hessian(const PotentialJet& jet, const std::vector<int>& I) {
  const auto n = static_cast<Eigen::Index>(I.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 2, n + 2);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) h(a, b) = 2.0 * jet.hess(I[a], I[b]);
    h(a, n) = h(n, a) = jet.hess(I[a], 6);
    h(a, n + 1) = h(n + 1, a) = jet.hess(I[a], 6);
  }
  h(n, n) = h(n + 1, n + 1) = jet.hess(6, 6);
  return h;
}

}  // namespace

ColoringSpec coloring_for_angles(const std::array<double, 6>& theta, const std::array<int, 6>& mu,
                                 const Partition& p, int r, const std::array<int, 6>& parity) {
  if (r < 3 || r % 2 == 0) throw InputError("r must be odd and >= 3");
  ColoringSpec spec;
  spec.mu = mu;
  for (int k = 0; k < 6; ++k) {
    if (mu[k] != 1 && mu[k] != -1) throw InputError("mu entries must be +1 or -1");
    if (!(theta[k] > 0.0 && theta[k] < kPi)) throw InputError("target angles must lie in (0, pi)");
    const double x = r * (kPi + mu[k] * theta[k]) / (2.0 * kPi);
    int c = 0;
    if (p.in_I(k)) {
      c = static_cast<int>(std::lround(x));
    } else {
      const int par = parity[k] & 1;
      c = par + 2 * static_cast<int>(std::lround((x - par) / 2.0));
    }
    if (c < 0 || c > r - 2) {
      throw InputError("color for edge " + std::to_string(k + 1) + " leaves {0, ..., r-2} at r = " + std::to_string(r));
    }
    const bool upper = 2 * c > r;
    if ((mu[k] == 1) != upper) {
      throw InputError("color for edge " + std::to_string(k + 1) + " falls on the wrong side of r/2 at r = " +
                       std::to_string(r));
    }
    spec.colors[k] = c;
  }
  return spec;
}

std::array<double, 6> realized_angles(const ColoringSpec& spec, int r) {
  std::array<double, 6> th{};
  for (int k = 0; k < 6; ++k) th[k] = spec.mu[k] * (2.0 * kPi * spec.colors[k] / r - kPi);
  return th;
}

cplx closed_form_prefactor(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom,
                           const QContext& ctx) {
  check_geometry_matches(p, geom);
  const int nI = p.size_I();
  const double r = ctx.r();
  if (!(geom.gram_det < 0.0)) throw NumericError("Gram determinant is not negative");
  const double radicand = -jac_det(geom) * geom.gram_det;
  if (!(radicand > 0.0)) throw NumericError("-det(dtheta/dl) det G is not positive");

  const cplx c = minus_one_pow(1.5 + 0.5 * r * (nI - 2)) * static_cast<double>(n_parity(spec.colors, p)) /
                 (std::pow(2.0, 1.5 * nI - 1.0) * std::pow(kPi, nI - 2));
  double lsum = 0.0;
  for (int k = 0; k < 6; ++k) lsum += spec.mu[k] * geom.l[k];
  return c * std::exp(-lsum) / std::sqrt(radicand) * std::pow(r, 0.5 * (3 * nI - 6));
}

ScaledComplex cdft_rhs(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom, const QContext& ctx) {
  const cplx pre = closed_form_prefactor(spec, p, geom, ctx);
  return ScaledComplex::from_complex(pre) * ScaledComplex(ctx.r() / kPi * geom.vol, 0.0);
}

StarPoint star_point(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom, const QContext& ctx,
                     const std::array<int, 6>& eps) {
  check_geometry_matches(p, geom);
  StarPoint s;
  for (int k = 0; k < 6; ++k) {
    if (p.in_I(k)) {
      s.alpha[k] = cplx{kPi, eps[k] * spec.mu[k] * geom.l[k]};
    } else {
      s.alpha[k] = 2.0 * kPi * spec.colors[k] / ctx.r();
    }
  }
  s.xi = solve_xi(s.alpha);
  return s;
}

cplx hessian_form_prefactor(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom,
                            const QContext& ctx) {
  const std::vector<int> I = p.I();
  const int nI = static_cast<int>(I.size());
  const double r = ctx.r();
  const cplx curly_one = ctx.q() - 1.0 / ctx.q();
  const cplx base = static_cast<double>(n_parity(spec.colors, p)) * minus_one_pow(nI + 0.5 * r * (nI - 2)) *
                    std::pow(r, 0.5 * (nI - 2)) /
                    (std::pow(2.0, 0.5 * (3 * nI + 2)) * std::pow(kPi, 0.5 * (nI + 2)) * std::pow(curly_one, nI - 2));
  const cplx four_pi_i = 4.0 * kPi * kI;

  // Each term's square root is taken on the branch closest in phase to the
  // eps = (1, ..., 1) term; with principal roots the terms can cancel.
  cplx total{0.0, 0.0};
  cplx reference{0.0, 0.0};
  for (const auto& eps : sign_vectors(I)) {
    const StarPoint s = star_point(spec, p, geom, ctx, eps);
    const PotentialJet jet = u_jet(s.alpha, s.xi.xi);
    cplx expo = 2.0 * kappa_func(s.alpha, s.xi.xi);
    for (int i : I) {
      const double beta = 2.0 * kPi * spec.colors[i] / r;
      expo += static_cast<double>(eps[i]) * kI * (s.alpha[i] + beta);
    }
    const cplx det = wcal_hessian(jet, I).determinant() / std::pow(four_pi_i, nI + 2);
    cplx term = base * std::exp(expo) / std::sqrt(-det);
    if (reference == cplx{0.0, 0.0}) {
      reference = term;
    } else if ((term * std::conj(reference)).real() < 0.0) {
      term = -term;
    }
    total += term;
  }
  return total;
}

double hess_check(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom, const QContext& ctx,
                  const std::array<int, 6>& eps) {
  const std::vector<int> I = p.I();
  const auto n = static_cast<Eigen::Index>(I.size());
  const StarPoint s = star_point(spec, p, geom, ctx, eps);
  const double r = ctx.r();

  // W^eps on the variables (alpha_I, xi_1, xi_2).
  auto wcal = [&](const Eigen::VectorXcd& v) {
    AngleTuple a = s.alpha;
    cplx lin{0.0, 0.0};
    for (Eigen::Index k = 0; k < n; ++k) {
      a[I[k]] = v[k];
      const double beta = 2.0 * kPi * spec.colors[I[k]] / r;
      lin -= 2.0 * eps[I[k]] * (v[k] - kPi) * (beta - kPi);
    }
    return lin + u_jet(a, v[n]).value + u_jet(a, v[n + 1]).value;
  };
  Eigen::VectorXcd z0(n + 2);
  for (Eigen::Index k = 0; k < n; ++k) z0[k] = s.alpha[I[k]];
  z0[n] = z0[n + 1] = s.xi.xi;

  auto fd_hessian = [&](double h) {
    Eigen::MatrixXcd H(n + 2, n + 2);
    const cplx f0 = wcal(z0);
    for (Eigen::Index a = 0; a < n + 2; ++a) {
      Eigen::VectorXcd up = z0, dn = z0;
      up[a] += h;
      dn[a] -= h;
      H(a, a) = (wcal(up) - 2.0 * f0 + wcal(dn)) / (h * h);
      for (Eigen::Index b = a + 1; b < n + 2; ++b) {
        Eigen::VectorXcd pp = z0, pm = z0, mp = z0, mm = z0;
        pp[a] += h, pp[b] += h;
        pm[a] += h, pm[b] -= h;
        mp[a] -= h, mp[b] += h;
        mm[a] -= h, mm[b] -= h;
        H(a, b) = H(b, a) = (wcal(pp) - wcal(pm) - wcal(mp) + wcal(mm)) / (4.0 * h * h);
      }
    }
    return H;
  };
  constexpr double h = 1e-3;
  const Eigen::MatrixXcd H = (4.0 * fd_hessian(h / 2.0) - fd_hessian(h)) / 3.0;
  const cplx lhs = -H.determinant();

  const cplx uxx = u_jet(s.alpha, s.xi.xi).hess(6, 6);
  const cplx rhs = -minus_one_pow(1.5 * static_cast<double>(n)) * jac_det(geom) * uxx * uxx;
  if (std::abs(rhs) == 0.0) throw NumericError("hess_check: degenerate factored Hessian");
  return std::abs(lhs - rhs) / std::abs(rhs);
}

KappaBridge kappa_bridge(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom, const QContext& ctx,
                         const std::array<int, 6>& eps) {
  const StarPoint s = star_point(spec, p, geom, ctx, eps);
  const cplx xi = s.xi.xi;
  const HalfSums hs = half_sums(s.alpha);
  cplx v = 2.0 * kI * xi;
  for (int k = 0; k < 6; ++k) {
    v -= 0.5 * kI * s.alpha[k];
    if (p.in_I(k)) {
      v -= 0.5 * kI * static_cast<double>(eps[k] * spec.mu[k]) * geom.theta[k];
    } else {
      v -= 0.5 * spec.mu[k] * geom.l[k];
    }
  }
  for (const cplx& t : hs.tau) v -= 0.5 * std::log(1.0 - std::exp(2.0 * kI * (xi - t)));
  return {kappa_func(s.alpha, xi), v};
}

GramQuotient gram_quotient(const ColoringSpec& spec, const Partition& p, const TetGeometry& geom,
                           const QContext& ctx, const std::array<int, 6>& eps) {
  const StarPoint s = star_point(spec, p, geom, ctx, eps);
  const cplx xi = s.xi.xi;
  const HalfSums hs = half_sums(s.alpha);
  cplx expo = 4.0 * kI * xi;
  for (const cplx& a : s.alpha) expo -= kI * a;
  for (const cplx& t : hs.tau) expo -= std::log(1.0 - std::exp(2.0 * kI * (xi - t)));
  const cplx uxx = u_jet(s.alpha, xi).hess(6, 6);
  std::array<double, 6> mixed{};
  for (int k = 0; k < 6; ++k) mixed[k] = p.in_I(k) ? geom.l[k] : geom.theta[k];
  return {std::exp(expo) / uxx, s.xi.sqrt_disc / 4.0, gram_at(mixed, p).determinant()};
}

// -------------------------------------------------------------------- sweep

FitResult fit_inverse_r(const std::vector<SweepRow>& rows) {
  FitResult fit;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<const SweepRow*> used;
  for (const SweepRow& row : rows) {
    if (!row.skipped && std::isfinite(row.abs_ratio)) used.push_back(&row);
  }
  fit.points = static_cast<int>(used.size());
  if (used.size() < 3) return fit;
  X.resize(fit.points, 2);
  y.resize(fit.points);
  for (int k = 0; k < fit.points; ++k) {
    const double inv = 1.0 / used[k]->r;
    X(k, 0) = inv;
    X(k, 1) = inv * inv;
    y[k] = used[k]->abs_ratio - 1.0;
  }
  const Eigen::Vector2d c = X.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd res = y - X * c;
  const double ss_res = res.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  fit.c1 = c[0];
  fit.c2 = c[1];
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  fit.ok = std::isfinite(fit.c1) && std::isfinite(fit.c2) && std::isfinite(fit.r2);
  return fit;
}

SweepReport run_sweep(const std::array<double, 6>& theta, const std::array<int, 6>& mu, const Partition& p,
                      const std::vector<int>& r_list, const SweepOptions& opt) {
  if (r_list.empty()) throw InputError("empty r list");
  for (std::size_t k = 0; k < r_list.size(); ++k) {
    if (r_list[k] < 3 || r_list[k] % 2 == 0) throw InputError("every r must be odd and >= 3");
    if (k > 0 && r_list[k] <= r_list[k - 1]) throw InputError("r list must be increasing");
  }
  for (int k = 0; k < 6; ++k) {
    if (theta[k] > opt.max_angle) {
      throw InputError("target angle " + std::to_string(theta[k]) + " on edge " + std::to_string(k + 1) +
                       " exceeds the max-angle guard");
    }
  }

  SweepReport rep;
  rep.theta = theta;
  rep.mu = mu;
  rep.partition = p;
  rep.options = opt;
  rep.r_list = r_list;
  EnumerationOptions eo;
  eo.budget = opt.budget;
  eo.threads = opt.threads;

  for (int r : r_list) {
    SweepRow row;
    row.r = r;
    const QContext ctx(r);
    row.spec = coloring_for_angles(theta, mu, p, r, opt.parity);
    row.theta = realized_angles(row.spec, r);
    TetGeometry geom;
    try {
      geom = solve_geometry(row.theta, p, opt.geom_tol);
      row.rhs = cdft_rhs(row.spec, p, geom, ctx);
    } catch (const NumericError& e) {
      row.skipped = true;
      row.reason = e.what();
      ++rep.skipped;
      rep.rows.push_back(row);
      continue;
    }
    row.vol = geom.vol;
    row.yhat = yhat(row.spec, p, ctx, eo);
    row.ratio = ratio(row.yhat, row.rhs);
    row.abs_ratio = std::abs(row.ratio);
    row.arg_ratio = std::arg(row.ratio);
    row.growth_err = std::abs(kPi / r * row.yhat.log_mag() - row.vol);
    try {
      const ScaledComplex hess_rhs = ScaledComplex::from_complex(hessian_form_prefactor(row.spec, p, geom, ctx)) *
                                     ScaledComplex(r / kPi * geom.vol, 0.0);
      row.ratio_hessian_form = ratio(row.yhat, hess_rhs);
    } catch (const NumericError&) {
      // Diagnostic column only; the row itself stands.
      row.ratio_hessian_form = {std::nan(""), std::nan("")};
    }
    rep.rows.push_back(row);
  }
  rep.fit = fit_inverse_r(rep.rows);
  return rep;
}

std::vector<int> parse_r_list(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw InputError("bad r list '" + text + "'");
    }
    if (used != s.size()) throw InputError("bad r list '" + text + "'");
    return v;
  };
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw InputError("r range must be start:stop:step");
    const int start = to_int(parts[0]), stop = to_int(parts[1]), step = to_int(parts[2]);
    if (step <= 0 || step % 2 != 0) throw InputError("r step must be positive and even");
    if (start % 2 == 0) throw InputError("r range must start at an odd value");
    for (int r = start; r <= stop; r += step) out.push_back(r);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  }
  if (out.empty()) throw InputError("empty r list");
  for (int r : out) {
    if (r < 3 || r % 2 == 0) throw InputError("r must be odd and >= 3, got " + std::to_string(r));
  }
  return out;
}

}  // namespace qtet
