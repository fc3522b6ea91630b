// qtet: command-line front end. Exit codes: 0 ok, 1 numeric failure, 2 usage.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtet/asymptotics.hpp"
#include "qtet/dft.hpp"
#include "qtet/errors.hpp"
#include "qtet/geometry.hpp"
#include "qtet/qdilog.hpp"
#include "qtet/qkernel.hpp"
#include "qtet/report_io.hpp"

using namespace qtet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) out.push_back(tok);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  T v{};
  try {
    if constexpr (std::is_same_v<T, int>) {
      v = std::stoi(tok, &pos);
    } else {
      v = std::stod(tok, &pos);
    }
  } catch (const std::exception&) {
    throw InputError(std::string("bad number in ") + what + ": '" + tok + "'");
  }
  if (pos != tok.size()) throw InputError(std::string("bad number in ") + what + ": '" + tok + "'");
  return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const auto& tok : split_commas(text)) out.push_back(parse_number<T>(tok, what));
  return out;
}

template <typename T>
std::array<T, 6> parse_six(const std::string& text, const char* what, bool allow_broadcast) {
  auto v = parse_list<T>(text, what);
  std::array<T, 6> out{};
  if (allow_broadcast && v.size() == 1) {
    out.fill(v[0]);
    return out;
  }
  if (v.size() != 6) throw InputError(std::string(what) + " needs 6 values");
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

/// Target angles from --theta (all six) or --theta-i / --theta-j (in slot order).
std::array<double, 6> assemble_angles(const std::string& all, const std::string& on_i, const std::string& on_j,
                                      const Partition& p) {
  if (!all.empty()) {
    if (!on_i.empty() || !on_j.empty()) throw InputError("--theta excludes --theta-i/--theta-j");
    return parse_six<double>(all, "--theta", true);
  }
  std::array<double, 6> theta{};
  const auto I = p.I(), J = p.J();
  auto fill = [&](const std::string& text, const std::vector<int>& slots, const char* flag) {
    if (slots.empty()) {
      if (!text.empty()) throw InputError(std::string(flag) + " given but that side of the partition is empty");
      return;
    }
    if (text.empty()) throw InputError(std::string("missing ") + flag);
    auto v = parse_list<double>(text, flag);
    if (v.size() == 1) v.assign(slots.size(), v[0]);
    if (v.size() != slots.size()) {
      throw InputError(std::string(flag) + " needs " + std::to_string(slots.size()) + " values");
    }
    for (std::size_t k = 0; k < slots.size(); ++k) theta[static_cast<std::size_t>(slots[k])] = v[k];
  };
  fill(on_i, I, "--theta-i");
  fill(on_j, J, "--theta-j");
  return theta;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file: " + path);
  f << text;
  if (!f) throw NumericError("write failed: " + path);
}

Json colors_json(const std::array<int, 6>& c) {
  Json arr = Json::array();
  for (int v : c) arr.push_back(v);
  return arr;
}

Json header(const char* command) { return Json{{"schema", kSchemaVersion}, {"command", command}}; }

void warn_ceiling(const QContext& ctx, Json& j) {
  if (ctx.beyond_precision_ceiling()) {
    j["warning"] = "r above the double-precision ceiling";
    std::cerr << "warning: r = " << ctx.r() << " is above the double-precision ceiling\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qtet: quantum 6j symbols, hyperbolic tetrahedra and asymptotic checks"};
  app.require_subcommand(1, 1);

  // sixj
  int sixj_r = 0;
  std::string sixj_colors, sixj_method = "direct", sixj_out;
  auto* sixj_cmd = app.add_subcommand("sixj", "quantum 6j-symbol at q = e^{2 pi i / r}");
  sixj_cmd->add_option("--r", sixj_r, "odd r >= 3")->required();
  sixj_cmd->add_option("--colors", sixj_colors, "a1,...,a6")->required();
  sixj_cmd->add_option("--method", sixj_method, "direct | qdilog")->check(CLI::IsMember({"direct", "qdilog"}));
  sixj_cmd->add_option("--out", sixj_out, "output path (default stdout)");

  // dft
  int dft_r = 0;
  std::string dft_partition, dft_colors, dft_out;
  int dft_threads = 1;
  std::uint64_t dft_budget = 1'000'000'000ULL;
  auto* dft_cmd = app.add_subcommand("dft", "partial discrete Fourier transform Yhat_r");
  dft_cmd->add_option("--r", dft_r)->required();
  dft_cmd->add_option("--partition", dft_partition, "1-based edges in I, e.g. 1,2")->required();
  dft_cmd->add_option("--colors", dft_colors, "b on I, a on J, by edge")->required();
  dft_cmd->add_option("--threads", dft_threads);
  dft_cmd->add_option("--budget", dft_budget, "max evaluated 6j-symbols");
  dft_cmd->add_option("--out", dft_out);

  // tv
  int tv_r_val = 0;
  std::string tv_tri, tv_b = "0", tv_out;
  int tv_threads = 1;
  std::uint64_t tv_budget = 1'000'000'000ULL;
  auto* tv_cmd = app.add_subcommand("tv", "relative Turaev-Viro state sum");
  tv_cmd->add_option("--tri", tv_tri, "triangulation file")->required();
  tv_cmd->add_option("--r", tv_r_val)->required();
  tv_cmd->add_option("--b", tv_b, "edge colors; one value is used for every edge");
  tv_cmd->add_option("--threads", tv_threads);
  tv_cmd->add_option("--budget", tv_budget);
  tv_cmd->add_option("--out", tv_out);

  // geom
  std::string geom_partition, geom_theta, geom_theta_i, geom_theta_j, geom_out;
  double geom_tol = 1e-12;
  auto* geom_cmd = app.add_subcommand("geom", "solve the truncated tetrahedron");
  geom_cmd->add_option("--partition", geom_partition)->required();
  geom_cmd->add_option("--theta", geom_theta, "six angles, or one for all");
  geom_cmd->add_option("--theta-i", geom_theta_i, "angles on I in edge order");
  geom_cmd->add_option("--theta-j", geom_theta_j, "angles on J in edge order");
  geom_cmd->add_option("--tol", geom_tol);
  geom_cmd->add_option("--out", geom_out);

  // verify-cdft
  std::string vc_partition, vc_theta, vc_theta_i, vc_theta_j, vc_mu = "1", vc_parity = "0", vc_rs, vc_out;
  std::string vc_format = "json";
  double vc_max_angle = 0.5;
  int vc_threads = 1;
  std::uint64_t vc_budget = 1'000'000'000ULL;
  auto* vc_cmd = app.add_subcommand("verify-cdft", "sweep r and compare Yhat_r with its predicted asymptotics");
  vc_cmd->add_option("--partition", vc_partition)->required();
  vc_cmd->add_option("--theta", vc_theta);
  vc_cmd->add_option("--theta-i", vc_theta_i);
  vc_cmd->add_option("--theta-j", vc_theta_j);
  vc_cmd->add_option("--mu", vc_mu, "six signs, or one for all");
  vc_cmd->add_option("--parity", vc_parity, "a_j mod 2 on J: six values, or one for all");
  vc_cmd->add_option("--rs", vc_rs, "start:stop:step or a comma list of odd r")->required();
  vc_cmd->add_option("--out", vc_out);
  vc_cmd->add_option("--format", vc_format)->check(CLI::IsMember({"json", "csv"}));
  vc_cmd->add_option("--max-angle", vc_max_angle);
  vc_cmd->add_option("--threads", vc_threads);
  vc_cmd->add_option("--budget", vc_budget);

  // phi
  int phi_r_val = 0;
  double phi_z = 0.0, phi_zi = 0.0;
  ContourSpec phi_spec;
  std::string phi_out;
  auto* phi_cmd = app.add_subcommand("phi", "quantum dilogarithm phi_r(z)");
  phi_cmd->add_option("--r", phi_r_val)->required();
  phi_cmd->add_option("--z", phi_z, "real part")->required();
  phi_cmd->add_option("--zi", phi_zi, "imaginary part");
  phi_cmd->add_option("--eps", phi_spec.epsilon, "contour radius around 0");
  phi_cmd->add_option("--tol", phi_spec.abs_tol, "absolute tolerance");
  phi_cmd->add_option("--truncation", phi_spec.truncation, "ray cutoff (0: automatic)");
  phi_cmd->add_option("--out", phi_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sixj_cmd) {
      const QContext ctx(sixj_r);
      const auto colors = parse_six<int>(sixj_colors, "--colors", false);
      if (!is_admissible_six(colors, ctx)) throw InputError("colors are not r-admissible");
      Json j = header("sixj");
      j["r"] = sixj_r;
      j["colors"] = colors_json(colors);
      j["method"] = sixj_method;
      if (sixj_method == "direct") {
        const ScaledComplex v = sixj_scaled(colors, ctx);
        j["value"] = complex_json(v.to_complex());
        j["log_abs"] = v.log_mag();
      } else {
        if (!is_hyperideal_colors(colors, ctx)) throw InputError("qdilog method needs hyperideal colors");
        const cplx v = sixj_via_qdilog(colors, ctx, ContourSpec{});
        j["value"] = complex_json(v);
        j["log_abs"] = std::log(std::abs(v));
      }
      warn_ceiling(ctx, j);
      write_output(dump_json(j), sixj_out);
    } else if (*dft_cmd) {
      const QContext ctx(dft_r);
      const Partition p = Partition::parse(dft_partition);
      ColoringSpec spec;
      spec.colors = parse_six<int>(dft_colors, "--colors", false);
      const ScaledComplex v = yhat(spec, p, ctx, {dft_budget, dft_threads});
      Json j = header("dft");
      j["r"] = dft_r;
      j["partition"] = p.to_string();
      j["colors"] = colors_json(spec.colors);
      j["yhat"] = scaled_json(v);
      j["n_parity"] = n_parity(spec.colors, p);
      warn_ceiling(ctx, j);
      write_output(dump_json(j), dft_out);
    } else if (*tv_cmd) {
      const QContext ctx(tv_r_val);
      const Triangulation tri = load_triangulation(tv_tri);
      auto b = parse_list<int>(tv_b, "--b");
      if (b.size() == 1) b.assign(static_cast<std::size_t>(tri.num_edges), b[0]);
      const ScaledComplex v = tv_r(tri, b, ctx, {tv_budget, tv_threads});
      Json j = header("tv");
      j["r"] = tv_r_val;
      j["edges"] = tri.num_edges;
      j["tetrahedra"] = tri.tets.size();
      Json bj = Json::array();
      for (int x : b) bj.push_back(x);
      j["b"] = bj;
      j["value"] = scaled_json(v);
      warn_ceiling(ctx, j);
      write_output(dump_json(j), tv_out);
    } else if (*geom_cmd) {
      const Partition p = Partition::parse(geom_partition);
      const auto theta = assemble_angles(geom_theta, geom_theta_i, geom_theta_j, p);
      const TetGeometry g = solve_geometry(theta, p, geom_tol);
      Json j = header("geom");
      const Json body = geometry_json(g);
      for (const auto& [k, v] : body.items()) j[k] = v;
      write_output(dump_json(j), geom_out);
    } else if (*vc_cmd) {
      const Partition p = Partition::parse(vc_partition);
      const auto theta = assemble_angles(vc_theta, vc_theta_i, vc_theta_j, p);
      const auto mu = parse_six<int>(vc_mu, "--mu", true);
      SweepOptions opt;
      opt.parity = parse_six<int>(vc_parity, "--parity", true);
      opt.max_angle = vc_max_angle;
      opt.threads = vc_threads;
      opt.budget = vc_budget;
      const auto rs = parse_r_list(vc_rs);
      if (rs.size() < 3) throw InputError("--rs needs at least 3 values for the 1/r fit");
      const SweepReport rep = run_sweep(theta, mu, p, rs, opt);
      write_output(vc_format == "csv" ? sweep_csv(rep) : dump_json(sweep_json(rep)), vc_out);
      if (rep.skipped > 0) std::cerr << "warning: " << rep.skipped << " row(s) skipped\n";
      // Skipped rows are reported, not fatal; a fit that fails on rows that
      // were all evaluated is a numeric failure.
      if (!rep.fit.ok && rep.skipped == 0) {
        std::cerr << "error: fit failed (" << rep.fit.points << " usable rows)\n";
        return kExitNumeric;
      }
      if (!rep.fit.ok) std::cerr << "warning: too few usable rows for the fit\n";
    } else if (*phi_cmd) {
      phi_spec.validate();
      const QContext ctx(phi_r_val);
      const cplx z{phi_z, phi_zi};
      const cplx v = phi_r_extended(z, ctx, phi_spec);
      Json j = header("phi");
      j["r"] = phi_r_val;
      j["z"] = complex_json(z);
      j["value"] = complex_json(v);
      const double dist = phi_r_pole_distance(z, ctx);
      if (std::isfinite(dist)) j["pole_distance"] = dist;
      write_output(dump_json(j), phi_out);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const BudgetExceeded& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
