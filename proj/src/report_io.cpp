#include "qtet/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qtet {

std::string format_float(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

namespace {

void emit(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_float(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        out += "[";
        bool first = true;
        for (const auto& v : j) {
          if (!first) out += ", ";
          first = false;
          emit(v, indent, depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        emit(v, indent, depth + 1, out);
      }
      out += nl;
      out += close_pad + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [key, v] : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(key).dump() + (indent > 0 ? ": " : ":");
        emit(v, indent, depth + 1, out);
      }
      out += nl;
      out += close_pad + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

Json angles_json(const std::array<double, 6>& a) {
  Json arr = Json::array();
  for (double v : a) arr.push_back(v);
  return arr;
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  out += "\n";
  return out;
}

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json scaled_json(const ScaledComplex& z) {
  const cplx v = z.to_complex();
  Json j{{"log_abs", z.log_mag()}, {"arg", z.phase()}};
  j["re"] = v.real();
  j["im"] = v.imag();
  return j;
}

Json geometry_json(const TetGeometry& g) {
  Json jac = Json::array();
  for (Eigen::Index a = 0; a < g.jac.rows(); ++a) {
    Json row = Json::array();
    for (Eigen::Index b = 0; b < g.jac.cols(); ++b) row.push_back(g.jac(a, b));
    jac.push_back(row);
  }
  return Json{{"partition", g.partition.to_string()},
              {"l", angles_json(g.l)},
              {"theta", angles_json(g.theta)},
              {"vol", g.vol},
              {"cov", g.cov},
              {"gram_det", g.gram_det},
              {"jac", jac},
              {"xi", complex_json(g.xi)},
              {"iterations", g.iterations}};
}

Json sweep_json(const SweepReport& rep) {
  Json mu = Json::array(), parity = Json::array(), rs = Json::array();
  for (int v : rep.mu) mu.push_back(v);
  for (int v : rep.options.parity) parity.push_back(v);
  for (int r : rep.r_list) rs.push_back(r);
  Json params{{"theta", angles_json(rep.theta)},
              {"mu", mu},
              {"partition", rep.partition.to_string()},
              {"r_list", rs},
              {"parity", parity},
              {"max_angle", rep.options.max_angle}};
  Json rows = Json::array();
  for (const SweepRow& row : rep.rows) {
    Json colors = Json::array();
    for (int c : row.spec.colors) colors.push_back(c);
    Json jr{{"r", row.r}, {"colors", colors}, {"theta", angles_json(row.theta)}, {"skipped", row.skipped}};
    if (row.skipped) {
      jr["reason"] = row.reason;
    } else {
      jr["yhat"] = scaled_json(row.yhat);
      jr["rhs"] = scaled_json(row.rhs);
      jr["ratio"] = complex_json(row.ratio);
      jr["abs_ratio"] = row.abs_ratio;
      jr["arg_ratio"] = row.arg_ratio;
      jr["growth_err"] = row.growth_err;
      jr["vol"] = row.vol;
      jr["ratio_hessian_form"] = complex_json(row.ratio_hessian_form);
    }
    rows.push_back(jr);
  }
  Json fit{{"ok", rep.fit.ok}, {"c1", rep.fit.c1}, {"c2", rep.fit.c2}, {"r2", rep.fit.r2}, {"points", rep.fit.points}};
  return Json{{"schema", kSchemaVersion}, {"params", params}, {"rows", rows}, {"fit", fit}, {"skipped", rep.skipped}};
}

std::string sweep_csv(const SweepReport& rep) {
  std::ostringstream os;
  os << "r,re_yhat,im_yhat,re_rhs,im_rhs,abs_ratio,arg_ratio,growth_err,"
        "log_abs_yhat,log_abs_rhs,vol,abs_ratio_hessian_form,skipped\n";
  auto f = [](double x) { return std::isfinite(x) ? format_float(x) : std::string(std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf")); };
  for (const SweepRow& row : rep.rows) {
    if (row.skipped) {
      os << row.r << ",,,,,,,,,,,,1\n";
      continue;
    }
    const cplx y = row.yhat.to_complex(), h = row.rhs.to_complex();
    os << row.r << ',' << f(y.real()) << ',' << f(y.imag()) << ',' << f(h.real()) << ',' << f(h.imag()) << ','
       << f(row.abs_ratio) << ',' << f(row.arg_ratio) << ',' << f(row.growth_err) << ',' << f(row.yhat.log_mag())
       << ',' << f(row.rhs.log_mag()) << ',' << f(row.vol) << ',' << f(std::abs(row.ratio_hessian_form)) << ",0\n";
  }
  return os.str();
}

}  // namespace qtet
