#include "qtet/dft.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "parallel.hpp"
#include "qtet/errors.hpp"

namespace qtet {

int effective_threads(int requested) {
  int n = std::max(1, requested);
  if (const char* env = std::getenv("QTET_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

cplx h_kernel(int a, int b, const QContext& ctx) {
  const int r = ctx.r();
  const long long n = static_cast<long long>(a + 1) * (b + 1);
  const double v = std::sin(2.0 * kPi * static_cast<double>(n % r) / r) / std::sin(2.0 * kPi / r);
  return {((a + b) % 2 == 0) ? v : -v, 0.0};
}

namespace {

void check_colors(const std::array<int, 6>& c, const QContext& ctx) {
  for (int v : c) {
    if (v < 0 || v > ctx.r() - 2) {
      throw InputError("color " + std::to_string(v) + " outside {0, ..., r-2}");
    }
  }
}

class BudgetCounter {
 public:
  explicit BudgetCounter(std::uint64_t budget) : budget_(budget) {}
  void charge(std::uint64_t n) {
    if (count_.fetch_add(n) + n > budget_) {
      throw BudgetExceeded("enumeration budget of " + std::to_string(budget_) + " 6j-symbols exceeded");
    }
  }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> count_{0};
};

ScaledSum reduce_in_order(const std::vector<ScaledSum>& parts) {
  ScaledSum total;
  for (const ScaledSum& s : parts) total.add(s);
  return total;
}

}  // namespace

ScaledComplex yhat(const ColoringSpec& spec, const Partition& p, const QContext& ctx,
                   const EnumerationOptions& opt) {
  check_colors(spec.colors, ctx);
  const std::vector<int> I = p.I();
  const int hi = ctx.r() - 2;

  if (I.empty()) {
    if (!is_admissible_six(spec.colors, ctx)) return ScaledComplex::zero();
    const ScaledComplex s = sixj_scaled(spec.colors, ctx);
    return s * s;
  }

  // faces_at[d]: faces completed when slot I[d] is assigned.
  std::vector<std::vector<int>> faces_at(I.size());
  for (int f = 0; f < 4; ++f) {
    int last = -1;
    for (int s : kFaceSlots[f]) {
      const auto it = std::find(I.begin(), I.end(), s);
      if (it != I.end()) last = std::max(last, static_cast<int>(it - I.begin()));
    }
    if (last < 0) {
      const auto& s = kFaceSlots[f];
      if (!is_admissible_triple(spec.colors[s[0]], spec.colors[s[1]], spec.colors[s[2]], ctx)) {
        return ScaledComplex::zero();
      }
    } else {
      faces_at[last].push_back(f);
    }
  }

  BudgetCounter budget(opt.budget);
  std::vector<ScaledSum> partial(hi + 1);

  auto run_outer = [&](int first) {
    ColorTuple6 a = spec.colors;
    ScaledSum& acc = partial[first];
    std::function<void(std::size_t, double)> rec = [&](std::size_t d, double hprod) {
      const int slot = I[d];
      const int lo = (d == 0) ? first : 0;
      const int top = (d == 0) ? first : hi;
      for (int v = lo; v <= top; ++v) {
        a[slot] = v;
        bool ok = true;
        for (int f : faces_at[d]) {
          const auto& s = kFaceSlots[f];
          if (!is_admissible_triple(a[s[0]], a[s[1]], a[s[2]], ctx)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const double h = hprod * h_kernel(v, spec.colors[slot], ctx).real();
        if (d + 1 < I.size()) {
          rec(d + 1, h);
          continue;
        }
        if (h == 0.0) continue;
        budget.charge(1);
        const ScaledComplex s = sixj_scaled(a, ctx);
        acc.add(ScaledComplex::from_real(h) * s * s);
      }
    };
    rec(0, 1.0);
  };

  detail::parallel_for(hi + 1, effective_threads(opt.threads), run_outer);
  return reduce_in_order(partial).value();
}

int n_parity(const std::array<int, 6>& colors, const Partition& p) {
  const QContext ctx3(3);
  int count = 0;
  for (int m = 0; m < 64; ++m) {
    ColorTuple6 c;
    bool match = true;
    for (int k = 0; k < 6; ++k) {
      c[k] = (m >> k) & 1;
      if (!p.in_I(k) && ((colors[k] - c[k]) % 2 != 0)) match = false;
    }
    if (match && is_admissible_six(c, ctx3)) ++count;
  }
  return count;
}

// ------------------------------------------------------------ triangulations

void Triangulation::validate() const {
  if (num_edges <= 0) throw InputError("triangulation needs at least one edge");
  std::vector<bool> used(num_edges, false);
  for (const auto& t : tets) {
    for (int e : t) {
      if (e < 0 || e >= num_edges) throw InputError("edge index " + std::to_string(e) + " out of range");
      used[e] = true;
    }
  }
  for (int e = 0; e < num_edges; ++e) {
    if (!used[e]) throw InputError("edge " + std::to_string(e) + " is not used by any tetrahedron");
  }
}

Triangulation parse_triangulation(std::istream& in) {
  Triangulation tri;
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!have_header) {
      if (key != "edges" || !(ls >> tri.num_edges)) throw InputError(where + "expected 'edges N'");
      have_header = true;
    } else if (key == "tet") {
      std::array<int, 6> t{};
      for (int& e : t) {
        if (!(ls >> e)) throw InputError(where + "a tetrahedron needs six edge indices");
      }
      tri.tets.push_back(t);
    } else {
      throw InputError(where + "unknown record '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) throw InputError(where + "trailing token '" + extra + "'");
  }
  if (!have_header) throw InputError("empty triangulation file");
  tri.validate();
  return tri;
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open triangulation file '" + path + "'");
  return parse_triangulation(f);
}

ScaledComplex tv_r(const Triangulation& tri, const std::vector<int>& b, const QContext& ctx,
                   const EnumerationOptions& opt) {
  tri.validate();
  if (static_cast<int>(b.size()) != tri.num_edges) throw InputError("need one color b per edge");
  const int hi = ctx.r() - 2;
  for (int v : b) {
    if (v < 0 || v > hi) throw InputError("color b outside {0, ..., r-2}");
  }

  // Each face is checked as soon as its highest-numbered edge is colored.
  const int n = tri.num_edges;
  std::vector<std::vector<std::array<int, 3>>> faces_at(n);
  for (const auto& t : tri.tets) {
    for (const auto& s : kFaceSlots) {
      std::array<int, 3> face{t[s[0]], t[s[1]], t[s[2]]};
      faces_at[*std::max_element(face.begin(), face.end())].push_back(face);
    }
  }

  BudgetCounter budget(opt.budget);
  std::vector<ScaledSum> partial(hi + 1);
  const auto n_tets = static_cast<std::uint64_t>(tri.tets.size());

  auto run_outer = [&](int first) {
    std::vector<int> a(n, 0);
    ScaledSum& acc = partial[first];
    std::function<void(int, double)> rec = [&](int e, double hprod) {
      const int lo = (e == 0) ? first : 0;
      const int top = (e == 0) ? first : hi;
      for (int v = lo; v <= top; ++v) {
        a[e] = v;
        bool ok = true;
        for (const auto& f : faces_at[e]) {
          if (!is_admissible_triple(a[f[0]], a[f[1]], a[f[2]], ctx)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const double h = hprod * h_kernel(v, b[e], ctx).real();
        if (e + 1 < n) {
          rec(e + 1, h);
          continue;
        }
        if (h == 0.0) continue;
        budget.charge(n_tets);
        ScaledComplex term = ScaledComplex::from_real(h);
        for (const auto& t : tri.tets) {
          term *= sixj_scaled({a[t[0]], a[t[1]], a[t[2]], a[t[3]], a[t[4]], a[t[5]]}, ctx);
        }
        acc.add(term);
      }
    };
    rec(0, 1.0);
  };

  detail::parallel_for(hi + 1, effective_threads(opt.threads), run_outer);
  return reduce_in_order(partial).value();
}

}  // namespace qtet
