#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtet/geometry.hpp"
#include "qtet/qkernel.hpp"
#include "qtet/scaled_complex.hpp"

namespace qtet {

/// Colors b_i on I and a_j on J (one array indexed by edge slot), plus the
/// side of r/2 each sequence stays on.
struct ColoringSpec {
  std::array<int, 6> colors{};
  std::array<int, 6> mu{1, 1, 1, 1, 1, 1};
};

struct EnumerationOptions {
  std::uint64_t budget = 1'000'000'000ULL;  // max evaluated 6j-symbols per call
  int threads = 1;                          // capped by QTET_THREADS
};

/// Number of worker threads after applying the QTET_THREADS cap.
int effective_threads(int requested);

/// H(a, b) = (-1)^{a+b} [(a+1)(b+1)].
cplx h_kernel(int a, int b, const QContext& ctx);

/// Sum over a_I of prod H(a_i, b_i) |6j(a)|^2 (the symbol squared, not its
/// modulus squared). Deterministic for any thread count.
ScaledComplex yhat(const ColoringSpec& spec, const Partition& p, const QContext& ctx,
                   const EnumerationOptions& opt = {});

/// Count of c in {0,1}^6 that are 3-admissible with c_j = a_j mod 2 on J.
int n_parity(const std::array<int, 6>& colors, const Partition& p);

struct Triangulation {
  int num_edges = 0;
  std::vector<std::array<int, 6>> tets;  // 0-based edge index per slot

  void validate() const;
};

/// "edges N" then one "tet e1 .. e6" line per tetrahedron; '#' starts a comment.
Triangulation parse_triangulation(std::istream& in);
Triangulation load_triangulation(const std::string& path);

/// Relative Turaev-Viro state sum with edge colors b.
ScaledComplex tv_r(const Triangulation& tri, const std::vector<int>& b, const QContext& ctx,
                   const EnumerationOptions& opt = {});

}  // namespace qtet
