#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qtet/dft.hpp"
#include "qtet/errors.hpp"
#include "qtet/geometry.hpp"
#include "qtet/qkernel.hpp"

using namespace qtet;

namespace {

double rel_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Triangulation parse(const std::string& text) {
  std::istringstream is(text);
  return parse_triangulation(is);
}

// Tetrahedral symmetries as slot permutations: new[k] = old[perm[k]].
constexpr std::array<std::array<int, 6>, 3> kSyms{{{1, 0, 2, 4, 3, 5}, {0, 2, 1, 3, 5, 4}, {3, 4, 2, 0, 1, 5}}};

}  // namespace

TEST(HKernel, Values) {
  const QContext ctx(11);
  EXPECT_LT(std::abs(h_kernel(0, 0, ctx) - 1.0), 1e-15);
  for (int b = 0; b <= 9; ++b) {
    EXPECT_LT(std::abs(h_kernel(0, b, ctx) - (b % 2 ? -1.0 : 1.0) * quantum_integer(b + 1, ctx)), 1e-13);
    for (int a = 0; a <= 9; ++a) {
      EXPECT_EQ(h_kernel(a, b, ctx), h_kernel(b, a, ctx));
      EXPECT_LT(std::abs(h_kernel(a, b, ctx) - oracle::h(11, a, b)), 1e-12);
    }
  }
}

TEST(Yhat, NoDeepEdgesIsSixjSquared) {
  const QContext ctx(51);
  ColoringSpec spec;
  spec.colors = {30, 32, 34, 28, 30, 32};
  const ScaledComplex s = sixj_scaled(spec.colors, ctx);
  const ScaledComplex y = yhat(spec, Partition{}, ctx);
  const ScaledComplex sq = s * s;
  EXPECT_EQ(y.log_mag(), sq.log_mag());
  EXPECT_EQ(y.phase(), sq.phase());
}

TEST(Yhat, MatchesUnscaledOracle) {
  struct Case {
    int r;
    const char* part;
    std::array<int, 6> colors;
  };
  for (const Case& c : {Case{7, "1", {3, 2, 2, 2, 2, 2}}, Case{7, "1", {0, 2, 2, 4, 2, 2}},
                        Case{9, "1,2", {4, 5, 3, 4, 3, 3}}, Case{7, "1,2,3,4,5,6", {1, 2, 3, 4, 5, 0}},
                        Case{9, "2,4,6", {2, 1, 2, 7, 2, 0}}}) {
    const QContext ctx(c.r);
    const Partition p = Partition::parse(c.part);
    ColoringSpec spec;
    spec.colors = c.colors;
    const cplx ref = oracle::yhat(c.r, c.colors, p.mask());
    EXPECT_LE(std::abs(yhat(spec, p, ctx).to_complex() - ref), 1e-10 * std::max(1.0, std::abs(ref))) << c.part;
  }
}

TEST(Yhat, RelabelingBySymmetry) {
  const QContext ctx(15);
  const Partition p = Partition::parse("1,5");
  ColoringSpec spec;
  spec.colors = {4, 9, 3, 9, 4, 8};
  const cplx base = yhat(spec, p, ctx).to_complex();
  ASSERT_GT(std::abs(base), 0.0);
  for (const auto& perm : kSyms) {
    ColoringSpec moved;
    std::uint8_t mask = 0;
    for (int k = 0; k < 6; ++k) {
      moved.colors[k] = spec.colors[perm[k]];
      if (p.in_I(perm[k])) mask |= static_cast<std::uint8_t>(1U << k);
    }
    EXPECT_LT(rel_gap(yhat(moved, Partition::from_mask(mask), ctx).to_complex(), base), 1e-10);
  }
}

TEST(Yhat, ThreadCountDoesNotChangeResult) {
  const QContext ctx(31);
  const Partition p = Partition::parse("1,2");
  ColoringSpec spec;
  spec.colors = {17, 18, 16, 16, 18, 16};
  const ScaledComplex one = yhat(spec, p, ctx, {1'000'000'000ULL, 1});
  for (int t : {2, 3, 8}) {
    const ScaledComplex many = yhat(spec, p, ctx, {1'000'000'000ULL, t});
    EXPECT_EQ(one.log_mag(), many.log_mag());
    EXPECT_EQ(one.phase(), many.phase());
  }
}

TEST(Yhat, DoublingTheSumDoublesTheValue) {
  const QContext ctx(13);
  ColoringSpec spec;
  spec.colors = {4, 7, 3, 7, 4, 6};
  const ScaledComplex y = yhat(spec, Partition::parse("2"), ctx);
  const ScaledComplex twice = y + y;
  EXPECT_NEAR(twice.log_mag() - y.log_mag(), std::log(2.0), 1e-14);
  EXPECT_NEAR(twice.phase(), y.phase(), 1e-14);
}

TEST(Yhat, BudgetAndRangeErrors) {
  const QContext ctx(21);
  ColoringSpec spec;
  spec.colors = {10, 10, 10, 10, 10, 10};
  EXPECT_THROW(yhat(spec, Partition::parse("1,2"), ctx, {5, 1}), BudgetExceeded);
  EXPECT_THROW(yhat(spec, Partition::parse("1,2"), ctx, {5, 4}), BudgetExceeded);
  spec.colors[3] = 20;
  EXPECT_THROW(yhat(spec, Partition::parse("1"), ctx), InputError);
}

TEST(Yhat, EmptySumIsZero) {
  const QContext ctx(7);
  ColoringSpec spec;
  spec.colors = {0, 1, 0, 0, 0, 0};  // the J faces are never admissible
  EXPECT_TRUE(yhat(spec, Partition::parse("1"), ctx).is_zero());
}

TEST(NParity, Counts) {
  int total = 0;
  for (int m = 0; m < 64; ++m) {
    std::array<int, 6> c;
    for (int k = 0; k < 6; ++k) c[k] = (m >> k) & 1;
    if (oracle::six_ok(3, c)) ++total;
  }
  EXPECT_EQ(n_parity({}, Partition::parse("1,2,3,4,5,6")), total);
  EXPECT_EQ(total, 8);
  EXPECT_GE(n_parity({0, 0, 0, 0, 0, 0}, Partition{}), 1);
  EXPECT_EQ(n_parity({2, 4, 6, 8, 2, 4}, Partition{}), 1);
  EXPECT_EQ(n_parity({1, 0, 0, 0, 0, 0}, Partition{}), 0);
  for (int m = 0; m < 64; ++m) {
    std::array<int, 6> c;
    for (int k = 0; k < 6; ++k) c[k] = 2 * k + ((m >> k) & 1);
    std::array<int, 6> bits;
    for (int k = 0; k < 6; ++k) bits[k] = (m >> k) & 1;
    EXPECT_EQ(n_parity(c, Partition{}), oracle::six_ok(3, bits) ? 1 : 0);
  }
  // Only J parities matter.
  EXPECT_EQ(n_parity({7, 0, 0, 0, 0, 0}, Partition::parse("1")), n_parity({0, 0, 0, 0, 0, 0}, Partition::parse("1")));
}

TEST(Triangulation, ParseGood) {
  const Triangulation t = parse("# comment\nedges 6\n\ntet 0 1 2 3 4 5  # trailing comment\n");
  EXPECT_EQ(t.num_edges, 6);
  ASSERT_EQ(t.tets.size(), 1U);
  EXPECT_EQ(t.tets[0], (std::array<int, 6>{0, 1, 2, 3, 4, 5}));
  const Triangulation f = load_triangulation(std::string(QTET_FIXTURE_DIR) + "/two_tets.tri");
  EXPECT_EQ(f.num_edges, 9);
  EXPECT_EQ(f.tets.size(), 2U);
}

TEST(Triangulation, ParseErrors) {
  EXPECT_THROW(parse(""), InputError);
  EXPECT_THROW(parse("tet 0 1 2 3 4 5\n"), InputError);
  EXPECT_THROW(parse("edges 6\ntet 0 1 2 3 4\n"), InputError);
  EXPECT_THROW(parse("edges 6\ntet 0 1 2 3 4 5 6\n"), InputError);
  EXPECT_THROW(parse("edges 6\ntet 0 1 2 3 4 9\n"), InputError);
  EXPECT_THROW(parse("edges 7\ntet 0 1 2 3 4 5\n"), InputError);
  EXPECT_THROW(parse("edges 6\nface 0 1 2\n"), InputError);
  EXPECT_THROW(parse("edges x\n"), InputError);
  EXPECT_THROW(load_triangulation("/nonexistent/file.tri"), InputError);
}

TEST(TuraevViro, SingleTetrahedronMatchesOracle) {
  const Triangulation t = load_triangulation(std::string(QTET_FIXTURE_DIR) + "/single_tet.tri");
  for (int r : {5, 7}) {
    const QContext ctx(r);
    for (const std::vector<int>& b : {std::vector<int>(6, 0), std::vector<int>{1, 2, 0, 3, 1, 2}}) {
      if (*std::max_element(b.begin(), b.end()) > r - 2) continue;
      const cplx ref = oracle::tv(r, t.num_edges, t.tets, b);
      EXPECT_LE(std::abs(tv_r(t, b, ctx).to_complex() - ref), 1e-10 * std::max(1.0, std::abs(ref))) << r;
    }
  }
}

TEST(TuraevViro, BZeroIsPlainStateSum) {
  // With b = 0 the weight of an edge is (-1)^a [a+1].
  const Triangulation t = load_triangulation(std::string(QTET_FIXTURE_DIR) + "/single_tet.tri");
  const QContext ctx(5);
  cplx sum = 0.0;
  for (int idx = 0; idx < 4 * 4 * 4 * 4 * 4 * 4; ++idx) {
    std::array<int, 6> a;
    int x = idx;
    for (int k = 0; k < 6; ++k) {
      a[k] = x % 4;
      x /= 4;
    }
    if (!is_admissible_six(a, ctx)) continue;
    cplx w = sixj(a, ctx);
    for (int v : a) w *= (v % 2 ? -1.0 : 1.0) * quantum_integer(v + 1, ctx);
    sum += w;
  }
  EXPECT_LT(std::abs(tv_r(t, std::vector<int>(6, 0), ctx).to_complex() - sum), 1e-11 * std::max(1.0, std::abs(sum)));
}

TEST(TuraevViro, ThreadsAndErrors) {
  const Triangulation t = load_triangulation(std::string(QTET_FIXTURE_DIR) + "/two_tets.tri");
  const QContext ctx(7);
  const std::vector<int> b{1, 0, 1, 2, 0, 3, 1, 1, 0};
  const ScaledComplex one = tv_r(t, b, ctx, {1'000'000'000ULL, 1});
  const ScaledComplex four = tv_r(t, b, ctx, {1'000'000'000ULL, 4});
  EXPECT_EQ(one.log_mag(), four.log_mag());
  EXPECT_EQ(one.phase(), four.phase());
  EXPECT_THROW(tv_r(t, std::vector<int>(8, 0), ctx), InputError);
  EXPECT_THROW(tv_r(t, std::vector<int>(9, 6), ctx), InputError);
  EXPECT_THROW(tv_r(t, std::vector<int>(9, 0), ctx, {10, 1}), BudgetExceeded);
}

TEST(TuraevViro, GrowthFromFiveToSeven) {
  const Triangulation t = load_triangulation(std::string(QTET_FIXTURE_DIR) + "/two_tets.tri");
  const ScaledComplex v5 = tv_r(t, std::vector<int>(9, 0), QContext(5));
  const ScaledComplex v7 = tv_r(t, std::vector<int>(9, 0), QContext(7));
  EXPECT_TRUE(std::isfinite(v5.log_mag()));
  EXPECT_TRUE(std::isfinite(v7.log_mag()));
  EXPECT_LT(rel_gap(v7.to_complex(), oracle::tv(7, t.num_edges, t.tets, std::vector<int>(9, 0))), 1e-10);
}

TEST(EffectiveThreads, EnvironmentCap) {
  ::setenv("QTET_THREADS", "2", 1);
  EXPECT_EQ(effective_threads(8), 2);
  EXPECT_EQ(effective_threads(1), 1);
  ::unsetenv("QTET_THREADS");
  EXPECT_EQ(effective_threads(3), 3);
  EXPECT_EQ(effective_threads(0), 1);
}
