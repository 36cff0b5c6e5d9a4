#include "plaid/quasi_iso.hpp"
#include "plaid/verify.hpp"

#include <gtest/gtest.h>

using namespace plaid;

namespace {
RVec pt(long x, long y, long d = 1) { return {make_rat(x, d), make_rat(y, d)}; }
}  // namespace

TEST(QuasiIso, FrechetOfParallelSegments) {
    // two horizontal segments one unit apart
    EXPECT_EQ(frechet_sq({pt(0, 0), pt(4, 0)}, {pt(0, 1), pt(4, 1)}), 1);
    // reversed traversal forces a long leash
    EXPECT_EQ(frechet_sq({pt(0, 0), pt(4, 0)}, {pt(4, 0), pt(0, 0)}), 16);
}

TEST(QuasiIso, DensifyCutsAtUnitLines) {
    RVec a = pt(1, 1, 2), b = {make_rat(7, 2), make_rat(7, 4)};
    auto d = densify(a, b);
    // x = 1, 2, 3 at t = 1/6, 1/2, 5/6 and y = 1 at t = 2/5
    ASSERT_EQ(d.size(), 6u);
    EXPECT_EQ(d.front(), a);
    EXPECT_EQ(d[2], (RVec{make_rat(17, 10), Rat(1)}));
    EXPECT_EQ(d.back(), b);
    // a diagonal through a lattice point is cut there once
    EXPECT_EQ(densify(pt(1, 1, 2), pt(5, 5, 2)).size(), 4u);
}

TEST(QuasiIso, ExitSides) {
    Square s = {0, 0};
    EXPECT_EQ(exit_side(s, pt(1, 1, 2), pt(3, 1, 2)), 'E');
    EXPECT_EQ(exit_side(s, pt(1, 1, 2), pt(1, 5, 2)), 'N');
    EXPECT_EQ(exit_side(s, pt(1, 1, 2), pt(-3, 1, 2)), 'W');
    EXPECT_EQ(exit_side(s, pt(1, 1, 2), pt(3, 3, 2)), 'C');
}

TEST(QuasiIso, SmallParameterIsPixellated) {
    BlockModel M(make_param(2, 9));
    auto r = scan_region(M);
    EXPECT_TRUE(r.clean());
    EXPECT_EQ(r.bad, 0);
    EXPECT_EQ(r.full, static_cast<long>(M.grid_count()));
    EXPECT_TRUE(linked_chains(M).all_bound());
    auto h = build_homeomorphism(M);
    EXPECT_TRUE(h.ok());
    EXPECT_LE(h.max_disp_sq, 4);
}

TEST(QuasiIso, BadSquaresAreCaught) {
    BlockModel M(make_param(5, 6));
    auto r = scan_region(M);
    EXPECT_GT(r.bad, 0);
    EXPECT_TRUE(r.uncaught.empty());
    EXPECT_TRUE(r.double_crossings.empty());
    EXPECT_TRUE(r.errant_edges.empty());
}

TEST(QuasiIso, ComparatorRejectsInjectedSwitch) {
    auto line = [](const RVec& a, const RVec& b) {
        Polyline pl;
        pl.pts = {{a[0] - Rat(1, 2), a[1]}, a, b, {b[0] + Rat(1, 2), b[1]}};
        return pl;
    };
    PolygonFamily A, B, C;
    A.components = {line(pt(0, 5, 2), pt(2, 7, 2))};      // up one row
    B.components = {line(pt(0, 33, 10), pt(10, 29, 10))};  // within 1 at both ends but going down
    C.components = {line(pt(0, 27, 10), pt(10, 33, 10))};  // same direction
    EXPECT_EQ(vertical_compare(A, B, 0, 1, 0, 6).status, CompareStatus::SwitchFound);
    auto ok = vertical_compare(A, C, 0, 1, 0, 6);
    EXPECT_EQ(ok.status, CompareStatus::Ok);
    EXPECT_LE(ok.max_disp_sq, 2);
    EXPECT_EQ(ok.pairs, 1);
}

TEST(QuasiIso, ComparatorPreconditions) {
    PolygonFamily A, B;
    Polyline a;
    a.pts = {pt(-1, 1, 2), pt(3, 1, 2)};
    A.components = {a};
    Polyline b;
    b.pts = {pt(-1, 1), pt(3, 1)};  // crosses the vertical lines at a lattice point
    B.components = {b};
    EXPECT_EQ(vertical_compare(A, B, 0, 1, 0, 3).status, CompareStatus::NotNice);
    EXPECT_EQ(vertical_compare(A, A, 0, 1, 0, 3).status, CompareStatus::Ok);
}
