#include "plaid/render.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace plaid;

namespace {
std::string slurp(const std::string& name) {
    std::ifstream is(std::string(PLAID_DATA_DIR) + "/" + name, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}
}  // namespace

TEST(Render, DecimalGrid) {
    EXPECT_EQ(decimal9(Rat(3)), "3");
    EXPECT_EQ(decimal9(make_rat(1, 4)), "0.25");
    EXPECT_EQ(decimal9(make_rat(-1, 4)), "-0.25");
    EXPECT_EQ(decimal9(make_rat(1, 3)), "0.333333333");
    EXPECT_EQ(decimal9(make_rat(2, 3)), "0.666666667");
    EXPECT_EQ(decimal9(make_rat(1, 4000000000)), "0");
    EXPECT_EQ(decimal9(make_rat(-1, 4000000000)), "0");
    EXPECT_EQ(decimal9(make_rat(1, 2000000000)), "0.000000001");
}

TEST(Render, SpecValidation) {
    RenderSpec s;
    s.param = make_param(2, 9);
    s.region = {0, 0, 0, 1};
    s.layers = {Layer::Plaid};
    EXPECT_THROW(s.validate(), Error);
    s.region = {0, 1, 0, 1};
    EXPECT_NO_THROW(s.validate());
    s.layers.clear();
    EXPECT_THROW(s.validate(), Error);
    EXPECT_THROW(parse_layer("shadows"), Error);
}

TEST(Render, YAxisIsFlipped) {
    Param pr = make_param(2, 9);
    BlockModel M(pr);
    RenderSpec s;
    s.param = pr;
    s.region = {0, 4, 0, 3};
    s.layers = {Layer::GridPoints};
    s.pitch = 10;
    std::ostringstream os;
    render_svg(os, M, s);
    // each grid point (x,y) appears at (10x, 10(3-y))
    auto pts = grid_points_in_box(M.T(), Rat(0), Rat(4), Rat(0), Rat(3));
    ASSERT_FALSE(pts.empty());
    long seen = 0;
    for (auto& mn : pts) {
        RVec v = M.point(mn);
        if (v[0] < 0 || v[0] > 4 || v[1] < 0 || v[1] > 3) continue;
        std::string want = "cx=\"" + decimal9(v[0] * 10) + "\" cy=\"" + decimal9((3 - v[1]) * 10) + "\"";
        EXPECT_NE(os.str().find(want), std::string::npos) << want;
        ++seen;
    }
    EXPECT_GT(seen, 0);
}

TEST(Render, BlockSnapshot29) {
    BlockModel M(make_param(2, 9));
    RenderSpec s;
    s.param = M.param();
    s.region = {0, 121, 0, 11};
    s.layers = {Layer::Plaid};
    std::ostringstream os;
    render_svg(os, M, s);
    EXPECT_EQ(os.str(), slurp("plaid_2_9.svg"));
}

TEST(Render, OverlaySnapshot38) {
    BlockModel M(make_param(3, 8));
    RenderSpec s;
    s.param = M.param();
    s.region = {0, 121, 0, 11};
    s.layers = {Layer::Plaid, Layer::Graph};
    std::ostringstream a, b;
    render_svg(a, M, s);
    render_svg(b, M, s);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str(), slurp("overlay_3_8.svg"));
}
