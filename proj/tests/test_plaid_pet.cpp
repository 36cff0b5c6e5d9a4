#include "plaid/plaid_pet.hpp"
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
std::string strip_comments(const std::string& s) {
    std::istringstream is(s);
    std::string line, out;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') out += line + "\n";
    return out;
}
}  // namespace

TEST(PlaidPet, SeedsAndCells) {
    auto seeds = seed_polytopes();
    EXPECT_EQ(seeds.size(), 10u);
    const auto& cells = plaid_partition().cells();
    EXPECT_EQ(cells.size(), 26u);
    Rat v = 0;
    for (auto& c : cells) v += volume(c.hv);
    EXPECT_EQ(v, 8);
}

TEST(PlaidPet, CellTableMatchesGolden) {
    std::ostringstream os;
    write_table(os, plaid_cell_table());
    EXPECT_EQ(os.str(), strip_comments(slurp("plaid_cells.txt")));
}

TEST(PlaidPet, ExitVectorsAreLatticeMoves) {
    // moving out through N then in through S is the identity
    RVec v = {make_rat(1, 3), make_rat(-1, 5), make_rat(2, 7), make_rat(4, 11)};
    RVec w = v + exit_vector('N', v[3]) + exit_vector('S', v[3]);
    EXPECT_EQ(w, v);
}

TEST(PlaidPet, TilesAreConsistentAcrossSides) {
    Param pr = make_param(2, 9);
    for (long i = 0; i < 30; ++i)
        for (long j = 0; j < 11; ++j) {
            PlaidLabel a = tile_at_square(pr, i, j);
            if (a.empty()) continue;
            for (char s : {a.a, a.b}) {
                auto d = side_step(s);
                PlaidLabel b = tile_at_square(pr, i + d[0], j + d[1]);
                EXPECT_TRUE(b.has(opposite(s))) << i << "," << j << " side " << s;
            }
        }
}

TEST(PlaidPet, TileSnapshot29) {
    BlockModel M(make_param(2, 9));
    std::ostringstream os;
    write_plaid_tiles(os, M, {0, 121, 0, 11});
    EXPECT_EQ(os.str(), slurp("plaid_2_9.txt"));
}
