#include <gtest/gtest.h>

#include "levyexit/grid.hpp"

using namespace levyexit;

TEST(Grid, TumorInterval) {
    const Grid g(0.0, 5.0, 0.01);
    EXPECT_EQ(g.left_index(), 0);
    EXPECT_EQ(g.right_index(), 500);
    EXPECT_EQ(g.interior_count(), 499u);
    EXPECT_EQ(g.mid_index(), 250);
    EXPECT_EQ(g.node_of(0), 1);
    EXPECT_EQ(g.unknown_of(499), 498u);
    EXPECT_DOUBLE_EQ(g.x(250), 2.5);
}

TEST(Grid, SymmetricInterval) {
    const Grid g(-1.0, 1.0, 0.01);
    EXPECT_EQ(g.interior_count(), 199u);
    EXPECT_EQ(g.mid_index(), 0);
    EXPECT_EQ(g.left_index(), -100);
    EXPECT_DOUBLE_EQ(g.dist_left(0), 1.0);
    EXPECT_DOUBLE_EQ(g.dist_right(50), 0.5);
}

TEST(Grid, NonDividingStepRejected) {
    try {
        Grid g(0.0, 5.0, 0.003);
        FAIL() << "expected DivisibilityError";
    } catch (const DivisibilityError& e) {
        EXPECT_NE(std::string(e.what()).find("/h"), std::string::npos) << e.what();
    }
}

TEST(Grid, MidpointMustBeANode) {
    // (c + d) / (2h) = 3.5
    EXPECT_THROW(Grid(0.0, 0.7, 0.1), DivisibilityError);
}

TEST(Grid, InvalidIntervals) {
    EXPECT_THROW(Grid(1.0, 0.0, 0.1), DivisibilityError);
    EXPECT_THROW(Grid(0.0, 1.0, 0.0), DivisibilityError);
    EXPECT_THROW(Grid(0.0, 1.0, 0.5), DivisibilityError);
}

TEST(Grid, NodeLookup) {
    const Grid g(0.0, 5.0, 0.01);
    std::int64_t j = 0;
    EXPECT_TRUE(g.node_at(2.5, j));
    EXPECT_EQ(j, 250);
    EXPECT_FALSE(g.node_at(2.505, j));
    EXPECT_EQ(g.nearest_node(2.504), 250);
    EXPECT_TRUE(g.is_interior(1));
    EXPECT_FALSE(g.is_interior(0));
    EXPECT_FALSE(g.is_interior(500));
}
