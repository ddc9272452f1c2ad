#include "dyncover/graph.hpp"
#include "dyncover/verify/reference.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace dyncover;

namespace {

Graph::Weight units(const Graph& g, std::initializer_list<Level> levels) {
    Graph::Weight w;
    for (Level i : levels) w.numerator += g.scale().unit(i);
    return w;
}

}  // namespace

TEST(Graph, FreshGraphIsEmptyAtLevelZero) {
    Graph g(100, 2);
    EXPECT_EQ(g.config().L, 5);
    for (NodeId v = 0; v < 100; ++v) {
        EXPECT_EQ(g.level(v), 0);
        EXPECT_EQ(g.node_weight(v).numerator, u128(0));
    }
    EXPECT_TRUE(g.vertex_cover().empty());
    EXPECT_EQ(g.matching_numerator(), 0);
    EXPECT_EQ(g.counters(), CounterLedger(5));
}

TEST(Graph, SingleEdgeInsertLiftsBothEndpoints) {
    Graph g(100, 2);
    const EdgeId id = g.insert_edge({3, 7});
    EXPECT_EQ(id, 1u);
    EXPECT_EQ(g.level(3), 1);
    EXPECT_EQ(g.level(7), 1);
    EXPECT_EQ(g.edge_level(id), 1);
    EXPECT_EQ(g.node_weight(3), g.scale().from_pow(1));
    EXPECT_EQ(g.node_weight(7), g.scale().from_pow(1));
    EXPECT_EQ(g.vertex_cover(), (std::vector<NodeId>{3, 7}));
    EXPECT_EQ(g.matching_value(), "83521/1419857");  // 1/17
    EXPECT_FALSE(g.any_dirty());
    // The second endpoint is fixed after the edge already sits at level 1, so
    // only the first up-jump touches it.
    EXPECT_EQ(g.counters().C_up, 1u);
    EXPECT_EQ(g.counters().T, 1u);
}

TEST(Graph, DeletingOnlyEdgeRestoresEmptyState) {
    Graph g(100, 2);
    const EdgeId id = g.insert_edge({0, 1});
    g.delete_edge(id);
    for (NodeId v = 0; v < 100; ++v) {
        EXPECT_EQ(g.level(v), 0);
        EXPECT_EQ(g.node_weight(v).numerator, u128(0));
    }
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_TRUE(g.vertex_cover().empty());
    EXPECT_EQ(g.counters().T, 2u);
    EXPECT_EQ(g.counters().down_hist[1], 2u);
    EXPECT_EQ(g.counters().C_down, 0u);
}

TEST(Graph, RejectsInvalidUpdates) {
    Graph g(10, 3);
    g.insert_edge({0, 1});
    EXPECT_THROW(g.insert_edge({1, 0}), UpdateError);  // same vertex set
    EXPECT_THROW(g.insert_edge({4}), UpdateError);
    EXPECT_THROW(g.insert_edge({0, 1, 2, 3}), UpdateError);
    EXPECT_THROW(g.insert_edge({2, 2}), UpdateError);
    EXPECT_THROW(g.insert_edge({2, 10}), UpdateError);
    EXPECT_THROW(g.delete_edge(7), UpdateError);
    g.delete_edge(1);
    EXPECT_THROW(g.delete_edge(1), UpdateError);
    // After deletion the same set may be inserted again, under a new id.
    EXPECT_EQ(g.insert_edge({0, 1}), 2u);
}

TEST(Graph, QueriesRejectUnknownIds) {
    Graph g(10, 2);
    EXPECT_THROW(g.level(10), std::out_of_range);
    EXPECT_THROW(g.edge_level(1), std::out_of_range);
    EXPECT_THROW(g.node_weight(99), std::out_of_range);
}

TEST(Graph, SecondEdgeMatchesReferenceState) {
    Graph g(100, 2);
    g.insert_edge({0, 1});
    g.insert_edge({0, 2});
    verify::assert_consistent(g);
    verify::assert_quiescent(g);
}

TEST(Graph, FixDirtyIsNoOpWhenClean) {
    Graph g(20, 2);
    g.insert_edge({0, 1});
    const CounterLedger before = g.counters();
    const std::vector<Level> levels{g.level(0), g.level(1)};
    g.fix_dirty();
    EXPECT_EQ(g.counters(), before);
    EXPECT_EQ(g.level(0), levels[0]);
    EXPECT_EQ(g.level(1), levels[1]);
}

// One up-dirty and one down-dirty node pending: the up-dirty node is
// repaired first.
TEST(Graph, UpDirtyRepairedBeforeDownDirty) {
    Graph g(100, 2);
    g.move_node(5, 2);  // isolated node at level 2: down-dirty
    ASSERT_TRUE(g.down_dirty_flag(5));
    g.insert_edge_unfixed({0, 1});  // both endpoints at level 0 with W = 1: up-dirty
    ASSERT_TRUE(g.up_dirty_flag(0));
    ASSERT_TRUE(g.up_dirty_flag(1));
    g.fix_dirty();
    // Up-jumps increment C_up before any down-jump is recorded; with the
    // down-dirty node fixed last, D[2] is the only histogram entry.
    EXPECT_EQ(g.level(5), 0);
    EXPECT_EQ(g.counters().down_hist[2], 1u);
    EXPECT_EQ(g.level(0), 1);
    EXPECT_EQ(g.level(1), 1);
}

TEST(Graph, FixUpFromLevelZeroWithLevelZeroNeighbour) {
    Graph g(100, 2);
    g.insert_edge_unfixed({0, 1});
    ASSERT_EQ(g.find_up_level(0), 1);
    g.fix_up_dirty(0);
    EXPECT_EQ(g.level(0), 1);
    EXPECT_EQ(g.edge_level(1), 1);
    EXPECT_EQ(g.node_weight(0), g.scale().from_pow(1));
}

TEST(Graph, FixUpWhenNeighbourAlreadyHigher) {
    Graph g(100, 2);
    g.move_node(1, 1);
    g.insert_edge_unfixed({0, 1});
    ASSERT_EQ(g.node_weight(0), g.scale().from_pow(1));  // 1/17 > 1/289
    ASSERT_TRUE(g.up_dirty_by_weight(0));
    g.fix_up_dirty(0);
    EXPECT_EQ(g.level(0), 1);
    EXPECT_EQ(g.node_weight(0), g.scale().from_pow(1));
    EXPECT_EQ(g.counters().C_up, 0u);  // other endpoint level 1 > j - 1
}

TEST(Graph, FixUpRejectsCleanNode) {
    Graph g(10, 2);
    EXPECT_THROW(g.fix_up_dirty(0), InvariantViolation);
    EXPECT_THROW(g.fix_down_dirty(0), InvariantViolation);
}

TEST(Graph, FixDownIsolatedNodeFallsToZero) {
    Graph g(100, 2);
    g.move_node(4, 4);
    g.fix_down_dirty(4);
    EXPECT_EQ(g.level(4), 0);
    EXPECT_EQ(g.node_weight(4).numerator, u128(0));
    EXPECT_EQ(g.counters().down_hist[4], 1u);
    EXPECT_EQ(g.counters().C_down, 0u);
}

// L = 8, v at level 6 with two edges whose other endpoints sit at level 1.
// W_{v->j} = 2 * 17^-j; the largest j < 6 with 2 * 17^-j > 1/289 is 2.
TEST(Graph, FixDownSyntheticTwoEdges) {
    Graph g(5000, 2);
    ASSERT_EQ(g.config().L, 8);
    g.set_verify(true);
    g.move_node(1, 1);
    g.move_node(2, 1);
    g.move_node(0, 6);
    g.insert_edge_unfixed({0, 1});
    g.insert_edge_unfixed({0, 2});
    ASSERT_EQ(g.node_weight(0), units(g, {6, 6}));
    ASSERT_TRUE(g.down_dirty_by_weight(0));

    // Brute-force argmax over the definition.
    Level expected = 0;
    for (Level j = 5; j >= 1; --j) {
        if (g.scale().gt_inv_beta2(g.weight_at_level(0, j))) {
            expected = j;
            break;
        }
    }
    ASSERT_EQ(expected, 2);

    g.fix_down_dirty(0);
    EXPECT_EQ(g.level(0), 2);
    EXPECT_EQ(g.node_weight(0), units(g, {2, 2}));
    EXPECT_EQ(g.up_weight(0).numerator, u128(0));
    EXPECT_TRUE(g.is_super_clean(0));
    EXPECT_EQ(g.counters().C_down, 2u);
    EXPECT_EQ(g.counters().down_hist[6], 1u);
    EXPECT_EQ(g.verify_stats().fix_down_checked, 1u);
}

// One edge with other endpoint at level 2: W_{v->j} = 17^-2 for j <= 2 is
// never strictly above 1/289, so v falls to level 0 with W = 1/289.
TEST(Graph, FixDownStrictBoundarySendsToZero) {
    Graph g(5000, 2);
    g.set_verify(true);
    g.move_node(1, 2);
    g.move_node(0, 6);
    g.insert_edge_unfixed({0, 1});
    ASSERT_TRUE(g.down_dirty_by_weight(0));
    EXPECT_EQ(g.find_down_level(0), 0);
    g.fix_down_dirty(0);
    EXPECT_EQ(g.level(0), 0);
    EXPECT_EQ(g.node_weight(0), g.scale().from_pow(2));
    EXPECT_TRUE(g.is_super_clean(0));
    EXPECT_FALSE(g.up_dirty_by_weight(0));
}

TEST(Graph, MoveUpPastHigherEdgesTouchesNothing) {
    Graph g(100, 2);
    g.move_node(1, 3);
    g.insert_edge_unfixed({0, 1});  // edge at level 3, other level of 0 is 3
    const auto before = g.node_weight(1);
    g.move_node(0, 2);
    EXPECT_EQ(g.edge_level(1), 3);
    EXPECT_EQ(g.node_weight(1), before);
    EXPECT_EQ(g.node_weight(0), g.scale().from_pow(3));
    verify::assert_consistent(g);
}

TEST(Graph, MoveInTriangleMatchesRecompute) {
    Graph g(100, 2);
    g.insert_edge_unfixed({0, 1});
    g.insert_edge_unfixed({0, 2});
    g.insert_edge_unfixed({1, 2});
    ASSERT_EQ(g.node_weight(1), units(g, {0, 0}));
    g.move_node(0, 1);
    EXPECT_EQ(g.edge_level(1), 1);
    EXPECT_EQ(g.edge_level(2), 1);
    EXPECT_EQ(g.edge_level(3), 0);
    EXPECT_EQ(g.node_weight(0), units(g, {1, 1}));
    EXPECT_EQ(g.node_weight(1), units(g, {0, 1}));  // 18/17
    EXPECT_EQ(g.node_weight(2), units(g, {0, 1}));
    verify::assert_consistent(g);
}

TEST(Graph, WeightAtLevelFromDefinition) {
    Graph g(100, 2);
    g.move_node(2, 3);
    g.insert_edge_unfixed({0, 1});
    g.insert_edge_unfixed({0, 2});
    EXPECT_EQ(g.weight_at_level(0, 2), units(g, {2, 3}));  // 18/4913
    EXPECT_EQ(g.weight_at_level(0, g.level(0)), g.node_weight(0));
}

TEST(Graph, UpWeightCountsOnlyHigherEdges) {
    Graph g(100, 3);
    g.move_node(1, 2);
    g.move_node(0, 1);
    g.insert_edge_unfixed({0, 1});
    g.insert_edge_unfixed({0, 3});
    EXPECT_EQ(g.up_weight(0), g.scale().from_pow(2));
    EXPECT_EQ(g.up_weight(1).numerator, u128(0));
}

TEST(Graph, FractionalMatchingListsLiveEdges) {
    Graph g(50, 3);
    const EdgeId a = g.insert_edge({0, 1, 2});
    const EdgeId b = g.insert_edge({2, 3});
    g.delete_edge(a);
    const auto fm = g.fractional_matching();
    ASSERT_EQ(fm.size(), 1u);
    EXPECT_EQ(fm[0].first, b);
    EXPECT_EQ(fm[0].second, g.scale().from_pow(g.edge_level(b)));
}

TEST(Graph, ArbitraryPrecisionPathBehavesLikeWidePath) {
    // Same small trace on both representations must agree exactly.
    const Config c = make_config(30, 3);
    Graph wide(c);
    BigGraph big(c);
    std::mt19937_64 rng(9);
    std::set<std::vector<NodeId>> live;
    std::vector<EdgeId> ids;
    for (int step = 0; step < 400; ++step) {
        if (ids.empty() || rng() % 2) {
            std::vector<NodeId> e{static_cast<NodeId>(rng() % 30), static_cast<NodeId>(rng() % 30)};
            if (e[0] == e[1]) continue;
            std::sort(e.begin(), e.end());
            if (!live.insert(e).second) continue;
            ids.push_back(wide.insert_edge(e));
            EXPECT_EQ(big.insert_edge(e), ids.back());
        } else {
            const std::size_t k = rng() % ids.size();
            auto ep = wide.endpoints(ids[k]);
            live.erase(std::vector<NodeId>(ep.begin(), ep.end()));
            wide.delete_edge(ids[k]);
            big.delete_edge(ids[k]);
            ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(k));
        }
        for (NodeId v = 0; v < 30; ++v) {
            ASSERT_EQ(wide.level(v), big.level(v));
            ASSERT_EQ(detail::to_big(wide.node_weight(v).numerator), big.node_weight(v).numerator);
        }
    }
    EXPECT_EQ(wide.counters(), big.counters());
}

TEST(Graph, WithGraphPicksRepresentation) {
    EXPECT_TRUE(with_graph(make_config(100, 2), [](auto& g) { return std::is_same_v<std::decay_t<decltype(g)>, Graph>; }));
    EXPECT_TRUE(
        with_graph(make_config(1000000, 7), [](auto& g) { return std::is_same_v<std::decay_t<decltype(g)>, BigGraph>; }));
}

// 200-update random traces: after every update no node is dirty, the
// weight invariant holds and the structure matches a from-scratch
// recomputation.
TEST(Graph, RandomTracesKeepInvariants) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        const std::uint32_t n = 8 + static_cast<std::uint32_t>(seed % 9);
        const std::uint32_t f = 2 + static_cast<std::uint32_t>(seed % 2);
        Graph g(n, f);
        g.set_verify(true);
        std::set<std::vector<NodeId>> live;
        std::vector<EdgeId> ids;
        for (int step = 0; step < 200; ++step) {
            if (ids.empty() || rng() % 2) {
                const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % (f - 1));
                std::set<NodeId> s;
                while (s.size() < k) s.insert(static_cast<NodeId>(rng() % n));
                std::vector<NodeId> e(s.begin(), s.end());
                if (!live.insert(e).second) continue;
                ids.push_back(g.insert_edge(e));
            } else {
                const std::size_t k = rng() % ids.size();
                auto ep = g.endpoints(ids[k]);
                live.erase(std::vector<NodeId>(ep.begin(), ep.end()));
                g.delete_edge(ids[k]);
                ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(k));
            }
            ASSERT_NO_THROW(verify::assert_quiescent(g)) << "seed " << seed << " step " << step;
            ASSERT_NO_THROW(verify::assert_consistent(g)) << "seed " << seed << " step " << step;
        }
    }
}

TEST(Graph, IdenticalTracesAreDeterministic) {
    auto play = [] {
        Graph g(40, 3);
        std::mt19937_64 rng(77);
        for (int k = 0; k < 300; ++k) {
            std::vector<NodeId> e{static_cast<NodeId>(rng() % 40), static_cast<NodeId>(rng() % 40),
                                  static_cast<NodeId>(rng() % 40)};
            std::sort(e.begin(), e.end());
            e.erase(std::unique(e.begin(), e.end()), e.end());
            if (e.size() < 2) continue;
            try {
                g.insert_edge(e);
            } catch (const UpdateError&) {
            }
        }
        std::vector<Level> levels;
        for (NodeId v = 0; v < 40; ++v) levels.push_back(g.level(v));
        return std::make_pair(levels, g.counters());
    };
    EXPECT_EQ(play(), play());
}
