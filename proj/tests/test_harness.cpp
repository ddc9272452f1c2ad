#include "dyncover/harness/generators.hpp"
#include "dyncover/harness/runner.hpp"
#include "dyncover/harness/trace.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dyncover;
using namespace dyncover::harness;

TEST(Trace, ParsesSmallExample) {
    const Trace t = parse_trace("init 4 2\n+ 0 1\n- 1\n");
    EXPECT_EQ(t.n, 4u);
    EXPECT_EQ(t.f, 2u);
    ASSERT_EQ(t.updates.size(), 2u);
    EXPECT_EQ(t.updates[0], Update::insert({0, 1}));
    EXPECT_EQ(t.updates[1], Update::erase(1));
}

TEST(Trace, CommentsAndBlankLinesIgnored) {
    const Trace t = parse_trace("# header\n\ninit 5 3   # five nodes\n+ 2 0 4\n\n");
    ASSERT_EQ(t.updates.size(), 1u);
    EXPECT_EQ(t.updates[0].vertices, (std::vector<NodeId>{2, 0, 4}));
}

TEST(Trace, EmitRoundTrips) {
    GenParams p;
    p.n = 12;
    p.f = 3;
    p.updates = 300;
    const Trace t = generate(GenKind::RandomChurn, p);
    EXPECT_EQ(parse_trace(emit_trace(t)), t);
}

namespace {

std::size_t error_line(const std::string& text) {
    try {
        parse_trace(text);
    } catch (const TraceParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(Trace, RejectsDeleteOfUnknownEdge) {
    EXPECT_EQ(error_line("init 4 2\n- 5\n"), 2u);
}

TEST(Trace, RejectsMalformedInput) {
    EXPECT_EQ(error_line("+ 0 1\n"), 1u);                  // missing header
    EXPECT_EQ(error_line(""), 1u);                         // empty
    EXPECT_EQ(error_line("init 4 1\n"), 1u);               // f < 2
    EXPECT_EQ(error_line("init 4 2\n+ 0\n"), 2u);          // too small
    EXPECT_EQ(error_line("init 4 2\n+ 0 1 2\n"), 2u);      // too large
    EXPECT_EQ(error_line("init 4 2\n+ 0 4\n"), 2u);        // out of range
    EXPECT_EQ(error_line("init 4 2\n+ 1 1\n"), 2u);        // repeated vertex
    EXPECT_EQ(error_line("init 4 2\n+ 0 1\n+ 1 0\n"), 3u);  // duplicate live edge
    EXPECT_EQ(error_line("init 4 2\n+ 0 1\n- 1\n- 1\n"), 4u);
    EXPECT_EQ(error_line("init 4 2\n+ 0 x\n"), 2u);
    EXPECT_EQ(error_line("init 4 2\n* 0 1\n"), 2u);
    EXPECT_EQ(error_line("init 4 2\n+ 0 1\n- 1\n+ 1 0\n"), 0u);  // reinsert after delete is fine
}

TEST(Generators, InsertAllDeleteAllEndsEmpty) {
    GenParams p;
    p.n = 10;
    p.f = 2;
    p.edges = 20;
    p.seed = 7;
    const Trace t = generate(GenKind::InsertAllDeleteAll, p);
    ASSERT_EQ(t.updates.size(), 40u);
    for (std::size_t k = 0; k < 20; ++k) EXPECT_EQ(t.updates[k].kind, Update::Kind::Insert);
    std::set<EdgeId> deleted;
    for (std::size_t k = 20; k < 40; ++k) {
        EXPECT_EQ(t.updates[k].kind, Update::Kind::Delete);
        deleted.insert(t.updates[k].edge);
    }
    EXPECT_EQ(deleted.size(), 20u);
    EXPECT_NO_THROW(parse_trace(emit_trace(t)));
}

TEST(Generators, SlidingWindowKeepsWindowLive) {
    GenParams p;
    p.n = 50;
    p.f = 3;
    p.updates = 1000;
    p.window = 30;
    const Trace t = generate(GenKind::SlidingWindow, p);
    ASSERT_EQ(t.updates.size(), 1000u);
    std::size_t live = 0;
    for (std::size_t k = 0; k < t.updates.size(); ++k) {
        live += t.updates[k].kind == Update::Kind::Insert ? 1 : 0;
        live -= t.updates[k].kind == Update::Kind::Delete ? 1 : 0;
        if (k >= 30) EXPECT_TRUE(live == 29 || live == 30) << k;
    }
    EXPECT_THROW(generate(GenKind::SlidingWindow, GenParams{4, 2, 10, 6, 0, 1}), std::invalid_argument);
}

TEST(Generators, SameSeedSameTrace) {
    for (GenKind kind : {GenKind::RandomChurn, GenKind::SlidingWindow, GenKind::StarYoyo, GenKind::InsertAllDeleteAll}) {
        GenParams p;
        p.n = 30;
        p.f = 3;
        p.updates = 500;
        p.seed = 42;
        EXPECT_EQ(generate(kind, p), generate(kind, p)) << to_string(kind);
        p.seed = 43;
        GenParams q = p;
        q.seed = 42;
        EXPECT_NE(generate(kind, p), generate(kind, q)) << to_string(kind);
    }
}

TEST(Generators, KindNamesRoundTrip) {
    for (GenKind kind : {GenKind::RandomChurn, GenKind::SlidingWindow, GenKind::StarYoyo, GenKind::InsertAllDeleteAll})
        EXPECT_EQ(parse_gen_kind(to_string(kind)), kind);
    EXPECT_THROW(parse_gen_kind("zigzag"), std::invalid_argument);
}

TEST(Generators, DistinctEdgeCount) {
    EXPECT_EQ(distinct_edge_count(4, 2), 6u);
    EXPECT_EQ(distinct_edge_count(5, 3), 20u);   // 10 + 10
    EXPECT_EQ(distinct_edge_count(3, 5), 4u);    // 3 + 1
}

TEST(Runner, SingleEdgeMetrics) {
    RunOptions opt;
    opt.check = CheckMode::Differential;
    const RunMetrics m = run(parse_trace("init 4 2\n+ 0 1\n- 1\n"), opt);
    ASSERT_TRUE(m.ok) << m.failure;
    EXPECT_EQ(m.config.L, 2);
    EXPECT_EQ(m.counters.T, 2u);
    EXPECT_EQ(m.counters.C_up, 1u);
    EXPECT_EQ(m.counters.C_down, 0u);
    EXPECT_EQ(m.cover_size, 0u);
    EXPECT_EQ(m.matching_value, "0/289");
    // Two down-jumps from level 1: I_down = 2 * 17^-1 / alpha.
    EXPECT_EQ(m.i_down_num, "2");
    EXPECT_EQ(m.i_down_den, std::to_string(17ULL * 41617));
    EXPECT_GT(m.checks_passed, 0u);
}

TEST(Runner, JsonCarriesEveryMetric) {
    const RunMetrics m = run(parse_trace("init 4 2\n+ 0 1\n"), {});
    const nlohmann::json j = to_json(m);
    for (const char* key : {"n", "f", "beta", "alpha", "L", "T", "C_up", "C_down", "I_down_num", "I_down_den",
                            "elementary_ops", "cover_size", "matching_value", "wall_ms", "checks_passed", "ops_per_update"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["alpha"], 41617);
    EXPECT_EQ(j["T"], "1");
    EXPECT_EQ(j["cover_size"], 2);
    EXPECT_EQ(j["matching_value"], "17/289");
}

TEST(Runner, CheckFailureIsReportedNotThrown) {
    // A trace with a delete of a dead edge cannot be parsed, so hand-build it.
    Trace t;
    t.n = 4;
    t.f = 2;
    t.updates = {Update::erase(3)};
    const RunMetrics m = run(t, {});
    EXPECT_FALSE(m.ok);
    EXPECT_FALSE(m.failure.empty());
}

TEST(Runner, ParseCheckMode) {
    EXPECT_EQ(parse_check_mode("light"), CheckMode::Light);
    EXPECT_THROW(parse_check_mode("heavy"), std::invalid_argument);
}
