#pragma once

// From-scratch recomputation of everything the graph maintains
// incrementally, and comparison against the maintained state.

#include "dyncover/bigint.hpp"
#include "dyncover/config.hpp"
#include "dyncover/errors.hpp"
#include "dyncover/graph.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace dyncover::verify {

/// Quantities derived only from the live edge set and the node levels.
/// Weights are numerators over beta^L.
struct ReferenceState {
    std::vector<Level> node_level;
    std::vector<BigInt> weight;
    std::vector<BigInt> up_weight;
    std::map<EdgeId, Level> edge_level;
    std::vector<std::vector<std::uint64_t>> bucket_count;  // [node][level]
};

template <class Rep>
ReferenceState recompute_state(const BasicGraph<Rep>& g) {
    const Config& c = g.config();
    ReferenceState ref;
    ref.node_level.resize(c.n);
    ref.weight.assign(c.n, 0);
    ref.up_weight.assign(c.n, 0);
    ref.bucket_count.assign(c.n, std::vector<std::uint64_t>(static_cast<std::size_t>(c.L) + 1, 0));
    for (NodeId v = 0; v < c.n; ++v) ref.node_level[v] = g.level(v);

    std::vector<BigInt> unit(static_cast<std::size_t>(c.L) + 1);
    for (Level i = 0; i <= c.L; ++i)
        unit[static_cast<std::size_t>(i)] = boost::multiprecision::pow(BigInt(c.beta), static_cast<unsigned>(c.L - i));

    g.for_each_live_edge([&](EdgeId id) {
        Level lvl = 0;
        for (NodeId u : g.endpoints(id)) lvl = std::max(lvl, ref.node_level[u]);
        ref.edge_level[id] = lvl;
        for (NodeId u : g.endpoints(id)) {
            ref.weight[u] += unit[static_cast<std::size_t>(lvl)];
            if (lvl > ref.node_level[u]) ref.up_weight[u] += unit[static_cast<std::size_t>(lvl)];
            ++ref.bucket_count[u][static_cast<std::size_t>(lvl)];
        }
    });
    return ref;
}

/// Throws InvariantViolation naming the first node or edge whose maintained
/// state differs from the recomputed one, or whose bucket lists are
/// malformed.
template <class Rep>
void assert_consistent(const BasicGraph<Rep>& g) {
    const Config& c = g.config();
    const ReferenceState ref = recompute_state(g);
    auto fail = [](const std::string& msg) { throw InvariantViolation("consistency: " + msg); };

    for (const auto& [id, lvl] : ref.edge_level) {
        if (g.edge_level(id) != lvl) {
            fail("edge " + std::to_string(id) + " has level " + std::to_string(g.edge_level(id)) + ", max endpoint level is " +
                 std::to_string(lvl));
        }
    }

    for (NodeId v = 0; v < c.n; ++v) {
        const std::string node = "node " + std::to_string(v);
        if (detail::to_big(g.node_weight(v).numerator) != ref.weight[v]) {
            fail(node + " weight " + g.scale().render(g.node_weight(v)) + " != recomputed " + ref.weight[v].str());
        }
        if (detail::to_big(g.up_weight(v).numerator) != ref.up_weight[v]) {
            fail(node + " up-weight " + g.scale().render(g.up_weight(v)) + " != recomputed " + ref.up_weight[v].str());
        }
        for (Level i = 0; i <= c.L; ++i) {
            const std::uint64_t expected = ref.bucket_count[v][static_cast<std::size_t>(i)];
            if (g.bucket_count(v, i) != expected) {
                fail(node + " bucket " + std::to_string(i) + " count " + std::to_string(g.bucket_count(v, i)) +
                     " != recomputed " + std::to_string(expected));
            }
            if (i < g.level(v) && expected != 0) fail(node + " has edges in bucket " + std::to_string(i) + " below its level");

            std::uint64_t walked = 0;
            g.for_each_in_bucket(v, i, [&](EdgeId id) {
                ++walked;
                if (!g.is_live(id)) fail(node + " bucket " + std::to_string(i) + " links dead edge " + std::to_string(id));
                if (g.edge_level(id) != i)
                    fail(node + " bucket " + std::to_string(i) + " links edge " + std::to_string(id) + " at level " +
                         std::to_string(g.edge_level(id)));
                bool contains = false;
                for (NodeId u : g.endpoints(id)) contains = contains || u == v;
                if (!contains) fail(node + " bucket links edge " + std::to_string(id) + " that is not incident");
            });
            if (walked != expected) {
                fail(node + " bucket " + std::to_string(i) + " list length " + std::to_string(walked) + " != " +
                     std::to_string(expected));
            }
        }
    }
}

/// The quiescent-state checks: no dirty node, the weight invariant with its
/// exact strictness, feasibility W_v <= 1, and cover validity.
template <class Rep>
void assert_quiescent(const BasicGraph<Rep>& g) {
    const auto& s = g.scale();
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto w = g.node_weight(v);
        const std::string node = "node " + std::to_string(v) + " (level " + std::to_string(g.level(v)) + ", weight " +
                                 s.render(w) + ")";
        if (g.up_dirty_flag(v) || g.down_dirty_flag(v)) throw InvariantViolation(node + " still flagged dirty");
        if (g.level(v) > 0) {
            if (!(s.gt_down(w) && s.lt_one(w))) throw InvariantViolation(node + " violates 1/(alpha beta^2) < W < 1");
        } else if (!s.le_inv_beta2(w)) {
            throw InvariantViolation(node + " violates W <= 1/beta^2 at level 0");
        }
        if (!s.le_one(w)) throw InvariantViolation(node + " infeasible: W > 1");
    }
    g.for_each_live_edge([&](EdgeId id) {
        bool covered = false;
        for (NodeId u : g.endpoints(id)) covered = covered || g.level(u) > 0;
        if (!covered) throw InvariantViolation("edge " + std::to_string(id) + " has no endpoint in the cover");
    });
}

}  // namespace dyncover::verify
