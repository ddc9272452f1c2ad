#pragma once

// Lock-step comparison of BasicGraph against NaiveGraph.

#include "dyncover/graph.hpp"
#include "dyncover/harness/trace.hpp"
#include "dyncover/verify/naive_graph.hpp"

#include <optional>
#include <string>

namespace dyncover::verify {

/// Describes the first difference in levels, weights or counters, if any.
template <class Rep>
std::optional<std::string> compare_states(const BasicGraph<Rep>& g, const NaiveGraph& naive) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.level(v) != naive.level(v)) {
            return "node " + std::to_string(v) + " level " + std::to_string(g.level(v)) + " vs naive " +
                   std::to_string(naive.level(v));
        }
        const BigInt w = detail::to_big(g.node_weight(v).numerator);
        if (w != naive.weight(v)) return "node " + std::to_string(v) + " weight " + w.str() + " vs naive " + naive.weight(v).str();
    }
    const CounterLedger& c = g.counters();
    if (c.T != naive.T()) return "T differs";
    if (c.C_up != naive.C_up()) return "C_up " + std::to_string(c.C_up) + " vs naive " + std::to_string(naive.C_up());
    if (c.C_down != naive.C_down()) return "C_down " + std::to_string(c.C_down) + " vs naive " + std::to_string(naive.C_down());
    if (c.down_hist != naive.down_hist()) return "down-jump histogram differs";
    return std::nullopt;
}

struct DiffReport {
    bool ok = true;
    std::size_t updates_checked = 0;
    std::size_t diverged_at = 0;  // 0-based update index, valid when !ok
    std::string detail;
};

/// Replays the trace on both implementations and compares after every update.
inline DiffReport differential_run(const harness::Trace& trace, SchedulerOrder naive_order = SchedulerOrder::Lifo) {
    const Config config = make_config(trace.n, trace.f);
    return with_graph(config, [&](auto& g) {
        NaiveGraph naive(config, naive_order);
        DiffReport report;
        for (std::size_t k = 0; k < trace.updates.size(); ++k) {
            const auto& u = trace.updates[k];
            if (u.kind == harness::Update::Kind::Insert) {
                g.insert_edge(u.vertices);
                naive.insert(u.vertices);
            } else {
                g.delete_edge(u.edge);
                naive.erase(u.edge);
            }
            if (auto diff = compare_states(g, naive)) {
                report.ok = false;
                report.diverged_at = k;
                report.detail = "update " + std::to_string(k) + ": " + *diff;
                return report;
            }
            ++report.updates_checked;
        }
        return report;
    });
}

}  // namespace dyncover::verify
