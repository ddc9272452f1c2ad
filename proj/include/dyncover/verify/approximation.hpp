#pragma once

// Exact check of the approximation guarantee against an optimum cover.

#include "dyncover/bigint.hpp"
#include "dyncover/graph.hpp"
#include "dyncover/verify/min_cover.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyncover::verify {

struct ApproxReport {
    bool feasible = true;         // W_v <= 1 for all v
    bool cover_weight_lower = true;  // alpha beta^2 sum_{cover} W_v > |cover|
    bool cover_weight_upper = true;  // sum_{cover} W_v <= f * sum_e w(e)
    bool within_factor = true;    // |cover| <= f alpha beta^2 * opt
    bool weak_duality = true;     // sum_e w(e) <= opt
    std::size_t cover_size = 0;
    std::size_t opt = 0;
    std::optional<double> ratio;  // |cover| / opt, absent when opt == 0
    std::string failure;

    bool ok() const { return feasible && cover_weight_lower && cover_weight_upper && within_factor && weak_duality; }
};

template <class Rep>
std::vector<std::vector<NodeId>> live_edge_sets(const BasicGraph<Rep>& g) {
    std::vector<std::vector<NodeId>> edges;
    g.for_each_live_edge([&](EdgeId id) {
        auto ep = g.endpoints(id);
        edges.emplace_back(ep.begin(), ep.end());
    });
    return edges;
}

template <class Rep>
ApproxReport check_approximation(const BasicGraph<Rep>& g, const MinCover& oracle) {
    const Config& c = g.config();
    const BigInt scale = c.beta_pow_L();
    ApproxReport r;
    const std::vector<NodeId> cover = g.vertex_cover();
    r.cover_size = cover.size();
    r.opt = oracle.size;

    auto note = [&r](const std::string& clause) {
        if (!r.failure.empty()) r.failure += "; ";
        r.failure += clause;
    };

    for (NodeId v = 0; v < c.n; ++v) {
        if (detail::to_big(g.node_weight(v).numerator) > scale) {
            r.feasible = false;
            note("node " + std::to_string(v) + " has W > 1");
        }
    }

    BigInt cover_weight = 0;
    for (NodeId v : cover) cover_weight += detail::to_big(g.node_weight(v).numerator);
    const BigInt matching = g.matching_numerator();
    const BigInt size = cover.size();

    if (!cover.empty() && !(BigInt(c.alpha_beta2()) * cover_weight > size * scale)) {
        r.cover_weight_lower = false;
        note("sum of cover weights not above |cover|/(alpha beta^2)");
    }
    if (!(cover_weight <= BigInt(c.f) * matching)) {
        r.cover_weight_upper = false;
        note("sum of cover weights exceeds f * matching value");
    }
    if (!(size <= BigInt(c.approx_factor) * oracle.size)) {
        r.within_factor = false;
        note("|cover| exceeds f alpha beta^2 * opt");
    }
    if (!(matching <= BigInt(oracle.size) * scale)) {
        r.weak_duality = false;
        note("matching value exceeds optimum cover size");
    }
    if (oracle.size > 0) r.ratio = static_cast<double>(cover.size()) / static_cast<double>(oracle.size);
    return r;
}

}  // namespace dyncover::verify
