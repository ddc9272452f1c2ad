#pragma once

// Exhaustive minimum hitting set for small hypergraphs.

#include "dyncover/config.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyncover::verify {

inline constexpr std::uint32_t kMaxOracleNodes = 20;

struct MinCover {
    std::size_t size = 0;
    std::vector<NodeId> witness;
};

/// Smallest vertex set meeting every edge. Enumerates subsets by increasing
/// cardinality and stops at the first hitting one. n <= 20.
inline MinCover brute_force_min_vertex_cover(const std::vector<std::vector<NodeId>>& edges, std::uint32_t n) {
    if (n > kMaxOracleNodes) {
        throw std::invalid_argument("brute-force cover oracle limited to " + std::to_string(kMaxOracleNodes) +
                                    " nodes, got " + std::to_string(n));
    }
    std::vector<std::uint32_t> masks;
    masks.reserve(edges.size());
    for (const auto& e : edges) {
        std::uint32_t m = 0;
        for (NodeId v : e) {
            if (v >= n) throw std::invalid_argument("edge vertex " + std::to_string(v) + " out of range");
            m |= 1U << v;
        }
        masks.push_back(m);
    }
    auto hits_all = [&](std::uint32_t s) {
        for (std::uint32_t m : masks)
            if ((m & s) == 0) return false;
        return true;
    };

    const std::uint64_t limit = 1ULL << n;
    if (hits_all(0)) return {};
    for (std::uint32_t k = 1; k <= n; ++k) {
        // Gosper's hack: walk subsets of popcount k in increasing order.
        std::uint64_t s = (1ULL << k) - 1;
        while (s < limit) {
            if (hits_all(static_cast<std::uint32_t>(s))) {
                MinCover out;
                out.size = k;
                for (NodeId v = 0; v < n; ++v)
                    if (s & (1ULL << v)) out.witness.push_back(v);
                return out;
            }
            const std::uint64_t c = s & (~s + 1);
            const std::uint64_t r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    // The full vertex set hits every edge, so this is unreachable.
    throw std::logic_error("no hitting set found");
}

}  // namespace dyncover::verify
