#pragma once

// Deterministic update-stream generators. A fixed (kind, params, seed)
// always yields the same trace.

#include "dyncover/config.hpp"
#include "dyncover/harness/trace.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dyncover::harness {

enum class GenKind { RandomChurn, SlidingWindow, StarYoyo, InsertAllDeleteAll };

inline GenKind parse_gen_kind(const std::string& name) {
    if (name == "random-churn") return GenKind::RandomChurn;
    if (name == "sliding-window") return GenKind::SlidingWindow;
    if (name == "star-yoyo") return GenKind::StarYoyo;
    if (name == "insert-all-delete-all") return GenKind::InsertAllDeleteAll;
    throw std::invalid_argument("unknown trace kind '" + name + "'");
}

inline const char* to_string(GenKind k) {
    switch (k) {
        case GenKind::RandomChurn: return "random-churn";
        case GenKind::SlidingWindow: return "sliding-window";
        case GenKind::StarYoyo: return "star-yoyo";
        case GenKind::InsertAllDeleteAll: return "insert-all-delete-all";
    }
    return "?";
}

struct GenParams {
    std::uint32_t n = 16;
    std::uint32_t f = 2;
    std::uint64_t updates = 200;  // T
    std::uint64_t window = 0;     // sliding-window size; 0 means n
    std::uint64_t edges = 0;      // insert-all-delete-all edge count; 0 means updates / 2
    std::uint64_t seed = 1;
};

/// Number of distinct vertex sets of size 2..f on n nodes, saturating at 2^62.
inline std::uint64_t distinct_edge_count(std::uint32_t n, std::uint32_t f) {
    constexpr std::uint64_t cap = 1ULL << 62;
    std::uint64_t total = 0;
    long double binom = 1;  // C(n, k)
    for (std::uint32_t k = 1; k <= std::min(n, f); ++k) {
        binom = binom * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
        if (k < 2) continue;
        if (binom >= static_cast<long double>(cap)) return cap;
        total += static_cast<std::uint64_t>(binom + 0.5L);
        if (total >= cap) return cap;
    }
    return total;
}

namespace detail {

/// Live edges with O(1) uniform removal and duplicate detection.
class LiveEdges {
public:
    bool contains(const std::vector<NodeId>& key) const { return keys_.contains(key); }
    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }

    void add(EdgeId id, std::vector<NodeId> key) {
        pos_[id] = ids_.size();
        ids_.push_back(id);
        keys_.insert(key);
        key_of_[id] = std::move(key);
    }

    void remove(EdgeId id) {
        const std::size_t p = pos_.at(id);
        const EdgeId last = ids_.back();
        ids_[p] = last;
        pos_[last] = p;
        ids_.pop_back();
        pos_.erase(id);
        keys_.erase(key_of_.at(id));
        key_of_.erase(id);
    }

    EdgeId at(std::size_t k) const { return ids_[k]; }

private:
    std::vector<EdgeId> ids_;
    std::unordered_map<EdgeId, std::size_t> pos_;
    std::unordered_map<EdgeId, std::vector<NodeId>> key_of_;
    std::set<std::vector<NodeId>> keys_;
};

class Builder {
public:
    Builder(const GenParams& p) : p_(p), rng_(p.seed) {
        trace_.n = p.n;
        trace_.f = p.f;
    }

    std::uint64_t below(std::uint64_t bound) { return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng_); }

    /// A random vertex set not currently live, or nothing after 64 misses.
    std::optional<std::vector<NodeId>> fresh_edge() {
        const std::uint32_t max_k = std::min(p_.n, p_.f);
        for (int attempt = 0; attempt < 64; ++attempt) {
            const std::uint32_t k = 2 + static_cast<std::uint32_t>(below(max_k - 1));
            std::vector<NodeId> vs;
            while (vs.size() < k) {
                const NodeId v = static_cast<NodeId>(below(p_.n));
                if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
            }
            std::vector<NodeId> key = vs;
            std::sort(key.begin(), key.end());
            if (!live_.contains(key)) return key;
        }
        return std::nullopt;
    }

    EdgeId insert(std::vector<NodeId> key) {
        const EdgeId id = ++next_id_;
        trace_.updates.push_back(Update::insert(key));
        live_.add(id, std::move(key));
        return id;
    }

    void erase(EdgeId id) {
        trace_.updates.push_back(Update::erase(id));
        live_.remove(id);
    }

    void erase_random() { erase(live_.at(below(live_.size()))); }

    bool contains(const std::vector<NodeId>& key) const { return live_.contains(key); }
    std::size_t live() const { return live_.size(); }
    std::size_t emitted() const { return trace_.updates.size(); }
    Trace take() { return std::move(trace_); }
    std::mt19937_64& rng() { return rng_; }

private:
    GenParams p_;
    std::mt19937_64 rng_;
    Trace trace_;
    LiveEdges live_;
    EdgeId next_id_ = 0;
};

}  // namespace detail

inline Trace generate(GenKind kind, const GenParams& p) {
    if (p.n < 2 || p.f < 2) throw std::invalid_argument("generator needs n >= 2 and f >= 2");
    detail::Builder b(p);
    const std::uint64_t distinct = distinct_edge_count(p.n, p.f);

    switch (kind) {
        case GenKind::RandomChurn: {
            while (b.emitted() < p.updates) {
                const bool want_insert = b.live() == 0 || b.below(2) == 0;
                if (want_insert) {
                    if (auto key = b.fresh_edge()) {
                        b.insert(std::move(*key));
                        continue;
                    }
                }
                b.erase_random();
            }
            break;
        }
        case GenKind::SlidingWindow: {
            const std::uint64_t window = p.window == 0 ? p.n : p.window;
            if (window == 0 || window >= distinct)
                throw std::invalid_argument("window " + std::to_string(window) + " must be below the number of distinct edges (" +
                                            std::to_string(distinct) + ")");
            std::vector<EdgeId> fifo;
            std::size_t head = 0;
            auto push_fresh = [&] {
                for (;;) {
                    if (auto key = b.fresh_edge()) {
                        fifo.push_back(b.insert(std::move(*key)));
                        return;
                    }
                }
            };
            while (b.emitted() < p.updates && fifo.size() < window) push_fresh();
            while (b.emitted() < p.updates) {
                b.erase(fifo[head++]);
                if (b.emitted() < p.updates) push_fresh();
            }
            break;
        }
        case GenKind::StarYoyo: {
            // Grow a star around hub 0 leaf by leaf, then dismantle it in
            // shuffled order, repeatedly.
            std::vector<NodeId> leaves;
            for (NodeId v = 1; v < p.n; ++v) leaves.push_back(v);
            while (b.emitted() < p.updates) {
                std::shuffle(leaves.begin(), leaves.end(), b.rng());
                std::vector<EdgeId> ids;
                for (std::size_t k = 0; k < leaves.size() && b.emitted() < p.updates; ++k) {
                    std::vector<NodeId> key{0, leaves[k]};
                    if (p.f >= 3 && k + 1 < leaves.size() && k % 2 == 1) key.push_back(leaves[k + 1]);
                    std::sort(key.begin(), key.end());
                    if (b.contains(key)) continue;
                    ids.push_back(b.insert(std::move(key)));
                }
                std::shuffle(ids.begin(), ids.end(), b.rng());
                for (EdgeId id : ids) {
                    if (b.emitted() >= p.updates) break;
                    b.erase(id);
                }
            }
            break;
        }
        case GenKind::InsertAllDeleteAll: {
            const std::uint64_t m = p.edges == 0 ? p.updates / 2 : p.edges;
            if (m > distinct)
                throw std::invalid_argument("cannot draw " + std::to_string(m) + " distinct edges, only " + std::to_string(distinct) +
                                            " exist");
            if (m * 4 > distinct * 3 && distinct < (1ULL << 20)) {
                // Dense request: enumerate-and-shuffle would be exact, but
                // rejection sampling stays fine up to 3/4 occupancy.
                throw std::invalid_argument("edge count too close to the number of distinct edges");
            }
            std::vector<EdgeId> ids;
            while (ids.size() < m) {
                if (auto key = b.fresh_edge()) ids.push_back(b.insert(std::move(*key)));
            }
            std::shuffle(ids.begin(), ids.end(), b.rng());
            for (EdgeId id : ids) b.erase(id);
            break;
        }
    }
    return b.take();
}

}  // namespace dyncover::harness
