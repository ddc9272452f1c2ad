#pragma once

// Dynamic hypergraph maintaining a level hierarchy whose edge weights
// beta^-level(e) form an approximate maximum fractional matching, and whose
// nodes at level >= 1 form an approximate minimum vertex cover.
//
// Every node v sits at a level in [0, L]. An edge's level is the maximum
// level of its endpoints. After each update the weight W_v of every node
// satisfies
//     level(v) > 0:  1/(alpha beta^2) < W_v < 1
//     level(v) = 0:  W_v <= 1/beta^2
// Violating nodes ("dirty") are repaired by moving them up or down; up-dirty
// nodes are always repaired before down-dirty ones.

#include "dyncover/accounting.hpp"
#include "dyncover/config.hpp"
#include "dyncover/errors.hpp"
#include "dyncover/fixed_weight.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dyncover {

namespace testing {
struct GraphPeer;
}

struct VerifyStats {
    std::uint64_t fix_up_checked = 0;
    std::uint64_t fix_down_checked = 0;
    std::uint64_t weight_bound_checks = 0;
};

namespace detail {

struct NodeSetHash {
    std::size_t operator()(const std::vector<NodeId>& key) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (NodeId v : key) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace detail

template <class Rep>
class BasicGraph {
public:
    using Weight = FixedWeight<Rep>;
    using Scale = WeightScale<Rep>;

    BasicGraph(std::uint32_t n, std::uint32_t f) : BasicGraph(make_config(n, f)) {}

    explicit BasicGraph(const Config& config)
        : config_(config),
          scale_(config),
          stride_(static_cast<std::size_t>(config.L) + 1),
          level_(config.n, 0),
          weight_(config.n),
          dirty_up_(config.n, 0),
          dirty_down_(config.n, 0),
          head_(static_cast<std::size_t>(config.n) * stride_, kNil),
          count_(static_cast<std::size_t>(config.n) * stride_, 0),
          ledger_(config.L),
          hist_(stride_, 0) {}

    const Config& config() const { return config_; }
    const Scale& scale() const { return scale_; }
    std::uint32_t node_count() const { return config_.n; }

    // ---------------------------------------------------------------- updates

    /// Inserts a hyperedge and restores the invariant. Returns its id.
    EdgeId insert_edge(std::span<const NodeId> vertices) {
        EdgeId id = link_new_edge(vertices);
        ledger_.T += 1;
        fix_dirty();
        return id;
    }

    EdgeId insert_edge(std::initializer_list<NodeId> vertices) {
        return insert_edge(std::span<const NodeId>(vertices.begin(), vertices.size()));
    }

    /// Deletes a live hyperedge and restores the invariant.
    void delete_edge(EdgeId id) {
        unlink_edge(id);
        ledger_.T += 1;
        fix_dirty();
    }

    // ------------------------------------------------------- low-level access
    //
    // The functions below expose the repair machinery piecewise. They leave
    // the graph in a possibly dirty state and are meant for tests and
    // oracles that need hand-built configurations.

    /// Links an edge at the max endpoint level without running the repair
    /// loop and without counting it as an update.
    EdgeId insert_edge_unfixed(std::span<const NodeId> vertices) { return link_new_edge(vertices); }

    EdgeId insert_edge_unfixed(std::initializer_list<NodeId> vertices) {
        return link_new_edge(std::span<const NodeId>(vertices.begin(), vertices.size()));
    }

    /// Repairs dirty nodes until none remain; up-dirty first, LIFO within each class.
    void fix_dirty() {
        const std::uint64_t budget = op_budget();
        for (;;) {
            if (verify_ && ledger_.elementary_ops > budget) {
                throw InvariantViolation("repair loop exceeded its operation budget");
            }
            if (!up_stack_.empty()) {
                NodeId v = up_stack_.back();
                up_stack_.pop_back();
                ++ledger_.elementary_ops;
                if (dirty_up_[v]) fix_up_dirty(v);
                continue;
            }
            if (!down_stack_.empty()) {
                NodeId v = down_stack_.back();
                down_stack_.pop_back();
                ++ledger_.elementary_ops;
                if (dirty_down_[v]) fix_down_dirty(v);
                continue;
            }
            break;
        }
    }

    /// Moves an up-dirty node to the smallest level j > level(v) with
    /// W_{v->j} <= 1/beta.
    void fix_up_dirty(NodeId v) {
        check_node(v);
        if (!up_dirty_by_weight(v)) throw InvariantViolation("fix_up_dirty on node " + std::to_string(v) + " which is not up-dirty");
        const Level from = level_[v];
        const Level to = find_up_level(v);
        const std::uint64_t touched = relocate(v, to);
        ledger_.record_up_jump(from, to, touched);
        if (verify_) {
            ++verify_.stats.fix_up_checked;
            const Weight& w = weight_[v];
            if (!(scale_.gt_inv_beta2(w) && scale_.le_inv_beta(w))) {
                throw InvariantViolation("after fix-up node " + std::to_string(v) + " has weight " + scale_.render(w) +
                                         " outside (1/beta^2, 1/beta]");
            }
        }
    }

    /// Moves a down-dirty node to the largest level j in [1, level(v)-1]
    /// with W_{v->j} > 1/beta^2, or to level 0 if there is none.
    void fix_down_dirty(NodeId v) {
        check_node(v);
        if (!down_dirty_by_weight(v))
            throw InvariantViolation("fix_down_dirty on node " + std::to_string(v) + " which is not down-dirty");
        const Level from = level_[v];
        const Level to = find_down_level(v);
        const std::uint64_t touched = relocate(v, to);
        ledger_.record_down_jump(from, to, touched);
        if (verify_) {
            ++verify_.stats.fix_down_checked;
            if (!is_super_clean(v)) {
                throw InvariantViolation("after fix-down node " + std::to_string(v) + " is not super-clean (level " +
                                         std::to_string(level_[v]) + ", weight " + scale_.render(weight_[v]) +
                                         ", up-weight " + scale_.render(up_weight(v)) + ")");
            }
        }
    }

    /// Relocates v to level j, retagging every incident edge whose weight
    /// changes, and re-evaluates the dirty state of v and its touched
    /// neighbours.
    void move_node(NodeId v, Level j) {
        check_node(v);
        relocate(v, j);
    }

    /// Smallest j in [level(v)+1, L] with W_{v->j} <= 1/beta. Walks levels
    /// upward using bucket counts, O(1) per level.
    Level find_up_level(NodeId v) {
        check_node(v);
        const Level L = config_.L;
        Rep w = weight_[v].numerator;
        std::uint64_t below = 0;  // edges whose weight drops on the next step
        for (Level k = level_[v]; k < L; ++k) {
            ++ledger_.elementary_ops;
            below += count_[slot(v, k)];
            // W_{v->k+1} = W_{v->k} - (1 - 1/beta) * beta^-k * below
            w -= Rep(below) * (scale_.unit(k) - scale_.unit(k + 1));
            if (scale_.le_inv_beta(Weight{w})) return k + 1;
        }
        throw InvariantViolation("no level satisfies W_{v->j} <= 1/beta for node " + std::to_string(v));
    }

    /// Largest j in [1, level(v)-1] with W_{v->j} > 1/beta^2, else 0. Only
    /// the edges in bucket level(v) change weight as v descends, so a
    /// histogram of their other-endpoint levels suffices.
    Level find_down_level(NodeId v) {
        check_node(v);
        const Level i = level_[v];
        if (i == 0) throw InvariantViolation("find_down_level on a level-0 node");
        std::fill(hist_.begin(), hist_.begin() + i + 1, 0);
        std::uint64_t total = 0;
        for (std::size_t s = head_[slot(v, i)]; s != kNil; s = slot_next_[s]) {
            const Level other = other_level(slot_edge_[s], v);
            ++hist_[static_cast<std::size_t>(other)];
            ++total;
            ledger_.elementary_ops += record(slot_edge_[s]).size;
        }
        const Rep fixed = weight_[v].numerator - Rep(total) * scale_.unit(i);  // edges above level i
        Rep suffix = Rep(hist_[static_cast<std::size_t>(i)]) * scale_.unit(i);
        std::uint64_t prefix = total - hist_[static_cast<std::size_t>(i)];
        for (Level j = i - 1; j >= 1; --j) {
            ++ledger_.elementary_ops;
            const std::uint64_t at = hist_[static_cast<std::size_t>(j)];
            suffix += Rep(at) * scale_.unit(j);
            prefix -= at;
            const Weight w{fixed + suffix + Rep(prefix) * scale_.unit(j)};
            if (scale_.gt_inv_beta2(w)) return j;
        }
        return 0;
    }

    /// W_{v->j} evaluated straight from the definition, O(deg(v) * f).
    Weight weight_at_level(NodeId v, Level j) const {
        check_node(v);
        check_level(j);
        Weight w;
        for (Level k = level_[v]; k <= config_.L; ++k) {
            for (std::size_t s = head_[slot(v, k)]; s != kNil; s = slot_next_[s]) {
                const Level other = other_level(slot_edge_[s], v);
                w.numerator += scale_.unit(std::max(other, j));
            }
        }
        return w;
    }

    // ---------------------------------------------------------------- queries

    Level level(NodeId v) const {
        check_node(v);
        return level_[v];
    }

    Weight node_weight(NodeId v) const {
        check_node(v);
        return weight_[v];
    }

    /// W_v^+: weight from incident edges strictly above level(v). O(L).
    Weight up_weight(NodeId v) const {
        check_node(v);
        Weight w;
        for (Level k = level_[v] + 1; k <= config_.L; ++k) w.numerator += Rep(count_[slot(v, k)]) * scale_.unit(k);
        return w;
    }

    Level edge_level(EdgeId id) const { return live_record(id).level; }

    std::span<const NodeId> endpoints(EdgeId id) const {
        const EdgeRecord& rec = live_record(id);
        return {slot_node_.data() + rec.first_slot, rec.size};
    }

    bool is_live(EdgeId id) const { return id >= 1 && id <= records_.size() && records_[id - 1].live; }

    std::size_t edge_count() const { return live_edges_; }

    /// Highest id handed out so far; ids are 1-based and never reused.
    EdgeId last_edge_id() const { return records_.size(); }

    /// max level over the endpoints of e other than v.
    Level other_level(EdgeId id, NodeId v) const {
        const EdgeRecord& rec = records_[id - 1];
        Level best = 0;
        for (std::size_t s = rec.first_slot; s < rec.first_slot + rec.size; ++s) {
            if (slot_node_[s] != v) best = std::max(best, level_[slot_node_[s]]);
        }
        return best;
    }

    std::uint64_t bucket_count(NodeId v, Level i) const {
        check_node(v);
        check_level(i);
        return count_[slot(v, i)];
    }

    template <class Fn>
    void for_each_in_bucket(NodeId v, Level i, Fn&& fn) const {
        check_node(v);
        check_level(i);
        for (std::size_t s = head_[slot(v, i)]; s != kNil; s = slot_next_[s]) fn(slot_edge_[s]);
    }

    template <class Fn>
    void for_each_live_edge(Fn&& fn) const {
        for (std::size_t k = 0; k < records_.size(); ++k)
            if (records_[k].live) fn(static_cast<EdgeId>(k + 1));
    }

    /// Nodes at level >= 1.
    std::vector<NodeId> vertex_cover() const {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < config_.n; ++v)
            if (level_[v] > 0) out.push_back(v);
        return out;
    }

    /// sum_e beta^-level(e) as a numerator over beta^L.
    BigInt matching_numerator() const {
        BigInt sum = 0;
        for_each_live_edge([&](EdgeId id) { sum += detail::to_big(scale_.unit(records_[id - 1].level)); });
        return sum;
    }

    /// matching value rendered as "numerator/beta^L".
    std::string matching_value() const { return matching_numerator().str() + "/" + config_.beta_pow_L().str(); }

    std::vector<std::pair<EdgeId, Weight>> fractional_matching() const {
        std::vector<std::pair<EdgeId, Weight>> out;
        for_each_live_edge([&](EdgeId id) { out.emplace_back(id, scale_.from_pow(records_[id - 1].level)); });
        return out;
    }

    // ---------------------------------------------------------- node states

    bool up_dirty_by_weight(NodeId v) const {
        return level_[v] == 0 ? scale_.gt_inv_beta2(weight_[v]) : scale_.ge_one(weight_[v]);
    }

    bool down_dirty_by_weight(NodeId v) const { return level_[v] > 0 && scale_.le_down(weight_[v]); }

    bool is_super_clean(NodeId v) const {
        const Weight& w = weight_[v];
        if (level_[v] == 0) return scale_.le_inv_beta2(w);
        return scale_.gt_inv_beta2(w) && scale_.le_inv_beta(w) && scale_.le_inv_beta2(up_weight(v));
    }

    bool up_dirty_flag(NodeId v) const { return dirty_up_[v] != 0; }
    bool down_dirty_flag(NodeId v) const { return dirty_down_[v] != 0; }

    bool any_dirty() const {
        for (NodeId v = 0; v < config_.n; ++v)
            if (dirty_up_[v] || dirty_down_[v] || up_dirty_by_weight(v) || down_dirty_by_weight(v)) return true;
        return false;
    }

    // ------------------------------------------------------------ accounting

    const CounterLedger& counters() const { return ledger_; }

    /// Enables the post-repair assertions (fix-up window, super-clean,
    /// W < 2 after every weight change, op budget).
    void set_verify(bool on) { verify_.on = on; }
    bool verifying() const { return verify_.on; }
    const VerifyStats& verify_stats() const { return verify_.stats; }

private:
    friend struct testing::GraphPeer;

    static constexpr std::size_t kNil = std::numeric_limits<std::size_t>::max();

    struct EdgeRecord {
        std::size_t first_slot = 0;
        std::uint32_t size = 0;
        Level level = 0;
        bool live = false;
    };

    struct Verification {
        bool on = false;
        VerifyStats stats;
        explicit operator bool() const { return on; }
    };

    std::size_t slot(NodeId v, Level i) const { return static_cast<std::size_t>(v) * stride_ + static_cast<std::size_t>(i); }

    void check_node(NodeId v) const {
        if (v >= config_.n) throw std::out_of_range("unknown node " + std::to_string(v));
    }

    void check_level(Level i) const {
        if (i < 0 || i > config_.L)
            throw std::out_of_range("level " + std::to_string(i) + " outside [0, " + std::to_string(config_.L) + "]");
    }

    const EdgeRecord& live_record(EdgeId id) const {
        if (!is_live(id)) throw std::out_of_range("unknown edge id " + std::to_string(id));
        return records_[id - 1];
    }

    const EdgeRecord& record(EdgeId id) const { return records_[id - 1]; }

    std::uint64_t op_budget() const {
        const std::uint64_t f = config_.f;
        return 1'000'000ULL * f * f * (ledger_.T + 1);
    }

    void bucket_link(std::size_t s, NodeId v, Level i) {
        const std::size_t b = slot(v, i);
        slot_prev_[s] = kNil;
        slot_next_[s] = head_[b];
        if (head_[b] != kNil) slot_prev_[head_[b]] = s;
        head_[b] = s;
        ++count_[b];
    }

    void bucket_unlink(std::size_t s, NodeId v, Level i) {
        const std::size_t b = slot(v, i);
        if (slot_prev_[s] != kNil)
            slot_next_[slot_prev_[s]] = slot_next_[s];
        else
            head_[b] = slot_next_[s];
        if (slot_next_[s] != kNil) slot_prev_[slot_next_[s]] = slot_prev_[s];
        --count_[b];
    }

    void check_weight_bound(NodeId u) {
        ++verify_.stats.weight_bound_checks;
        if (!scale_.lt_two(weight_[u])) {
            throw InvariantViolation("node " + std::to_string(u) + " reached weight " + scale_.render(weight_[u]) + " >= 2");
        }
    }

    std::vector<NodeId> canonical_vertices(std::span<const NodeId> vertices) const {
        if (vertices.size() < 2 || vertices.size() > config_.f) {
            throw UpdateError("edge must have between 2 and " + std::to_string(config_.f) + " endpoints, got " +
                              std::to_string(vertices.size()));
        }
        std::vector<NodeId> key(vertices.begin(), vertices.end());
        std::sort(key.begin(), key.end());
        for (std::size_t k = 0; k < key.size(); ++k) {
            if (key[k] >= config_.n) throw UpdateError("unknown vertex " + std::to_string(key[k]));
            if (k > 0 && key[k] == key[k - 1]) throw UpdateError("repeated vertex " + std::to_string(key[k]));
        }
        return key;
    }

    EdgeId link_new_edge(std::span<const NodeId> vertices) {
        std::vector<NodeId> key = canonical_vertices(vertices);
        if (by_vertices_.contains(key)) throw UpdateError("edge with the same vertex set is already present");

        const EdgeId id = records_.size() + 1;
        EdgeRecord rec;
        rec.first_slot = slot_node_.size();
        rec.size = static_cast<std::uint32_t>(key.size());
        rec.live = true;
        for (NodeId u : key) rec.level = std::max(rec.level, level_[u]);
        for (NodeId u : key) {
            slot_node_.push_back(u);
            slot_edge_.push_back(id);
            slot_prev_.push_back(kNil);
            slot_next_.push_back(kNil);
        }
        records_.push_back(rec);
        for (std::size_t s = rec.first_slot; s < rec.first_slot + rec.size; ++s) {
            const NodeId u = slot_node_[s];
            bucket_link(s, u, rec.level);
            weight_[u].numerator += scale_.unit(rec.level);
            if (verify_) check_weight_bound(u);
        }
        ledger_.elementary_ops += rec.size;
        ++live_edges_;
        by_vertices_.emplace(key, id);
        evaluate_sorted(key);
        return id;
    }

    void unlink_edge(EdgeId id) {
        if (!is_live(id)) throw UpdateError("edge id " + std::to_string(id) + " is not live");
        EdgeRecord& rec = records_[id - 1];
        std::vector<NodeId> key(slot_node_.begin() + static_cast<std::ptrdiff_t>(rec.first_slot),
                                slot_node_.begin() + static_cast<std::ptrdiff_t>(rec.first_slot + rec.size));
        for (std::size_t s = rec.first_slot; s < rec.first_slot + rec.size; ++s) {
            const NodeId u = slot_node_[s];
            bucket_unlink(s, u, rec.level);
            weight_[u] = scale_.sub_pow(weight_[u], rec.level);
        }
        ledger_.elementary_ops += rec.size;
        rec.live = false;
        --live_edges_;
        by_vertices_.erase(key);
        evaluate_sorted(key);
    }

    /// Moves every endpoint slot of edge `id` to bucket `to` and applies the
    /// weight delta beta^-to - beta^-from to each endpoint.
    void retag(EdgeId id, Level to) {
        EdgeRecord& rec = records_[id - 1];
        const Level from = rec.level;
        for (std::size_t s = rec.first_slot; s < rec.first_slot + rec.size; ++s) {
            const NodeId u = slot_node_[s];
            bucket_unlink(s, u, from);
            bucket_link(s, u, to);
            weight_[u].numerator += scale_.unit(to);
            weight_[u].numerator -= scale_.unit(from);
            if (verify_) check_weight_bound(u);
            affected_.push_back(u);
        }
        rec.level = to;
    }

    /// Returns the number of incident edges touched by the move: those with
    /// other-level < j when going up, those with other-level <= i going down.
    std::uint64_t relocate(NodeId v, Level j) {
        check_level(j);
        const Level i = level_[v];
        if (j == i) throw InvariantViolation("move_node to the current level " + std::to_string(i));

        touched_.clear();
        affected_.clear();
        affected_.push_back(v);
        if (j > i) {
            // Every edge in buckets [i, j) has other-level < j and lands at j.
            for (Level k = i; k < j; ++k) {
                ++ledger_.elementary_ops;
                for (std::size_t s = head_[slot(v, k)]; s != kNil; s = slot_next_[s]) touched_.push_back(slot_edge_[s]);
            }
            level_[v] = j;
            for (EdgeId id : touched_) {
                ledger_.elementary_ops += record(id).size;
                retag(id, j);
            }
        } else {
            // Only bucket i holds edges with other-level <= i.
            for (std::size_t s = head_[slot(v, i)]; s != kNil; s = slot_next_[s]) touched_.push_back(slot_edge_[s]);
            level_[v] = j;
            for (EdgeId id : touched_) {
                ledger_.elementary_ops += record(id).size;
                const Level to = std::max(other_level(id, v), j);
                if (to != record(id).level) retag(id, to);
            }
        }
        evaluate_sorted(affected_);
        return touched_.size();
    }

    void evaluate_sorted(std::vector<NodeId>& nodes) {
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        for (NodeId u : nodes) evaluate(u);
    }

    void evaluate(NodeId u) {
        ++ledger_.elementary_ops;
        if (up_dirty_by_weight(u)) {
            dirty_down_[u] = 0;
            if (!dirty_up_[u]) {
                dirty_up_[u] = 1;
                up_stack_.push_back(u);
                ++ledger_.elementary_ops;
            }
        } else if (down_dirty_by_weight(u)) {
            dirty_up_[u] = 0;
            if (!dirty_down_[u]) {
                dirty_down_[u] = 1;
                down_stack_.push_back(u);
                ++ledger_.elementary_ops;
            }
        } else {
            dirty_up_[u] = 0;
            dirty_down_[u] = 0;
        }
    }

    Config config_;
    Scale scale_;
    std::size_t stride_;

    std::vector<Level> level_;
    std::vector<Weight> weight_;
    std::vector<char> dirty_up_;
    std::vector<char> dirty_down_;
    std::vector<std::size_t> head_;     // per (node, level) bucket head slot
    std::vector<std::uint64_t> count_;  // per (node, level) bucket size

    std::vector<EdgeRecord> records_;
    std::vector<NodeId> slot_node_;
    std::vector<EdgeId> slot_edge_;
    std::vector<std::size_t> slot_prev_;
    std::vector<std::size_t> slot_next_;
    std::unordered_map<std::vector<NodeId>, EdgeId, detail::NodeSetHash> by_vertices_;
    std::size_t live_edges_ = 0;

    std::vector<NodeId> up_stack_;
    std::vector<NodeId> down_stack_;

    CounterLedger ledger_;
    Verification verify_;

    std::vector<EdgeId> touched_;
    std::vector<NodeId> affected_;
    std::vector<std::uint64_t> hist_;
};

using Graph = BasicGraph<u128>;
using BigGraph = BasicGraph<BigInt>;

/// Calls fn with a Graph when the 128-bit weight path fits, otherwise with
/// a BigGraph.
template <class Fn>
decltype(auto) with_graph(const Config& config, Fn&& fn) {
    if (fits_u128(config)) {
        Graph g(config);
        return fn(g);
    }
    BigGraph g(config);
    return fn(g);
}

}  // namespace dyncover
