#pragma once

// A deliberately slow mirror of the level hierarchy: a flat edge list plus
// node levels. Every weight is recomputed from scratch, level searches scan
// all candidate levels, and threshold tests cross-multiply big integers.
// The dirty scheduling rule matches BasicGraph: after each step every node
// is re-classified in ascending id order and newly dirty nodes are pushed.

#include "dyncover/bigint.hpp"
#include "dyncover/config.hpp"
#include "dyncover/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dyncover::verify {

enum class SchedulerOrder { Lifo, Fifo };

class NaiveGraph {
public:
    explicit NaiveGraph(const Config& config, SchedulerOrder order = SchedulerOrder::Lifo)
        : config_(config),
          order_(order),
          level_(config.n, 0),
          dirty_up_(config.n, false),
          dirty_down_(config.n, false),
          down_hist_(static_cast<std::size_t>(config.L) + 1, 0) {
        scale_ = boost::multiprecision::pow(BigInt(config.beta), static_cast<unsigned>(config.L));
        for (Level i = 0; i <= config.L; ++i)
            units_.push_back(boost::multiprecision::pow(BigInt(config.beta), static_cast<unsigned>(config.L - i)));
    }

    EdgeId insert(std::span<const NodeId> vertices) {
        std::vector<NodeId> key(vertices.begin(), vertices.end());
        std::sort(key.begin(), key.end());
        if (key.size() < 2 || key.size() > config_.f) throw UpdateError("bad edge cardinality");
        if (std::adjacent_find(key.begin(), key.end()) != key.end()) throw UpdateError("repeated vertex");
        if (key.back() >= config_.n) throw UpdateError("unknown vertex");
        if (present_.contains(key)) throw UpdateError("duplicate edge");
        const EdgeId id = ++last_id_;
        edges_.emplace(id, key);
        present_.insert(key);
        ++T_;
        sweep();
        fix();
        return id;
    }

    void erase(EdgeId id) {
        auto it = edges_.find(id);
        if (it == edges_.end()) throw UpdateError("unknown edge");
        present_.erase(it->second);
        edges_.erase(it);
        ++T_;
        sweep();
        fix();
    }

    Level level(NodeId v) const { return level_[v]; }

    /// W_v as a numerator over beta^L.
    BigInt weight(NodeId v) const { return weight_to(v, level_[v]); }

    std::uint64_t T() const { return T_; }
    std::uint64_t C_up() const { return c_up_; }
    std::uint64_t C_down() const { return c_down_; }
    const std::vector<std::uint64_t>& down_hist() const { return down_hist_; }

private:
    const BigInt& unit(Level i) const { return units_[static_cast<std::size_t>(i)]; }

    std::vector<BigInt> all_weights() const {
        std::vector<BigInt> w(config_.n, 0);
        for (const auto& [id, e] : edges_) {
            Level lvl = 0;
            for (NodeId u : e) lvl = std::max(lvl, level_[u]);
            for (NodeId u : e) w[u] += unit(lvl);
        }
        return w;
    }

    Level others_max(const std::vector<NodeId>& e, NodeId v) const {
        Level m = 0;
        for (NodeId u : e)
            if (u != v) m = std::max(m, level_[u]);
        return m;
    }

    BigInt weight_to(NodeId v, Level j) const {
        BigInt w = 0;
        for (const auto& [id, e] : edges_) {
            if (std::find(e.begin(), e.end(), v) == e.end()) continue;
            w += unit(std::max(others_max(e, v), j));
        }
        return w;
    }

    std::uint64_t count_other_at_most(NodeId v, Level bound) const {
        std::uint64_t k = 0;
        for (const auto& [id, e] : edges_) {
            if (std::find(e.begin(), e.end(), v) == e.end()) continue;
            if (others_max(e, v) <= bound) ++k;
        }
        return k;
    }

    // Cross-multiplied threshold tests against p/q: w * q vs p * beta^L.
    bool up_dirty(NodeId v, const BigInt& w) const {
        const BigInt b = config_.beta;
        if (level_[v] == 0) return w * b * b > scale_;
        return w >= scale_;
    }

    bool down_dirty(NodeId v, const BigInt& w) const {
        return level_[v] > 0 && w * BigInt(config_.alpha) * config_.beta * config_.beta <= scale_;
    }

    void sweep() {
        const std::vector<BigInt> weights = all_weights();
        for (NodeId v = 0; v < config_.n; ++v) {
            const BigInt& w = weights[v];
            if (up_dirty(v, w)) {
                dirty_down_[v] = false;
                if (!dirty_up_[v]) {
                    dirty_up_[v] = true;
                    up_.push_back(v);
                }
            } else if (down_dirty(v, w)) {
                dirty_up_[v] = false;
                if (!dirty_down_[v]) {
                    dirty_down_[v] = true;
                    down_.push_back(v);
                }
            } else {
                dirty_up_[v] = dirty_down_[v] = false;
            }
        }
    }

    NodeId take(std::deque<NodeId>& q) const {
        NodeId v;
        if (order_ == SchedulerOrder::Lifo) {
            v = q.back();
            q.pop_back();
        } else {
            v = q.front();
            q.pop_front();
        }
        return v;
    }

    void fix() {
        for (;;) {
            if (!up_.empty()) {
                NodeId v = take(up_);
                if (dirty_up_[v]) fix_up(v);
                continue;
            }
            if (!down_.empty()) {
                NodeId v = take(down_);
                if (dirty_down_[v]) fix_down(v);
                continue;
            }
            break;
        }
    }

    void fix_up(NodeId v) {
        const Level i = level_[v];
        for (Level j = i + 1; j <= config_.L; ++j) {
            if (weight_to(v, j) * config_.beta <= scale_) {
                c_up_ += count_other_at_most(v, j - 1);
                level_[v] = j;
                sweep();
                return;
            }
        }
        throw InvariantViolation("naive: no admissible up level");
    }

    void fix_down(NodeId v) {
        const Level i = level_[v];
        Level target = 0;
        for (Level j = i - 1; j >= 1; --j) {
            if (weight_to(v, j) * config_.beta * config_.beta > scale_) {
                target = j;
                break;
            }
        }
        c_down_ += count_other_at_most(v, i);
        ++down_hist_[static_cast<std::size_t>(i)];
        level_[v] = target;
        sweep();
    }

    Config config_;
    SchedulerOrder order_;
    BigInt scale_;
    std::vector<BigInt> units_;
    std::vector<Level> level_;
    std::vector<bool> dirty_up_;
    std::vector<bool> dirty_down_;
    std::deque<NodeId> up_;
    std::deque<NodeId> down_;
    std::map<EdgeId, std::vector<NodeId>> edges_;
    std::set<std::vector<NodeId>> present_;
    EdgeId last_id_ = 0;
    std::uint64_t T_ = 0;
    std::uint64_t c_up_ = 0;
    std::uint64_t c_down_ = 0;
    std::vector<std::uint64_t> down_hist_;
};

}  // namespace dyncover::verify
