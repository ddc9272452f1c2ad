#pragma once

// Trace driver with selectable checking depth and JSON metrics.

#include "dyncover/accounting.hpp"
#include "dyncover/graph.hpp"
#include "dyncover/harness/trace.hpp"
#include "dyncover/verify/approximation.hpp"
#include "dyncover/verify/differential.hpp"
#include "dyncover/verify/min_cover.hpp"
#include "dyncover/verify/naive_graph.hpp"
#include "dyncover/verify/reference.hpp"

#include "json.hpp"

#include <chrono>
#include <optional>
#include <string>

namespace dyncover::harness {

enum class CheckMode { None, Light, Full, Differential };

inline CheckMode parse_check_mode(const std::string& s) {
    if (s == "none") return CheckMode::None;
    if (s == "light") return CheckMode::Light;
    if (s == "full") return CheckMode::Full;
    if (s == "differential") return CheckMode::Differential;
    throw std::invalid_argument("unknown check mode '" + s + "'");
}

inline constexpr std::uint32_t kOracleNodeLimit = 16;

struct RunOptions {
    CheckMode check = CheckMode::None;
    std::size_t oracle_every = 20;  // full/differential modes, n <= 16 only; 0 disables
};

struct RunMetrics {
    Config config;
    CounterLedger counters;
    std::string i_down_num = "0";
    std::string i_down_den = "1";
    std::size_t cover_size = 0;
    std::string matching_value;
    double wall_ms = 0;
    std::uint64_t checks_passed = 0;
    double ops_per_update = 0;
    VerifyStats verify;
    std::size_t oracle_calls = 0;
    std::optional<double> max_ratio;
    bool ok = true;
    std::string failure;
};

namespace detail {

template <class Rep>
class Checker {
public:
    Checker(const BasicGraph<Rep>& g, const RunOptions& opt, RunMetrics& m)
        : g_(g), opt_(opt), m_(m) {
        if (opt.check == CheckMode::Differential) naive_.emplace(g.config());
    }

    void mirror(const Update& u) {
        if (!naive_) return;
        if (u.kind == Update::Kind::Insert)
            naive_->insert(u.vertices);
        else
            naive_->erase(u.edge);
    }

    void after_update(std::size_t index) {
        if (opt_.check == CheckMode::None) return;
        verify::assert_quiescent(g_);
        ++m_.checks_passed;
        if (opt_.check == CheckMode::Light) return;

        verify::assert_consistent(g_);
        ++m_.checks_passed;

        const LemmaReport lemmas = check_lemmas(g_.counters(), g_.config(), false);
        if (!lemmas.ok()) throw InvariantViolation("counter lemma violated: " + lemmas.failures());
        ++m_.checks_passed;

        if (opt_.oracle_every > 0 && g_.config().n <= kOracleNodeLimit && (index + 1) % opt_.oracle_every == 0) {
            const auto oracle = verify::brute_force_min_vertex_cover(verify::live_edge_sets(g_), g_.config().n);
            const auto report = verify::check_approximation(g_, oracle);
            ++m_.oracle_calls;
            if (!report.ok()) throw InvariantViolation("approximation check failed: " + report.failure);
            if (report.ratio && (!m_.max_ratio || *report.ratio > *m_.max_ratio)) m_.max_ratio = report.ratio;
            ++m_.checks_passed;
        }

        if (naive_) {
            if (auto diff = verify::compare_states(g_, *naive_))
                throw InvariantViolation("differential divergence at update " + std::to_string(index) + ": " + *diff);
            ++m_.checks_passed;
        }
    }

    void at_end() {
        if (opt_.check == CheckMode::None || opt_.check == CheckMode::Light) return;
        const LemmaReport lemmas = check_lemmas(g_.counters(), g_.config(), g_.edge_count() == 0);
        if (!lemmas.ok()) throw InvariantViolation("counter lemma violated at end of trace: " + lemmas.failures());
        ++m_.checks_passed;
    }

private:
    const BasicGraph<Rep>& g_;
    const RunOptions& opt_;
    RunMetrics& m_;
    std::optional<verify::NaiveGraph> naive_;
};

}  // namespace detail

/// Replays a trace. Check failures are reported in the metrics (ok = false)
/// rather than thrown; replay stops at the first failure.
inline RunMetrics run(const Trace& trace, const RunOptions& opt = {}) {
    RunMetrics m;
    m.config = make_config(trace.n, trace.f);
    with_graph(m.config, [&](auto& g) {
        g.set_verify(opt.check == CheckMode::Full || opt.check == CheckMode::Differential);
        detail::Checker checker(g, opt, m);
        const auto start = std::chrono::steady_clock::now();
        try {
            for (std::size_t k = 0; k < trace.updates.size(); ++k) {
                const Update& u = trace.updates[k];
                if (u.kind == Update::Kind::Insert)
                    g.insert_edge(u.vertices);
                else
                    g.delete_edge(u.edge);
                checker.mirror(u);
                checker.after_update(k);
            }
            checker.at_end();
        } catch (const std::exception& e) {
            m.ok = false;
            m.failure = e.what();
        }
        m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        m.counters = g.counters();
        const DownRational idown = i_down_reduced(m.counters, m.config);
        m.i_down_num = idown.numerator.str();
        m.i_down_den = idown.denominator.str();
        m.cover_size = g.vertex_cover().size();
        m.matching_value = g.matching_value();
        m.verify = g.verify_stats();
        m.ops_per_update =
            m.counters.T == 0 ? 0.0 : static_cast<double>(m.counters.elementary_ops) / static_cast<double>(m.counters.T);
    });
    return m;
}

inline nlohmann::json to_json(const RunMetrics& m) {
    nlohmann::json j;
    j["n"] = m.config.n;
    j["f"] = m.config.f;
    j["beta"] = m.config.beta;
    j["alpha"] = m.config.alpha;
    j["L"] = m.config.L;
    j["T"] = std::to_string(m.counters.T);
    j["C_up"] = std::to_string(m.counters.C_up);
    j["C_down"] = std::to_string(m.counters.C_down);
    j["I_down_num"] = m.i_down_num;
    j["I_down_den"] = m.i_down_den;
    j["elementary_ops"] = std::to_string(m.counters.elementary_ops);
    j["cover_size"] = m.cover_size;
    j["matching_value"] = m.matching_value;
    j["wall_ms"] = m.wall_ms;
    j["checks_passed"] = m.checks_passed;
    j["ops_per_update"] = m.ops_per_update;
    j["ok"] = m.ok;
    if (!m.ok) j["failure"] = m.failure;
    if (m.max_ratio) j["max_approx_ratio"] = *m.max_ratio;
    return j;
}

}  // namespace dyncover::harness
