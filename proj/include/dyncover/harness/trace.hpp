#pragma once

// Text update traces.
//
//   init <n> <f>
//   + v1 v2 ... vk      insert a hyperedge, 2 <= k <= f, distinct 0-based ids
//   - <edge_id>         delete the edge with this 1-based insertion index
//
// '#' starts a comment; blank lines are ignored.

#include "dyncover/config.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyncover::harness {

struct Update {
    enum class Kind { Insert, Delete };
    Kind kind = Kind::Insert;
    std::vector<NodeId> vertices;  // Insert
    EdgeId edge = 0;               // Delete

    static Update insert(std::vector<NodeId> vs) { return {Kind::Insert, std::move(vs), 0}; }
    static Update erase(EdgeId id) { return {Kind::Delete, {}, id}; }

    friend bool operator==(const Update&, const Update&) = default;
};

struct Trace {
    std::uint32_t n = 0;
    std::uint32_t f = 0;
    std::vector<Update> updates;

    friend bool operator==(const Trace&, const Trace&) = default;
};

class TraceParseError : public std::runtime_error {
public:
    TraceParseError(std::size_t line, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline bool parse_uint(const std::string& tok, std::uint64_t& out) {
    if (tok.empty() || tok.size() > 19) return false;
    out = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') return false;
        out = out * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return true;
}

}  // namespace detail

/// Parses and validates a trace: deletes must name live edges, inserts must
/// have valid cardinality and must not duplicate a live vertex set.
inline Trace parse_trace(std::istream& in) {
    Trace trace;
    bool have_header = false;
    std::set<std::vector<NodeId>> live_sets;
    std::vector<std::vector<NodeId>> by_id;  // canonical key per inserted id
    std::vector<bool> live;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        auto number = [&](const std::string& t, const char* what) {
            std::uint64_t v = 0;
            if (!detail::parse_uint(t, v)) throw TraceParseError(lineno, std::string("expected ") + what + ", got '" + t + "'");
            return v;
        };

        if (!have_header) {
            if (tok[0] != "init" || tok.size() != 3) throw TraceParseError(lineno, "expected header 'init <n> <f>'");
            const std::uint64_t n = number(tok[1], "node count");
            const std::uint64_t f = number(tok[2], "max edge size");
            if (n < 2 || n > 0xffffffffULL) throw TraceParseError(lineno, "node count must be at least 2");
            if (f < 2 || f > 64) throw TraceParseError(lineno, "max edge size must be in [2, 64]");
            trace.n = static_cast<std::uint32_t>(n);
            trace.f = static_cast<std::uint32_t>(f);
            have_header = true;
            continue;
        }

        if (tok[0] == "+") {
            const std::size_t k = tok.size() - 1;
            if (k < 2 || k > trace.f)
                throw TraceParseError(lineno, "insert needs between 2 and " + std::to_string(trace.f) + " vertices, got " +
                                                  std::to_string(k));
            std::vector<NodeId> vs;
            for (std::size_t t = 1; t < tok.size(); ++t) {
                const std::uint64_t v = number(tok[t], "vertex id");
                if (v >= trace.n) throw TraceParseError(lineno, "vertex " + tok[t] + " out of range");
                vs.push_back(static_cast<NodeId>(v));
            }
            std::vector<NodeId> key = vs;
            std::sort(key.begin(), key.end());
            if (std::adjacent_find(key.begin(), key.end()) != key.end()) throw TraceParseError(lineno, "repeated vertex in edge");
            if (live_sets.contains(key)) throw TraceParseError(lineno, "edge duplicates a live edge");
            live_sets.insert(key);
            by_id.push_back(std::move(key));
            live.push_back(true);
            trace.updates.push_back(Update::insert(std::move(vs)));
        } else if (tok[0] == "-") {
            if (tok.size() != 2) throw TraceParseError(lineno, "delete takes exactly one edge id");
            const std::uint64_t id = number(tok[1], "edge id");
            if (id == 0 || id > by_id.size() || !live[id - 1])
                throw TraceParseError(lineno, "delete of edge " + tok[1] + " which is not live");
            live[id - 1] = false;
            live_sets.erase(by_id[id - 1]);
            trace.updates.push_back(Update::erase(id));
        } else {
            throw TraceParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!have_header) throw TraceParseError(lineno + 1, "missing 'init <n> <f>' header");
    return trace;
}

inline Trace parse_trace(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

inline void emit_trace(const Trace& trace, std::ostream& out) {
    out << "init " << trace.n << ' ' << trace.f << '\n';
    for (const Update& u : trace.updates) {
        if (u.kind == Update::Kind::Insert) {
            out << '+';
            for (NodeId v : u.vertices) out << ' ' << v;
            out << '\n';
        } else {
            out << "- " << u.edge << '\n';
        }
    }
}

inline std::string emit_trace(const Trace& trace) {
    std::ostringstream out;
    emit_trace(trace, out);
    return out.str();
}

}  // namespace dyncover::harness
