#ifndef CGSPAN_DFS_CODE_HPP_
#define CGSPAN_DFS_CODE_HPP_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cgspan/translate.hpp"

namespace cgspan {

// Edge label of a DFS tuple: argument positions at the from/to endpoints plus
// the shared-concept path. Ordered by (min position, max position, concept
// path), with the oriented positions as final tiebreak so the order is total.
struct EdgeLabel {
    int pos_from = 0, pos_to = 0;
    Path cpath;

    friend std::strong_ordering operator<=>(const EdgeLabel& x, const EdgeLabel& y) {
        auto kx = std::make_tuple(std::min(x.pos_from, x.pos_to), std::max(x.pos_from, x.pos_to),
                                  x.cpath, x.pos_from, x.pos_to);
        auto ky = std::make_tuple(std::min(y.pos_from, y.pos_to), std::max(y.pos_from, y.pos_to),
                                  y.cpath, y.pos_from, y.pos_to);
        return kx <=> ky;
    }
    bool operator==(const EdgeLabel& o) const { return (*this <=> o) == 0; }
};

using NodeLabel = std::vector<Slot>;

struct EdgeTuple {
    int from = 0, to = 0;  // discovery indices
    NodeLabel label_from;
    EdgeLabel edge;
    NodeLabel label_to;

    bool forward() const { return from < to; }

    // gSpan total order on DFS tuples.
    friend std::strong_ordering operator<=>(const EdgeTuple& x, const EdgeTuple& y) {
        if (x.forward() && y.forward()) {
            if (x.to != y.to) return x.to <=> y.to;
            if (x.from != y.from) return y.from <=> x.from;  // larger from first
        } else if (!x.forward() && !y.forward()) {
            if (x.from != y.from) return x.from <=> y.from;
            if (x.to != y.to) return x.to <=> y.to;
        } else if (!x.forward()) {  // backward before forward from same spot
            if (auto c = x.from <=> y.to; c != 0) return c;
            return std::strong_ordering::less;
        } else {
            if (auto c = x.to <=> y.from; c != 0) return c;
            return std::strong_ordering::greater;
        }
        if (auto c = x.label_from <=> y.label_from; c != 0) return c;
        if (auto c = x.edge <=> y.edge; c != 0) return c;
        return x.label_to <=> y.label_to;
    }
    bool operator==(const EdgeTuple& o) const { return (*this <=> o) == 0; }
};

struct DFSCode {
    std::optional<NodeLabel> single;  // single-vertex convention
    std::vector<EdgeTuple> tuples;

    auto operator<=>(const DFSCode&) const = default;

    std::string to_string() const {
        auto slot_str = [](const Slot& s) {
            std::string o = s.kind == SlotKind::Relation ? "R:" : "C:";
            o += join_path(s.segs, s.marker);
            return o;
        };
        auto label_str = [&](const NodeLabel& l) {
            std::string o = "[";
            for (std::size_t i = 0; i < l.size(); ++i) {
                if (i) o += ",";
                o += slot_str(l[i]);
            }
            return o + "]";
        };
        if (single) return "(0,0," + label_str(*single) + ")";
        std::string out;
        for (const auto& t : tuples) {
            out += "(" + std::to_string(t.from) + "," + std::to_string(t.to) + "," +
                   label_str(t.label_from) + ",(" + std::to_string(t.edge.pos_from) + "," +
                   std::to_string(t.edge.pos_to) + "," + join_path(t.edge.cpath) + ")," +
                   label_str(t.label_to) + ")";
        }
        return out;
    }
};

namespace detail {

struct DfsState {
    std::vector<int> vmap;             // graph node -> discovery index or -1
    std::vector<std::size_t> order;    // discovery index -> graph node
    std::vector<int> rightmost_path;   // discovery indices, root first
    std::vector<bool> used;            // per graph edge

    bool operator<(const DfsState& o) const {
        return std::tie(order, used) < std::tie(o.order, o.used);
    }
};

struct Extension {
    EdgeTuple tuple;
    std::size_t edge_index;
    std::size_t new_graph_node;  // only for forward
    int anchor;                  // discovery index the extension starts from
};

// A partial DFS can only ever absorb an unused edge if (a) some endpoint is
// still undiscovered with the other endpoint on the rightmost path, or (b)
// both are discovered, one is the rightmost vertex and the other lies on the
// rightmost path. States violating this for any unused edge can never grow
// into a complete code and are dropped.
inline bool can_complete(const DfsState& s, const Tlg& g) {
    int rightmost = s.rightmost_path.back();
    auto on_path = [&](int d) {
        for (int p : s.rightmost_path)
            if (p == d) return true;
        return false;
    };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (s.used[e]) continue;
        int da = s.vmap[g.edges[e].a];
        int db = s.vmap[g.edges[e].b];
        if (da < 0 && db < 0) continue;
        if (da >= 0 && db >= 0) {
            int hi = std::max(da, db), lo = std::min(da, db);
            if (hi != rightmost || !on_path(lo)) return false;
        } else {
            if (!on_path(std::max(da, db))) return false;
        }
    }
    return true;
}

}  // namespace detail

inline bool tlg_connected(const Tlg& g) {
    if (g.nodes.empty()) return false;
    std::vector<bool> seen(g.nodes.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    auto adj = g.adjacency();
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t e : adj[u]) {
            std::size_t w = g.edges[e].a == u ? g.edges[e].b : g.edges[e].a;
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.nodes.size();
}

// Lexicographically minimal DFS code of a connected TLG pattern. All
// isomorphic inputs yield the same code; a disconnected input throws.
inline DFSCode min_dfs_code(const Tlg& g) {
    if (!tlg_connected(g)) throw FormalismViolation("min_dfs_code requires a connected graph");
    DFSCode code;
    if (g.edges.empty()) {
        NodeLabel best = g.nodes[0].slots;
        for (const auto& n : g.nodes) best = std::min(best, n.slots);
        code.single = best;
        return code;
    }
    auto adj = g.adjacency();
    std::set<detail::DfsState> states;
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        detail::DfsState s;
        s.vmap.assign(g.nodes.size(), -1);
        s.vmap[u] = 0;
        s.order = {u};
        s.rightmost_path = {0};
        s.used.assign(g.edges.size(), false);
        states.insert(std::move(s));
    }
    for (std::size_t step = 0; step < g.edges.size(); ++step) {
        std::optional<EdgeTuple> best;
        std::set<detail::DfsState> winners;
        for (const auto& s : states) {
            int rightmost = s.rightmost_path.back();
            auto consider = [&](detail::Extension ext) {
                if (best && *best < ext.tuple) return;
                detail::DfsState ns = s;
                ns.used[ext.edge_index] = true;
                if (ext.tuple.forward()) {
                    ns.vmap[ext.new_graph_node] = ext.tuple.to;
                    ns.order.push_back(ext.new_graph_node);
                    while (!ns.rightmost_path.empty() && ns.rightmost_path.back() != ext.anchor)
                        ns.rightmost_path.pop_back();
                    ns.rightmost_path.push_back(ext.tuple.to);
                }
                if (!detail::can_complete(ns, g)) return;
                if (!best || ext.tuple < *best) {
                    best = ext.tuple;
                    winners.clear();
                }
                winners.insert(std::move(ns));
            };
            // backward: from the rightmost vertex to a rightmost-path vertex
            std::size_t vr = s.order[static_cast<std::size_t>(rightmost)];
            for (std::size_t e : adj[vr]) {
                if (s.used[e]) continue;
                const auto& ed = g.edges[e];
                std::size_t other = ed.a == vr ? ed.b : ed.a;
                int oi = s.vmap[other];
                if (oi < 0 || oi == rightmost) continue;
                bool on_path = false;
                for (int p : s.rightmost_path)
                    if (p == oi) { on_path = true; break; }
                if (!on_path) continue;
                detail::Extension ext;
                ext.edge_index = e;
                ext.new_graph_node = other;
                ext.anchor = rightmost;
                ext.tuple.from = rightmost;
                ext.tuple.to = oi;
                ext.tuple.label_from = g.nodes[vr].slots;
                ext.tuple.label_to = g.nodes[other].slots;
                ext.tuple.edge.cpath = ed.cpath;
                if (ed.a == vr) {
                    ext.tuple.edge.pos_from = ed.pos_a;
                    ext.tuple.edge.pos_to = ed.pos_b;
                } else {
                    ext.tuple.edge.pos_from = ed.pos_b;
                    ext.tuple.edge.pos_to = ed.pos_a;
                }
                consider(std::move(ext));
            }
            // forward: from any rightmost-path vertex to a fresh vertex
            for (int anchor : s.rightmost_path) {
                std::size_t va = s.order[static_cast<std::size_t>(anchor)];
                for (std::size_t e : adj[va]) {
                    if (s.used[e]) continue;
                    const auto& ed = g.edges[e];
                    std::size_t other = ed.a == va ? ed.b : ed.a;
                    if (s.vmap[other] != -1) continue;
                    detail::Extension ext;
                    ext.edge_index = e;
                    ext.new_graph_node = other;
                    ext.anchor = anchor;
                    ext.tuple.from = anchor;
                    ext.tuple.to = static_cast<int>(s.order.size());
                    ext.tuple.label_from = g.nodes[va].slots;
                    ext.tuple.label_to = g.nodes[other].slots;
                    ext.tuple.edge.cpath = ed.cpath;
                    if (ed.a == va) {
                        ext.tuple.edge.pos_from = ed.pos_a;
                        ext.tuple.edge.pos_to = ed.pos_b;
                    } else {
                        ext.tuple.edge.pos_from = ed.pos_b;
                        ext.tuple.edge.pos_to = ed.pos_a;
                    }
                    consider(std::move(ext));
                }
            }
        }
        if (!best) throw std::logic_error("min_dfs_code: no viable DFS extension");
        code.tuples.push_back(*best);
        states = std::move(winners);
    }
    return code;
}

}  // namespace cgspan

#endif  // CGSPAN_DFS_CODE_HPP_
