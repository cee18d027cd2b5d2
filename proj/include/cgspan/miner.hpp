#ifndef CGSPAN_MINER_HPP_
#define CGSPAN_MINER_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cgspan/dfs_code.hpp"
#include "cgspan/graph.hpp"
#include "cgspan/parallel.hpp"
#include "cgspan/rules.hpp"
#include "cgspan/tlg_match.hpp"
#include "cgspan/translate.hpp"
#include "cgspan/vocabulary.hpp"

namespace cgspan {

struct MiningConfig {
    std::size_t minsup = 1;            // absolute graph count
    bool bricks = true;
    bool signatures = false;
    bool rules = false;
    std::optional<std::size_t> max_size;  // max pattern node count (bricks when on)
    bool strict_markers = false;
    bool injective = false;
    unsigned workers = 1;

    TranslateOptions translate_options() const {
        return TranslateOptions{bricks, signatures, strict_markers};
    }
};

struct Pattern {
    Tlg graph;
    std::size_t support = 0;
    std::string provenance = "mined";
    DFSCode code;
};

// All embeddings of a pattern, per database graph.
using GraphEmbeddings = std::vector<std::vector<TlgEmbedding>>;

inline std::size_t embeddings_support(const GraphEmbeddings& emb) {
    std::size_t n = 0;
    for (const auto& maps : emb)
        if (!maps.empty()) ++n;
    return n;
}

// Spec op: number of database graphs containing the pattern.
inline std::size_t support(const Tlg& pattern, const std::vector<Tlg>& db,
                           bool injective = false) {
    return tlg_support(pattern, db, injective);
}

inline GraphEmbeddings all_embeddings(const Tlg& pattern, const std::vector<Tlg>& db,
                                      const MiningConfig& cfg) {
    GraphEmbeddings emb(db.size());
    parallel_for(db.size(), cfg.workers,
                 [&](std::size_t i) { emb[i] = tlg_embeddings(pattern, db[i], 0, cfg.injective); });
    return emb;
}

namespace detail {

inline Slot root_slot(const Slot& s) {
    Slot r;
    r.kind = s.kind;
    r.segs = {s.segs.front()};
    return r;
}

inline TlgNode root_node(const TlgNode& n) {
    TlgNode r;
    for (const auto& s : n.slots) r.slots.push_back(root_slot(s));
    return r;
}

inline Path root_cpath(const Path& p) { return p.empty() ? Path{} : Path{p.front()}; }

// A pattern under construction: its DFS code (kept minimal), the pattern
// graph (node index = discovery index), the rightmost path and the live
// embedding lists.
struct GrowthState {
    DFSCode code;
    Tlg graph;
    std::vector<int> rmpath;
    GraphEmbeddings emb;
    std::size_t support = 0;
};

struct DbIndex {
    const std::vector<Tlg>* db;
    std::vector<std::vector<std::vector<std::size_t>>> adj;  // graph -> node -> edge idx

    explicit DbIndex(const std::vector<Tlg>& d) : db(&d) {
        adj.reserve(d.size());
        for (const auto& g : d) adj.push_back(g.adjacency());
    }
};

// One relation argument position holds exactly one concept, so concept
// sharing between bricks is transitive. A pattern is closed when every
// identity implied by its edges is itself an edge; non-closed patterns
// back-translate to a CG with more constraints than their counted support
// reflects, so the miner grows through them but never emits them.
inline bool is_closed(const Tlg& g) {
    if (!g.bricks) {
        // an argument position of a relation node binds a single concept node
        std::set<std::pair<std::size_t, int>> seen;
        for (const auto& e : g.edges) {
            auto key = e.pos_a >= 0 ? std::make_pair(e.a, e.pos_a)
                                    : std::make_pair(e.b, e.pos_b);
            if (!seen.insert(key).second) return false;
        }
        return true;
    }
    std::map<std::pair<std::size_t, int>, std::size_t> idx;
    std::vector<std::pair<std::size_t, int>> slots;
    std::vector<std::size_t> uf;
    auto get = [&](std::size_t n, int p) {
        auto [it, fresh] = idx.emplace(std::make_pair(n, p), slots.size());
        if (fresh) {
            slots.emplace_back(n, p);
            uf.push_back(it->second);
        }
        return it->second;
    };
    auto find = [&](std::size_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (const auto& e : g.edges) {
        std::size_t a = get(e.a, e.pos_a);
        std::size_t b = get(e.b, e.pos_b);
        uf[find(a)] = find(b);
    }
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < slots.size(); ++i) classes[find(i)].push_back(i);
    for (const auto& [root, members] : classes)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                auto [n1, p1] = slots[members[i]];
                auto [n2, p2] = slots[members[j]];
                if (n1 == n2) return false;  // needs a repeated-argument relation
                bool found = false;
                for (const auto& e : g.edges)
                    if ((e.a == n1 && e.pos_a == p1 && e.b == n2 && e.pos_b == p2) ||
                        (e.a == n2 && e.pos_a == p2 && e.b == n1 && e.pos_b == p1)) {
                        found = true;
                        break;
                    }
                if (!found) return false;
            }
    return true;
}

inline bool has_identical_edge(const Tlg& g, std::size_t a, std::size_t b, int pa, int pb,
                               const Path& cpath) {
    for (const auto& e : g.edges) {
        if (e.a == a && e.b == b && e.pos_a == pa && e.pos_b == pb && e.cpath == cpath)
            return true;
        if (e.a == b && e.b == a && e.pos_a == pb && e.pos_b == pa && e.cpath == cpath)
            return true;
    }
    return false;
}

struct MinerCore {
    const DbIndex* index;
    MiningConfig cfg;
    std::vector<GrowthState> out;

    void grow(const GrowthState& st) {
        const auto& db = *index->db;
        struct Candidate {
            GraphEmbeddings emb;
            std::vector<std::set<TlgEmbedding>> dedup;
        };
        std::map<EdgeTuple, Candidate> candidates;
        int rm = st.rmpath.back();
        std::size_t n = st.graph.nodes.size();
        bool may_forward = !cfg.max_size || n < *cfg.max_size;

        for (std::size_t gi = 0; gi < db.size(); ++gi) {
            const Tlg& g = db[gi];
            for (const auto& m : st.emb[gi]) {
                std::uint32_t vr = m[static_cast<std::size_t>(rm)];
                // backward edges from the rightmost vertex to the rightmost path
                for (std::size_t ei : index->adj[gi][vr]) {
                    const TlgEdge& de = g.edges[ei];
                    std::uint32_t other = de.a == vr ? de.b : de.a;
                    int pos_vr = de.a == vr ? de.pos_a : de.pos_b;
                    int pos_other = de.a == vr ? de.pos_b : de.pos_a;
                    for (int u : st.rmpath) {
                        if (u == rm) continue;
                        if (m[static_cast<std::size_t>(u)] != other) continue;
                        Path cp = root_cpath(de.cpath);
                        if (has_identical_edge(st.graph, static_cast<std::size_t>(rm),
                                               static_cast<std::size_t>(u), pos_vr, pos_other, cp))
                            continue;
                        EdgeTuple t;
                        t.from = rm;
                        t.to = u;
                        t.label_from = st.graph.nodes[static_cast<std::size_t>(rm)].slots;
                        t.label_to = st.graph.nodes[static_cast<std::size_t>(u)].slots;
                        t.edge = {pos_vr, pos_other, cp};
                        auto& c = candidates[t];
                        if (c.emb.empty()) {
                            c.emb.resize(db.size());
                            c.dedup.resize(db.size());
                        }
                        if (c.dedup[gi].insert(m).second) c.emb[gi].push_back(m);
                    }
                }
                // forward edges from any rightmost-path vertex to a fresh vertex
                if (!may_forward) continue;
                for (int anchor : st.rmpath) {
                    std::uint32_t va = m[static_cast<std::size_t>(anchor)];
                    for (std::size_t ei : index->adj[gi][va]) {
                        const TlgEdge& de = g.edges[ei];
                        std::uint32_t other = de.a == va ? de.b : de.a;
                        int pos_va = de.a == va ? de.pos_a : de.pos_b;
                        int pos_other = de.a == va ? de.pos_b : de.pos_a;
                        if (cfg.injective) {
                            bool seen = false;
                            for (auto x : m)
                                if (x == other) { seen = true; break; }
                            if (seen) continue;
                        }
                        EdgeTuple t;
                        t.from = anchor;
                        t.to = static_cast<int>(n);
                        t.label_from = st.graph.nodes[static_cast<std::size_t>(anchor)].slots;
                        t.label_to = root_node(g.nodes[other]).slots;
                        t.edge = {pos_va, pos_other, root_cpath(de.cpath)};
                        auto& c = candidates[t];
                        if (c.emb.empty()) {
                            c.emb.resize(db.size());
                            c.dedup.resize(db.size());
                        }
                        TlgEmbedding nm = m;
                        nm.push_back(other);
                        if (c.dedup[gi].insert(nm).second) c.emb[gi].push_back(std::move(nm));
                    }
                }
            }
        }

        for (auto& [tuple, cand] : candidates) {
            std::size_t sup = embeddings_support(cand.emb);
            if (sup < cfg.minsup) continue;
            GrowthState ns;
            ns.code = st.code;
            ns.code.single.reset();
            ns.code.tuples.push_back(tuple);
            ns.graph = st.graph;
            ns.rmpath = st.rmpath;
            if (tuple.forward()) {
                TlgNode nn;
                nn.slots = tuple.label_to;
                ns.graph.nodes.push_back(std::move(nn));
                while (!ns.rmpath.empty() && ns.rmpath.back() != tuple.from) ns.rmpath.pop_back();
                ns.rmpath.push_back(tuple.to);
            }
            TlgEdge pe;
            pe.a = static_cast<std::size_t>(tuple.from);
            pe.b = static_cast<std::size_t>(tuple.to);
            pe.pos_a = tuple.edge.pos_from;
            pe.pos_b = tuple.edge.pos_to;
            pe.cpath = tuple.edge.cpath;
            ns.graph.edges.push_back(std::move(pe));
            if (min_dfs_code(ns.graph).tuples != ns.code.tuples) continue;  // non-canonical
            ns.emb = std::move(cand.emb);
            ns.support = sup;
            if (is_closed(ns.graph)) out.push_back(ns);
            grow(ns);  // ns stays valid; out may reallocate during recursion
        }
    }
};

}  // namespace detail

// Frequent structural patterns: gSpan enumeration over the database with all
// labels collapsed to their path roots.
inline std::vector<detail::GrowthState> mine_structural(const std::vector<Tlg>& db,
                                                        const MiningConfig& cfg) {
    detail::DbIndex index(db);
    detail::MinerCore core{&index, cfg, {}};
    std::map<NodeLabel, GraphEmbeddings> seeds;
    for (std::size_t gi = 0; gi < db.size(); ++gi) {
        for (std::uint32_t ni = 0; ni < db[gi].nodes.size(); ++ni) {
            NodeLabel l = detail::root_node(db[gi].nodes[ni]).slots;
            auto& emb = seeds[l];
            if (emb.empty()) emb.resize(db.size());
            emb[gi].push_back({ni});
        }
    }
    for (auto& [label, emb] : seeds) {
        std::size_t sup = embeddings_support(emb);
        if (sup < cfg.minsup) continue;
        detail::GrowthState st;
        st.code.single = label;
        TlgNode n;
        n.slots = label;
        st.graph.bricks = db.empty() ? true : db.front().bricks;
        st.graph.nodes.push_back(std::move(n));
        st.rmpath = {0};
        st.emb = std::move(emb);
        st.support = sup;
        core.out.push_back(st);
        core.grow(st);
    }
    return std::move(core.out);
}

namespace detail {

// One-step specializations of a labeled pattern: advance any single node
// slot or edge path by one vocabulary child (or, in strict-marker mode, by a
// marker of the slot's current type). Embeddings are filtered incrementally.
struct SpecStep {
    Tlg graph;
    enum class Kind { NodeSeg, NodeMarker, EdgeSeg } kind;
    std::size_t node = 0, slot = 0, edge = 0;
};

inline std::vector<SpecStep> one_step_specializations(const Tlg& g, const Vocabulary& v,
                                                      bool strict_markers) {
    std::vector<SpecStep> steps;
    for (std::size_t ni = 0; ni < g.nodes.size(); ++ni) {
        for (std::size_t si = 0; si < g.nodes[ni].slots.size(); ++si) {
            const Slot& s = g.nodes[ni].slots[si];
            const auto& children = s.kind == SlotKind::Relation
                                       ? v.relation_children(s.segs.back())
                                       : v.concept_children(s.segs.back());
            for (const auto& child : children) {
                SpecStep st{g, SpecStep::Kind::NodeSeg, ni, si, 0};
                st.graph.nodes[ni].slots[si].segs.push_back(child);
                steps.push_back(std::move(st));
            }
            if (strict_markers && s.kind == SlotKind::Concept && !s.marker) {
                for (const auto& marker : v.markers_of_type(s.segs.back())) {
                    SpecStep st{g, SpecStep::Kind::NodeMarker, ni, si, 0};
                    st.graph.nodes[ni].slots[si].marker = marker;
                    steps.push_back(std::move(st));
                }
            }
        }
    }
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        if (g.edges[ei].cpath.empty()) continue;
        for (const auto& child : v.concept_children(g.edges[ei].cpath.back())) {
            SpecStep st{g, SpecStep::Kind::EdgeSeg, 0, 0, ei};
            st.graph.edges[ei].cpath.push_back(child);
            steps.push_back(std::move(st));
        }
    }
    return steps;
}

inline GraphEmbeddings filter_embeddings(const GraphEmbeddings& emb, const SpecStep& step,
                                         const std::vector<Tlg>& db, unsigned workers) {
    GraphEmbeddings out(emb.size());
    parallel_for(emb.size(), workers, [&](std::size_t gi) {
        const Tlg& g = db[gi];
        for (const auto& m : emb[gi]) {
            bool ok = true;
            if (step.kind == SpecStep::Kind::EdgeSeg) {
                ok = edge_matches(step.graph.edges[step.edge], m, g);
            } else {
                const Slot& ps = step.graph.nodes[step.node].slots[step.slot];
                const Slot& ts = g.nodes[m[step.node]].slots[step.slot];
                ok = slot_matches(ps, ts);
            }
            if (ok) out[gi].push_back(m);
        }
    });
    return out;
}

}  // namespace detail

// Maximal-specialization frontier of a frequent pattern: explore the label
// lattice one segment at a time and emit only patterns with no frequent
// one-step specialization. Duplicates across specialization orders are
// removed via the canonical code.
inline std::vector<Pattern> specialize(const Tlg& graph, const GraphEmbeddings& emb,
                                       const std::vector<Tlg>& db, const MiningConfig& cfg,
                                       const Vocabulary& v,
                                       const std::string& provenance = "mined") {
    std::vector<Pattern> out;
    std::set<std::string> visited;
    struct Item {
        Tlg graph;
        GraphEmbeddings emb;
    };
    std::vector<Item> queue{{graph, emb}};
    while (!queue.empty()) {
        Item cur = std::move(queue.back());
        queue.pop_back();
        DFSCode code = min_dfs_code(cur.graph);
        if (!visited.insert(code.to_string()).second) continue;
        bool has_frequent_child = false;
        std::vector<Item> children;
        for (auto& step : detail::one_step_specializations(cur.graph, v, cfg.strict_markers)) {
            GraphEmbeddings child_emb =
                detail::filter_embeddings(cur.emb, step, db, cfg.workers);
            if (embeddings_support(child_emb) >= cfg.minsup) {
                has_frequent_child = true;
                children.push_back({std::move(step.graph), std::move(child_emb)});
            }
        }
        if (!has_frequent_child) {
            Pattern p;
            p.graph = cur.graph;
            p.support = embeddings_support(cur.emb);
            p.provenance = provenance;
            p.code = std::move(code);
            out.push_back(std::move(p));
        } else {
            for (auto& c : children) queue.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace cgspan

#endif  // CGSPAN_MINER_HPP_
