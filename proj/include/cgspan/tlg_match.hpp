#ifndef CGSPAN_TLG_MATCH_HPP_
#define CGSPAN_TLG_MATCH_HPP_

#include <cstdint>
#include <vector>

#include "cgspan/translate.hpp"

namespace cgspan {

// Label-compatible homomorphisms from a TLG pattern into a database TLG.
// A pattern node label matches a target label when every slot path is a
// prefix of the corresponding target slot path (and the marker, when the
// pattern carries one, matches exactly). A pattern edge maps to any target
// edge between the image nodes with the same position pair and a compatible
// concept path. Mappings are not required to be injective unless asked.

using TlgEmbedding = std::vector<std::uint32_t>;  // pattern node -> target node

inline bool slot_matches(const Slot& pat, const Slot& tgt) {
    if (pat.kind != tgt.kind) return false;
    if (pat.segs.size() > tgt.segs.size()) return false;
    for (std::size_t i = 0; i < pat.segs.size(); ++i)
        if (pat.segs[i] != tgt.segs[i]) return false;
    if (pat.marker && (!tgt.marker || *pat.marker != *tgt.marker)) return false;
    return true;
}

inline bool node_matches(const TlgNode& pat, const TlgNode& tgt) {
    if (pat.slots.size() != tgt.slots.size()) return false;
    for (std::size_t i = 0; i < pat.slots.size(); ++i)
        if (!slot_matches(pat.slots[i], tgt.slots[i])) return false;
    return true;
}

inline bool path_prefix(const Path& pat, const Path& tgt) {
    if (pat.size() > tgt.size()) return false;
    for (std::size_t i = 0; i < pat.size(); ++i)
        if (pat[i] != tgt[i]) return false;
    return true;
}

// Does some target edge realize the pattern edge under the given (possibly
// partial) vertex map? Both orientations of the undirected target edge count.
inline bool edge_matches(const TlgEdge& pe, const TlgEmbedding& map, const Tlg& target) {
    std::uint32_t ia = map[pe.a], ib = map[pe.b];
    for (const auto& te : target.edges) {
        bool same = te.a == ia && te.b == ib && te.pos_a == pe.pos_a && te.pos_b == pe.pos_b;
        bool swapped = te.a == ib && te.b == ia && te.pos_a == pe.pos_b && te.pos_b == pe.pos_a;
        if ((same || swapped) && path_prefix(pe.cpath, te.cpath)) return true;
    }
    return false;
}

namespace detail {

struct TlgMatcher {
    const Tlg* pat;
    const Tlg* tgt;
    bool injective = false;
    std::size_t limit = 0;
    std::vector<std::size_t> node_order;           // pattern nodes, connectivity-first
    std::vector<std::vector<std::size_t>> checks;  // pattern edges checkable at step k
    std::vector<TlgEmbedding> out;

    void prepare() {
        std::size_t n = pat->nodes.size();
        std::vector<bool> placed(n, false);
        auto adj = pat->adjacency();
        node_order.clear();
        for (std::size_t seed = 0; seed < n; ++seed) {
            if (placed[seed]) continue;
            std::vector<std::size_t> stack{seed};
            placed[seed] = true;
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                node_order.push_back(u);
                for (std::size_t e : adj[u]) {
                    std::size_t w = pat->edges[e].a == u ? pat->edges[e].b : pat->edges[e].a;
                    if (!placed[w]) {
                        placed[w] = true;
                        stack.push_back(w);
                    }
                }
            }
        }
        checks.assign(n, {});
        std::vector<std::size_t> step_of(n, 0);
        for (std::size_t k = 0; k < n; ++k) step_of[node_order[k]] = k;
        for (std::size_t e = 0; e < pat->edges.size(); ++e) {
            std::size_t k = std::max(step_of[pat->edges[e].a], step_of[pat->edges[e].b]);
            checks[k].push_back(e);
        }
    }

    bool search(std::size_t step, TlgEmbedding& map, std::vector<bool>& used) {
        if (step == node_order.size()) {
            out.push_back(map);
            return limit != 0 && out.size() >= limit;
        }
        std::size_t pn = node_order[step];
        for (std::uint32_t t = 0; t < tgt->nodes.size(); ++t) {
            if (injective && used[t]) continue;
            if (!node_matches(pat->nodes[pn], tgt->nodes[t])) continue;
            map[pn] = t;
            bool ok = true;
            for (std::size_t e : checks[step])
                if (!edge_matches(pat->edges[e], map, *tgt)) { ok = false; break; }
            if (ok) {
                if (injective) used[t] = true;
                if (search(step + 1, map, used)) return true;
                if (injective) used[t] = false;
            }
        }
        return false;
    }
};

}  // namespace detail

inline std::vector<TlgEmbedding> tlg_embeddings(const Tlg& pattern, const Tlg& target,
                                                std::size_t limit = 0, bool injective = false) {
    detail::TlgMatcher m;
    m.pat = &pattern;
    m.tgt = &target;
    m.injective = injective;
    m.limit = limit;
    m.prepare();
    TlgEmbedding map(pattern.nodes.size(), 0);
    std::vector<bool> used(target.nodes.size(), false);
    if (!pattern.nodes.empty() && !target.nodes.empty()) m.search(0, map, used);
    return m.out;
}

inline bool tlg_embeds(const Tlg& pattern, const Tlg& target, bool injective = false) {
    return !tlg_embeddings(pattern, target, 1, injective).empty();
}

// Number of database graphs admitting at least one embedding.
inline std::size_t tlg_support(const Tlg& pattern, const std::vector<Tlg>& db,
                               bool injective = false) {
    std::size_t n = 0;
    for (const auto& g : db)
        if (tlg_embeds(pattern, g, injective)) ++n;
    return n;
}

}  // namespace cgspan

#endif  // CGSPAN_TLG_MATCH_HPP_
