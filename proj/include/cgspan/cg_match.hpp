#ifndef CGSPAN_CG_MATCH_HPP_
#define CGSPAN_CG_MATCH_HPP_

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgspan/graph.hpp"
#include "cgspan/vocabulary.hpp"

namespace cgspan {

// Homomorphisms between conceptual graphs (CG projection): every node of the
// pattern maps to a node of the target whose type is equal or more specific,
// argument positions are preserved, and individual markers, when the pattern
// carries one, must match exactly. Generic pattern concepts (no marker) match
// any target concept of compatible type. Mappings need not be injective.
using CgEmbedding = std::unordered_map<std::string, std::string>;  // pattern id -> target id

namespace detail {

struct CgMatchState {
    const ConceptualGraph* pat;
    const ConceptualGraph* tgt;
    const Vocabulary* voc;
    std::unordered_map<std::string, const ConceptNode*> tgt_concepts;
    CgEmbedding map;
    std::function<bool(const CgEmbedding&)> sink;  // returns true to stop early
    bool stopped = false;

    bool concept_compatible(const ConceptNode& p, const ConceptNode& t) const {
        if (!voc->has_concept(p.type) || !voc->has_concept(t.type)) return false;
        if (!voc->is_concept_generalization(p.type, t.type)) return false;
        if (p.marker && (!t.marker || *p.marker != *t.marker)) return false;
        return true;
    }

    bool bind(const std::string& pid, const std::string& tid) {
        auto it = map.find(pid);
        if (it != map.end()) return it->second == tid;
        map.emplace(pid, tid);
        return true;
    }

    void match_relations(std::size_t ri) {
        if (stopped) return;
        if (ri == pat->relations.size()) {
            match_free_concepts(0);
            return;
        }
        const auto& pr = pat->relations[ri];
        for (const auto& tr : tgt->relations) {
            if (stopped) return;
            if (!voc->has_relation(pr.effective_type()) ||
                !voc->has_relation(tr.effective_type()))
                continue;
            if (!voc->is_relation_generalization(pr.effective_type(), tr.effective_type()))
                continue;
            if (tr.args.size() < pr.args.size()) continue;
            CgEmbedding saved = map;
            bool ok = bind(pr.id, tr.id);
            for (std::size_t i = 0; ok && i < pr.args.size(); ++i) {
                if (!pr.args[i]) continue;  // absent position in the pattern
                if (i >= tr.args.size() || !tr.args[i]) { ok = false; break; }
                const ConceptNode* pc = pat->find_concept(*pr.args[i]);
                auto it = tgt_concepts.find(*tr.args[i]);
                if (!pc || it == tgt_concepts.end() || !concept_compatible(*pc, *it->second)) {
                    ok = false;
                    break;
                }
                ok = bind(pc->id, it->second->id);
            }
            if (ok) match_relations(ri + 1);
            map = std::move(saved);
        }
    }

    // Concepts attached to no relation still need an image.
    void match_free_concepts(std::size_t ci) {
        if (stopped) return;
        if (ci == pat->concepts.size()) {
            if (sink(map)) stopped = true;
            return;
        }
        const auto& pc = pat->concepts[ci];
        if (map.count(pc.id)) {
            match_free_concepts(ci + 1);
            return;
        }
        for (const auto& tc : tgt->concepts) {
            if (stopped) return;
            if (!concept_compatible(pc, tc)) continue;
            map.emplace(pc.id, tc.id);
            match_free_concepts(ci + 1);
            map.erase(pc.id);
        }
    }
};

}  // namespace detail

inline std::vector<CgEmbedding> cg_embeddings(const ConceptualGraph& pattern,
                                              const ConceptualGraph& target,
                                              const Vocabulary& v,
                                              std::size_t limit = 0) {
    std::vector<CgEmbedding> out;
    detail::CgMatchState st;
    st.pat = &pattern;
    st.tgt = &target;
    st.voc = &v;
    for (const auto& c : target.concepts) st.tgt_concepts[c.id] = &c;
    st.sink = [&](const CgEmbedding& e) {
        out.push_back(e);
        return limit != 0 && out.size() >= limit;
    };
    st.match_relations(0);
    return out;
}

inline bool cg_embeds(const ConceptualGraph& pattern, const ConceptualGraph& target,
                      const Vocabulary& v) {
    return !cg_embeddings(pattern, target, v, 1).empty();
}

}  // namespace cgspan

#endif  // CGSPAN_CG_MATCH_HPP_
