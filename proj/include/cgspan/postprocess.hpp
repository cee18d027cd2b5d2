#ifndef CGSPAN_POSTPROCESS_HPP_
#define CGSPAN_POSTPROCESS_HPP_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cgspan/graph.hpp"
#include "cgspan/vocabulary.hpp"

namespace cgspan {

// Signature-aware pruning and compression of mined CG patterns.

inline bool relation_is_signature_only(const RelationNode& r, const ConceptualGraph& p,
                                       const Vocabulary& v) {
    if (r.sig_ref) return true;
    if (!v.has_relation(r.type)) return false;
    const auto& rt = v.relation_type(r.type);
    for (std::size_t i = 0; i < r.args.size() && i < rt.arity; ++i) {
        if (!r.args[i]) continue;  // absent positions carry no information
        const ConceptNode* c = p.find_concept(*r.args[i]);
        if (!c) return false;
        if (c->type != rt.signature[i] || c->marker) return false;
    }
    return true;
}

// True iff the pattern is a mere aggregation of signatures: every relation
// node's arguments sit exactly at the signature types with no markers, and
// any unattached concept node sits at the top type.
inline bool is_signature_only(const ConceptualGraph& p, const Vocabulary& v) {
    for (const auto& r : p.relations)
        if (!relation_is_signature_only(r, p, v)) return false;
    std::set<std::string> attached;
    for (const auto& r : p.relations)
        for (const auto& a : r.args)
            if (a) attached.insert(*a);
    for (const auto& c : p.concepts) {
        if (attached.count(c.id)) continue;
        if (c.type != v.top() || c.marker) return false;
    }
    return true;
}

// Replace every signature-only relation node by a reference to its
// signature. Lossless: decompress restores the pattern exactly.
inline ConceptualGraph compress(const ConceptualGraph& p, const Vocabulary& v) {
    ConceptualGraph out = p;
    for (auto& r : out.relations) {
        if (r.sig_ref) continue;
        if (relation_is_signature_only(r, out, v)) {
            r.sig_ref = r.type;
            r.type.clear();
        }
    }
    return out;
}

inline ConceptualGraph decompress(const ConceptualGraph& p, const Vocabulary& v) {
    (void)v;
    ConceptualGraph out = p;
    for (auto& r : out.relations) {
        if (!r.sig_ref) continue;
        r.type = *r.sig_ref;
        r.sig_ref.reset();
    }
    return out;
}

struct PrunablePattern {
    ConceptualGraph pattern;
    std::string provenance = "mined";
};

// Remove signature-only patterns (rule-derived ones are exempt), compress
// the rest. Returns the kept patterns and the pruned count.
inline std::pair<std::vector<PrunablePattern>, std::size_t> prune(
    const std::vector<PrunablePattern>& patterns, const Vocabulary& v) {
    std::vector<PrunablePattern> kept;
    std::size_t pruned = 0;
    for (const auto& p : patterns) {
        bool rule_derived = p.provenance.rfind("rule:", 0) == 0;
        if (!rule_derived && is_signature_only(p.pattern, v)) {
            ++pruned;
            continue;
        }
        PrunablePattern out = p;
        out.pattern = compress(p.pattern, v);
        kept.push_back(std::move(out));
    }
    return {std::move(kept), pruned};
}

}  // namespace cgspan

#endif  // CGSPAN_POSTPROCESS_HPP_
