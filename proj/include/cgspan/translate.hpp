#ifndef CGSPAN_TRANSLATE_HPP_
#define CGSPAN_TRANSLATE_HPP_

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cgspan/cg_match.hpp"
#include "cgspan/graph.hpp"
#include "cgspan/rules.hpp"
#include "cgspan/vocabulary.hpp"

namespace cgspan {

class FormalismViolation : public std::runtime_error {
public:
    explicit FormalismViolation(const std::string& what) : std::runtime_error(what) {}
};

// A taxonomy path as a segment vector. For database labels the path is fully
// specialized; pattern labels keep a prefix of it (generalization = shorter
// prefix). With signature truncation the path of a brick argument starts at
// the signature type instead of the top type.
using Path = std::vector<std::string>;

inline std::string join_path(const Path& p, const std::optional<std::string>& marker = {}) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += '_';
        out += p[i];
    }
    if (marker) out += "_" + *marker;
    return out;
}

enum class SlotKind { Concept, Relation };

// One label component of a TLG node: the relation path of a brick or one of
// its argument paths (brick mode), or the single node path (baseline mode).
struct Slot {
    SlotKind kind = SlotKind::Concept;
    Path segs;
    std::optional<std::string> marker;

    auto operator<=>(const Slot&) const = default;
};

struct TlgNode {
    std::vector<Slot> slots;
    std::string origin;  // source CG node id

    auto operator<=>(const TlgNode&) const = default;
};

// Undirected, position-annotated edge. In brick mode the endpoints record the
// argument positions at which the two bricks share a concept node and cpath
// is that concept's taxonomy path. In baseline mode edges link a relation
// node (pos = argument index) to a concept node (pos = -1) and cpath is empty.
struct TlgEdge {
    std::size_t a = 0, b = 0;
    int pos_a = 0, pos_b = 0;
    Path cpath;

    auto operator<=>(const TlgEdge&) const = default;
};

struct Tlg {
    std::string id;
    bool bricks = true;
    std::vector<TlgNode> nodes;
    std::vector<TlgEdge> edges;
    std::vector<std::string> isolated_concepts;  // joined paths, brick mode only

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(nodes.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            adj[edges[e].a].push_back(e);
            if (edges[e].b != edges[e].a) adj[edges[e].b].push_back(e);
        }
        return adj;
    }
};

struct TranslateOptions {
    bool bricks = true;
    bool signatures = false;
    bool strict_markers = false;
};

// Suffix of `path` beginning at the signature type of `rel` at `position`.
// No-op when the signature type is the top of the path.
inline Path truncate_by_signature(const Path& path, const std::string& rel,
                                  std::size_t position, const Vocabulary& v) {
    const auto& rt = v.relation_type(rel);
    if (position >= rt.arity)
        throw FormalismViolation("position " + std::to_string(position) +
                                 " out of range for relation " + rel);
    const std::string& sig = rt.signature[position];
    for (std::size_t i = 0; i < path.size(); ++i)
        if (path[i] == sig) return Path(path.begin() + i, path.end());
    throw FormalismViolation("signature type " + sig + " of relation " + rel +
                             " not found on path " + join_path(path));
}

namespace detail {

inline Slot concept_slot(const ConceptNode& c, const Vocabulary& v) {
    Slot s;
    s.kind = SlotKind::Concept;
    s.segs = v.concept_chain(c.type);
    s.marker = c.marker;
    return s;
}

}  // namespace detail

// One brick per relation node; each brick bundles the relation path with the
// argument paths in signature order. Edges appear wherever two bricks share a
// concept node, one parallel edge per shared position pair. Concept nodes
// attached to no relation are recorded separately and excluded from mining.
inline Tlg build_brick_graph(const ConceptualGraph& g, const Vocabulary& v,
                             const TranslateOptions& opts = {}) {
    Tlg t;
    t.id = g.id;
    t.bricks = true;
    std::map<std::string, const ConceptNode*> by_id;
    for (const auto& c : g.concepts) by_id[c.id] = &c;
    std::set<std::string> used;
    for (const auto& r : g.relations) {
        const auto& rt = v.relation_type(r.effective_type());
        TlgNode n;
        n.origin = r.id;
        Slot rel;
        rel.kind = SlotKind::Relation;
        rel.segs = v.relation_chain(r.effective_type());
        n.slots.push_back(std::move(rel));
        for (std::size_t i = 0; i < r.args.size(); ++i) {
            if (!r.args[i])
                throw FormalismViolation("relation " + r.id + " has a missing argument");
            const ConceptNode* c = by_id.at(*r.args[i]);
            used.insert(c->id);
            Slot s = detail::concept_slot(*c, v);
            if (opts.signatures) s.segs = truncate_by_signature(s.segs, rt.name, i, v);
            n.slots.push_back(std::move(s));
        }
        t.nodes.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < g.relations.size(); ++i) {
        for (std::size_t j = i + 1; j < g.relations.size(); ++j) {
            const auto& ri = g.relations[i];
            const auto& rj = g.relations[j];
            for (std::size_t p = 0; p < ri.args.size(); ++p)
                for (std::size_t q = 0; q < rj.args.size(); ++q)
                    if (ri.args[p] && rj.args[q] && *ri.args[p] == *rj.args[q]) {
                        TlgEdge e;
                        e.a = i;
                        e.b = j;
                        e.pos_a = static_cast<int>(p);
                        e.pos_b = static_cast<int>(q);
                        e.cpath = v.concept_chain(by_id.at(*ri.args[p])->type);
                        t.edges.push_back(std::move(e));
                    }
        }
    }
    for (const auto& c : g.concepts)
        if (!used.count(c.id))
            t.isolated_concepts.push_back(join_path(v.concept_chain(c.type), c.marker));
    return t;
}

// Baseline translation: raw CG nodes labeled with full taxonomy paths, one
// edge per relation argument.
inline Tlg build_node_graph(const ConceptualGraph& g, const Vocabulary& v,
                            const TranslateOptions& opts = {}) {
    (void)opts;
    Tlg t;
    t.id = g.id;
    t.bricks = false;
    std::map<std::string, std::size_t> index;
    for (const auto& c : g.concepts) {
        TlgNode n;
        n.origin = c.id;
        n.slots.push_back(detail::concept_slot(c, v));
        index[c.id] = t.nodes.size();
        t.nodes.push_back(std::move(n));
    }
    for (const auto& r : g.relations) {
        TlgNode n;
        n.origin = r.id;
        Slot rel;
        rel.kind = SlotKind::Relation;
        rel.segs = v.relation_chain(r.effective_type());
        n.slots.push_back(std::move(rel));
        std::size_t ridx = t.nodes.size();
        t.nodes.push_back(std::move(n));
        for (std::size_t i = 0; i < r.args.size(); ++i) {
            if (!r.args[i]) continue;
            TlgEdge e;
            e.a = ridx;
            e.b = index.at(*r.args[i]);
            e.pos_a = static_cast<int>(i);
            e.pos_b = -1;
            t.edges.push_back(std::move(e));
        }
    }
    return t;
}

inline Tlg translate(const ConceptualGraph& g, const Vocabulary& v,
                     const TranslateOptions& opts) {
    return opts.bricks ? build_brick_graph(g, v, opts) : build_node_graph(g, v, opts);
}

// Pre-processing rule pass: wherever a specialization rule's hypothesis
// projects into `g`, the connection nodes' types are replaced by the deeper
// conclusion types. Rules apply in order, each at most once per node; an
// incomparable conclusion leaves the node unchanged and emits a warning.
inline ConceptualGraph apply_specialization_rules(const ConceptualGraph& g,
                                                  const std::vector<LambdaRule>& rules,
                                                  const Vocabulary& v,
                                                  std::vector<std::string>* warnings = nullptr) {
    ConceptualGraph out = g;
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };
    for (const auto& rule : rules) {
        if (!rule.is_specialization(v)) continue;
        std::set<std::string> touched;  // node ids this rule already specialized
        bool changed = true;
        std::size_t guard = 0;
        while (changed && guard++ <= out.concepts.size() + 1) {
            changed = false;
            for (const auto& emb : cg_embeddings(rule.hypothesis, out, v)) {
                for (const auto& conn : rule.connections) {
                    auto it = emb.find(conn.hyp);
                    if (it == emb.end()) continue;
                    const ConceptNode* concl = rule.conclusion.find_concept(conn.concl);
                    if (!concl) continue;
                    for (auto& c : out.concepts) {
                        if (c.id != it->second) continue;
                        if (c.type == concl->type) break;
                        if (touched.count(c.id)) break;
                        if (v.is_concept_generalization(c.type, concl->type)) {
                            c.type = concl->type;
                            touched.insert(c.id);
                            changed = true;
                        } else if (!v.is_concept_generalization(concl->type, c.type)) {
                            warn("rule " + rule.name + ": conclusion type " + concl->type +
                                 " is not a specialization of " + c.type + " at node " + c.id +
                                 " of graph " + g.id + "; node left unchanged");
                        }
                        break;
                    }
                }
            }
        }
    }
    return out;
}

// Deeper of two types along one chain; both must lie on a common chain.
inline std::string deeper_type(const std::string& a, const std::string& b,
                               const Vocabulary& v) {
    if (v.is_concept_generalization(a, b)) return b;
    if (v.is_concept_generalization(b, a)) return a;
    throw FormalismViolation("inconsistent shared-concept types " + a + " vs " + b);
}

// Translate a mined TLG pattern back to the CG formalism. Brick mode: one
// relation node per brick with fresh concept nodes per argument; argument
// positions linked by pattern edges merge into a single concept node typed by
// the deepest type the endpoints agree on. Baseline mode: nodes map back
// directly and relation arguments missing from the pattern stay absent.
inline ConceptualGraph back_translate(const Tlg& p, const Vocabulary& v) {
    ConceptualGraph g;
    g.id = p.id;
    if (p.bricks) {
        // union-find over (brick, argument position)
        std::map<std::pair<std::size_t, int>, std::size_t> slot_index;
        std::vector<std::size_t> parent;
        auto idx = [&](std::size_t node, int pos) {
            auto key = std::make_pair(node, pos);
            auto it = slot_index.find(key);
            if (it != slot_index.end()) return it->second;
            std::size_t i = parent.size();
            parent.push_back(i);
            slot_index.emplace(key, i);
            return i;
        };
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t n = 0; n < p.nodes.size(); ++n)
            for (std::size_t s = 1; s < p.nodes[n].slots.size(); ++s)
                idx(n, static_cast<int>(s) - 1);
        for (const auto& e : p.edges)
            parent[find(idx(e.a, e.pos_a))] = find(idx(e.b, e.pos_b));

        std::map<std::size_t, std::string> root_concept;  // uf root -> concept id
        std::map<std::size_t, std::size_t> concept_pos;   // concept index in g.concepts
        for (std::size_t n = 0; n < p.nodes.size(); ++n) {
            const auto& node = p.nodes[n];
            RelationNode r;
            r.id = "r" + std::to_string(n);
            r.type = node.slots[0].segs.back();
            for (std::size_t s = 1; s < node.slots.size(); ++s) {
                const Slot& slot = node.slots[s];
                std::size_t root = find(idx(n, static_cast<int>(s) - 1));
                auto it = root_concept.find(root);
                if (it == root_concept.end()) {
                    ConceptNode c;
                    c.id = "c" + std::to_string(g.concepts.size());
                    c.type = slot.segs.back();
                    c.marker = slot.marker;
                    root_concept.emplace(root, c.id);
                    concept_pos.emplace(root, g.concepts.size());
                    g.concepts.push_back(std::move(c));
                    r.args.emplace_back(root_concept.at(root));
                } else {
                    ConceptNode& c = g.concepts[concept_pos.at(root)];
                    c.type = deeper_type(c.type, slot.segs.back(), v);
                    if (!c.marker) c.marker = slot.marker;
                    r.args.emplace_back(it->second);
                }
            }
            g.relations.push_back(std::move(r));
        }
    } else {
        std::map<std::size_t, std::string> concept_id;
        for (std::size_t n = 0; n < p.nodes.size(); ++n) {
            const auto& node = p.nodes[n];
            if (node.slots[0].kind == SlotKind::Concept) {
                ConceptNode c;
                c.id = "c" + std::to_string(n);
                c.type = node.slots[0].segs.back();
                c.marker = node.slots[0].marker;
                concept_id.emplace(n, c.id);
                g.concepts.push_back(std::move(c));
            }
        }
        for (std::size_t n = 0; n < p.nodes.size(); ++n) {
            const auto& node = p.nodes[n];
            if (node.slots[0].kind != SlotKind::Relation) continue;
            RelationNode r;
            r.id = "r" + std::to_string(n);
            r.type = node.slots[0].segs.back();
            r.args.assign(v.relation_type(r.type).arity, std::nullopt);
            for (const auto& e : p.edges) {
                if (e.a == n && e.pos_a >= 0 && concept_id.count(e.b))
                    r.args[static_cast<std::size_t>(e.pos_a)] = concept_id.at(e.b);
                else if (e.b == n && e.pos_b >= 0 && concept_id.count(e.a))
                    r.args[static_cast<std::size_t>(e.pos_b)] = concept_id.at(e.a);
            }
            g.relations.push_back(std::move(r));
        }
    }
    return g;
}

// Diagnostic dump of a translated graph, mirroring the graph file schema.
inline nlohmann::ordered_json tlg_to_json(const Tlg& t) {
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["bricks"] = t.bricks;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : t.nodes) {
        nlohmann::ordered_json labels = nlohmann::ordered_json::array();
        for (const auto& s : n.slots) labels.push_back(join_path(s.segs, s.marker));
        j["nodes"].push_back({{"origin", n.origin}, {"labels", labels}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : t.edges)
        j["edges"].push_back({{"a", e.a},
                              {"pos_a", e.pos_a},
                              {"b", e.b},
                              {"pos_b", e.pos_b},
                              {"concept_path", join_path(e.cpath)}});
    j["isolated_concepts"] = t.isolated_concepts;
    return j;
}

}  // namespace cgspan

#endif  // CGSPAN_TRANSLATE_HPP_
