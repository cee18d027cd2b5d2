#ifndef CGSPAN_GRAPH_HPP_
#define CGSPAN_GRAPH_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cgspan/vocabulary.hpp"

namespace cgspan {

// Factual part of the formalism: a bipartite labeled multigraph of concept
// nodes and relation nodes. Edges are implicit in the positional argument
// lists of the relations. Argument entries may be absent in mined patterns
// (partial neighborhoods of the baseline miner); database graphs always
// carry a full argument list.
struct ConceptNode {
    std::string id;
    std::string type;
    std::optional<std::string> marker;
    std::optional<std::string> var;  // λ-variable, rules only

    bool operator==(const ConceptNode&) const = default;
};

struct RelationNode {
    std::string id;
    std::string type;                                // empty if sig_ref set
    std::optional<std::string> sig_ref;              // compressed signature reference
    std::vector<std::optional<std::string>> args;    // concept node ids by position

    const std::string& effective_type() const { return sig_ref ? *sig_ref : type; }
    bool operator==(const RelationNode&) const = default;
};

struct ConceptualGraph {
    std::string id;
    std::vector<ConceptNode> concepts;
    std::vector<RelationNode> relations;
    std::string source;

    bool operator==(const ConceptualGraph&) const = default;

    const ConceptNode* find_concept(const std::string& node_id) const {
        for (const auto& c : concepts)
            if (c.id == node_id) return &c;
        return nullptr;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["concepts"] = nlohmann::ordered_json::array();
        for (const auto& c : concepts) {
            nlohmann::ordered_json n{{"id", c.id}, {"type", c.type}};
            if (c.marker) n["marker"] = *c.marker;
            if (c.var) n["var"] = *c.var;
            j["concepts"].push_back(n);
        }
        j["relations"] = nlohmann::ordered_json::array();
        for (const auto& r : relations) {
            nlohmann::ordered_json n{{"id", r.id}};
            if (r.sig_ref) n["sig_ref"] = *r.sig_ref;
            else n["type"] = r.type;
            nlohmann::ordered_json args = nlohmann::ordered_json::array();
            for (const auto& a : r.args) {
                if (a) args.push_back(*a);
                else args.push_back(nullptr);
            }
            n["args"] = std::move(args);
            j["relations"].push_back(n);
        }
        if (!source.empty()) j["source"] = source;
        return j;
    }

    static ConceptualGraph from_json(const nlohmann::json& j) {
        detail::reject_unknown_keys(j, {"id", "concepts", "relations", "source"}, "graph");
        ConceptualGraph g;
        g.id = j.at("id").get<std::string>();
        for (const auto& c : j.value("concepts", nlohmann::json::array())) {
            detail::reject_unknown_keys(c, {"id", "type", "marker", "var"}, "concept node");
            ConceptNode n;
            n.id = c.at("id").get<std::string>();
            n.type = c.at("type").get<std::string>();
            if (c.contains("marker")) n.marker = c.at("marker").get<std::string>();
            if (c.contains("var")) n.var = c.at("var").get<std::string>();
            g.concepts.push_back(std::move(n));
        }
        for (const auto& r : j.value("relations", nlohmann::json::array())) {
            detail::reject_unknown_keys(r, {"id", "type", "sig_ref", "args"}, "relation node");
            RelationNode n;
            n.id = r.at("id").get<std::string>();
            if (r.contains("sig_ref")) n.sig_ref = r.at("sig_ref").get<std::string>();
            else n.type = r.at("type").get<std::string>();
            for (const auto& a : r.at("args")) {
                if (a.is_null()) n.args.emplace_back(std::nullopt);
                else n.args.emplace_back(a.get<std::string>());
            }
            g.relations.push_back(std::move(n));
        }
        g.source = j.value("source", std::string());
        return g;
    }
};

using Database = std::vector<ConceptualGraph>;

inline Database database_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw VocabularyError("database document must be an array of graphs");
    Database db;
    for (const auto& g : j) db.push_back(ConceptualGraph::from_json(g));
    return db;
}

inline nlohmann::ordered_json database_to_json(const Database& db) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& g : db) j.push_back(g.to_json());
    return j;
}

struct Violation {
    std::string graph_id;
    std::string node_id;
    int position = -1;  // argument position, 0-based, or -1
    std::string message;
};

// Well-formedness of a graph w.r.t. a vocabulary. Violations are data, not
// failures; an empty result means the graph is valid.
inline std::vector<Violation> validate_graph(const ConceptualGraph& g, const Vocabulary& v) {
    std::vector<Violation> out;
    std::unordered_map<std::string, const ConceptNode*> by_id;
    for (const auto& c : g.concepts) {
        if (by_id.count(c.id))
            out.push_back({g.id, c.id, -1, "duplicate concept node id"});
        by_id[c.id] = &c;
        if (!v.has_concept(c.type)) {
            out.push_back({g.id, c.id, -1, "unknown concept type " + c.type});
            continue;
        }
        if (c.marker) {
            auto mt = v.marker_type(*c.marker);
            if (!mt)
                out.push_back({g.id, c.id, -1, "unknown marker " + *c.marker});
            else if (!v.is_concept_generalization(c.type, *mt) &&
                     !v.is_concept_generalization(*mt, c.type))
                out.push_back({g.id, c.id, -1,
                               "marker " + *c.marker + " typed " + *mt +
                                   " inconsistent with node type " + c.type});
        }
    }
    for (const auto& r : g.relations) {
        if (!v.has_relation(r.effective_type())) {
            out.push_back({g.id, r.id, -1, "unknown relation type " + r.effective_type()});
            continue;
        }
        const auto& rt = v.relation_type(r.effective_type());
        if (r.args.size() != rt.arity) {
            out.push_back({g.id, r.id, -1,
                           "arity mismatch: expected " + std::to_string(rt.arity) + " arguments, got " +
                               std::to_string(r.args.size())});
            continue;
        }
        for (std::size_t i = 0; i < r.args.size(); ++i) {
            if (!r.args[i]) {
                out.push_back({g.id, r.id, static_cast<int>(i), "missing argument"});
                continue;
            }
            auto it = by_id.find(*r.args[i]);
            if (it == by_id.end()) {
                out.push_back({g.id, r.id, static_cast<int>(i),
                               "argument references unknown concept node " + *r.args[i]});
                continue;
            }
            const auto& ct = it->second->type;
            if (!v.has_concept(ct)) continue;  // already reported
            if (!v.is_concept_generalization(rt.signature[i], ct))
                out.push_back({g.id, r.id, static_cast<int>(i),
                               "argument type " + ct + " is not a specialization of signature type " +
                                   rt.signature[i]});
        }
    }
    return out;
}

}  // namespace cgspan

#endif  // CGSPAN_GRAPH_HPP_
