#ifndef CGSPAN_RULES_HPP_
#define CGSPAN_RULES_HPP_

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgspan/cg_match.hpp"
#include "cgspan/graph.hpp"
#include "cgspan/vocabulary.hpp"

namespace cgspan {

// λ-rule: a hypothesis/conclusion pair of λ-CGs whose connection variables
// tie generic nodes of the hypothesis to nodes of the conclusion.
struct Connection {
    std::string var;
    std::string hyp;    // hypothesis concept node id
    std::string concl;  // conclusion concept node id
};

struct LambdaRule {
    std::string name;
    ConceptualGraph hypothesis;
    ConceptualGraph conclusion;
    std::vector<Connection> connections;

    static LambdaRule from_json(const nlohmann::json& j) {
        detail::reject_unknown_keys(j, {"name", "hypothesis", "conclusion", "connections"},
                                    "rule");
        LambdaRule r;
        r.name = j.at("name").get<std::string>();
        r.hypothesis = ConceptualGraph::from_json(j.at("hypothesis"));
        r.conclusion = ConceptualGraph::from_json(j.at("conclusion"));
        for (const auto& c : j.value("connections", nlohmann::json::array())) {
            detail::reject_unknown_keys(c, {"var", "hyp", "concl"}, "connection");
            r.connections.push_back({c.at("var").get<std::string>(),
                                     c.at("hyp").get<std::string>(),
                                     c.at("concl").get<std::string>()});
        }
        r.check_connections();
        return r;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["hypothesis"] = hypothesis.to_json();
        j["conclusion"] = conclusion.to_json();
        j["connections"] = nlohmann::ordered_json::array();
        for (const auto& c : connections)
            j["connections"].push_back({{"var", c.var}, {"hyp", c.hyp}, {"concl", c.concl}});
        return j;
    }

    void check_connections() const {
        for (const auto& c : connections) {
            if (!hypothesis.find_concept(c.hyp))
                throw VocabularyError("rule " + name + ": connection " + c.var +
                                      " references missing hypothesis node " + c.hyp);
            if (!conclusion.find_concept(c.concl))
                throw VocabularyError("rule " + name + ": connection " + c.var +
                                      " references missing conclusion node " + c.concl);
            for (const auto& d : connections)
                if (&c != &d && c.var == d.var)
                    throw VocabularyError("rule " + name + ": duplicate connection variable " +
                                          c.var);
        }
    }

    // Embeddings of the hypothesis into the conclusion that honor the
    // connection bindings.
    std::vector<CgEmbedding> hypothesis_in_conclusion(const Vocabulary& v) const {
        std::vector<CgEmbedding> out;
        for (auto& e : cg_embeddings(hypothesis, conclusion, v)) {
            bool ok = true;
            for (const auto& c : connections) {
                auto it = e.find(c.hyp);
                if (it == e.end() || it->second != c.concl) { ok = false; break; }
            }
            if (ok) out.push_back(std::move(e));
        }
        return out;
    }

    // Conclusion is node-for-node the hypothesis with some labels strictly
    // specialized.
    bool is_specialization(const Vocabulary& v) const {
        if (hypothesis.concepts.size() != conclusion.concepts.size()) return false;
        if (hypothesis.relations.size() != conclusion.relations.size()) return false;
        for (const auto& e : hypothesis_in_conclusion(v)) {
            std::set<std::string> images;
            for (const auto& [p, t] : e) images.insert(t);
            if (images.size() != e.size()) continue;  // not injective
            bool strict = false;
            for (const auto& hc : hypothesis.concepts) {
                const ConceptNode* cc = conclusion.find_concept(e.at(hc.id));
                if (cc && cc->type != hc.type) strict = true;
            }
            for (const auto& hr : hypothesis.relations) {
                for (const auto& cr : conclusion.relations)
                    if (cr.id == e.at(hr.id) && cr.effective_type() != hr.effective_type())
                        strict = true;
            }
            if (strict) return true;
        }
        return false;
    }

    // Conclusion strictly contains the hypothesis through the connection nodes.
    bool is_extension(const Vocabulary& v) const {
        if (conclusion.concepts.size() + conclusion.relations.size() <=
            hypothesis.concepts.size() + hypothesis.relations.size())
            return false;
        return !hypothesis_in_conclusion(v).empty();
    }
};

inline std::vector<LambdaRule> rules_from_json(const nlohmann::json& j) {
    std::vector<LambdaRule> out;
    if (j.is_array()) {
        for (const auto& r : j) out.push_back(LambdaRule::from_json(r));
    } else {
        out.push_back(LambdaRule::from_json(j));
    }
    return out;
}

}  // namespace cgspan

#endif  // CGSPAN_RULES_HPP_
