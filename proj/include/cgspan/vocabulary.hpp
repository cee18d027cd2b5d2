#ifndef CGSPAN_VOCABULARY_HPP_
#define CGSPAN_VOCABULARY_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cgspan {

class VocabularyError : public std::runtime_error {
public:
    explicit VocabularyError(const std::string& what) : std::runtime_error(what) {}
};

// The ontological part of a CG database: concept-type and relation-type
// hierarchies, relation signatures and individual markers.
//
// Both hierarchies are trees. The concept tree has a single root (the top
// type); relation trees may be forests, one tree per root, and every type in
// a tree shares the arity of its root.
class Vocabulary {
public:
    struct ConceptType {
        std::string name;
        std::optional<std::string> parent;
    };
    struct RelationType {
        std::string name;
        std::size_t arity = 0;
        std::optional<std::string> parent;
        std::vector<std::string> signature;  // one concept type per position
    };

    Vocabulary() = default;

    const std::string& top() const { return top_; }

    bool has_concept(const std::string& name) const { return concepts_.count(name) != 0; }
    bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }

    const ConceptType& concept_type(const std::string& name) const {
        auto it = concepts_.find(name);
        if (it == concepts_.end()) throw VocabularyError("unknown concept type: " + name);
        return it->second;
    }
    const RelationType& relation_type(const std::string& name) const {
        auto it = relations_.find(name);
        if (it == relations_.end()) throw VocabularyError("unknown relation type: " + name);
        return it->second;
    }

    const std::map<std::string, ConceptType>& concept_types() const { return concepts_; }
    const std::map<std::string, RelationType>& relation_types() const { return relations_; }
    const std::map<std::string, std::string>& individuals() const { return individuals_; }

    std::optional<std::string> marker_type(const std::string& marker) const {
        auto it = individuals_.find(marker);
        if (it == individuals_.end()) return std::nullopt;
        return it->second;
    }

    // Chain of types from the hierarchy root down to `name`.
    std::vector<std::string> concept_chain(const std::string& name) const {
        std::vector<std::string> chain;
        const ConceptType* t = &concept_type(name);
        chain.push_back(t->name);
        while (t->parent) {
            t = &concept_type(*t->parent);
            chain.push_back(t->name);
        }
        std::reverse(chain.begin(), chain.end());
        return chain;
    }
    std::vector<std::string> relation_chain(const std::string& name) const {
        std::vector<std::string> chain;
        const RelationType* t = &relation_type(name);
        chain.push_back(t->name);
        while (t->parent) {
            t = &relation_type(*t->parent);
            chain.push_back(t->name);
        }
        std::reverse(chain.begin(), chain.end());
        return chain;
    }

    // True iff `a` = `b` or `a` is an ancestor of `b`.
    bool is_concept_generalization(const std::string& a, const std::string& b) const {
        concept_type(a);
        const ConceptType* t = &concept_type(b);
        while (true) {
            if (t->name == a) return true;
            if (!t->parent) return false;
            t = &concept_type(*t->parent);
        }
    }
    bool is_relation_generalization(const std::string& a, const std::string& b) const {
        relation_type(a);
        const RelationType* t = &relation_type(b);
        while (true) {
            if (t->name == a) return true;
            if (!t->parent) return false;
            t = &relation_type(*t->parent);
        }
    }

    const std::vector<std::string>& concept_children(const std::string& name) const {
        concept_type(name);
        static const std::vector<std::string> kEmpty;
        auto it = concept_children_.find(name);
        return it == concept_children_.end() ? kEmpty : it->second;
    }
    const std::vector<std::string>& relation_children(const std::string& name) const {
        relation_type(name);
        static const std::vector<std::string> kEmpty;
        auto it = relation_children_.find(name);
        return it == relation_children_.end() ? kEmpty : it->second;
    }

    // Markers of individuals typed exactly `concept_name`.
    std::vector<std::string> markers_of_type(const std::string& concept_name) const {
        std::vector<std::string> out;
        for (const auto& [marker, type] : individuals_)
            if (type == concept_name) out.push_back(marker);
        return out;
    }

    // Underscore-joined chain from the top type down to `name`, with the
    // marker appended as final segment when present.
    std::string taxonomy_path(const std::string& name,
                              const std::optional<std::string>& marker = std::nullopt) const {
        std::vector<std::string> chain =
            has_concept(name) ? concept_chain(name) : relation_chain(name);
        std::string out;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (i) out += '_';
            out += chain[i];
        }
        if (marker) out += "_" + *marker;
        return out;
    }

    static Vocabulary from_json(const nlohmann::json& j);
    static Vocabulary parse(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw VocabularyError(std::string("vocabulary syntax error: ") + e.what());
        }
        return from_json(j);
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["concept_types"] = nlohmann::ordered_json::array();
        for (const auto& [name, t] : concepts_) {
            nlohmann::ordered_json c{{"name", name}};
            if (t.parent) c["parent"] = *t.parent;
            j["concept_types"].push_back(c);
        }
        j["relation_types"] = nlohmann::ordered_json::array();
        for (const auto& [name, t] : relations_) {
            nlohmann::ordered_json r{{"name", name}, {"arity", t.arity}};
            if (t.parent) r["parent"] = *t.parent;
            r["signature"] = t.signature;
            j["relation_types"].push_back(r);
        }
        j["individuals"] = nlohmann::ordered_json::array();
        for (const auto& [marker, type] : individuals_)
            j["individuals"].push_back({{"marker", marker}, {"type", type}});
        return j;
    }

private:
    void validate() {
        // single top, all concepts reach it, no cycles
        std::vector<std::string> roots;
        for (const auto& [name, t] : concepts_)
            if (!t.parent) roots.push_back(name);
        if (roots.size() != 1)
            throw VocabularyError("expected exactly one top concept type, found " +
                                  std::to_string(roots.size()));
        top_ = roots.front();
        for (const auto& [name, t] : concepts_) {
            const ConceptType* cur = &t;
            std::size_t steps = 0;
            while (cur->parent) {
                if (++steps > concepts_.size())
                    throw VocabularyError("cycle in concept hierarchy at " + name);
                auto it = concepts_.find(*cur->parent);
                if (it == concepts_.end())
                    throw VocabularyError("unknown parent concept type: " + *cur->parent);
                cur = &it->second;
            }
            if (cur->name != top_)
                throw VocabularyError("concept type " + name + " does not reach the top type");
        }
        for (const auto& [name, t] : relations_) {
            if (t.arity < 1) throw VocabularyError("relation " + name + " has arity < 1");
            if (t.signature.size() != t.arity)
                throw VocabularyError("relation " + name + " signature length != arity");
            for (const auto& s : t.signature)
                if (!has_concept(s))
                    throw VocabularyError("relation " + name + " signature uses unknown type " + s);
            const RelationType* cur = &t;
            std::size_t steps = 0;
            while (cur->parent) {
                if (++steps > relations_.size())
                    throw VocabularyError("cycle in relation hierarchy at " + name);
                auto it = relations_.find(*cur->parent);
                if (it == relations_.end())
                    throw VocabularyError("unknown parent relation type: " + *cur->parent);
                if (it->second.arity != t.arity)
                    throw VocabularyError("relation " + name + " parent arity mismatch");
                cur = &it->second;
            }
        }
        for (const auto& [marker, type] : individuals_)
            if (!has_concept(type))
                throw VocabularyError("individual " + marker + " has unknown type " + type);
        for (const auto& [name, t] : concepts_)
            if (t.parent) concept_children_[*t.parent].push_back(name);
        for (const auto& [name, t] : relations_)
            if (t.parent) relation_children_[*t.parent].push_back(name);
    }

    std::map<std::string, ConceptType> concepts_;
    std::map<std::string, RelationType> relations_;
    std::map<std::string, std::string> individuals_;  // marker -> concept type
    std::map<std::string, std::vector<std::string>> concept_children_;
    std::map<std::string, std::vector<std::string>> relation_children_;
    std::string top_;
};

namespace detail {
inline void reject_unknown_keys(const nlohmann::json& j,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw VocabularyError("unknown key '" + it.key() + "' in " + where);
    }
}
}  // namespace detail

inline Vocabulary Vocabulary::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw VocabularyError("vocabulary document must be an object");
    detail::reject_unknown_keys(j, {"concept_types", "relation_types", "individuals"},
                                "vocabulary");
    Vocabulary v;
    for (const auto& c : j.value("concept_types", nlohmann::json::array())) {
        detail::reject_unknown_keys(c, {"name", "parent"}, "concept type");
        ConceptType t;
        t.name = c.at("name").get<std::string>();
        if (c.contains("parent")) t.parent = c.at("parent").get<std::string>();
        if (!v.concepts_.emplace(t.name, t).second)
            throw VocabularyError("duplicate concept type: " + t.name);
    }
    for (const auto& r : j.value("relation_types", nlohmann::json::array())) {
        detail::reject_unknown_keys(r, {"name", "arity", "parent", "signature"},
                                    "relation type");
        RelationType t;
        t.name = r.at("name").get<std::string>();
        t.arity = r.at("arity").get<std::size_t>();
        if (r.contains("parent")) t.parent = r.at("parent").get<std::string>();
        t.signature = r.at("signature").get<std::vector<std::string>>();
        if (!v.relations_.emplace(t.name, t).second)
            throw VocabularyError("duplicate relation type: " + t.name);
    }
    for (const auto& i : j.value("individuals", nlohmann::json::array())) {
        detail::reject_unknown_keys(i, {"marker", "type"}, "individual");
        auto marker = i.at("marker").get<std::string>();
        if (!v.individuals_.emplace(marker, i.at("type").get<std::string>()).second)
            throw VocabularyError("duplicate individual marker: " + marker);
    }
    v.validate();
    return v;
}

}  // namespace cgspan

#endif  // CGSPAN_VOCABULARY_HPP_
