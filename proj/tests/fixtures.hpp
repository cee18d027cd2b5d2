#ifndef CGSPAN_TESTS_FIXTURES_HPP_
#define CGSPAN_TESTS_FIXTURES_HPP_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cgspan/graph.hpp"
#include "cgspan/vocabulary.hpp"

namespace fixtures {

// Aviation-flavored vocabulary used across the tests: a concept tree rooted
// at Thing, a ternary fly-in relation whose signature restricts its argument
// positions, and a couple of individuals.
inline cgspan::Vocabulary aviation() {
    return cgspan::Vocabulary::parse(R"({
      "concept_types": [
        {"name": "Thing"},
        {"name": "Vehicle", "parent": "Thing"},
        {"name": "Plane", "parent": "Vehicle"},
        {"name": "Car", "parent": "Vehicle"},
        {"name": "Human", "parent": "Thing"},
        {"name": "Pilot", "parent": "Human"},
        {"name": "Driver", "parent": "Human"},
        {"name": "Location", "parent": "Thing"},
        {"name": "City", "parent": "Location"},
        {"name": "Airport", "parent": "Location"}
      ],
      "relation_types": [
        {"name": "fly-in", "arity": 3, "signature": ["Human", "Vehicle", "Location"]},
        {"name": "drive", "arity": 2, "signature": ["Human", "Vehicle"]},
        {"name": "near", "arity": 2, "signature": ["Location", "Location"]},
        {"name": "own", "arity": 2, "signature": ["Human", "Thing"]}
      ],
      "individuals": [
        {"marker": "F-DZUX", "type": "Plane"},
        {"marker": "JFK", "type": "Airport"}
      ]
    })");
}

// Minimal vocabulary for brute-force comparisons: 4 concept types, 2 binary
// relation types, no markers.
inline cgspan::Vocabulary tiny() {
    return cgspan::Vocabulary::parse(R"({
      "concept_types": [
        {"name": "T"},
        {"name": "A", "parent": "T"},
        {"name": "A1", "parent": "A"},
        {"name": "B", "parent": "T"}
      ],
      "relation_types": [
        {"name": "r", "arity": 2, "signature": ["T", "T"]},
        {"name": "s", "arity": 2, "signature": ["T", "T"]}
      ],
      "individuals": []
    })");
}

inline cgspan::ConceptNode C(std::string id, std::string type,
                             std::optional<std::string> marker = std::nullopt) {
    cgspan::ConceptNode n;
    n.id = std::move(id);
    n.type = std::move(type);
    n.marker = std::move(marker);
    return n;
}

inline cgspan::RelationNode R(std::string id, std::string type, std::vector<std::string> args) {
    cgspan::RelationNode n;
    n.id = std::move(id);
    n.type = std::move(type);
    for (auto& a : args) n.args.emplace_back(std::move(a));
    return n;
}

// Random valid CG over the tiny() vocabulary: `bricks` binary relations over
// a shared pool of concepts.
inline cgspan::ConceptualGraph random_tiny_graph(std::mt19937_64& rng, const std::string& id,
                                                 std::size_t bricks) {
    static const char* ctypes[] = {"T", "A", "A1", "B"};
    static const char* rtypes[] = {"r", "s"};
    cgspan::ConceptualGraph g;
    g.id = id;
    std::size_t n_concepts = 2 + rng() % (bricks + 2);
    for (std::size_t i = 0; i < n_concepts; ++i)
        g.concepts.push_back(C("c" + std::to_string(i), ctypes[rng() % 4]));
    for (std::size_t i = 0; i < bricks; ++i) {
        std::string a = "c" + std::to_string(rng() % n_concepts);
        std::string b = "c" + std::to_string(rng() % n_concepts);
        g.relations.push_back(R("r" + std::to_string(i), rtypes[rng() % 2], {a, b}));
    }
    return g;
}

inline cgspan::Database random_tiny_db(std::uint64_t seed, std::size_t graphs,
                                       std::size_t max_bricks) {
    std::mt19937_64 rng(seed);
    cgspan::Database db;
    for (std::size_t i = 0; i < graphs; ++i)
        db.push_back(random_tiny_graph(rng, "g" + std::to_string(i), 1 + rng() % max_bricks));
    return db;
}

}  // namespace fixtures

#endif  // CGSPAN_TESTS_FIXTURES_HPP_
