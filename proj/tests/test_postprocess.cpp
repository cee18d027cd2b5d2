#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cgspan/postprocess.hpp"
#include "fixtures.hpp"

using fixtures::C;
using fixtures::R;

namespace {

cgspan::ConceptualGraph fly_in(const std::string& vehicle) {
    cgspan::ConceptualGraph g;
    g.id = "p";
    g.concepts = {C("h", "Human"), C("v", vehicle), C("l", "Location")};
    g.relations = {R("f", "fly-in", {"h", "v", "l"})};
    return g;
}

// random valid CG over the aviation vocabulary: relations with argument
// types drawn from the signature's descendants
cgspan::ConceptualGraph random_pattern(const cgspan::Vocabulary& v, std::mt19937_64& rng) {
    cgspan::ConceptualGraph g;
    g.id = "p";
    std::vector<std::string> rels;
    for (const auto& [name, t] : v.relation_types()) rels.push_back(name);
    std::size_t nrel = 1 + rng() % 3;
    for (std::size_t i = 0; i < nrel; ++i) {
        const auto& rt = v.relation_type(rels[rng() % rels.size()]);
        std::vector<std::string> args;
        for (std::size_t p = 0; p < rt.arity; ++p) {
            std::string type = rt.signature[p];
            while (rng() % 2) {
                const auto& kids = v.concept_children(type);
                if (kids.empty()) break;
                type = kids[rng() % kids.size()];
            }
            std::string id = "c" + std::to_string(g.concepts.size());
            g.concepts.push_back(C(id, type));
            args.push_back(id);
        }
        g.relations.push_back(R("r" + std::to_string(i), rt.name, args));
    }
    return g;
}

}  // namespace

TEST_CASE("signature-only detection") {
    auto v = fixtures::aviation();
    CHECK(cgspan::is_signature_only(fly_in("Vehicle"), v));
    CHECK_FALSE(cgspan::is_signature_only(fly_in("Plane"), v));
    CHECK(cgspan::is_signature_only(cgspan::ConceptualGraph{}, v));

    SECTION("a marker keeps the pattern") {
        auto g = fly_in("Vehicle");
        g.concepts[1].marker = "F-DZUX";
        CHECK_FALSE(cgspan::is_signature_only(g, v));
    }
    SECTION("an unattached non-top concept keeps the pattern") {
        auto g = fly_in("Vehicle");
        g.concepts.push_back(C("x", "City"));
        CHECK_FALSE(cgspan::is_signature_only(g, v));
    }
}

TEST_CASE("compression replaces signature-only bricks by references") {
    auto v = fixtures::aviation();
    auto g = fly_in("Vehicle");
    // second brick is informative: Plane specializes Vehicle
    g.concepts.push_back(C("v2", "Plane"));
    g.relations.push_back(R("d", "drive", {"h", "v2"}));

    auto c = cgspan::compress(g, v);
    REQUIRE(c.relations[0].sig_ref.has_value());
    CHECK(*c.relations[0].sig_ref == "fly-in");
    CHECK(c.relations[0].type.empty());
    CHECK_FALSE(c.relations[1].sig_ref.has_value());
    CHECK(cgspan::decompress(c, v) == g);
}

TEST_CASE("patterns without signature-only bricks are unchanged by compress") {
    auto v = fixtures::aviation();
    auto g = fly_in("Plane");
    CHECK(cgspan::compress(g, v) == g);
}

TEST_CASE("compress round-trips on random patterns") {
    auto v = fixtures::aviation();
    std::mt19937_64 rng(61);
    for (int i = 0; i < 100; ++i) {
        auto g = random_pattern(v, rng);
        REQUIRE(cgspan::validate_graph(g, v).empty());
        CHECK(cgspan::decompress(cgspan::compress(g, v), v) == g);
    }
}

TEST_CASE("prune removes signature-only patterns and counts them") {
    auto v = fixtures::aviation();
    std::vector<cgspan::PrunablePattern> in{
        {fly_in("Vehicle"), "mined"},
        {fly_in("Plane"), "mined"},
        {fly_in("Vehicle"), "rule:near-city"},  // exempt from removal
    };
    auto [kept, pruned] = cgspan::prune(in, v);
    CHECK(pruned == 1);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].pattern.relations[0].type == "fly-in");
    // the rule-derived pattern is still compressed
    CHECK(kept[1].pattern.relations[0].sig_ref.has_value());
}

TEST_CASE("prune of nothing is nothing") {
    auto v = fixtures::aviation();
    auto [kept, pruned] = cgspan::prune({}, v);
    CHECK(kept.empty());
    CHECK(pruned == 0);
}

TEST_CASE("pruning never drops a pattern with a deep label or marker") {
    auto v = fixtures::aviation();
    std::mt19937_64 rng(67);
    for (int i = 0; i < 100; ++i) {
        auto g = random_pattern(v, rng);
        bool informative = false;
        for (const auto& r : g.relations) {
            const auto& rt = v.relation_type(r.type);
            for (std::size_t p = 0; p < r.args.size(); ++p) {
                const auto* c = g.find_concept(*r.args[p]);
                if (c->type != rt.signature[p] || c->marker) informative = true;
            }
        }
        if (informative) CHECK_FALSE(cgspan::is_signature_only(g, v));
    }
}
