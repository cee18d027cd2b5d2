#include <catch2/catch_amalgamated.hpp>

#include "cgspan/eval.hpp"
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

cgspan::ConceptualGraph drive_pattern() {
    cgspan::ConceptualGraph g;
    g.id = "q";
    g.concepts = {C("h", "Human"), C("v", "Car")};
    g.relations = {R("d", "drive", {"h", "v"})};
    return g;
}

// fly-in and drive glued on the Human node
cgspan::ConceptualGraph combined() {
    auto g = fly_in("Plane");
    g.concepts.push_back(C("v2", "Car"));
    g.relations.push_back(R("d", "drive", {"h", "v2"}));
    return g;
}

}  // namespace

TEST_CASE("recall counts expected patterns found in returned ones") {
    auto v = fixtures::aviation();
    std::vector<cgspan::ConceptualGraph> expected{fly_in("Plane"), drive_pattern()};

    CHECK(*cgspan::recall({fly_in("Plane"), drive_pattern()}, expected, v) == 1.0);
    CHECK(*cgspan::recall({combined()}, expected, v) == 1.0);  // both embed in it
    CHECK(*cgspan::recall({}, expected, v) == 0.0);
    CHECK(*cgspan::recall({fly_in("Plane")}, expected, v) == 0.5);
    CHECK_FALSE(cgspan::recall({fly_in("Plane")}, {}, v).has_value());
}

TEST_CASE("a specialization of the expected pattern still counts for recall") {
    auto v = fixtures::aviation();
    auto deeper = fly_in("Plane");
    deeper.concepts[0].type = "Pilot";
    CHECK(*cgspan::recall({deeper}, {fly_in("Plane")}, v) == 1.0);
}

TEST_CASE("precision accepts expected patterns and their combinations") {
    auto v = fixtures::aviation();
    std::vector<cgspan::ConceptualGraph> expected{fly_in("Plane"), drive_pattern()};

    CHECK(*cgspan::precision({fly_in("Plane")}, expected, v) == 1.0);
    CHECK(*cgspan::precision({combined()}, expected, v) == 1.0);
    CHECK_FALSE(cgspan::precision({}, expected, v).has_value());

    SECTION("an unrelated pattern is incorrect") {
        cgspan::ConceptualGraph stray;
        stray.id = "s";
        stray.concepts = {C("a", "Location"), C("b", "City")};
        stray.relations = {R("n", "near", {"a", "b"})};
        CHECK(*cgspan::precision({fly_in("Plane"), stray}, expected, v) == 0.5);
    }
    SECTION("a partial neighborhood is incorrect") {
        auto partial = fly_in("Plane");
        partial.relations[0].args[1] = std::nullopt;
        partial.concepts.erase(partial.concepts.begin() + 1);
        CHECK(*cgspan::precision({partial}, expected, v) == 0.0);
    }
    SECTION("a generalized fragment of an expected pattern is correct") {
        auto frag = drive_pattern();
        frag.concepts[1].type = "Vehicle";
        CHECK(*cgspan::precision({frag}, expected, v) == 1.0);
    }
}

TEST_CASE("redundancy is pruned over total") {
    CHECK(*cgspan::redundancy(46, 54) == Catch::Approx(0.46));
    CHECK(*cgspan::redundancy(0, 7) == 0.0);
    CHECK(*cgspan::redundancy(7, 0) == 1.0);
    CHECK_FALSE(cgspan::redundancy(0, 0).has_value());
}

TEST_CASE("time efficiency is a ratio against the baseline") {
    CHECK(*cgspan::time_efficiency(100.0, 100.0) == 1.0);
    CHECK(*cgspan::time_efficiency(83.0, 100.0) == Catch::Approx(0.83));
    std::vector<std::string> notes;
    CHECK_FALSE(cgspan::time_efficiency(50.0, 0.0, &notes).has_value());
    CHECK_FALSE(notes.empty());
}

TEST_CASE("histogram keeps only maximal patterns") {
    auto v = fixtures::aviation();
    cgspan::MineEntry small;
    small.pattern = fly_in("Plane");
    small.size = 1;
    cgspan::MineEntry big;
    big.pattern = combined();
    big.size = 2;
    cgspan::MineEntry other;
    other.pattern = drive_pattern();
    other.pattern.concepts[1].marker = "F-DZUX";  // Car with a Plane marker: never embeds
    other.pattern.concepts[1].type = "Plane";
    other.size = 1;

    auto hist = cgspan::size_frequency_histogram({small, big, other}, v);
    CHECK(hist == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}});

    SECTION("single pattern histogram") {
        cgspan::MineEntry e;
        e.pattern = fly_in("Plane");
        e.size = 5;
        CHECK(cgspan::size_frequency_histogram({e}, v) ==
              std::map<std::size_t, std::size_t>{{5, 1}});
    }
    SECTION("histogram total equals the maximal pattern count") {
        auto h = cgspan::size_frequency_histogram({small, big}, v);
        std::size_t total = 0;
        for (auto& [k, n] : h) total += n;
        CHECK(total == 1);  // small embeds into big
    }
}

TEST_CASE("report serialization") {
    cgspan::EvalReport r;
    r.recall = 1.0;
    r.precision = 0.85;
    r.redundancy = 0.46;
    r.histogram = {{3, 2}, {5, 1}};
    auto j = cgspan::eval_report_to_json(r);
    CHECK(j["recall"] == 1.0);
    CHECK(j["time_efficiency"].is_null());
    CHECK(j["histogram"]["3"] == 2);
    CHECK(cgspan::histogram_csv(r.histogram) == "size,count\n3,2\n5,1\n");
    CHECK_FALSE(cgspan::eval_report_table(r).empty());
}
