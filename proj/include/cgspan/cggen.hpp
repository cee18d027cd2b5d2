#ifndef CGSPAN_CGGEN_HPP_
#define CGSPAN_CGGEN_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgspan/cg_match.hpp"
#include "cgspan/graph.hpp"
#include "cgspan/parallel.hpp"
#include "cgspan/vocabulary.hpp"

namespace cgspan {

class GenError : public std::runtime_error {
public:
    explicit GenError(const std::string& m) : std::runtime_error(m) {}
};

namespace detail {

// Self-contained generator so the output is identical across platforms and
// standard libraries (std:: distributions are not portable).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {  // splitmix64
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::size_t index(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }

    bool chance(double p) { return uniform() < p; }
};

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t idx) {
    Rng r(seed ^ (0x2545f4914f6cdd1dULL * (idx + 1)));
    return r.next();
}

}  // namespace detail

// Weighted discrete distribution over string or integer keys. Kept in a
// sorted map so iteration order (and hence sampling) is deterministic.
template <typename Key>
struct Distribution {
    std::map<Key, double> weights;

    bool empty() const { return weights.empty(); }

    double total() const {
        double t = 0;
        for (const auto& [k, w] : weights) t += w;
        return t;
    }

    void check(const std::string& what) const {
        for (const auto& [k, w] : weights)
            if (w < 0) throw GenError(what + ": negative weight");
        if (!weights.empty() && total() <= 0) throw GenError(what + ": zero total weight");
    }

    const Key& sample(detail::Rng& rng) const {
        double x = rng.uniform() * total();
        double acc = 0;
        for (const auto& [k, w] : weights) {
            acc += w;
            if (x < acc) return k;
        }
        return weights.rbegin()->first;
    }
};

struct SeedSpec {
    ConceptualGraph pattern;
    double frequency = 0;  // target fraction of graphs containing the pattern
};

struct NoiseConfig {
    double attach_probability = 0.5;      // reuse an existing concept as an argument
    double specialize_probability = 0.5;  // per step, descend below the signature type
    double marker_probability = 0.0;      // put an individual marker on a new concept
    double isolated_concept_rate = 0.0;   // fraction of added nodes that are lone concepts
};

struct GenConfig {
    std::size_t graph_count = 0;
    Distribution<std::size_t> size_distribution;      // over total CG node counts
    Distribution<std::string> relation_distribution;  // noise relation types
    std::vector<SeedSpec> seeds;
    NoiseConfig noise;
    std::uint64_t rng_seed = 0;
    unsigned workers = 1;

    static GenConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

struct SeedReport {
    ConceptualGraph pattern;           // the planted pattern, for later evaluation
    std::vector<std::string> planted;  // graph ids the seed was copied into
    double target_frequency = 0;
    double realized_frequency = 0;  // fraction of graphs embedding the seed
};

struct Manifest {
    std::vector<SeedReport> seeds;
    std::map<std::size_t, std::size_t> size_histogram;       // node count -> graphs
    std::map<std::string, std::size_t> label_histogram;      // type -> node count
    std::vector<std::string> warnings;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["seeds"] = nlohmann::ordered_json::array();
        for (const auto& s : seeds)
            j["seeds"].push_back({{"pattern", s.pattern.to_json()},
                                  {"planted", s.planted},
                                  {"target_frequency", s.target_frequency},
                                  {"realized_frequency", s.realized_frequency}});
        j["size_histogram"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : size_histogram) j["size_histogram"][std::to_string(k)] = v;
        j["label_histogram"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : label_histogram) j["label_histogram"][k] = v;
        j["warnings"] = warnings;
        return j;
    }

    static Manifest from_json(const nlohmann::json& j) {
        Manifest m;
        for (const auto& s : j.at("seeds")) {
            SeedReport r;
            r.pattern = ConceptualGraph::from_json(s.at("pattern"));
            r.planted = s.at("planted").get<std::vector<std::string>>();
            r.target_frequency = s.at("target_frequency").get<double>();
            r.realized_frequency = s.at("realized_frequency").get<double>();
            m.seeds.push_back(std::move(r));
        }
        for (const auto& [k, v] : j.at("size_histogram").items())
            m.size_histogram[std::stoul(k)] = v.get<std::size_t>();
        for (const auto& [k, v] : j.at("label_histogram").items())
            m.label_histogram[k] = v.get<std::size_t>();
        if (j.contains("warnings")) m.warnings = j.at("warnings").get<std::vector<std::string>>();
        return m;
    }
};

inline GenConfig GenConfig::from_json(const nlohmann::json& j) {
    GenConfig c;
    c.graph_count = j.at("graph_count").get<std::size_t>();
    if (j.contains("size_distribution"))
        for (const auto& [k, v] : j.at("size_distribution").items())
            c.size_distribution.weights[std::stoul(k)] = v.get<double>();
    if (j.contains("relation_distribution"))
        for (const auto& [k, v] : j.at("relation_distribution").items())
            c.relation_distribution.weights[k] = v.get<double>();
    if (j.contains("seeds")) {
        for (const auto& s : j.at("seeds")) {
            SeedSpec spec;
            spec.pattern = ConceptualGraph::from_json(s.at("pattern"));
            spec.frequency = s.at("frequency").get<double>();
            c.seeds.push_back(std::move(spec));
        }
    }
    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        if (n.contains("attach_probability"))
            c.noise.attach_probability = n.at("attach_probability").get<double>();
        if (n.contains("specialize_probability"))
            c.noise.specialize_probability = n.at("specialize_probability").get<double>();
        if (n.contains("marker_probability"))
            c.noise.marker_probability = n.at("marker_probability").get<double>();
        if (n.contains("isolated_concept_rate"))
            c.noise.isolated_concept_rate = n.at("isolated_concept_rate").get<double>();
    }
    if (j.contains("rng_seed")) c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return c;
}

inline nlohmann::ordered_json GenConfig::to_json() const {
    nlohmann::ordered_json j;
    j["graph_count"] = graph_count;
    j["size_distribution"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : size_distribution.weights)
        j["size_distribution"][std::to_string(k)] = v;
    j["relation_distribution"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : relation_distribution.weights) j["relation_distribution"][k] = v;
    j["seeds"] = nlohmann::ordered_json::array();
    for (const auto& s : seeds)
        j["seeds"].push_back({{"pattern", s.pattern.to_json()}, {"frequency", s.frequency}});
    j["noise"] = {{"attach_probability", noise.attach_probability},
                  {"specialize_probability", noise.specialize_probability},
                  {"marker_probability", noise.marker_probability},
                  {"isolated_concept_rate", noise.isolated_concept_rate}};
    j["rng_seed"] = rng_seed;
    return j;
}

namespace detail {

inline void check_gen_config(const Vocabulary& v, const GenConfig& c) {
    c.size_distribution.check("size_distribution");
    c.relation_distribution.check("relation_distribution");
    for (const auto& [t, w] : c.relation_distribution.weights)
        if (!v.has_relation(t)) throw GenError("relation_distribution: unknown type " + t);
    for (const auto& s : c.seeds) {
        if (s.frequency <= 0 || s.frequency > 1)
            throw GenError("seed frequency must be in (0,1]");
        auto vio = validate_graph(s.pattern, v);
        if (!vio.empty())
            throw GenError("seed pattern " + s.pattern.id + " fails validation: " +
                           vio.front().message);
        for (const auto& r : s.pattern.relations)
            for (const auto& a : r.args)
                if (!a) throw GenError("seed pattern " + s.pattern.id + " has an absent argument");
    }
}

// Descend from `type` through random children while the specialization coin
// keeps coming up, landing on a concrete concept type.
inline std::string specialize_concept(const Vocabulary& v, const std::string& type, Rng& rng,
                                      double p) {
    std::string cur = type;
    while (rng.chance(p)) {
        auto kids = v.concept_children(cur);
        if (kids.empty()) break;
        cur = kids[rng.index(kids.size())];
    }
    return cur;
}

struct GraphBuilder {
    const Vocabulary* v;
    const GenConfig* cfg;
    ConceptualGraph g;
    Rng rng;
    std::size_t next_c = 0, next_r = 0;
    std::vector<std::string> concept_ids;  // for argument reuse

    GraphBuilder(const Vocabulary& voc, const GenConfig& c, std::uint64_t stream)
        : v(&voc), cfg(&c), rng(stream) {}

    std::string add_concept(const std::string& type, std::optional<std::string> marker) {
        ConceptNode n;
        n.id = "c" + std::to_string(next_c++);
        n.type = type;
        n.marker = std::move(marker);
        concept_ids.push_back(n.id);
        g.concepts.push_back(std::move(n));
        return g.concepts.back().id;
    }

    std::string concept_for_position(const std::string& sig_type) {
        if (cfg->noise.attach_probability > 0 && rng.chance(cfg->noise.attach_probability)) {
            // gather existing concepts conforming to the signature type
            std::vector<std::size_t> ok;
            for (std::size_t i = 0; i < g.concepts.size(); ++i)
                if (v->is_concept_generalization(sig_type, g.concepts[i].type)) ok.push_back(i);
            if (!ok.empty()) return g.concepts[ok[rng.index(ok.size())]].id;
        }
        std::string type = specialize_concept(*v, sig_type, rng, cfg->noise.specialize_probability);
        std::optional<std::string> marker;
        if (cfg->noise.marker_probability > 0 && rng.chance(cfg->noise.marker_probability)) {
            auto ms = v->markers_of_type(type);
            if (!ms.empty()) marker = ms[rng.index(ms.size())];
        }
        return add_concept(type, std::move(marker));
    }

    void add_noise_node() {
        if (cfg->noise.isolated_concept_rate > 0 && rng.chance(cfg->noise.isolated_concept_rate)) {
            std::string type =
                specialize_concept(*v, v->top(), rng, cfg->noise.specialize_probability);
            add_concept(type, std::nullopt);
            return;
        }
        if (cfg->relation_distribution.empty()) {
            add_concept(v->top(), std::nullopt);
            return;
        }
        const std::string& rt_name = cfg->relation_distribution.sample(rng);
        const auto& rt = v->relation_type(rt_name);
        RelationNode r;
        r.id = "r" + std::to_string(next_r++);
        r.type = rt_name;
        for (std::size_t i = 0; i < rt.arity; ++i)
            r.args.push_back(concept_for_position(rt.signature[i]));
        g.relations.push_back(std::move(r));
    }

    void plant(const ConceptualGraph& seed) {
        std::map<std::string, std::string> remap;
        for (const auto& c : seed.concepts) {
            ConceptNode n = c;
            n.id = "c" + std::to_string(next_c++);
            remap[c.id] = n.id;
            concept_ids.push_back(n.id);
            g.concepts.push_back(std::move(n));
        }
        for (const auto& r : seed.relations) {
            RelationNode n = r;
            n.id = "r" + std::to_string(next_r++);
            for (auto& a : n.args)
                if (a) a = remap.at(*a);
            g.relations.push_back(std::move(n));
        }
    }

    std::size_t node_count() const { return g.concepts.size() + g.relations.size(); }
};

}  // namespace detail

// Spec op: one reproducible draw from the configured distributions.
inline std::pair<std::size_t, std::string> sample_distributions(const GenConfig& cfg,
                                                                detail::Rng& rng) {
    std::size_t size = cfg.size_distribution.empty() ? 0 : cfg.size_distribution.sample(rng);
    std::string label =
        cfg.relation_distribution.empty() ? std::string() : cfg.relation_distribution.sample(rng);
    return {size, label};
}

// Generate `graph_count` CGs: seeds planted verbatim into ceil(f*N) distinct
// graphs each, the rest grown as signature-conforming noise. Deterministic in
// (vocabulary, config); per-graph rng streams keep parallel output identical.
inline std::pair<Database, Manifest> generate(const Vocabulary& v, const GenConfig& cfg) {
    detail::check_gen_config(v, cfg);
    Manifest manifest;
    Database db(cfg.graph_count);
    std::size_t n = cfg.graph_count;

    // assign planting graphs per seed from the master stream
    std::vector<std::vector<std::size_t>> plan(n);  // graph -> seed indices
    detail::Rng master(detail::derive_stream(cfg.rng_seed, 0xa11a55ULL));
    manifest.seeds.resize(cfg.seeds.size());
    for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
        manifest.seeds[si].pattern = cfg.seeds[si].pattern;
        manifest.seeds[si].target_frequency = cfg.seeds[si].frequency;
        if (n == 0) continue;
        std::size_t want = static_cast<std::size_t>(
            std::ceil(cfg.seeds[si].frequency * static_cast<double>(n)));
        want = std::min(want, n);
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = n; i > 1; --i)  // Fisher-Yates
            std::swap(idx[i - 1], idx[master.index(i)]);
        idx.resize(want);
        std::sort(idx.begin(), idx.end());
        for (std::size_t gi : idx) {
            plan[gi].push_back(si);
            manifest.seeds[si].planted.push_back("g" + std::to_string(gi));
        }
    }

    std::vector<std::vector<std::string>> graph_warnings(n);
    parallel_for(n, cfg.workers, [&](std::size_t gi) {
        detail::GraphBuilder b(v, cfg, detail::derive_stream(cfg.rng_seed, gi + 1));
        auto [target, ignored] = sample_distributions(cfg, b.rng);
        (void)ignored;
        for (std::size_t si : plan[gi]) b.plant(cfg.seeds[si].pattern);
        if (b.node_count() > target && target > 0)
            graph_warnings[gi].push_back("g" + std::to_string(gi) + ": planted seeds need " +
                                         std::to_string(b.node_count()) + " nodes, sampled size " +
                                         std::to_string(target) + " raised");
        std::size_t guard = 0;
        while (b.node_count() < target && ++guard < 4 * target + 16) b.add_noise_node();
        b.g.id = "g" + std::to_string(gi);
        db[gi] = std::move(b.g);
    });
    for (const auto& w : graph_warnings)
        manifest.warnings.insert(manifest.warnings.end(), w.begin(), w.end());

    for (const auto& g : db) {
        auto vio = validate_graph(g, v);
        if (!vio.empty())
            throw GenError("generated graph " + g.id + " fails validation: " +
                           vio.front().message);
        manifest.size_histogram[g.concepts.size() + g.relations.size()]++;
        for (const auto& c : g.concepts) manifest.label_histogram[c.type]++;
        for (const auto& r : g.relations) manifest.label_histogram[r.type]++;
    }

    // realized frequencies: homomorphic containment, so planting is a lower bound
    std::vector<std::vector<char>> hits(cfg.seeds.size(), std::vector<char>(n, 0));
    for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
        parallel_for(n, cfg.workers, [&](std::size_t gi) {
            hits[si][gi] = cg_embeds(cfg.seeds[si].pattern, db[gi], v) ? 1 : 0;
        });
        std::size_t count = 0;
        for (char h : hits[si]) count += h;
        manifest.seeds[si].realized_frequency =
            n == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n);
    }
    return {std::move(db), std::move(manifest)};
}

}  // namespace cgspan

#endif  // CGSPAN_CGGEN_HPP_
