#ifndef CGSPAN_PIPELINE_HPP_
#define CGSPAN_PIPELINE_HPP_

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cgspan/miner.hpp"
#include "cgspan/postprocess.hpp"

namespace cgspan {

class ValidationFailure : public std::runtime_error {
public:
    explicit ValidationFailure(std::vector<Violation> violations)
        : std::runtime_error("database failed validation (" +
                             std::to_string(violations.size()) + " violations)"),
          violations(std::move(violations)) {}
    std::vector<Violation> violations;
};

namespace detail {

// An extension rule lowered onto the mining representation: hypothesis and
// conclusion as TLGs plus the node correspondence between them.
struct CompiledExtensionRule {
    std::string name;
    Tlg hyp;
    Tlg concl;
    std::vector<std::size_t> hyp_to_concl;  // hyp node index -> concl node index
    std::vector<std::size_t> extras;        // concl node indices outside the image
};

inline std::optional<CompiledExtensionRule> compile_extension_rule(
    const LambdaRule& rule, const Vocabulary& v, const TranslateOptions& opts,
    std::vector<std::string>* warnings) {
    auto warn = [&](const std::string& m) {
        if (warnings) warnings->push_back(m);
    };
    if (!rule.is_extension(v)) return std::nullopt;
    CompiledExtensionRule c;
    c.name = rule.name;
    c.hyp = translate(rule.hypothesis, v, opts);
    c.concl = translate(rule.conclusion, v, opts);
    if (c.hyp.nodes.empty()) {
        warn("rule " + rule.name + ": hypothesis has no mineable node in this mode; skipped");
        return std::nullopt;
    }
    auto embs = rule.hypothesis_in_conclusion(v);
    if (embs.empty()) return std::nullopt;
    const CgEmbedding& e = embs.front();
    std::map<std::string, std::size_t> concl_by_origin;
    for (std::size_t i = 0; i < c.concl.nodes.size(); ++i)
        concl_by_origin[c.concl.nodes[i].origin] = i;
    c.hyp_to_concl.resize(c.hyp.nodes.size());
    std::set<std::size_t> image;
    for (std::size_t i = 0; i < c.hyp.nodes.size(); ++i) {
        auto it = e.find(c.hyp.nodes[i].origin);
        if (it == e.end() || !concl_by_origin.count(it->second)) {
            warn("rule " + rule.name + ": hypothesis node " + c.hyp.nodes[i].origin +
                 " has no image in the conclusion; skipped");
            return std::nullopt;
        }
        c.hyp_to_concl[i] = concl_by_origin.at(it->second);
        image.insert(c.hyp_to_concl[i]);
    }
    for (std::size_t i = 0; i < c.concl.nodes.size(); ++i)
        if (!image.count(i)) c.extras.push_back(i);
    return c;
}

// Extend pattern graph `p` with the conclusion's extra nodes, routed through
// the embedding of the hypothesis into `p`.
inline Tlg extend_with_conclusion(const Tlg& p, const CompiledExtensionRule& rule,
                                  const TlgEmbedding& phi) {
    Tlg out = p;
    std::map<std::size_t, std::size_t> concl_to_out;
    for (std::size_t h = 0; h < rule.hyp_to_concl.size(); ++h)
        concl_to_out[rule.hyp_to_concl[h]] = phi[h];
    for (std::size_t x : rule.extras) {
        concl_to_out[x] = out.nodes.size();
        out.nodes.push_back(rule.concl.nodes[x]);
    }
    for (const auto& e : rule.concl.edges) {
        bool a_extra = !std::count(rule.hyp_to_concl.begin(), rule.hyp_to_concl.end(), e.a);
        bool b_extra = !std::count(rule.hyp_to_concl.begin(), rule.hyp_to_concl.end(), e.b);
        if (!a_extra && !b_extra) continue;  // structure already present via the hypothesis
        TlgEdge ne = e;
        ne.a = concl_to_out.at(e.a);
        ne.b = concl_to_out.at(e.b);
        if (!has_identical_edge(out, ne.a, ne.b, ne.pos_a, ne.pos_b, ne.cpath))
            out.edges.push_back(std::move(ne));
    }
    return out;
}

// Add the sharing edges implied by transitivity to a rule-extended pattern,
// so its support is measured with the same constraints its CG form carries.
// Returns nothing when the implied identities need a repeated-argument
// relation, which the brick encoding cannot express.
inline std::optional<Tlg> close_pattern(const Tlg& g) {
    if (!g.bricks) return is_closed(g) ? std::optional<Tlg>(g) : std::nullopt;
    std::map<std::pair<std::size_t, int>, std::size_t> idx;
    std::vector<std::pair<std::size_t, int>> slots;
    std::vector<std::size_t> uf;
    auto get = [&](std::size_t n, int p) {
        auto [it, fresh] = idx.emplace(std::make_pair(n, p), slots.size());
        if (fresh) {
            slots.emplace_back(n, p);
            uf.push_back(it->second);
        }
        return it->second;
    };
    auto find = [&](std::size_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (const auto& e : g.edges) {
        std::size_t a = get(e.a, e.pos_a);
        std::size_t b = get(e.b, e.pos_b);
        uf[find(a)] = find(b);
    }
    std::map<std::size_t, Path> deepest;
    for (const auto& e : g.edges) {
        auto& d = deepest[find(get(e.a, e.pos_a))];
        if (e.cpath.size() > d.size()) d = e.cpath;
    }
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < slots.size(); ++i) classes[find(i)].push_back(i);
    Tlg out = g;
    for (const auto& [root, members] : classes)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                auto [n1, p1] = slots[members[i]];
                auto [n2, p2] = slots[members[j]];
                if (n1 == n2) return std::nullopt;
                bool found = false;
                for (const auto& e : g.edges)
                    if ((e.a == n1 && e.pos_a == p1 && e.b == n2 && e.pos_b == p2) ||
                        (e.a == n2 && e.pos_a == p2 && e.b == n1 && e.pos_b == p1)) {
                        found = true;
                        break;
                    }
                if (!found) out.edges.push_back({n1, n2, p1, p2, deepest.at(root)});
            }
    return out;
}

// Sub-pattern suppressed by a successful rule jump: same shape, labels at or
// below the suppressor's labels.
inline bool label_specialization_of(const Tlg& general, const Tlg& specific) {
    if (general.nodes.size() != specific.nodes.size()) return false;
    if (general.edges.size() != specific.edges.size()) return false;
    return tlg_embeds(general, specific, /*injective=*/true);
}

struct RuleFiring {
    Tlg extended;
    std::vector<Tlg> suppressed;  // hypothesis and intermediates
    std::string rule_name;
};

inline std::optional<RuleFiring> fire_extension_rule(const Tlg& pattern,
                                                     const CompiledExtensionRule& rule) {
    auto embs = tlg_embeddings(rule.hyp, pattern, 1);
    if (embs.empty()) return std::nullopt;
    RuleFiring f;
    f.rule_name = rule.name;
    auto extended = close_pattern(extend_with_conclusion(pattern, rule, embs.front()));
    if (!extended) return std::nullopt;
    f.extended = std::move(*extended);
    f.suppressed.push_back(rule.hyp);
    // intermediates: pattern plus any nonempty proper subset of the extras
    std::size_t k = rule.extras.size();
    if (k > 0 && k <= 16) {
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
            Tlg mid = pattern;
            std::map<std::size_t, std::size_t> concl_to_out;
            for (std::size_t h = 0; h < rule.hyp_to_concl.size(); ++h)
                concl_to_out[rule.hyp_to_concl[h]] = embs.front()[h];
            for (std::size_t bit = 0; bit < k; ++bit) {
                if (!(mask & (std::size_t{1} << bit))) continue;
                concl_to_out[rule.extras[bit]] = mid.nodes.size();
                mid.nodes.push_back(rule.concl.nodes[rule.extras[bit]]);
            }
            for (const auto& e : rule.concl.edges) {
                if (!concl_to_out.count(e.a) || !concl_to_out.count(e.b)) continue;
                bool a_extra = !std::count(rule.hyp_to_concl.begin(), rule.hyp_to_concl.end(), e.a);
                bool b_extra = !std::count(rule.hyp_to_concl.begin(), rule.hyp_to_concl.end(), e.b);
                if (!a_extra && !b_extra) continue;
                TlgEdge ne = e;
                ne.a = concl_to_out.at(e.a);
                ne.b = concl_to_out.at(e.b);
                if (!has_identical_edge(mid, ne.a, ne.b, ne.pos_a, ne.pos_b, ne.cpath))
                    mid.edges.push_back(std::move(ne));
            }
            if (!tlg_connected(mid)) continue;
            if (auto closed = close_pattern(mid)) f.suppressed.push_back(std::move(*closed));
        }
    }
    return f;
}

}  // namespace detail

// Spec op: one-shot extension-rule application to a single pattern. Returns
// the extended pattern when it is frequent; the caller handles suppression.
inline std::optional<Pattern> apply_extension_rules(const Pattern& p,
                                                    const std::vector<LambdaRule>& rules,
                                                    const std::vector<Tlg>& db,
                                                    const MiningConfig& cfg,
                                                    const Vocabulary& v,
                                                    std::vector<Tlg>* suppressed = nullptr) {
    for (const auto& rule : rules) {
        if (p.provenance == "rule:" + rule.name) continue;
        auto compiled = detail::compile_extension_rule(rule, v, cfg.translate_options(), nullptr);
        if (!compiled) continue;
        auto firing = detail::fire_extension_rule(p.graph, *compiled);
        if (!firing) continue;
        if (cfg.max_size && firing->extended.nodes.size() > *cfg.max_size) continue;
        std::size_t sup = support(firing->extended, db, cfg.injective);
        if (sup < cfg.minsup) continue;
        Pattern ext;
        ext.graph = firing->extended;
        ext.support = sup;
        ext.provenance = "rule:" + rule.name;
        ext.code = min_dfs_code(ext.graph);
        if (suppressed)
            suppressed->insert(suppressed->end(), firing->suppressed.begin(),
                               firing->suppressed.end());
        return ext;
    }
    return std::nullopt;
}

struct MineEntry {
    ConceptualGraph pattern;
    std::size_t support = 0;
    std::string provenance = "mined";
    std::string canonical_code;
    std::size_t size = 0;  // TLG node count (brick count when bricks are on)
};

struct MineResult {
    std::vector<MineEntry> patterns;
    std::size_t pruned = 0;
    std::vector<std::string> warnings;
    std::map<std::string, double> timings_ms;
};

// Full cgSpan pipeline: specialization rules, taxonomy encoding (optionally
// signature-truncated), brick or node translation, structural mining,
// extension rules, label specialization, signature post-processing and
// back-translation. Output is sorted by (size desc, support desc, code).
inline MineResult mine(const Database& db, const Vocabulary& v,
                       const std::vector<LambdaRule>& rules, const MiningConfig& cfg) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };
    MineResult result;

    auto t0 = clock::now();
    std::vector<Violation> violations;
    for (const auto& g : db) {
        auto vio = validate_graph(g, v);
        violations.insert(violations.end(), vio.begin(), vio.end());
    }
    if (!violations.empty()) throw ValidationFailure(std::move(violations));
    result.timings_ms["validate"] = ms_since(t0);

    if (!cfg.rules && !rules.empty())
        result.warnings.push_back("rules supplied but rules module is off; rules ignored");

    // pre-processing: specialization rules, then translation
    t0 = clock::now();
    Database prepared(db.size());
    std::vector<std::vector<std::string>> rule_warnings(db.size());
    parallel_for(db.size(), cfg.workers, [&](std::size_t i) {
        prepared[i] = cfg.rules ? apply_specialization_rules(db[i], rules, v, &rule_warnings[i])
                                : db[i];
    });
    for (const auto& w : rule_warnings)
        result.warnings.insert(result.warnings.end(), w.begin(), w.end());
    std::vector<Tlg> tdb(db.size());
    parallel_for(db.size(), cfg.workers,
                 [&](std::size_t i) { tdb[i] = translate(prepared[i], v, cfg.translate_options()); });
    result.timings_ms["translate"] = ms_since(t0);

    // structural mining
    t0 = clock::now();
    auto structural = mine_structural(tdb, cfg);
    result.timings_ms["structural"] = ms_since(t0);

    // label specialization to the frontier
    t0 = clock::now();
    std::vector<std::vector<Pattern>> frontiers(structural.size());
    for (std::size_t i = 0; i < structural.size(); ++i)
        frontiers[i] = specialize(structural[i].graph, structural[i].emb, tdb, cfg, v);
    std::vector<Pattern> patterns;
    std::set<std::string> seen;
    for (auto& f : frontiers)
        for (auto& p : f)
            if (seen.insert(p.code.to_string()).second) patterns.push_back(std::move(p));
    result.timings_ms["specialize"] = ms_since(t0);

    // extension rules: jump matching patterns to the rule conclusion and
    // suppress the hypothesis and the intermediate patterns
    t0 = clock::now();
    if (cfg.rules) {
        std::vector<detail::CompiledExtensionRule> compiled;
        for (const auto& rule : rules) {
            auto c = detail::compile_extension_rule(rule, v, cfg.translate_options(),
                                                    &result.warnings);
            if (c) compiled.push_back(std::move(*c));
        }
        std::vector<Tlg> suppressed;
        std::vector<Pattern> extended;
        std::map<std::string, std::string> upgraded;  // code -> rule provenance
        std::vector<std::pair<Pattern, std::set<std::string>>> work;
        for (const auto& p : patterns) work.push_back({p, {}});
        for (std::size_t wi = 0; wi < work.size(); ++wi) {
            auto [p, applied] = work[wi];
            for (const auto& rule : compiled) {
                if (applied.count(rule.name)) continue;
                auto firing = detail::fire_extension_rule(p.graph, rule);
                if (!firing) continue;
                if (cfg.max_size && firing->extended.nodes.size() > *cfg.max_size) continue;
                std::size_t sup = support(firing->extended, tdb, cfg.injective);
                if (sup < cfg.minsup) continue;  // fall back to normal enumeration
                suppressed.insert(suppressed.end(), firing->suppressed.begin(),
                                  firing->suppressed.end());
                // the jump lands on the conclusion; specialize it to the frontier
                GraphEmbeddings emb = all_embeddings(firing->extended, tdb, cfg);
                auto frontier =
                    specialize(firing->extended, emb, tdb, cfg, v, "rule:" + rule.name);
                std::set<std::string> next_applied = applied;
                next_applied.insert(rule.name);
                for (auto& fp : frontier) {
                    if (seen.insert(fp.code.to_string()).second) {
                        extended.push_back(fp);
                        work.push_back({fp, next_applied});
                    } else {
                        // already reached by plain enumeration: keep the
                        // pattern, credit the rule
                        upgraded.emplace(fp.code.to_string(), fp.provenance);
                    }
                }
            }
        }
        for (auto& p : patterns) {
            auto it = upgraded.find(p.code.to_string());
            if (it != upgraded.end() && p.provenance == "mined") p.provenance = it->second;
        }
        std::vector<Pattern> kept;
        for (auto& p : patterns) {
            bool drop = false;
            for (const auto& s : suppressed)
                if (detail::label_specialization_of(s, p.graph)) { drop = true; break; }
            if (!drop) kept.push_back(std::move(p));
        }
        for (auto& p : extended) {
            bool drop = false;
            for (const auto& s : suppressed)
                if (detail::label_specialization_of(s, p.graph)) { drop = true; break; }
            if (!drop) kept.push_back(std::move(p));
        }
        patterns = std::move(kept);
    }
    result.timings_ms["rules"] = ms_since(t0);

    // back-translation and signature post-processing
    t0 = clock::now();
    std::vector<PrunablePattern> cg_patterns;
    std::vector<std::size_t> origin;  // index into `patterns`
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        cg_patterns.push_back({back_translate(patterns[i].graph, v), patterns[i].provenance});
        origin.push_back(i);
    }
    if (cfg.signatures) {
        std::vector<PrunablePattern> kept;
        std::vector<std::size_t> kept_origin;
        for (std::size_t i = 0; i < cg_patterns.size(); ++i) {
            bool rule_derived = cg_patterns[i].provenance.rfind("rule:", 0) == 0;
            if (!rule_derived && is_signature_only(cg_patterns[i].pattern, v)) {
                ++result.pruned;
                continue;
            }
            PrunablePattern pp = cg_patterns[i];
            pp.pattern = compress(pp.pattern, v);
            kept.push_back(std::move(pp));
            kept_origin.push_back(origin[i]);
        }
        cg_patterns = std::move(kept);
        origin = std::move(kept_origin);
    }
    for (std::size_t i = 0; i < cg_patterns.size(); ++i) {
        const Pattern& p = patterns[origin[i]];
        MineEntry e;
        e.pattern = cg_patterns[i].pattern;
        e.support = p.support;
        e.provenance = p.provenance;
        e.canonical_code = p.code.to_string();
        e.size = p.graph.nodes.size();
        result.patterns.push_back(std::move(e));
    }
    std::sort(result.patterns.begin(), result.patterns.end(),
              [](const MineEntry& a, const MineEntry& b) {
                  if (a.size != b.size) return a.size > b.size;
                  if (a.support != b.support) return a.support > b.support;
                  return a.canonical_code < b.canonical_code;
              });
    result.timings_ms["postprocess"] = ms_since(t0);
    return result;
}

inline nlohmann::ordered_json mine_result_to_json(const MineResult& r) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& e : r.patterns)
        j.push_back({{"pattern", e.pattern.to_json()},
                     {"support", e.support},
                     {"provenance", e.provenance},
                     {"canonical_code", e.canonical_code},
                     {"size", e.size}});
    return j;
}

}  // namespace cgspan

#endif  // CGSPAN_PIPELINE_HPP_
