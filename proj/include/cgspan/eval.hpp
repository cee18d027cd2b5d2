#ifndef CGSPAN_EVAL_HPP_
#define CGSPAN_EVAL_HPP_

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cgspan/cg_match.hpp"
#include "cgspan/pipeline.hpp"
#include "cgspan/postprocess.hpp"

namespace cgspan {

struct EvalReport {
    std::optional<double> recall;
    std::optional<double> precision;
    std::optional<double> redundancy;
    std::optional<double> time_efficiency;          // run time / baseline time
    std::map<std::size_t, std::size_t> histogram;   // maximal pattern size -> count
    std::vector<std::string> notes;
};

namespace detail {

inline bool complete_args(const ConceptualGraph& g) {
    for (const auto& r : g.relations)
        for (const auto& a : r.args)
            if (!a) return false;
    return true;
}

// Is every node of `r` covered by the image of some expected pattern
// embedded into it? This is the "combination of expected patterns" case.
inline bool covered_by_expected(const ConceptualGraph& r,
                                const std::vector<ConceptualGraph>& expected,
                                const Vocabulary& v) {
    if (r.relations.empty() && r.concepts.empty()) return false;
    std::set<std::string> covered;
    for (const auto& e : expected)
        for (const auto& emb : cg_embeddings(e, r, v))
            for (const auto& [pid, tid] : emb) covered.insert(tid);
    for (const auto& rel : r.relations)
        if (!covered.count(rel.id)) return false;
    for (const auto& c : r.concepts)
        if (!covered.count(c.id)) return false;
    return true;
}

}  // namespace detail

// Fraction of expected patterns present in (embedded in or equal to) some
// returned pattern. Compressed returned patterns are decompressed first.
inline std::optional<double> recall(const std::vector<ConceptualGraph>& returned,
                                    const std::vector<ConceptualGraph>& expected,
                                    const Vocabulary& v, std::vector<std::string>* notes = nullptr) {
    if (expected.empty()) {
        if (notes) notes->push_back("recall undefined: no expected patterns");
        return std::nullopt;
    }
    std::vector<ConceptualGraph> ret;
    for (const auto& r : returned) ret.push_back(decompress(r, v));
    std::size_t found = 0;
    for (const auto& e : expected) {
        for (const auto& r : ret)
            if (cg_embeds(e, r, v)) { ++found; break; }
    }
    return static_cast<double>(found) / static_cast<double>(expected.size());
}

// Fraction of returned patterns that are an expected pattern, embed into one,
// or are a combination of expected patterns (every node covered by some
// expected-pattern embedding). Patterns with absent relation arguments can
// only qualify through coverage, which their missing positions block.
inline std::optional<double> precision(const std::vector<ConceptualGraph>& returned,
                                       const std::vector<ConceptualGraph>& expected,
                                       const Vocabulary& v,
                                       std::vector<std::string>* notes = nullptr) {
    if (returned.empty()) {
        if (notes) notes->push_back("precision undefined: no returned patterns");
        return std::nullopt;
    }
    std::size_t correct = 0;
    for (const auto& raw : returned) {
        ConceptualGraph r = decompress(raw, v);
        bool ok = false;
        if (detail::complete_args(r)) {
            for (const auto& e : expected)
                if (cg_embeds(r, e, v)) { ok = true; break; }
        }
        if (!ok) ok = detail::covered_by_expected(r, expected, v);
        if (ok) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(returned.size());
}

inline std::optional<double> redundancy(std::size_t pruned, std::size_t returned,
                                        std::vector<std::string>* notes = nullptr) {
    if (pruned + returned == 0) {
        if (notes) notes->push_back("redundancy undefined: no patterns at all");
        return std::nullopt;
    }
    return static_cast<double>(pruned) / static_cast<double>(pruned + returned);
}

inline std::optional<double> time_efficiency(double run_ms, double baseline_ms,
                                             std::vector<std::string>* notes = nullptr) {
    if (baseline_ms <= 0) {
        if (notes)
            notes->push_back("time efficiency unavailable: no baseline time; run took " +
                             std::to_string(run_ms) + " ms");
        return std::nullopt;
    }
    return run_ms / baseline_ms;
}

// Histogram over pattern size (TLG node count) of the maximal returned
// patterns: a pattern counts only if it does not embed into a strictly
// larger returned pattern.
inline std::map<std::size_t, std::size_t> size_frequency_histogram(
    const std::vector<MineEntry>& patterns, const Vocabulary& v) {
    std::map<std::size_t, std::size_t> hist;
    std::vector<ConceptualGraph> plain;
    for (const auto& p : patterns) plain.push_back(decompress(p.pattern, v));
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < patterns.size(); ++j) {
            if (patterns[j].size <= patterns[i].size) continue;
            if (cg_embeds(plain[i], plain[j], v)) { maximal = false; break; }
        }
        if (maximal) hist[patterns[i].size]++;
    }
    return hist;
}

inline nlohmann::ordered_json eval_report_to_json(const EvalReport& r) {
    nlohmann::ordered_json j;
    auto put = [&](const char* k, const std::optional<double>& v) {
        if (v) j[k] = *v; else j[k] = nullptr;
    };
    put("recall", r.recall);
    put("precision", r.precision);
    put("redundancy", r.redundancy);
    put("time_efficiency", r.time_efficiency);
    j["histogram"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.histogram) j["histogram"][std::to_string(k)] = v;
    j["notes"] = r.notes;
    return j;
}

inline std::string eval_report_table(const EvalReport& r) {
    auto pct = [](const std::optional<double>& v) -> std::string {
        if (!v) return "   -";
        char buf[16];
        std::snprintf(buf, sizeof buf, "%4.0f", *v * 100.0);
        return buf;
    };
    std::string s;
    s += "Rec. (%)  Prec. (%)  Red. (%)  T-Eff. (%)\n";
    s += pct(r.recall) + "      " + pct(r.precision) + "       " + pct(r.redundancy) + "      " +
         pct(r.time_efficiency) + "\n";
    return s;
}

inline std::string histogram_csv(const std::map<std::size_t, std::size_t>& hist) {
    std::string s = "size,count\n";
    for (const auto& [k, v] : hist) s += std::to_string(k) + "," + std::to_string(v) + "\n";
    return s;
}

}  // namespace cgspan

#endif  // CGSPAN_EVAL_HPP_
