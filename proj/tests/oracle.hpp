#ifndef CGSPAN_TESTS_ORACLE_HPP_
#define CGSPAN_TESTS_ORACLE_HPP_

// Brute-force reference for the miner: apriori-style candidate growth with
// naive homomorphism counting, permutation-minimal canonical forms and a
// naive specialization frontier. Deliberately shares no search machinery
// with the library; only the data types and the vocabulary accessors.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cgspan/translate.hpp"
#include "cgspan/vocabulary.hpp"

namespace oracle {

inline std::string slot_str(const cgspan::Slot& s) {
    std::string out = s.kind == cgspan::SlotKind::Relation ? "R:" : "C:";
    for (std::size_t i = 0; i < s.segs.size(); ++i) {
        if (i) out += '_';
        out += s.segs[i];
    }
    if (s.marker) out += "#" + *s.marker;
    return out;
}

inline std::string label_str(const cgspan::TlgNode& n) {
    std::string out = "[";
    for (const auto& s : n.slots) out += slot_str(s) + ";";
    return out + "]";
}

inline std::string path_str(const cgspan::Path& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += '_';
        out += p[i];
    }
    return out;
}

// Minimal serialization over all vertex permutations.
inline std::string brute_canonical(const cgspan::Tlg& g) {
    std::size_t n = g.nodes.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::vector<std::size_t> pos(n);  // original index -> new index
        for (std::size_t i = 0; i < n; ++i) pos[perm[i]] = i;
        std::string s;
        for (std::size_t i = 0; i < n; ++i) s += label_str(g.nodes[perm[i]]) + "|";
        std::vector<std::string> edges;
        for (const auto& e : g.edges) {
            std::size_t a = pos[e.a], b = pos[e.b];
            int pa = e.pos_a, pb = e.pos_b;
            if (a > b) {
                std::swap(a, b);
                std::swap(pa, pb);
            }
            edges.push_back(std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(pa) + "," + std::to_string(pb) + "," +
                            path_str(e.cpath));
        }
        std::sort(edges.begin(), edges.end());
        for (const auto& e : edges) s += e + "|";
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline bool prefix_of(const std::vector<std::string>& p, const std::vector<std::string>& t) {
    if (p.size() > t.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != t[i]) return false;
    return true;
}

inline bool label_leq(const cgspan::TlgNode& pat, const cgspan::TlgNode& tgt) {
    if (pat.slots.size() != tgt.slots.size()) return false;
    for (std::size_t i = 0; i < pat.slots.size(); ++i) {
        const auto& ps = pat.slots[i];
        const auto& ts = tgt.slots[i];
        if (ps.kind != ts.kind || !prefix_of(ps.segs, ts.segs)) return false;
        if (ps.marker && (!ts.marker || *ps.marker != *ts.marker)) return false;
    }
    return true;
}

// Exhaustive assignment of pattern nodes to target nodes.
inline bool naive_embeds_rec(const cgspan::Tlg& pat, const cgspan::Tlg& tgt,
                             std::vector<std::size_t>& map, std::size_t k) {
    if (k == pat.nodes.size()) {
        for (const auto& e : pat.edges) {
            bool found = false;
            for (const auto& te : tgt.edges) {
                bool fwd = te.a == map[e.a] && te.b == map[e.b] && te.pos_a == e.pos_a &&
                           te.pos_b == e.pos_b;
                bool rev = te.a == map[e.b] && te.b == map[e.a] && te.pos_a == e.pos_b &&
                           te.pos_b == e.pos_a;
                if ((fwd || rev) && prefix_of(e.cpath, te.cpath)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }
    for (std::size_t t = 0; t < tgt.nodes.size(); ++t) {
        if (!label_leq(pat.nodes[k], tgt.nodes[t])) continue;
        map[k] = t;
        if (naive_embeds_rec(pat, tgt, map, k + 1)) return true;
    }
    return false;
}

inline bool naive_embeds(const cgspan::Tlg& pat, const cgspan::Tlg& tgt) {
    if (pat.nodes.empty()) return false;
    std::vector<std::size_t> map(pat.nodes.size(), 0);
    return naive_embeds_rec(pat, tgt, map, 0);
}

inline std::size_t naive_support(const cgspan::Tlg& pat, const std::vector<cgspan::Tlg>& db) {
    std::size_t n = 0;
    for (const auto& g : db)
        if (naive_embeds(pat, g)) ++n;
    return n;
}

struct OraclePattern {
    cgspan::Tlg graph;
    std::size_t support = 0;
};

inline cgspan::Slot root_of(const cgspan::Slot& s) {
    cgspan::Slot r;
    r.kind = s.kind;
    r.segs = {s.segs.front()};
    return r;
}

struct EdgeKind {
    int pos_a, pos_b;
    cgspan::Path cpath;
    bool operator<(const EdgeKind& o) const {
        if (pos_a != o.pos_a) return pos_a < o.pos_a;
        if (pos_b != o.pos_b) return pos_b < o.pos_b;
        return cpath < o.cpath;
    }
};

inline bool same_edge(const cgspan::TlgEdge& e, std::size_t a, std::size_t b, int pa, int pb,
                      const cgspan::Path& cp) {
    return (e.a == a && e.b == b && e.pos_a == pa && e.pos_b == pb && e.cpath == cp) ||
           (e.a == b && e.b == a && e.pos_a == pb && e.pos_b == pa && e.cpath == cp);
}

// Emission filter matching the CG reading of a pattern: an argument position
// names one concept, so implied sharing must be spelled out as edges. Checked
// here by chasing equalities to a fixpoint rather than by union-find.
inline bool closed_pattern(const cgspan::Tlg& g) {
    if (!g.bricks) {
        std::set<std::pair<std::size_t, int>> args;
        for (const auto& e : g.edges) {
            auto key = e.pos_a >= 0 ? std::make_pair(e.a, e.pos_a)
                                    : std::make_pair(e.b, e.pos_b);
            if (args.count(key)) return false;
            args.insert(key);
        }
        return true;
    }
    using Slot = std::pair<std::size_t, int>;
    std::map<Slot, std::set<Slot>> equal;
    for (const auto& e : g.edges) {
        equal[{e.a, e.pos_a}].insert({e.b, e.pos_b});
        equal[{e.b, e.pos_b}].insert({e.a, e.pos_a});
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [s, peers] : equal)
            for (const auto& p : std::set<Slot>(peers))
                for (const auto& q : equal[p])
                    if (q != s && peers.insert(q).second) changed = true;
    }
    for (const auto& [s, peers] : equal)
        for (const auto& p : peers) {
            if (p.first == s.first) return false;
            bool direct = false;
            for (const auto& e : g.edges)
                if ((e.a == s.first && e.pos_a == s.second && e.b == p.first &&
                     e.pos_b == p.second) ||
                    (e.a == p.first && e.pos_a == p.second && e.b == s.first &&
                     e.pos_b == s.second))
                    direct = true;
            if (!direct) return false;
        }
    return true;
}

// All frequent connected patterns over root labels, grown one edge at a time
// from the label/edge universes observed in the database.
inline std::vector<cgspan::Tlg> enumerate_structural(const std::vector<cgspan::Tlg>& db,
                                                     std::size_t minsup, std::size_t max_size) {
    std::set<std::vector<cgspan::Slot>> node_labels;
    std::set<EdgeKind> edge_kinds;  // directed: pos_a at anchor, pos_b at far end
    for (const auto& g : db) {
        for (const auto& n : g.nodes) {
            std::vector<cgspan::Slot> l;
            for (const auto& s : n.slots) l.push_back(root_of(s));
            node_labels.insert(l);
        }
        for (const auto& e : g.edges) {
            cgspan::Path cp = e.cpath.empty() ? cgspan::Path{} : cgspan::Path{e.cpath.front()};
            edge_kinds.insert({e.pos_a, e.pos_b, cp});
            edge_kinds.insert({e.pos_b, e.pos_a, cp});
        }
    }

    std::vector<cgspan::Tlg> frequent;
    std::set<std::string> seen;
    std::vector<cgspan::Tlg> frontier;
    for (const auto& l : node_labels) {
        cgspan::Tlg p;
        p.bricks = db.empty() ? true : db.front().bricks;
        cgspan::TlgNode n;
        n.slots = l;
        p.nodes.push_back(n);
        if (naive_support(p, db) < minsup) continue;
        seen.insert(brute_canonical(p));
        frequent.push_back(p);
        frontier.push_back(p);
    }
    while (!frontier.empty()) {
        std::vector<cgspan::Tlg> next;
        for (const auto& p : frontier) {
            std::vector<cgspan::Tlg> candidates;
            // backward: a new edge between existing nodes
            for (std::size_t a = 0; a < p.nodes.size(); ++a)
                for (std::size_t b = a + 1; b < p.nodes.size(); ++b)
                    for (const auto& ek : edge_kinds) {
                        bool dup = false;
                        for (const auto& e : p.edges)
                            if (same_edge(e, a, b, ek.pos_a, ek.pos_b, ek.cpath)) dup = true;
                        if (dup) continue;
                        cgspan::Tlg q = p;
                        q.edges.push_back({a, b, ek.pos_a, ek.pos_b, ek.cpath});
                        candidates.push_back(std::move(q));
                    }
            // forward: a new node hung off any existing node
            if (p.nodes.size() < max_size) {
                for (std::size_t a = 0; a < p.nodes.size(); ++a)
                    for (const auto& l : node_labels)
                        for (const auto& ek : edge_kinds) {
                            cgspan::Tlg q = p;
                            cgspan::TlgNode n;
                            n.slots = l;
                            q.nodes.push_back(n);
                            q.edges.push_back(
                                {a, q.nodes.size() - 1, ek.pos_a, ek.pos_b, ek.cpath});
                            candidates.push_back(std::move(q));
                        }
            }
            for (auto& q : candidates) {
                std::string key = brute_canonical(q);
                if (seen.count(key)) continue;
                if (naive_support(q, db) < minsup) continue;
                seen.insert(key);
                if (closed_pattern(q)) frequent.push_back(q);
                next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
    }
    return frequent;
}

// One-step label specializations via the vocabulary (markers excluded,
// matching the miner's default configuration).
inline std::vector<cgspan::Tlg> one_step(const cgspan::Tlg& p, const cgspan::Vocabulary& v) {
    std::vector<cgspan::Tlg> out;
    for (std::size_t ni = 0; ni < p.nodes.size(); ++ni)
        for (std::size_t si = 0; si < p.nodes[ni].slots.size(); ++si) {
            const auto& s = p.nodes[ni].slots[si];
            const auto& kids = s.kind == cgspan::SlotKind::Relation
                                   ? v.relation_children(s.segs.back())
                                   : v.concept_children(s.segs.back());
            for (const auto& k : kids) {
                cgspan::Tlg q = p;
                q.nodes[ni].slots[si].segs.push_back(k);
                out.push_back(std::move(q));
            }
        }
    for (std::size_t ei = 0; ei < p.edges.size(); ++ei) {
        if (p.edges[ei].cpath.empty()) continue;
        for (const auto& k : v.concept_children(p.edges[ei].cpath.back())) {
            cgspan::Tlg q = p;
            q.edges[ei].cpath.push_back(k);
            out.push_back(std::move(q));
        }
    }
    return out;
}

// Full reference result: the specialization frontiers of every frequent
// structural pattern, deduplicated by canonical form.
inline std::vector<OraclePattern> enumerate(const std::vector<cgspan::Tlg>& db,
                                            std::size_t minsup, std::size_t max_size,
                                            const cgspan::Vocabulary& v) {
    std::vector<OraclePattern> out;
    std::set<std::string> emitted, visited;
    for (const auto& root : enumerate_structural(db, minsup, max_size)) {
        std::vector<cgspan::Tlg> stack{root};
        while (!stack.empty()) {
            cgspan::Tlg p = std::move(stack.back());
            stack.pop_back();
            std::string key = brute_canonical(p);
            if (!visited.insert(key).second) continue;
            bool has_frequent_child = false;
            for (auto& q : one_step(p, v)) {
                if (naive_support(q, db) >= minsup) {
                    has_frequent_child = true;
                    stack.push_back(std::move(q));
                }
            }
            if (!has_frequent_child && emitted.insert(key).second)
                out.push_back({p, naive_support(p, db)});
        }
    }
    return out;
}

// Relabel the vertices of a TLG by `perm` (new index of old node i is perm[i]).
inline cgspan::Tlg permute(const cgspan::Tlg& g, const std::vector<std::size_t>& perm) {
    cgspan::Tlg out = g;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) out.nodes[perm[i]] = g.nodes[i];
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        out.edges[e].a = perm[g.edges[e].a];
        out.edges[e].b = perm[g.edges[e].b];
    }
    return out;
}

}  // namespace oracle

#endif  // CGSPAN_TESTS_ORACLE_HPP_
