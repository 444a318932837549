#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bracketforge/error.hpp"
#include "bracketforge/laurent.hpp"
#include "bracketforge/link.hpp"

namespace bracketforge {

// ---------------------------------------------------------------------------
// Checkerboard graphs. Edge index = crossing index, so the ordered labeling of
// crossings is a linear order on edges of both the graph and its dual.
// ---------------------------------------------------------------------------

struct Checkerboard {
    // For each crossing, endpoints among black (resp. white) region ids.
    std::vector<int> vertices;                // face ids
    std::vector<std::array<int, 2>> edges;    // crossing -> (vertex idx, vertex idx)
    std::vector<int> vertex_index_of_face;    // face id -> vertex idx (-1 otherwise)
    bool black = true;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
};

inline Checkerboard build_checkerboard(const LinkUniverse& u, bool black) {
    Checkerboard g;
    g.black = black;
    g.vertex_index_of_face.assign(u.num_faces(), -1);
    for (int f = 0; f < u.num_faces(); ++f)
        if (u.is_black(f) == black) {
            g.vertex_index_of_face[f] = static_cast<int>(g.vertices.size());
            g.vertices.push_back(f);
        }
    for (int c = 0; c < u.num_crossings(); ++c) {
        int parity = u.black_corner_parity(c);
        int k = black ? parity : 1 - parity;
        int f1 = u.corner_face(c, k);
        int f2 = u.corner_face(c, k + 2);
        require(f1 != f2, "CurlOrNugatoryPresent", "checkerboard loop edge");
        g.edges.push_back({g.vertex_index_of_face[f1], g.vertex_index_of_face[f2]});
    }
    return g;
}

// ---------------------------------------------------------------------------
// Spanning trees as crossing-index bitmasks, enumerated in increasing mask
// order (a fixed canonical order).
// ---------------------------------------------------------------------------

using TreeMask = std::uint32_t;

namespace detail {
struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};
} // namespace detail

inline bool is_spanning_tree(const Checkerboard& g, TreeMask t) {
    detail::UnionFind uf(g.num_vertices());
    int used = 0;
    for (int e = 0; e < g.num_edges(); ++e)
        if (t & (TreeMask(1) << e)) {
            if (!uf.unite(g.edges[e][0], g.edges[e][1])) return false;
            ++used;
        }
    return used == g.num_vertices() - 1;
}

inline std::vector<TreeMask> enumerate_spanning_trees(const Checkerboard& g) {
    int m = g.num_edges();
    require(m <= 24, "TooLarge", "spanning tree enumeration capped at 24 edges");
    require(g.num_vertices() >= 1, "Disconnected", "empty graph");
    {
        detail::UnionFind uf(g.num_vertices());
        int comps = g.num_vertices();
        for (auto& e : g.edges)
            if (uf.unite(e[0], e[1])) --comps;
        require(comps == 1, "Disconnected", "checkerboard graph is disconnected");
    }
    std::vector<TreeMask> out;
    int need = g.num_vertices() - 1;
    for (TreeMask t = 0; t < (TreeMask(1) << m); ++t) {
        if (std::popcount(t) != need) continue;
        if (is_spanning_tree(g, t)) out.push_back(t);
    }
    return out;
}

// Side of the partition of vertices obtained by removing tree edge e.
inline std::vector<bool> tree_split(const Checkerboard& g, TreeMask t, int e) {
    std::vector<bool> side(g.num_vertices(), false);
    std::vector<int> stack{g.edges[e][0]};
    side[g.edges[e][0]] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int f = 0; f < g.num_edges(); ++f) {
            if (f == e || !(t & (TreeMask(1) << f))) continue;
            for (int end = 0; end < 2; ++end)
                if (g.edges[f][end] == v && !side[g.edges[f][1 - end]]) {
                    side[g.edges[f][1 - end]] = true;
                    stack.push_back(g.edges[f][1 - end]);
                }
        }
    }
    return side;
}

// Edges f with (T \ e) + f spanning.
inline std::vector<int> fundamental_cocycle(const Checkerboard& g, TreeMask t, int e) {
    require(t & (TreeMask(1) << e), "EdgeNotInTree", "fundamental cocycle needs a tree edge");
    auto side = tree_split(g, t, e);
    std::vector<int> out;
    for (int f = 0; f < g.num_edges(); ++f)
        if (side[g.edges[f][0]] != side[g.edges[f][1]]) out.push_back(f);
    return out;
}

// Edges of the unique cycle in T + e.
inline std::vector<int> fundamental_cycle(const Checkerboard& g, TreeMask t, int e) {
    require(!(t & (TreeMask(1) << e)), "EdgeInTree", "fundamental cycle needs a non-tree edge");
    // Path between the endpoints of e inside T, found by BFS.
    int src = g.edges[e][0], dst = g.edges[e][1];
    std::vector<int> via_edge(g.num_vertices(), -1), from(g.num_vertices(), -1);
    std::vector<int> queue{src};
    from[src] = src;
    for (size_t qi = 0; qi < queue.size() && from[dst] == -1; ++qi) {
        int v = queue[qi];
        for (int f = 0; f < g.num_edges(); ++f) {
            if (!(t & (TreeMask(1) << f))) continue;
            for (int end = 0; end < 2; ++end)
                if (g.edges[f][end] == v && from[g.edges[f][1 - end]] == -1) {
                    from[g.edges[f][1 - end]] = v;
                    via_edge[g.edges[f][1 - end]] = f;
                    queue.push_back(g.edges[f][1 - end]);
                }
        }
    }
    require(from[dst] != -1, "Disconnected", "tree does not span");
    std::vector<int> out{e};
    for (int v = dst; v != src; v = from[v]) out.push_back(via_edge[v]);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Tutte activity letters and their bracket evaluations.
// ---------------------------------------------------------------------------

enum class Letter { L, D, l, d }; // internal active/inactive, external active/inactive

inline bool is_internal(Letter a) { return a == Letter::L || a == Letter::D; }
inline bool is_active(Letter a) { return a == Letter::L || a == Letter::l; }

inline std::string letter_name(Letter a) {
    switch (a) {
        case Letter::L: return "L";
        case Letter::D: return "D";
        case Letter::l: return "l";
        default: return "d";
    }
}

// order[e] gives the rank of edge e; lower rank = lower-ordered edge.
inline Letter activity_letter(const Checkerboard& g, TreeMask t, int e,
                              const std::vector<int>& order) {
    auto lowest = [&](const std::vector<int>& edges) {
        int best = edges[0];
        for (int f : edges)
            if (order[f] < order[best]) best = f;
        return best;
    };
    if (t & (TreeMask(1) << e))
        return lowest(fundamental_cocycle(g, t, e)) == e ? Letter::L : Letter::D;
    return lowest(fundamental_cycle(g, t, e)) == e ? Letter::l : Letter::d;
}

inline std::vector<int> identity_order(int n) {
    std::vector<int> r(n);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

// Bracket polynomial evaluation of a signed activity letter.
inline LaurentPoly letter_value(Letter a, int sign) {
    bool plus = sign > 0;
    switch (a) {
        case Letter::L: return LaurentPoly::monomial(-1, plus ? -3 : 3);
        case Letter::D: return LaurentPoly::monomial(1, plus ? 1 : -1);
        case Letter::l: return LaurentPoly::monomial(-1, plus ? 3 : -3);
        default: return LaurentPoly::monomial(1, plus ? -1 : 1);
    }
}

// Complement mask = the dual spanning tree (Lemma: edges e_i not in T give a
// spanning tree of the dual).
inline TreeMask dual_tree_mask(int num_edges, TreeMask t) {
    return ~t & ((TreeMask(1) << num_edges) - 1);
}

// Every edge's activity class must swap (internal<->external) with the same
// active/inactive state on the dual side.
inline bool duality_activity_check(const LinkUniverse& u, TreeMask t,
                                   const std::vector<int>& order) {
    Checkerboard g = build_checkerboard(u, true);
    Checkerboard gd = build_checkerboard(u, false);
    TreeMask td = dual_tree_mask(g.num_edges(), t);
    for (int e = 0; e < g.num_edges(); ++e) {
        Letter a = activity_letter(g, t, e, order);
        Letter b = activity_letter(gd, td, e, order);
        if (is_internal(a) == is_internal(b)) return false;
        if (is_active(a) != is_active(b)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Balanced overlaid checkerboard graph. Half-edges are identified with
// crossing corners; the round vertex of corner (c,k) is its region.
// ---------------------------------------------------------------------------

struct HalfEdge {
    int crossing;
    int corner; // 0..3
    int region; // face id
};

// A perfect matching stores, per crossing, the corner index it is matched
// through. It doubles as a Kauffman state: markers are (crossing, region).
using Matching = std::vector<int>;

class Balanced {
public:
    Balanced(const LinkConfiguration& cfg) : u_(&cfg.universe), s_(cfg.s) {
        auto omitted = cfg.omitted_faces();
        require(u_->is_black(omitted[0]) != u_->is_black(omitted[1]), "ColoringBroken",
                "regions adjacent to s must have different colors");
        omitted_ = {omitted[0], omitted[1]};
        round_index_.assign(u_->num_faces(), -1);
        for (int f = 0; f < u_->num_faces(); ++f) {
            if (f == omitted[0] || f == omitted[1]) continue;
            round_index_[f] = static_cast<int>(round_faces_.size());
            round_faces_.push_back(f);
        }
        require(static_cast<int>(round_faces_.size()) == u_->num_crossings(), "EulerViolation",
                "balanced graph must have equal sides");
    }

    const LinkUniverse& universe() const { return *u_; }
    int distinguished_segment() const { return s_; }
    const std::vector<int>& round_faces() const { return round_faces_; }
    bool is_omitted(int face) const { return face == omitted_[0] || face == omitted_[1]; }
    int omitted_white() const { return u_->is_black(omitted_[0]) ? omitted_[1] : omitted_[0]; }
    int omitted_black() const { return u_->is_black(omitted_[0]) ? omitted_[0] : omitted_[1]; }

    // Present corners of a crossing, i.e. those whose region is a round vertex.
    std::vector<HalfEdge> half_edges(int crossing) const {
        std::vector<HalfEdge> out;
        for (int k = 0; k < 4; ++k) {
            int f = u_->corner_face(crossing, k);
            if (!is_omitted(f)) out.push_back({crossing, k, f});
        }
        return out;
    }

    std::vector<HalfEdge> all_half_edges() const {
        std::vector<HalfEdge> out;
        for (int c = 0; c < u_->num_crossings(); ++c)
            for (auto& h : half_edges(c)) out.push_back(h);
        return out;
    }

    // Deterministic enumeration: crossings in label order, candidate regions in
    // ascending region id.
    std::vector<Matching> perfect_matchings() const {
        std::vector<Matching> out;
        Matching cur(u_->num_crossings(), -1);
        std::vector<bool> used(u_->num_faces(), false);
        enumerate(0, cur, used, out);
        return out;
    }

    // eta: matched half-edges to full edges. Black marker regions select e_c,
    // white ones select the dual edge. Returns the mask of crossings whose
    // black edge e_c is used.
    TreeMask eta(const Matching& m) const {
        TreeMask t = 0;
        for (int c = 0; c < u_->num_crossings(); ++c) {
            require(m[c] >= 0 && m[c] < 4, "NotPerfectMatching", "missing marker");
            int f = u_->corner_face(c, m[c]);
            require(!is_omitted(f), "NotPerfectMatching", "marker on omitted region");
            if (u_->is_black(f)) t |= TreeMask(1) << c;
        }
        return t;
    }

    // theta: orient both trees outward from the omitted roots; each edge's
    // target region provides the marker.
    Matching theta(TreeMask t) const {
        Matching m(u_->num_crossings(), -1);
        for (bool black : {true, false}) {
            Checkerboard g = build_checkerboard(*u_, black);
            TreeMask tm = black ? t : dual_tree_mask(u_->num_crossings(), t);
            int root_face = black ? omitted_black() : omitted_white();
            int root = g.vertex_index_of_face[root_face];
            std::vector<int> parent_edge(g.num_vertices(), -1), order;
            std::vector<bool> seen(g.num_vertices(), false);
            seen[root] = true;
            order.push_back(root);
            for (size_t qi = 0; qi < order.size(); ++qi) {
                int v = order[qi];
                for (int e = 0; e < g.num_edges(); ++e) {
                    if (!(tm & (TreeMask(1) << e))) continue;
                    for (int end = 0; end < 2; ++end)
                        if (g.edges[e][end] == v && !seen[g.edges[e][1 - end]]) {
                            int w = g.edges[e][1 - end];
                            seen[w] = true;
                            parent_edge[w] = e;
                            order.push_back(w);
                            // w is the target of e: marker (e, region of w).
                            int fw = g.vertices[w];
                            for (int k = 0; k < 4; ++k)
                                if (u_->corner_face(e, k) == fw) m[e] = k;
                        }
                }
            }
            for (int v = 0; v < g.num_vertices(); ++v)
                require(seen[v], "NotPerfectMatching", "tree does not span");
        }
        for (int c = 0; c < u_->num_crossings(); ++c)
            require(m[c] != -1, "NotPerfectMatching", "crossing without marker");
        return m;
    }

private:
    void enumerate(int c, Matching& cur, std::vector<bool>& used,
                   std::vector<Matching>& out) const {
        if (c == u_->num_crossings()) {
            out.push_back(cur);
            return;
        }
        std::vector<std::pair<int, int>> cands; // (region, corner)
        for (int k = 0; k < 4; ++k) {
            int f = u_->corner_face(c, k);
            if (!is_omitted(f) && !used[f]) cands.push_back({f, k});
        }
        std::sort(cands.begin(), cands.end());
        for (auto [f, k] : cands) {
            used[f] = true;
            cur[c] = k;
            enumerate(c + 1, cur, used, out);
            used[f] = false;
            cur[c] = -1;
        }
    }

    const LinkUniverse* u_;
    int s_;
    std::array<int, 2> omitted_;
    std::vector<int> round_faces_;
    std::vector<int> round_index_;
};

} // namespace bracketforge
