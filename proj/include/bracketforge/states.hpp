#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bracketforge/error.hpp"
#include "bracketforge/graphs.hpp"
#include "bracketforge/laurent.hpp"
#include "bracketforge/link.hpp"
#include "bracketforge/multipoly.hpp"

namespace bracketforge {

inline std::vector<int> incident_crossings(const LinkUniverse& u, int face) {
    std::set<int> s;
    for (Dart d : u.faces()[face]) s.insert(dart_crossing(d));
    return {s.begin(), s.end()};
}

// Lowest-label activity rule for half-edges of admissible configurations:
// L when the crossing has the minimal label among crossings incident to the
// region, D otherwise.
inline Letter half_edge_letter_rule(const LinkUniverse& u, int crossing, int region) {
    auto inc = incident_crossings(u, region);
    return *std::min_element(inc.begin(), inc.end()) == crossing ? Letter::L : Letter::D;
}

inline int half_edge_sign(const LinkDiagram& d, int crossing, int region) {
    return d.sign(crossing) * d.universe().region_sign(region);
}

// The letter assigned to eta(h) by the double spanning tree of one matching.
inline Letter tree_letter(const Balanced& b, const Matching& m, int crossing, int region) {
    const LinkUniverse& u = b.universe();
    TreeMask t = b.eta(m);
    bool black = u.is_black(region);
    Checkerboard g = build_checkerboard(u, black);
    TreeMask tm = black ? t : dual_tree_mask(u.num_crossings(), t);
    return activity_letter(g, tm, crossing, identity_order(u.num_crossings()));
}

struct EiHalfEdgeReport {
    HalfEdge h;
    bool constant = true;
    Letter letter = Letter::D;               // when constant
    std::vector<std::pair<int, Letter>> witnesses; // (matching index, letter) on violation
};

struct EiReport {
    bool holds = true;
    std::vector<EiHalfEdgeReport> half_edges;
};

// Brute-force evaluation-identity check over all perfect matchings.
inline EiReport check_ei_property(const LinkConfiguration& cfg) {
    Balanced b(cfg);
    auto matchings = b.perfect_matchings();
    EiReport report;
    for (auto& h : b.all_half_edges()) {
        EiHalfEdgeReport hr;
        hr.h = h;
        std::optional<Letter> seen;
        for (size_t i = 0; i < matchings.size(); ++i) {
            if (matchings[i][h.crossing] != h.corner) continue;
            Letter a = tree_letter(b, matchings[i], h.crossing, h.region);
            hr.witnesses.push_back({static_cast<int>(i), a});
            if (!seen) {
                seen = a;
            } else if (*seen != a) {
                hr.constant = false;
            }
        }
        if (seen) hr.letter = *seen;
        if (hr.constant) hr.witnesses.clear();
        if (!hr.constant) report.holds = false;
        report.half_edges.push_back(std::move(hr));
    }
    return report;
}

// Rule-based activity letter; valid on admissible configurations.
inline Letter half_edge_activity(const LinkConfiguration& cfg, int crossing, int region) {
    return half_edge_letter_rule(cfg.universe, crossing, region);
}

// ---------------------------------------------------------------------------
// Transposable segments and the lattice of Kauffman states.
// ---------------------------------------------------------------------------

inline bool is_transposable(const LinkConfiguration& cfg, int seg) {
    auto f = cfg.universe.segment_faces(seg);
    return !cfg.is_omitted(f[0]) && !cfg.is_omitted(f[1]);
}

inline std::vector<int> transposable_segments(const LinkConfiguration& cfg) {
    std::vector<int> out;
    for (int s = 0; s < cfg.universe.num_segments(); ++s)
        if (is_transposable(cfg, s)) out.push_back(s);
    return out;
}

// The square face of a transposable segment, split into the two diagonals.
// An up move (counterclockwise transposition) replaces the low diagonal by
// the high one.
struct Square {
    int seg;
    int c1, c2;     // crossings at the two ends, ends[0] and ends[1]
    int f1, f2;     // face on the left of each end dart
    // low diagonal: markers (c2,f1),(c1,f2); high: (c1,f1),(c2,f2)
};

inline Square square_of(const LinkConfiguration& cfg, int seg) {
    const auto& ends = cfg.universe.segment_ends(seg);
    Square q;
    q.seg = seg;
    q.c1 = dart_crossing(ends[0]);
    q.c2 = dart_crossing(ends[1]);
    require(q.c1 != q.c2, "CurlOrNugatoryPresent", "loop segment");
    q.f1 = cfg.universe.face_of(ends[0]);
    q.f2 = cfg.universe.face_of(ends[1]);
    return q;
}

inline bool marker_at(const LinkUniverse& u, const Matching& m, int crossing, int face) {
    return u.corner_face(crossing, m[crossing]) == face;
}

inline void set_marker(const LinkUniverse& u, Matching& m, int crossing, int face) {
    for (int k = 0; k < 4; ++k)
        if (u.corner_face(crossing, k) == face) {
            m[crossing] = k;
            return;
        }
    fail("NotPerfectMatching", "crossing not incident to region");
}

inline bool up_applicable(const LinkUniverse& u, const Square& q, const Matching& m) {
    return marker_at(u, m, q.c2, q.f1) && marker_at(u, m, q.c1, q.f2);
}
inline bool down_applicable(const LinkUniverse& u, const Square& q, const Matching& m) {
    return marker_at(u, m, q.c1, q.f1) && marker_at(u, m, q.c2, q.f2);
}

inline Matching apply_up(const LinkUniverse& u, const Square& q, Matching m) {
    set_marker(u, m, q.c1, q.f1);
    set_marker(u, m, q.c2, q.f2);
    return m;
}
inline Matching apply_down(const LinkUniverse& u, const Square& q, Matching m) {
    set_marker(u, m, q.c2, q.f1);
    set_marker(u, m, q.c1, q.f2);
    return m;
}

struct CoverEdge {
    int from, to; // state indices
    int yvar;     // index into the y ordering
};

// The bounded lattice of Kauffman states under counterclockwise
// transpositions, with state monomials along cover edges.
class StateLattice {
public:
    // yorder: transposable segment ids in the canonical variable order
    // (y_{j+1} corresponds to yorder[j]).
    StateLattice(const LinkConfiguration& cfg, std::vector<int> yorder)
        : cfg_(&cfg), balanced_(cfg), yorder_(std::move(yorder)) {
        for (int seg : yorder_) squares_.push_back(square_of(cfg, seg));
        build();
    }

    const Balanced& balanced() const { return balanced_; }
    const std::vector<Matching>& states() const { return states_; }
    const std::vector<CoverEdge>& cover_edges() const { return cover_; }
    const std::vector<int>& yorder() const { return yorder_; }
    int num_states() const { return static_cast<int>(states_.size()); }
    int min_state() const { return min_; }
    int max_state() const { return max_; }
    int rank(int state) const { return rank_[state]; }

    const MultiPoly& monomial(int state) const { return monomial_[state]; }

    MultiPoly states_lattice_polynomial() const {
        MultiPoly m(static_cast<int>(yorder_.size()));
        for (auto& mono : monomial_) m += mono;
        return m;
    }

    int index_of(const Matching& m) const {
        auto it = index_.find(m);
        require(it != index_.end(), "NotPerfectMatching", "state not in lattice");
        return it->second;
    }

    // Product of signed-letter evaluations over the markers, letters taken from the
    // state's own double spanning tree.
    LaurentPoly weight(const LinkDiagram& d, int state) const {
        const LinkUniverse& u = cfg_->universe;
        const Matching& m = states_[state];
        TreeMask t = balanced_.eta(m);
        Checkerboard g = build_checkerboard(u, true);
        Checkerboard gd = build_checkerboard(u, false);
        TreeMask td = dual_tree_mask(u.num_crossings(), t);
        LaurentPoly w = LaurentPoly::one();
        auto order = identity_order(u.num_crossings());
        for (int c = 0; c < u.num_crossings(); ++c) {
            int region = u.corner_face(c, m[c]);
            Letter a = u.is_black(region) ? activity_letter(g, t, c, order)
                                          : activity_letter(gd, td, c, order);
            w *= letter_value(a, half_edge_sign(d, c, region));
        }
        return w;
    }

    // The constant ratio weight(S')/weight(S) over any cover edge labeled by
    // this segment; asserts well-definedness across all cover edges.
    LaurentPoly weight_ratio(const LinkDiagram& d, int yvar) const {
        std::optional<LaurentPoly> ratio;
        for (auto& e : cover_) {
            if (e.yvar != yvar) continue;
            LaurentPoly hi = weight(d, e.to), lo = weight(d, e.from);
            LaurentPoly r = hi.divided_by_monomial(lo);
            if (!ratio) {
                ratio = r;
            } else {
                require(*ratio == r, "WeightRatioBroken",
                        "weight ratio differs across cover edges");
            }
        }
        require(ratio.has_value(), "NoTranspositionExists",
                "segment never transposes in any state");
        return *ratio;
    }

    bool has_transposition(int yvar) const {
        return std::any_of(cover_.begin(), cover_.end(),
                           [&](const CoverEdge& e) { return e.yvar == yvar; });
    }

private:
    void build() {
        const LinkUniverse& u = cfg_->universe;
        auto all = balanced_.perfect_matchings();
        require(!all.empty(), "NotPerfectMatching", "no perfect matchings");

        // Every state descends to the same minimum (Clock Theorem).
        auto descend = [&](Matching m) {
            bool moved = true;
            while (moved) {
                moved = false;
                for (auto& q : squares_)
                    if (down_applicable(u, q, m)) {
                        m = apply_down(u, q, m);
                        moved = true;
                        break;
                    }
            }
            return m;
        };
        Matching bottom = descend(all[0]);
        for (auto& m : all)
            require(descend(m) == bottom, "LatticeBroken", "minimum is not unique");

        states_.push_back(bottom);
        index_[bottom] = 0;
        rank_.push_back(0);
        monomial_.push_back(MultiPoly::one(static_cast<int>(yorder_.size())));
        for (size_t qi = 0; qi < states_.size(); ++qi) {
            Matching cur = states_[qi];
            for (size_t v = 0; v < squares_.size(); ++v) {
                if (!up_applicable(u, squares_[v], cur)) continue;
                Matching nxt = apply_up(u, squares_[v], cur);
                MultiPoly mono =
                    monomial_[qi] * MultiPoly::generator(static_cast<int>(yorder_.size()),
                                                         static_cast<int>(v));
                auto it = index_.find(nxt);
                int to;
                if (it == index_.end()) {
                    to = static_cast<int>(states_.size());
                    index_[nxt] = to;
                    states_.push_back(nxt);
                    rank_.push_back(rank_[qi] + 1);
                    monomial_.push_back(mono);
                } else {
                    to = it->second;
                    require(rank_[to] == rank_[qi] + 1, "LatticeBroken",
                            "lattice is not graded");
                    require(monomial_[to] == mono, "LatticeBroken",
                            "state monomial depends on the chain");
                }
                cover_.push_back({static_cast<int>(qi), to, static_cast<int>(v)});
            }
        }
        require(states_.size() == all.size(), "LatticeBroken",
                "up moves do not reach every matching");
        min_ = 0;
        max_ = -1;
        for (int i = 0; i < num_states(); ++i) {
            bool has_up = std::any_of(cover_.begin(), cover_.end(),
                                      [&](const CoverEdge& e) { return e.from == i; });
            if (!has_up) {
                require(max_ == -1, "LatticeBroken", "maximum is not unique");
                max_ = i;
            }
        }
        require(max_ != -1, "LatticeBroken", "no maximal state");
    }

    const LinkConfiguration* cfg_;
    Balanced balanced_;
    std::vector<int> yorder_;
    std::vector<Square> squares_;
    std::vector<Matching> states_;
    std::map<Matching, int> index_;
    std::vector<int> rank_;
    std::vector<MultiPoly> monomial_;
    std::vector<CoverEdge> cover_;
    int min_ = 0, max_ = 0;
};

// Markers of the minimal state adjacent to a segment's square.
inline int markers_adjacent_to_segment(const LinkConfiguration& cfg, const StateLattice& lat,
                                       int seg) {
    Square q = square_of(cfg, seg);
    const Matching& m = lat.states()[lat.min_state()];
    const LinkUniverse& u = cfg.universe;
    int count = 0;
    for (int c : {q.c1, q.c2}) {
        int f = u.corner_face(c, m[c]);
        if (f == q.f1 || f == q.f2) ++count;
    }
    return count;
}

} // namespace bracketforge
