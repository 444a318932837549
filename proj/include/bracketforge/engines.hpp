#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bracketforge/cluster.hpp"
#include "bracketforge/construct.hpp"
#include "bracketforge/error.hpp"
#include "bracketforge/graphs.hpp"
#include "bracketforge/laurent.hpp"
#include "bracketforge/link.hpp"
#include "bracketforge/states.hpp"

namespace bracketforge {

inline LaurentPoly circle_factor() {
    return LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
}

// Bracket of a crossingless diagram of `circles` disjoint circles: the
// normalization and stabilization rules in closed form.
inline LaurentPoly bracket_of_unlink(int circles) {
    require(circles >= 1, "Empty", "need at least one circle");
    return circle_factor().pow(circles - 1);
}

// ---------------------------------------------------------------------------
// Engine 0 (the oracle): resolve crossings in label order by the skein
// relation, counting circles at the leaves. The A-smoothing joins the two
// regions swept when the over-strand rotates counterclockwise.
// ---------------------------------------------------------------------------

inline LaurentPoly bracket_recursive(const LinkDiagram& d) {
    const LinkUniverse& u = d.universe();
    int n = u.num_crossings();
    require(n <= 20, "TooLarge", "recursive engine capped at 20 crossings");
    int nseg = u.num_segments();
    LaurentPoly total;
    std::vector<int> parent(nseg);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int circles = nseg;
        auto unite = [&](int a, int b) {
            a = find(a);
            b = find(b);
            if (a != b) {
                parent[a] = b;
                --circles;
            }
        };
        int exp = 0;
        for (int c = 0; c < n; ++c) {
            int o = d.over_slot(c);
            bool smooth_a = !(mask & (1u << c));
            exp += smooth_a ? 1 : -1;
            if (smooth_a) {
                unite(u.segment_at(c, o + 1), u.segment_at(c, o + 2));
                unite(u.segment_at(c, o + 3), u.segment_at(c, o));
            } else {
                unite(u.segment_at(c, o), u.segment_at(c, o + 1));
                unite(u.segment_at(c, o + 2), u.segment_at(c, o + 3));
            }
        }
        total += LaurentPoly::monomial(1, exp) * circle_factor().pow(circles - 1);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Engine 1: Thistlethwaite's spanning tree expansion, product over all edges.
// ---------------------------------------------------------------------------

inline LaurentPoly bracket_spanning_tree(const LinkDiagram& d,
                                         const std::vector<int>& order) {
    const LinkUniverse& u = d.universe();
    Checkerboard g = build_checkerboard(u, true);
    LaurentPoly total;
    for (TreeMask t : enumerate_spanning_trees(g)) {
        LaurentPoly term = LaurentPoly::one();
        for (int e = 0; e < g.num_edges(); ++e)
            term *= letter_value(activity_letter(g, t, e, order), d.sign(e));
        total += term;
    }
    return total;
}

inline LaurentPoly bracket_spanning_tree(const LinkDiagram& d) {
    return bracket_spanning_tree(d, identity_order(d.universe().num_crossings()));
}

// ---------------------------------------------------------------------------
// Engine 2: double spanning trees, internal letters only. Dual edges carry
// the opposite sign.
// ---------------------------------------------------------------------------

inline LaurentPoly bracket_double_tree(const LinkDiagram& d, const std::vector<int>& order) {
    const LinkUniverse& u = d.universe();
    Checkerboard g = build_checkerboard(u, true);
    Checkerboard gd = build_checkerboard(u, false);
    LaurentPoly total;
    for (TreeMask t : enumerate_spanning_trees(g)) {
        TreeMask td = dual_tree_mask(g.num_edges(), t);
        LaurentPoly term = LaurentPoly::one();
        for (int e = 0; e < g.num_edges(); ++e) {
            if (t & (TreeMask(1) << e))
                term *= letter_value(activity_letter(g, t, e, order), d.sign(e));
            else
                term *= letter_value(activity_letter(gd, td, e, order), -d.sign(e));
        }
        total += term;
    }
    return total;
}

inline LaurentPoly bracket_double_tree(const LinkDiagram& d) {
    return bracket_double_tree(d, identity_order(d.universe().num_crossings()));
}

// ---------------------------------------------------------------------------
// Engine 3: the perfect matching expansion with the lowest-label letter rule;
// valid on admissible (EI) configurations.
// ---------------------------------------------------------------------------

inline LaurentPoly bracket_perfect_matching(const LinkConfiguration& cfg, const LinkDiagram& d,
                                            bool verify_ei = true) {
    if (verify_ei)
        require(check_ei_property(cfg).holds, "NotAdmissible",
                "configuration violates the EI-property");
    Balanced b(cfg);
    const LinkUniverse& u = cfg.universe;
    LaurentPoly total;
    for (const Matching& m : b.perfect_matchings()) {
        LaurentPoly term = LaurentPoly::one();
        for (int c = 0; c < u.num_crossings(); ++c) {
            int region = u.corner_face(c, m[c]);
            term *= letter_value(half_edge_letter_rule(u, c, region), half_edge_sign(d, c, region));
        }
        total += term;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Jones polynomial. Positive crossing: the outgoing under-strand slot follows
// the outgoing over-strand slot counterclockwise.
// ---------------------------------------------------------------------------

struct JonesPolynomial {
    LaurentPoly in_sqrt_t; // exponents measured in powers of t^(1/2)
    int writhe = 0;

    bool integral() const {
        for (auto& [e, c] : in_sqrt_t.terms())
            if (e % 2 != 0) return false;
        return true;
    }

    LaurentPoly in_t() const {
        require(integral(), "NonIntegralExponent", "half-integer Jones exponents");
        LaurentPoly r;
        for (auto& [e, c] : in_sqrt_t.terms()) r += LaurentPoly::monomial(c, e / 2);
        return r;
    }

    std::string to_string() const {
        if (integral()) return in_t().to_string("t");
        // Render half-integer exponents as t^k/2.
        std::string out;
        bool first = true;
        for (auto& [e, c] : in_sqrt_t.terms()) {
            auto mag = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (e == 0) {
                out += std::to_string(mag);
                continue;
            }
            if (mag != 1) out += std::to_string(mag);
            out += "t^";
            if (e % 2 == 0)
                out += std::to_string(e / 2);
            else
                out += std::to_string(e) + "/2";
        }
        return out;
    }
};

inline int writhe(const LinkDiagram& d, const std::vector<bool>& flip = {}) {
    const LinkUniverse& u = d.universe();
    auto comps = u.components();
    require(flip.empty() || flip.size() == comps.size(), "BadOrientation",
            "one flip flag per component");
    std::vector<bool> outgoing(4 * u.num_crossings(), false);
    for (size_t i = 0; i < comps.size(); ++i) {
        bool rev = !flip.empty() && flip[i];
        for (Dart t : comps[i]) outgoing[rev ? u.other_end(t) : t] = true;
    }
    int w = 0;
    for (int c = 0; c < u.num_crossings(); ++c) {
        int o = d.over_slot(c);
        int over_out = outgoing[make_dart(c, o)] ? o : o + 2;
        int under_out = outgoing[make_dart(c, (o + 1) & 3)] ? (o + 1) & 3 : (o + 3) & 3;
        w += ((under_out - over_out) & 3) == 1 ? +1 : -1;
    }
    return w;
}

inline JonesPolynomial jones_from_bracket(const LinkDiagram& d,
                                          const std::vector<bool>& flip = {}) {
    JonesPolynomial j;
    j.writhe = writhe(d, flip);
    LaurentPoly rescale = LaurentPoly::monomial(j.writhe % 2 == 0 ? 1 : -1, -3 * j.writhe);
    j.in_sqrt_t = (rescale * bracket_recursive(d)).substitute_A_to_sqrt_t();
    return j;
}

// ---------------------------------------------------------------------------
// Lemma: bracket = weight(S_min) * M_{L,s} specialized at the weight ratios.
// ---------------------------------------------------------------------------

inline bool lemma_specall_check(const LinkConfiguration& cfg, const LinkDiagram& d) {
    auto yorder = canonical_y_order(cfg);
    StateLattice lat(cfg, yorder);
    std::vector<LaurentPoly> ratios;
    for (size_t j = 0; j < yorder.size(); ++j) {
        if (lat.has_transposition(static_cast<int>(j)))
            ratios.push_back(lat.weight_ratio(d, static_cast<int>(j)));
        else
            ratios.push_back(LaurentPoly::zero()); // never used by M
    }
    LaurentPoly lhs = lat.weight(d, lat.min_state()) *
                      lat.states_lattice_polynomial().specialize(ratios);
    return lhs == bracket_recursive(d);
}

// ---------------------------------------------------------------------------
// Cross-engine verification.
// ---------------------------------------------------------------------------

struct EngineResult {
    std::string engine;
    LaurentPoly bracket;
    bool applicable = true;
    std::string note;
};

struct VerifyReport {
    std::vector<EngineResult> results;
    bool all_equal = true;
    std::string divergence;

    const LaurentPoly& oracle() const { return results.front().bracket; }
};

inline VerifyReport verify_all(const LinkDiagram& d,
                               const std::optional<LinkConfiguration>& cfg = std::nullopt) {
    VerifyReport rep;
    rep.results.push_back({"recursive", bracket_recursive(d), true, ""});
    rep.results.push_back({"spanning_tree", bracket_spanning_tree(d), true, ""});
    rep.results.push_back({"double_tree", bracket_double_tree(d), true, ""});
    if (cfg) {
        bool ei = check_ei_property(*cfg).holds;
        if (ei) {
            rep.results.push_back(
                {"perfect_matching", bracket_perfect_matching(*cfg, d, false), true, ""});
        } else {
            rep.results.push_back({"perfect_matching", LaurentPoly::zero(), false,
                                   "skipped: configuration violates the EI-property"});
        }
        if (ei && d.all_negative()) {
            auto rd = compute_reduction_sequence(*cfg);
            rep.results.push_back({"fpoly", bracket_fpoly(*cfg, d, rd), true, ""});
            if (cfg->attach)
                rep.results.push_back({"fpoly_census", bracket_via_fpoly(*cfg, d, rd), true, ""});
        }
    }
    for (auto& r : rep.results) {
        if (!r.applicable) continue;
        if (r.bracket != rep.results.front().bracket) {
            rep.all_equal = false;
            LaurentPoly diff = r.bracket - rep.results.front().bracket;
            rep.divergence = r.engine + " differs from recursive by " + diff.to_string();
            break;
        }
    }
    return rep;
}

// (2,k)-torus closed form from the applications section.
inline LaurentPoly torus_closed_form(int k) {
    LaurentPoly sum;
    for (int i = 0; i <= k; ++i) sum += LaurentPoly::monomial(i % 2 == 0 ? 1 : -1, 4 * i);
    LaurentPoly r = LaurentPoly::monomial(-1, k - 2);
    r += LaurentPoly::monomial(1, -1) * LaurentPoly::monomial(-1, -3).pow(k - 1) * sum;
    return r;
}

} // namespace bracketforge
