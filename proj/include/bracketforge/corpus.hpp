#pragma once

#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bracketforge/cluster.hpp"
#include "bracketforge/construct.hpp"
#include "bracketforge/engines.hpp"

namespace bracketforge {

struct CorpusInstance {
    std::string name;
    LinkConfiguration cfg;
};

inline std::vector<std::vector<int>> integer_compositions(int max_sum) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int sum) {
        if (!cur.empty()) out.push_back(cur);
        for (int a = 1; sum + a <= max_sum; ++a) {
            cur.push_back(a);
            gen(sum + a);
            cur.pop_back();
        }
    };
    gen(0);
    return out;
}

inline std::string family_name(const std::string& family, const std::vector<int>& params) {
    std::ostringstream os;
    os << family << ":";
    for (size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
    return os.str();
}

// Every 2-bridge parameter list with entry sum at most max_sum.
inline std::vector<CorpusInstance> corpus_two_bridge(int max_sum) {
    std::vector<CorpusInstance> out;
    for (auto& a : integer_compositions(max_sum)) {
        if (a.size() == 1 && a[0] < 2) continue;
        out.push_back({family_name("twobridge", a), two_bridge(a)});
    }
    return out;
}

// Every pretzel parameter list of length >= 3 with entry sum at most max_sum.
inline std::vector<CorpusInstance> corpus_pretzel(int max_sum) {
    std::vector<CorpusInstance> out;
    for (auto& b : integer_compositions(max_sum)) {
        if (b.size() < 3) continue;
        out.push_back({family_name("pretzel", b), pretzel(b)});
    }
    return out;
}

inline std::vector<CorpusInstance> corpus_montesinos() {
    std::vector<CorpusInstance> out;
    out.push_back({"montesinos:1;1,2", montesinos(1, {{1, 2}})});
    out.push_back({"montesinos:1;2,1", montesinos(1, {{2, 1}})});
    out.push_back({"montesinos:2;1,1/2", montesinos(2, {{1, 1}, {2}})});
    out.push_back({"montesinos:1;1,1,1", montesinos(1, {{1, 1, 1}})});
    out.push_back({"montesinos:2;2,1/1,1", montesinos(2, {{2, 1}, {1, 1}})});
    return out;
}

inline std::vector<CorpusInstance> full_corpus(int max_sum) {
    auto out = corpus_two_bridge(max_sum);
    for (auto& i : corpus_pretzel(max_sum)) out.push_back(std::move(i));
    for (auto& i : corpus_montesinos()) out.push_back(std::move(i));
    return out;
}

struct InstanceReport {
    bool engines_agree = false;     // all applicable engines, exact equality
    bool ei_holds = false;          // brute-force EI check
    bool identities = false;        // g = 1-k, F = M, d = 1 (both sequences)
    bool lemma_specall = false;     // bracket = w(S_min) M|ratios
    bool quiver_reduction = false;  // mutate-then-delete along the canonical rd
    bool eta_theta = false;         // mutual inversion on every matching/tree
    bool counts_match = false;      // #matchings == #spanning trees
    bool lattice_ok = false;        // bounded graded lattice, chain-free monomials
    bool duality = false;           // activity duality for every tree
    bool alternation = false;       // period-4 sign alternation
    bool ratio_census = false;      // ratios within {A^8,-A^4,-A^-4,A^-8}
    bool involution = false;        // mutation involutivity on the instance quiver
    std::string note;

    bool all() const {
        return engines_agree && ei_holds && identities && lemma_specall &&
               quiver_reduction && eta_theta && counts_match && lattice_ok && duality &&
               alternation && ratio_census && involution;
    }
};

// Re-perform the canonical reduction sequence, checking the mutate-then-delete
// quiver identity at every stage.
inline bool quiver_reduction_chain_ok(const LinkConfiguration& cfg0) {
    LinkConfiguration cfg = cfg0;
    cfg.attach = std::nullopt;
    while (cfg.num_crossings() > 2) {
        const LinkUniverse& u = cfg.universe;
        int best_face = -1;
        std::pair<int, int> best_key{-1, -1};
        for (int f = 0; f < u.num_faces(); ++f) {
            auto& w = u.faces()[f];
            if (w.size() != 2) continue;
            int c1 = dart_crossing(w[0]), c2 = dart_crossing(w[1]);
            if (c1 > c2) std::swap(c1, c2);
            if (c2 != c1 + 1) continue;
            int a = u.segment_at(dart_crossing(w[0]), dart_slot(w[0]));
            int b = u.segment_at(dart_crossing(w[0]), dart_slot(w[0]) + 1);
            if (a == cfg.s || b == cfg.s) continue;
            std::pair<int, int> key{c2, c1};
            if (best_face == -1 || key > best_key) best_face = f, best_key = key;
        }
        if (best_face == -1) return false;
        if (!quiver_after_reduction_check(cfg, best_face)) return false;
        cfg = bigon_reduce(cfg, best_face).cfg;
    }
    return true;
}

inline InstanceReport run_instance_checks(const LinkConfiguration& cfg) {
    InstanceReport r;
    try {
        LinkDiagram d = LinkDiagram::alternating_all_negative(cfg.universe);
        auto rep = verify_all(d, cfg);
        r.engines_agree = rep.all_equal;
        if (!rep.all_equal) r.note = rep.divergence;
        r.ei_holds = check_ei_property(cfg).holds;

        auto rd1 = compute_reduction_sequence(cfg, true);
        auto rd2 = compute_reduction_sequence(cfg, false);
        distinguished_cluster_variable(cfg, rd1); // throws on identity failure
        if (rd2.order != rd1.order) distinguished_cluster_variable(cfg, rd2);
        r.identities = true;

        r.lemma_specall = lemma_specall_check(cfg, d);
        r.quiver_reduction = quiver_reduction_chain_ok(cfg);

        Balanced b(cfg);
        auto matchings = b.perfect_matchings();
        Checkerboard g = build_checkerboard(cfg.universe, true);
        auto trees = enumerate_spanning_trees(g);
        r.counts_match = matchings.size() == trees.size();
        r.eta_theta = true;
        for (auto& m : matchings)
            if (b.theta(b.eta(m)) != m) r.eta_theta = false;
        for (TreeMask t : trees)
            if (b.eta(b.theta(t)) != t) r.eta_theta = false;

        StateLattice lat(cfg, rd1.order); // bounded/graded asserts internal
        r.lattice_ok = lat.num_states() == static_cast<int>(matchings.size());

        r.duality = true;
        if (cfg.num_crossings() <= 8) {
            auto order = identity_order(cfg.num_crossings());
            for (TreeMask t : trees)
                if (!duality_activity_check(cfg.universe, t, order)) r.duality = false;
        }

        LaurentPoly bracket = rep.oracle();
        r.alternation = true;
        for (auto& [e, c] : bracket.terms()) {
            auto c2 = bracket.coeff(e + 4);
            if (c2 != 0 && (c > 0) == (c2 > 0)) r.alternation = false;
        }

        r.ratio_census = true;
        for (size_t j = 0; j < rd1.order.size(); ++j) {
            if (!lat.has_transposition(static_cast<int>(j))) continue;
            LaurentPoly ratio = lat.weight_ratio(d, static_cast<int>(j));
            if (ratio != LaurentPoly::monomial(1, 8) && ratio != LaurentPoly::monomial(-1, 4) &&
                ratio != LaurentPoly::monomial(-1, -4) && ratio != LaurentPoly::monomial(1, -8))
                r.ratio_census = false;
        }

        Quiver q = build_quiver(cfg, rd1.order);
        Seed s0 = initial_seed(q);
        r.involution = true;
        for (int k = 0; k < q.size(); ++k) {
            Seed s2 = mutate(mutate(s0, k), k);
            if (s2.b != s0.b) r.involution = false;
            for (int j = 0; j < q.size(); ++j) {
                if (!(s2.y[j] == s0.y[j])) r.involution = false;
                if (!(s2.x[j] == s0.x[j])) r.involution = false;
            }
        }
    } catch (const Error& e) {
        r.note = e.what();
    }
    return r;
}

// Admissibility criterion vs. brute force over both label orders, for every
// possible single extension.
inline bool criterion_matches_brute_force(const LinkConfiguration& cfg) {
    for (int c = 0; c < cfg.num_crossings(); ++c)
        for (BigonType t : {BigonType::A, BigonType::B}) {
            auto crit = is_admissible_extension(cfg, c, t);
            bool hi = check_ei_property(bigon_surgery(cfg, c, t, true).cfg).holds;
            bool lo = check_ei_property(bigon_surgery(cfg, c, t, false).cfg).holds;
            if (crit.admissible != (hi || lo)) return false;
            if (crit.admissible) {
                // The rule's order is the unique EI one.
                if (hi == lo) return false;
                if (!check_ei_property(bigon_extend(cfg, c, t)).holds) return false;
            }
        }
    return true;
}

} // namespace bracketforge
