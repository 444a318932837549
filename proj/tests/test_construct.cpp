#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "bracketforge/construct.hpp"
#include "bracketforge/states.hpp"

using namespace bracketforge;

namespace {

std::vector<std::vector<int>> compositions(int max_sum, size_t min_len = 1) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int sum) {
        if (cur.size() >= min_len && (cur.size() > 1 || cur[0] >= 2)) out.push_back(cur);
        for (int a = 1; sum + a <= max_sum; ++a) {
            cur.push_back(a);
            gen(sum + a);
            cur.pop_back();
        }
    };
    gen(0);
    return out;
}

bool universes_equal(const LinkUniverse& a, const LinkUniverse& b) {
    return same_universe(a, b);
}

// Brute-force admissibility: an extension is admissible when some label order
// yields an EI configuration.
struct BruteAdmissibility {
    bool admissible;
    bool n_higher_works, n_lower_works;
};

BruteAdmissibility brute_admissible(const LinkConfiguration& cfg, int c, BigonType t) {
    BruteAdmissibility r{};
    r.n_higher_works = check_ei_property(bigon_surgery(cfg, c, t, true).cfg).holds;
    r.n_lower_works = check_ei_property(bigon_surgery(cfg, c, t, false).cfg).holds;
    r.admissible = r.n_higher_works || r.n_lower_works;
    return r;
}

} // namespace

TEST_CASE("hopf extension round trips") {
    LinkConfiguration h = hopf_configuration();
    auto out = bigon_extend_detail(h, 0, BigonType::A);
    CHECK(out.cfg.num_crossings() == 3);
    CHECK(check_ei_property(out.cfg).holds);
    auto red = bigon_reduce(out.cfg, out.bigon_face);
    CHECK(universes_equal(red.cfg.universe, h.universe));
    CHECK(red.cfg.s == h.s);

    // Type B as well.
    auto outb = bigon_extend_detail(h, 0, BigonType::B);
    CHECK(check_ei_property(outb.cfg).holds);
    auto redb = bigon_reduce(outb.cfg, outb.bigon_face);
    CHECK(universes_equal(redb.cfg.universe, h.universe));
}

TEST_CASE("extension round trip across the corpus") {
    for (auto cfg : {example_trefoil(), example_figure_eight(), two_bridge({2, 3})}) {
        for (int c = 0; c < cfg.num_crossings(); ++c)
            for (BigonType t : {BigonType::A, BigonType::B}) {
                auto w = is_admissible_extension(cfg, c, t);
                if (!w.admissible) continue;
                auto out = bigon_extend_detail(cfg, c, t);
                auto red = bigon_reduce(out.cfg, out.bigon_face);
                CHECK(universes_equal(red.cfg.universe, cfg.universe));
            }
    }
}

TEST_CASE("the non-admissible type-A extension at crossing 3") {
    // The figure-eight configuration rejects the type-A extension at the
    // crossing labeled 3: neither end region is omitted and both half-edges
    // carry the letter D.
    LinkConfiguration f = example_figure_eight();
    auto w = is_admissible_extension(f, 2, BigonType::A);
    CHECK_FALSE(w.admissible);
    CHECK(w.letter_n == Letter::D);
    CHECK(w.letter_s == Letter::D);
    CHECK(w.region_n != w.region_s);
    CHECK_FALSE(f.is_omitted(w.region_n));
    CHECK_FALSE(f.is_omitted(w.region_s));
    CHECK_THROWS_AS(bigon_extend(f, 2, BigonType::A), Error);
}

TEST_CASE("extensions at active crossings are always admissible") {
    for (auto cfg : {hopf_configuration(), example_trefoil(), example_figure_eight(),
                     example_whitehead(), pretzel({2, 2, 2})}) {
        for (int c : active_crossings(cfg)) {
            CHECK(is_admissible_extension(cfg, c, BigonType::A).admissible);
            CHECK(is_admissible_extension(cfg, c, BigonType::B).admissible);
            // And the child keeps an active crossing at the same label.
            auto out = bigon_extend_detail(cfg, c, BigonType::A);
            auto act = active_crossings(out.cfg);
            CHECK(std::find(act.begin(), act.end(), c) != act.end());
        }
    }
}

TEST_CASE("criterion agrees with brute-force admissibility up to 6 crossings") {
    std::vector<LinkConfiguration> corpus;
    for (auto& a : compositions(6)) {
        auto cfg = two_bridge(a);
        if (cfg.num_crossings() <= 6) corpus.push_back(cfg);
    }
    corpus.push_back(pretzel({1, 2, 1}));
    corpus.push_back(pretzel({2, 2, 2}));
    corpus.push_back(example_figure_eight());
    corpus.push_back(example_whitehead());

    int rejections = 0;
    for (auto& cfg : corpus) {
        if (cfg.num_crossings() > 6) continue;
        for (int c = 0; c < cfg.num_crossings(); ++c)
            for (BigonType t : {BigonType::A, BigonType::B}) {
                auto crit = is_admissible_extension(cfg, c, t);
                auto brute = brute_admissible(cfg, c, t);
                CHECK(crit.admissible == brute.admissible);
                if (!crit.admissible) {
                    ++rejections;
                    CHECK(crit.letter_n == crit.letter_s);
                } else {
                    // The rule's label order is the EI one, and it is unique.
                    auto out = bigon_extend_detail(cfg, c, t);
                    CHECK(check_ei_property(out.cfg).holds);
                    CHECK(brute.n_higher_works != brute.n_lower_works);
                }
            }
    }
    CHECK(rejections > 0);
}

TEST_CASE("reduction guards") {
    // A two-sided region whose crossings are not consecutively labeled.
    LinkConfiguration t = example_trefoil();
    int nonconsec = -1, stouching = -1;
    for (int f = 0; f < t.universe.num_faces(); ++f) {
        if (t.universe.faces()[f].size() != 2) continue;
        auto& w = t.universe.faces()[f];
        int c1 = dart_crossing(w[0]), c2 = dart_crossing(w[1]);
        if (std::abs(c1 - c2) != 1) nonconsec = f;
    }
    REQUIRE(nonconsec != -1);
    CHECK_THROWS_WITH(bigon_reduce(t, nonconsec),
                      Catch::Matchers::ContainsSubstring("NonConsecutiveLabels"));

    // Reducing a Hopf bigon always touches s.
    LinkConfiguration h = hopf_configuration();
    for (int f = 0; f < h.universe.num_faces(); ++f) {
        auto& w = h.universe.faces()[f];
        int a = h.universe.segment_at(dart_crossing(w[0]), dart_slot(w[0]));
        int b = h.universe.segment_at(dart_crossing(w[0]), dart_slot(w[0]) + 1);
        if (a == h.s || b == h.s) {
            stouching = f;
            break;
        }
    }
    REQUIRE(stouching != -1);
    CHECK_THROWS_WITH(bigon_reduce(h, stouching),
                      Catch::Matchers::ContainsSubstring("NotPermitted"));
}

TEST_CASE("EI is preserved by admissible extension and permitted reduction") {
    for (auto cfg : {example_trefoil(), example_figure_eight(), two_bridge({2, 2, 1})}) {
        REQUIRE(check_ei_property(cfg).holds);
        for (int c = 0; c < cfg.num_crossings(); ++c)
            for (BigonType t : {BigonType::A, BigonType::B}) {
                if (!is_admissible_extension(cfg, c, t).admissible) continue;
                auto out = bigon_extend_detail(cfg, c, t);
                if (out.cfg.num_crossings() <= 8) CHECK(check_ei_property(out.cfg).holds);
            }
        for (int f = 0; f < cfg.universe.num_faces(); ++f) {
            auto& w = cfg.universe.faces()[f];
            if (w.size() != 2) continue;
            int c1 = dart_crossing(w[0]), c2 = dart_crossing(w[1]);
            if (std::abs(c1 - c2) != 1) continue;
            int a = cfg.universe.segment_at(dart_crossing(w[0]), dart_slot(w[0]));
            int b = cfg.universe.segment_at(dart_crossing(w[0]), dart_slot(w[0]) + 1);
            if (a == cfg.s || b == cfg.s) continue;
            CHECK(check_ei_property(bigon_reduce(cfg, f).cfg).holds);
        }
    }
}

TEST_CASE("prime-likeness is preserved by extension") {
    for (auto cfg : {example_trefoil(), example_figure_eight(), pretzel({2, 2, 2})}) {
        REQUIRE(cfg.universe.is_prime_like());
        for (int c = 0; c < cfg.num_crossings(); ++c)
            for (BigonType t : {BigonType::A, BigonType::B}) {
                if (!is_admissible_extension(cfg, c, t).admissible) continue;
                CHECK(bigon_extend(cfg, c, t).universe.is_prime_like());
            }
    }
}

TEST_CASE("build_attach_spec base cases") {
    LinkConfiguration h = build_attach_spec(AttachSpec{});
    CHECK(h.num_crossings() == 2);
    CHECK(universes_equal(h.universe, hopf_universe()));

    LinkConfiguration t = build_attach_spec(AttachSpec{{{+1, AttachKind::Trivial, 1, {}}}});
    CHECK(t.num_crossings() == 3);
    CHECK(check_ei_property(t).holds);

    // A 12-crossing mixed spec assembles and satisfies EI.
    AttachSpec big;
    big.base.push_back({+1, AttachKind::Trivial, 1, {}});
    big.base.push_back({-1, AttachKind::Curl, 2, {}});
    big.base.push_back(
        {+1, AttachKind::Shell, 1, {{+1, AttachKind::Trivial, 1, {}}}});
    big.base.push_back({-1, AttachKind::Trivial, 1, {}});
    LinkConfiguration lc = build_attach_spec(big);
    CHECK(lc.num_crossings() == 12);
    CHECK(check_ei_property(lc).holds);
    CHECK(lc.universe.is_prime_like());

    CHECK_THROWS_WITH(build_attach_spec(AttachSpec{{{+2, AttachKind::Trivial, 1, {}}}}),
                      Catch::Matchers::ContainsSubstring("MalformedSpec"));
    CHECK_THROWS_WITH(build_attach_spec(AttachSpec{{{+1, AttachKind::Curl, 0, {}}}}),
                      Catch::Matchers::ContainsSubstring("MalformedSpec"));
}

TEST_CASE("two_bridge family") {
    CHECK(universes_equal(two_bridge({2}).universe, hopf_universe()));
    CHECK(universes_equal(two_bridge({3}).universe, example_trefoil().universe));
    LinkConfiguration f = two_bridge({2, 2});
    CHECK(f.num_crossings() == 4);
    CHECK(check_ei_property(f).holds);
    // Crossing count is the parameter sum.
    for (auto& a : compositions(7))
        CHECK(two_bridge(a).num_crossings() ==
              std::accumulate(a.begin(), a.end(), 0));
    CHECK_THROWS_AS(two_bridge({1}), Error);
}

TEST_CASE("pretzel family") {
    LinkConfiguration p22 = pretzel({2, 2});
    CHECK(p22.num_crossings() == 4);
    CHECK(universes_equal(p22.universe, two_bridge({4}).universe));

    // P(1,...,1) collapses to a (2,n)-torus-like universe: one checkerboard
    // side is two vertices joined by n parallel edges.
    for (int n = 3; n <= 6; ++n) {
        std::vector<int> ones(n, 1);
        LinkConfiguration p = pretzel(ones);
        CHECK(p.num_crossings() == n);
        Checkerboard g = build_checkerboard(p.universe, true);
        Checkerboard gd = build_checkerboard(p.universe, false);
        bool torus_like = g.num_vertices() == 2 || gd.num_vertices() == 2;
        CHECK(torus_like);
        CHECK(enumerate_spanning_trees(g).size() == static_cast<size_t>(n));
    }

    LinkConfiguration p = pretzel({2, 3, 2});
    CHECK(p.num_crossings() == 7);
    CHECK(check_ei_property(p).holds);
}

TEST_CASE("montesinos family") {
    // A single one-parameter tangle collapses to a pretzel instance.
    LinkConfiguration m1 = montesinos(1, {{2}});
    CHECK(universes_equal(m1.universe, pretzel({1, 3}).universe));

    LinkConfiguration m2 = montesinos(2, {{1, 1}, {1}});
    CHECK(check_ei_property(m2).holds);
    CHECK(m2.universe.is_prime_like());

    LinkConfiguration m3 = montesinos(1, {{1, 2}});
    CHECK(m3.num_crossings() == 5);
    CHECK(check_ei_property(m3).holds);

    LinkConfiguration m4 = montesinos(2, {{2, 1}, {1, 1}});
    CHECK(check_ei_property(m4).holds);
}

TEST_CASE("region census of the worked examples") {
    auto t = region_census(example_trefoil());
    CHECK(t.u1 == 2);
    CHECK(t.l1 == 1);
    CHECK(t.u2 + t.l2 + t.u3 + t.l3 == 0);
    CHECK(t.p_minus == 0);

    auto f = region_census(example_figure_eight());
    CHECK(f.u1 == 2);
    CHECK(f.l1 == 1);
    CHECK(f.u2 == 1);
    CHECK(f.l2 + f.u3 + f.l3 == 0);

    auto w = region_census(example_whitehead());
    CHECK(w.u1 == 2);
    CHECK(w.l1 == 1);
    CHECK(w.u3 == 1);
    CHECK(w.l3 == 1);
    CHECK(w.u2 + w.l2 == 0);

    // For trivial-points-only builds, |p_-| + 1 = |R^l_1|.
    for (auto& a : compositions(7)) {
        auto cfg = two_bridge(a);
        auto c = region_census(cfg);
        CHECK(c.p_minus + 1 == c.l1);
        CHECK(c.u2 + c.l2 + c.u3 + c.l3 == 0);
    }

    LinkConfiguration m = montesinos(1, {{1, 2}});
    CHECK_THROWS_WITH(region_census(m), Catch::Matchers::ContainsSubstring("NoProvenance"));
}

TEST_CASE("table 2: region colors and minimal-state letters per class") {
    for (auto cfg : {example_trefoil(), example_figure_eight(), example_whitehead(),
                     two_bridge({3, 2}), pretzel({2, 2, 2}), pretzel({2, 3, 1, 2})}) {
        REQUIRE(cfg.attach.has_value());
        StateLattice lat(cfg, canonical_y_order(cfg));
        const Matching& mn = lat.states()[lat.min_state()];
        const LinkUniverse& u = cfg.universe;
        std::vector<std::optional<Letter>> min_letter(u.num_faces());
        for (int c = 0; c < u.num_crossings(); ++c)
            min_letter[u.corner_face(c, mn[c])] =
                half_edge_letter_rule(u, c, u.corner_face(c, mn[c]));
        for (int f = 0; f < u.num_faces(); ++f) {
            RegionClass rc = cfg.attach->region_class[f];
            switch (rc) {
                case RegionClass::U1:
                    CHECK(u.is_black(f));
                    CHECK(min_letter[f] == Letter::D);
                    break;
                case RegionClass::L1:
                    CHECK_FALSE(u.is_black(f));
                    break; // L or D, unconstrained
                case RegionClass::U2:
                    CHECK_FALSE(u.is_black(f));
                    CHECK(min_letter[f] == Letter::L);
                    break;
                case RegionClass::L2:
                    CHECK(u.is_black(f));
                    CHECK(min_letter[f] == Letter::L);
                    break;
                case RegionClass::U3:
                    CHECK_FALSE(u.is_black(f));
                    CHECK(min_letter[f] == Letter::D);
                    break;
                case RegionClass::L3:
                    CHECK(u.is_black(f));
                    CHECK(min_letter[f] == Letter::L);
                    break;
                default:
                    break;
            }
        }
    }
}

TEST_CASE("active crossings match the assembly classification") {
    for (auto cfg : {hopf_configuration(), example_trefoil(), example_figure_eight(),
                     example_whitehead(), pretzel({2, 2, 2}), pretzel({1, 4, 2}),
                     two_bridge({3, 2, 2})}) {
        REQUIRE(cfg.attach.has_value());
        std::vector<int> got;
        for (int c : active_crossings(cfg)) got.push_back(c + 1);
        CHECK(got == cfg.attach->active_labels);
    }
}

TEST_CASE("reduction sequences") {
    LinkConfiguration t = example_trefoil();
    auto rd = compute_reduction_sequence(t);
    CHECK(rd.order.size() == 2);
    CHECK(rd.steps.size() == 1);

    auto rd2 = compute_reduction_sequence(t, /*largest_first=*/false);
    CHECK(rd2.order.size() == 2);
    CHECK(rd2.order != rd.order); // the trefoil has two distinct sequences

    LinkConfiguration w = example_whitehead();
    auto rdw = compute_reduction_sequence(w);
    CHECK(rdw.order.size() == 6);

    // The canonical order covers the transposable segments exactly once.
    for (auto cfg : {example_figure_eight(), pretzel({2, 2, 2}), two_bridge({2, 3, 2})}) {
        auto order = canonical_y_order(cfg);
        auto trans = transposable_segments(cfg);
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == trans);
    }
}
