#include <catch2/catch_amalgamated.hpp>

#include "bracketforge/construct.hpp"
#include "bracketforge/graphs.hpp"

using namespace bracketforge;

namespace {

Checkerboard path3() {
    Checkerboard g;
    g.vertices = {0, 1, 2};
    g.edges = {{0, 1}, {1, 2}};
    return g;
}

Checkerboard cycle4() {
    Checkerboard g;
    g.vertices = {0, 1, 2, 3};
    g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return g;
}

} // namespace

TEST_CASE("spanning tree counts") {
    LinkUniverse hopf = hopf_universe();
    Checkerboard gh = build_checkerboard(hopf, true);
    CHECK(gh.num_vertices() == 2);
    CHECK(gh.num_edges() == 2);
    CHECK(enumerate_spanning_trees(gh).size() == 2);

    // The dual checkerboard graph of the example trefoil: two vertices with
    // three parallel edges.
    LinkConfiguration t = example_trefoil();
    Checkerboard gt = build_checkerboard(t.universe, false);
    CHECK(gt.num_vertices() == 2);
    CHECK(gt.num_edges() == 3);
    CHECK(enumerate_spanning_trees(gt).size() == 3);
    // And the black side is a triangle with the same tree count.
    Checkerboard gb = build_checkerboard(t.universe, true);
    CHECK(gb.num_vertices() == 3);
    CHECK(enumerate_spanning_trees(gb).size() == 3);

    CHECK(enumerate_spanning_trees(cycle4()).size() == 4);
}

TEST_CASE("fundamental cocycles and cycles") {
    LinkUniverse hopf = hopf_universe();
    Checkerboard g = build_checkerboard(hopf, true);
    CHECK(fundamental_cocycle(g, 0b01, 0) == std::vector<int>{0, 1});
    CHECK_THROWS_AS(fundamental_cocycle(g, 0b01, 1), Error);

    LinkConfiguration t = example_trefoil();
    Checkerboard g3 = build_checkerboard(t.universe, false); // 3 parallel edges
    CHECK(fundamental_cocycle(g3, 0b010, 1) == std::vector<int>{0, 1, 2});

    Checkerboard p = path3();
    CHECK(fundamental_cocycle(p, 0b11, 1) == std::vector<int>{1}); // isthmus

    CHECK(fundamental_cycle(g3, 0b010, 0) == std::vector<int>{0, 1});
}

TEST_CASE("activity letters") {
    LinkUniverse hopf = hopf_universe();
    Checkerboard g = build_checkerboard(hopf, true);
    auto order = identity_order(2);
    CHECK(activity_letter(g, 0b01, 0, order) == Letter::L);
    CHECK(activity_letter(g, 0b01, 1, order) == Letter::d);

    LinkConfiguration t = example_trefoil();
    Checkerboard g3 = build_checkerboard(t.universe, false);
    auto o3 = identity_order(3);
    CHECK(activity_letter(g3, 0b001, 1, o3) == Letter::d);
    CHECK(activity_letter(g3, 0b001, 2, o3) == Letter::d);
    CHECK(activity_letter(g3, 0b010, 0, o3) == Letter::l);
}

TEST_CASE("signed letter evaluations") {
    CHECK(letter_value(Letter::L, +1) == LaurentPoly::monomial(-1, -3));
    CHECK(letter_value(Letter::D, +1) == LaurentPoly::monomial(1, 1));
    CHECK(letter_value(Letter::l, +1) == LaurentPoly::monomial(-1, 3));
    CHECK(letter_value(Letter::d, +1) == LaurentPoly::monomial(1, -1));
    CHECK(letter_value(Letter::L, -1) == LaurentPoly::monomial(-1, 3));
    CHECK(letter_value(Letter::D, -1) == LaurentPoly::monomial(1, -1));
    CHECK(letter_value(Letter::l, -1) == LaurentPoly::monomial(-1, -3));
    CHECK(letter_value(Letter::d, -1) == LaurentPoly::monomial(1, 1));
}

TEST_CASE("activity duality across the planar dual") {
    for (auto cfg : {hopf_configuration(), example_trefoil(), example_whitehead(),
                     two_bridge({2, 3}), pretzel({2, 2, 2})}) {
        const LinkUniverse& u = cfg.universe;
        Checkerboard g = build_checkerboard(u, true);
        auto order = identity_order(u.num_crossings());
        for (TreeMask t : enumerate_spanning_trees(g))
            CHECK(duality_activity_check(u, t, order));
    }
}

TEST_CASE("dual lemma: cocycles are dual cycles") {
    // cocyc(e_i, T) and cyc(dual e_i, dual T) contain the same crossing set,
    // and symmetrically for external edges.
    for (auto cfg : {example_trefoil(), example_whitehead(), two_bridge({2, 2, 2}),
                     pretzel({2, 2, 2}), two_bridge({4, 4})}) {
        const LinkUniverse& u = cfg.universe;
        Checkerboard g = build_checkerboard(u, true);
        Checkerboard gd = build_checkerboard(u, false);
        for (TreeMask t : enumerate_spanning_trees(g)) {
            TreeMask td = dual_tree_mask(g.num_edges(), t);
            for (int e = 0; e < g.num_edges(); ++e) {
                if (t & (TreeMask(1) << e))
                    CHECK(fundamental_cocycle(g, t, e) == fundamental_cycle(gd, td, e));
                else
                    CHECK(fundamental_cycle(g, t, e) == fundamental_cocycle(gd, td, e));
            }
        }
    }
}

TEST_CASE("balanced overlaid graph shape") {
    LinkConfiguration t = example_trefoil();
    Balanced bt(t);
    CHECK(bt.round_faces().size() == 3);
    CHECK(bt.perfect_matchings().size() == 3);

    LinkConfiguration h = hopf_configuration();
    Balanced bh(h);
    CHECK(bh.round_faces().size() == 2);
    CHECK(bh.perfect_matchings().size() == 2);

    LinkConfiguration f8 = example_figure_eight();
    Balanced bf(f8);
    CHECK(bf.round_faces().size() == 4);
    CHECK(bf.perfect_matchings().size() == 5);
}

TEST_CASE("matching count equals spanning tree count") {
    for (auto cfg : {hopf_configuration(), example_trefoil(), example_figure_eight(),
                     example_whitehead(), two_bridge({3, 2}), pretzel({2, 2, 2}),
                     pretzel({1, 3, 2})}) {
        Balanced b(cfg);
        Checkerboard g = build_checkerboard(cfg.universe, true);
        CHECK(b.perfect_matchings().size() == enumerate_spanning_trees(g).size());
    }
}

TEST_CASE("eta and theta are mutually inverse") {
    for (auto cfg : {hopf_configuration(), example_trefoil(), example_figure_eight(),
                     example_whitehead(), pretzel({2, 1, 2})}) {
        Balanced b(cfg);
        auto matchings = b.perfect_matchings();
        std::set<TreeMask> trees_seen;
        for (auto& m : matchings) {
            TreeMask t = b.eta(m);
            trees_seen.insert(t);
            CHECK(b.theta(t) == m);
            CHECK(is_spanning_tree(build_checkerboard(cfg.universe, true), t));
        }
        // eta is onto the spanning trees, so theta(eta) covers them all.
        Checkerboard g = build_checkerboard(cfg.universe, true);
        auto trees = enumerate_spanning_trees(g);
        CHECK(trees_seen.size() == trees.size());
        for (TreeMask t : trees) CHECK(b.eta(b.theta(t)) == t);
    }
}

TEST_CASE("eta rejects defective matchings") {
    LinkConfiguration t = example_trefoil();
    Balanced b(t);
    Matching bad(t.num_crossings(), -1);
    CHECK_THROWS_AS(b.eta(bad), Error);
}
