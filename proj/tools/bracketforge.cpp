// Command-line surface for the bracket engines: build link configurations
// from family shorthands or JSON specs, run and cross-check the bracket
// expansions, and export states, F-polynomial data, and quivers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bracketforge/corpus.hpp"
#include "bracketforge/engines.hpp"
#include "bracketforge/io.hpp"

using namespace bracketforge;

namespace {

struct Input {
    std::string family;
    std::string json_file;
    std::string attach_file;
};

struct Options {
    Input in;
    std::string engine = "all";
    std::string out = "text";
    std::string convention = "default";
    int limit = 8;
};

Convention resolve_convention(const std::string& flag) {
    const char* env = std::getenv("BRACKETFORGE_CONVENTION");
    std::string v = flag;
    if (v == "default" && env) v = env;
    return convention_from_string(v == "" ? "default" : v);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("BadSpec", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

// Returns the configuration plus the diagram: explicit over/under data when a
// JSON spec provides it, otherwise the all-negative alternating diagram.
std::pair<LinkConfiguration, LinkDiagram> load(const Input& in, Convention conv) {
    int sources = !in.family.empty() + !in.json_file.empty() + !in.attach_file.empty();
    if (sources != 1) fail("BadSpec", "exactly one input source required");
    if (!in.family.empty()) {
        LinkConfiguration cfg = build_family(in.family);
        return {cfg, LinkDiagram::alternating_all_negative(cfg.universe, conv)};
    }
    if (!in.attach_file.empty()) {
        LinkConfiguration cfg = build_attach_spec(parse_attach_spec(read_json_file(in.attach_file)));
        return {cfg, LinkDiagram::alternating_all_negative(cfg.universe, conv)};
    }
    LinkSpec spec = parse_link_spec(read_json_file(in.json_file));
    if (spec.over)
        return {spec.cfg, LinkDiagram(spec.cfg.universe, *spec.over, conv)};
    return {spec.cfg, LinkDiagram::alternating_all_negative(spec.cfg.universe, conv)};
}

int cmd_bracket(const Options& opt) {
    auto [cfg, d] = load(opt.in, resolve_convention(opt.convention));
    LaurentPoly b;
    if (opt.engine == "recursive" || opt.engine == "all") {
        b = bracket_recursive(d);
    } else if (opt.engine == "tree") {
        b = bracket_spanning_tree(d);
    } else if (opt.engine == "double") {
        b = bracket_double_tree(d);
    } else if (opt.engine == "matching") {
        b = bracket_perfect_matching(cfg, d);
    } else if (opt.engine == "fpoly") {
        b = bracket_fpoly(cfg, d, compute_reduction_sequence(cfg));
    } else {
        fail("BadSpec", "unknown engine " + opt.engine);
    }
    if (opt.engine == "all") {
        auto rep = verify_all(d, cfg);
        if (!rep.all_equal) {
            std::cerr << "engine divergence: " << rep.divergence << "\n";
            return 1;
        }
    }
    if (opt.out == "json")
        std::cout << laurent_json(b).dump() << "\n";
    else
        std::cout << b.to_string() << "\n";
    return 0;
}

int cmd_jones(const Options& opt) {
    auto [cfg, d] = load(opt.in, resolve_convention(opt.convention));
    auto j = jones_from_bracket(d);
    if (opt.out == "json") {
        json out;
        out["writhe"] = j.writhe;
        out["sqrt_t_pairs"] = laurent_json(j.in_sqrt_t);
        out["value"] = j.to_string();
        std::cout << out.dump() << "\n";
    } else {
        std::cout << j.to_string() << "  (writhe " << j.writhe << ")\n";
    }
    return 0;
}

int cmd_states(const Options& opt) {
    auto [cfg, d] = load(opt.in, resolve_convention(opt.convention));
    StateLattice lat(cfg, canonical_y_order(cfg));
    if (opt.out == "dot") {
        std::cout << dot_state_lattice(lat);
    } else if (opt.out == "json") {
        std::cout << states_json(lat).dump() << "\n";
    } else {
        std::cout << lat.num_states() << " states, M = "
                  << lat.states_lattice_polynomial().to_string() << "\n";
        std::cout << "w(S_min) = " << lat.weight(d, lat.min_state()).to_string() << "\n";
    }
    return 0;
}

int cmd_fpoly(const Options& opt) {
    auto [cfg, d] = load(opt.in, resolve_convention(opt.convention));
    auto rd = compute_reduction_sequence(cfg);
    auto var = distinguished_cluster_variable(cfg, rd);
    if (opt.out == "json") {
        json out;
        out["F"] = var.F.to_string();
        out["g"] = var.g;
        out["h"] = var.h;
        out["d"] = var.d;
        json spec = json::array();
        if (d.all_negative())
            for (auto& v : bracket_specialization_values(cfg, d, rd.order))
                spec.push_back(v.to_string());
        out["specialization"] = spec;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << var.F.to_string() << "\n";
    }
    return 0;
}

int cmd_quiver(const Options& opt) {
    auto [cfg, d] = load(opt.in, resolve_convention(opt.convention));
    Quiver q = build_quiver(cfg, canonical_y_order(cfg));
    if (opt.out == "dot") {
        std::cout << dot_quiver(q);
    } else {
        std::cout << q.size() << " vertices\n";
        for (int i = 0; i < q.size(); ++i)
            for (int j = 0; j < q.size(); ++j)
                for (int t = 0; t < std::max(q.b[i][j], 0); ++t)
                    std::cout << "y" << i + 1 << " -> y" << j + 1 << "\n";
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    auto [cfg, d] = load(opt.in, resolve_convention(opt.convention));
    auto rep = verify_all(d, cfg);
    int ran = 0;
    for (auto& r : rep.results) {
        if (r.applicable)
            ++ran;
        else
            std::cout << r.engine << ": " << r.note << "\n";
    }
    if (rep.all_equal) {
        std::cout << ran << " engines agree: " << rep.oracle().to_string() << "\n";
        return 0;
    }
    std::cout << "DIVERGENCE: " << rep.divergence << "\n";
    for (auto& r : rep.results)
        if (r.applicable) std::cout << "  " << r.engine << ": " << r.bracket.to_string() << "\n";
    return 1;
}

int cmd_corpus(const Options& opt) {
    auto instances = full_corpus(opt.limit);
    int failed = 0;
    for (auto& inst : instances) {
        auto r = run_instance_checks(inst.cfg);
        bool crit = inst.cfg.num_crossings() <= 6 ? criterion_matches_brute_force(inst.cfg) : true;
        bool ok = r.all() && crit;
        if (!ok) ++failed;
        std::cout << (ok ? "pass  " : "FAIL  ") << inst.name;
        if (!ok) {
            std::cout << "  [";
            if (!r.engines_agree) std::cout << " engines";
            if (!r.ei_holds) std::cout << " ei";
            if (!r.identities) std::cout << " identities";
            if (!r.lemma_specall) std::cout << " lemma";
            if (!r.quiver_reduction) std::cout << " quiver";
            if (!r.eta_theta) std::cout << " eta/theta";
            if (!r.counts_match) std::cout << " counts";
            if (!r.lattice_ok) std::cout << " lattice";
            if (!r.duality) std::cout << " duality";
            if (!r.alternation) std::cout << " alternation";
            if (!r.ratio_census) std::cout << " ratios";
            if (!r.involution) std::cout << " involution";
            if (!crit) std::cout << " criterion";
            std::cout << " ]";
            if (!r.note.empty()) std::cout << " " << r.note;
        }
        std::cout << "\n";
    }
    std::cout << instances.size() - failed << "/" << instances.size() << " instances pass\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kauffman bracket polynomials via skein, spanning-tree, "
                 "perfect-matching, and cluster-variable expansions"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_engine = false) {
        sub->add_option("--family", opt.in.family,
                        "family shorthand: hopf, twobridge:a1,a2,..., pretzel:b1,...,"
                        " montesinos:k;c11,c12/..., example:trefoil|figure8|whitehead");
        sub->add_option("--json", opt.in.json_file, "JSON link specification file");
        sub->add_option("--attach", opt.in.attach_file, "JSON attach-list file");
        sub->add_option("--out", opt.out, "output format: text|json|dot");
        sub->add_option("--convention", opt.convention,
                        "crossing sign reading: default|mirror");
        if (with_engine)
            sub->add_option("--engine", opt.engine,
                            "recursive|tree|double|matching|fpoly|all");
    };

    auto* bracket = app.add_subcommand("bracket", "compute the Kauffman bracket");
    add_common(bracket, true);
    auto* jones = app.add_subcommand("jones", "compute the Jones polynomial");
    add_common(jones);
    auto* states = app.add_subcommand("states", "Kauffman state lattice");
    add_common(states);
    auto* fpoly = app.add_subcommand("fpoly", "distinguished cluster variable data");
    add_common(fpoly);
    auto* quiver = app.add_subcommand("quiver", "quiver of the configuration");
    add_common(quiver);
    auto* verify = app.add_subcommand("verify", "run all engines and compare");
    add_common(verify);
    auto* corpus = app.add_subcommand("corpus", "run the verification corpus");
    corpus->add_option("--limit", opt.limit, "parameter sum limit (default 8)")
        ->check(CLI::Range(2, 10));
    corpus->add_option("--convention", opt.convention, "crossing sign reading");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bracket->parsed()) return cmd_bracket(opt);
        if (jones->parsed()) return cmd_jones(opt);
        if (states->parsed()) return cmd_states(opt);
        if (fpoly->parsed()) return cmd_fpoly(opt);
        if (quiver->parsed()) return cmd_quiver(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (corpus->parsed()) return cmd_corpus(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
