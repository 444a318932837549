#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bracketforge/cluster.hpp"
#include "bracketforge/construct.hpp"
#include "bracketforge/engines.hpp"
#include "bracketforge/error.hpp"
#include "bracketforge/link.hpp"
#include "bracketforge/states.hpp"

namespace bracketforge {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON link specification:
// {"crossings":[[e0,e1,e2,e3],...], "unbounded_face":k, "over":[...],
//  "distinguished_segment":id, "labeling":[...]}
// Crossings list their four incident segment ids counterclockwise; faces are
// numbered canonically by minimal incident dart; over[i] in {0,1} names the
// slot pair passing over; labeling permutes crossings so that position i
// carries label i+1.
// ---------------------------------------------------------------------------

struct LinkSpec {
    LinkConfiguration cfg;
    std::optional<std::vector<int>> over;
};

inline LinkSpec parse_link_spec(const json& j) {
    require(j.contains("crossings"), "BadSpec", "missing crossings");
    std::vector<std::array<int, 4>> cr;
    for (auto& row : j.at("crossings")) {
        require(row.size() == 4, "NotFourValent", "each crossing lists four segments");
        cr.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                      row[3].get<int>()});
    }
    if (j.contains("labeling")) {
        std::vector<int> lab = j.at("labeling").get<std::vector<int>>();
        require(lab.size() == cr.size(), "BadSpec", "labeling size mismatch");
        std::vector<std::array<int, 4>> relabeled(cr.size());
        std::vector<bool> seen(cr.size(), false);
        for (size_t i = 0; i < lab.size(); ++i) {
            int l = lab[i];
            require(l >= 1 && l <= static_cast<int>(cr.size()) && !seen[l - 1], "BadSpec",
                    "labeling must be a bijection onto 1..n");
            seen[l - 1] = true;
            relabeled[l - 1] = cr[i];
        }
        cr = std::move(relabeled);
    }
    // Build with a provisional anchor, then select the requested face.
    LinkUniverse probe(cr, 0);
    int unbounded = j.value("unbounded_face", probe.face_of(0));
    require(unbounded >= 0 && unbounded < probe.num_faces(), "BadSpec",
            "unbounded_face out of range");
    Dart anchor = probe.faces()[unbounded].front();
    LinkSpec out{LinkConfiguration{LinkUniverse(cr, anchor),
                                   j.value("distinguished_segment", 0), std::nullopt},
                 std::nullopt};
    if (j.contains("over")) out.over = j.at("over").get<std::vector<int>>();
    return out;
}

inline json link_spec_json(const LinkConfiguration& cfg,
                           const std::optional<std::vector<int>>& over = std::nullopt) {
    json j;
    j["crossings"] = json::array();
    for (auto& c : cfg.universe.crossings()) j["crossings"].push_back({c[0], c[1], c[2], c[3]});
    j["unbounded_face"] = cfg.universe.unbounded_face();
    j["distinguished_segment"] = cfg.s;
    std::vector<int> lab(cfg.universe.num_crossings());
    std::iota(lab.begin(), lab.end(), 1);
    j["labeling"] = lab;
    if (over) j["over"] = *over;
    return j;
}

inline json laurent_json(const LaurentPoly& p) {
    json j = json::array();
    for (auto& [e, c] : p.sorted_pairs()) j.push_back({e, c});
    return j;
}

// ---------------------------------------------------------------------------
// Attach-list specification as JSON:
// {"base":[{"sign":1,"kind":"trivial"},
//          {"sign":-1,"kind":"curl","components":2},
//          {"sign":1,"kind":"shell","marked_curl":0,
//           "nested":[{"sign":1,"kind":"trivial"}]}]}
// ---------------------------------------------------------------------------

inline AttachEntry parse_attach_entry(const json& j, bool nested) {
    AttachEntry e;
    e.sign = j.value("sign", 1);
    std::string kind = j.value("kind", "trivial");
    if (kind == "trivial") {
        e.kind = AttachKind::Trivial;
    } else if (kind == "curl") {
        e.kind = AttachKind::Curl;
        e.curl_components = j.value("components", 1);
    } else if (kind == "shell") {
        require(!nested, "MalformedSpec", "shells cannot be nested");
        e.kind = AttachKind::Shell;
        e.curl_components = j.value("marked_curl", 0);
        if (j.contains("nested"))
            for (auto& nj : j.at("nested")) e.nested.push_back(parse_attach_entry(nj, true));
    } else {
        fail("MalformedSpec", "unknown attach kind " + kind);
    }
    return e;
}

inline AttachSpec parse_attach_spec(const json& j) {
    AttachSpec spec;
    require(j.contains("base"), "MalformedSpec", "attach spec needs a base list");
    for (auto& ej : j.at("base")) spec.base.push_back(parse_attach_entry(ej, false));
    return spec;
}

// ---------------------------------------------------------------------------
// Family shorthand: twobridge:a1,a2,...  pretzel:b1,...
// montesinos:k;c11,c12/c21,...  example:trefoil|figure8|whitehead  hopf
// ---------------------------------------------------------------------------

inline std::vector<int> parse_int_list(const std::string& s, char sep = ',') {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        require(!tok.empty(), "BadFamily", "empty entry in parameter list");
        out.push_back(std::stoi(tok));
    }
    require(!out.empty(), "BadFamily", "empty parameter list");
    return out;
}

inline LinkConfiguration build_family(const std::string& shorthand) {
    auto colon = shorthand.find(':');
    std::string name = colon == std::string::npos ? shorthand : shorthand.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : shorthand.substr(colon + 1);
    if (name == "hopf") return hopf_configuration();
    if (name == "twobridge") return two_bridge(parse_int_list(args));
    if (name == "pretzel") return pretzel(parse_int_list(args));
    if (name == "montesinos") {
        auto semi = args.find(';');
        require(semi != std::string::npos, "BadFamily", "montesinos:k;c11,c12/...");
        int k = std::stoi(args.substr(0, semi));
        std::vector<std::vector<int>> tangles;
        std::stringstream ss(args.substr(semi + 1));
        std::string tok;
        while (std::getline(ss, tok, '/')) tangles.push_back(parse_int_list(tok));
        return montesinos(k, tangles);
    }
    if (name == "example") {
        if (args == "trefoil") return example_trefoil();
        if (args == "figure8") return example_figure_eight();
        if (args == "whitehead") return example_whitehead();
        fail("BadFamily", "known examples: trefoil, figure8, whitehead");
    }
    fail("BadFamily", "unknown family " + name);
}

// ---------------------------------------------------------------------------
// DOT exports.
// ---------------------------------------------------------------------------

inline std::string dot_checkerboard(const LinkDiagram& d, bool black,
                                    std::optional<TreeMask> tree = std::nullopt) {
    const LinkUniverse& u = d.universe();
    Checkerboard g = build_checkerboard(u, black);
    auto order = identity_order(g.num_edges());
    std::ostringstream os;
    os << "graph checkerboard {\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        os << "  v" << g.vertices[v] << " [label=\"R" << g.vertices[v] << "\"];\n";
    for (int e = 0; e < g.num_edges(); ++e) {
        os << "  v" << g.vertices[g.edges[e][0]] << " -- v" << g.vertices[g.edges[e][1]]
           << " [label=\"" << (d.sign(e) * (black ? 1 : -1) > 0 ? "+" : "-");
        if (tree)
            os << letter_name(activity_letter(g, *tree, e, order));
        else
            os << "e" << (e + 1);
        os << "\"";
        if (tree && (*tree & (TreeMask(1) << e))) os << ", style=bold";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string dot_double(const LinkDiagram& d,
                              std::optional<TreeMask> tree = std::nullopt) {
    const LinkUniverse& u = d.universe();
    auto order = identity_order(u.num_crossings());
    std::ostringstream os;
    os << "graph double_checkerboard {\n";
    for (bool black : {true, false}) {
        Checkerboard g = build_checkerboard(u, black);
        const char* shade = black ? "filled" : "solid";
        for (int v = 0; v < g.num_vertices(); ++v)
            os << "  r" << g.vertices[v] << " [style=" << shade << "];\n";
        TreeMask tm = 0;
        if (tree) tm = black ? *tree : dual_tree_mask(g.num_edges(), *tree);
        for (int e = 0; e < g.num_edges(); ++e) {
            os << "  r" << g.vertices[g.edges[e][0]] << " -- r"
               << g.vertices[g.edges[e][1]] << " [label=\""
               << (d.sign(e) * (black ? 1 : -1) > 0 ? "+" : "-");
            if (tree)
                os << letter_name(activity_letter(g, tm, e, order));
            else
                os << "e" << (e + 1);
            os << "\"";
            if (tree && (tm & (TreeMask(1) << e))) os << ", style=bold";
            os << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

inline std::string dot_overlaid(const LinkConfiguration& cfg, bool balanced) {
    const LinkUniverse& u = cfg.universe;
    std::ostringstream os;
    os << "graph overlaid {\n";
    for (int c = 0; c < u.num_crossings(); ++c)
        os << "  c" << (c + 1) << " [shape=square];\n";
    for (int f = 0; f < u.num_faces(); ++f) {
        if (balanced && cfg.is_omitted(f)) continue;
        os << "  r" << f << " [shape=circle, style=" << (u.is_black(f) ? "filled" : "solid")
           << "];\n";
    }
    for (int c = 0; c < u.num_crossings(); ++c)
        for (int k = 0; k < 4; ++k) {
            int f = u.corner_face(c, k);
            if (balanced && cfg.is_omitted(f)) continue;
            os << "  c" << (c + 1) << " -- r" << f << ";\n";
        }
    os << "}\n";
    return os.str();
}

inline std::string dot_state_lattice(const StateLattice& lat) {
    std::ostringstream os;
    os << "digraph states {\n  rankdir=BT;\n";
    for (int i = 0; i < lat.num_states(); ++i)
        os << "  s" << i << " [label=\"" << lat.monomial(i).to_string() << "\"];\n";
    for (auto& e : lat.cover_edges())
        os << "  s" << e.from << " -> s" << e.to << " [label=\"y" << (e.yvar + 1) << "\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string dot_quiver(const Quiver& q) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (int j = 0; j < q.size(); ++j)
        os << "  y" << (j + 1) << " [label=\"y" << (j + 1) << " (seg " << q.segments[j]
           << ")\"];\n";
    for (int i = 0; i < q.size(); ++i)
        for (int j = 0; j < q.size(); ++j)
            for (int t = 0; t < std::max(q.b[i][j], 0); ++t)
                os << "  y" << (i + 1) << " -> y" << (j + 1) << ";\n";
    os << "}\n";
    return os.str();
}

inline json states_json(const StateLattice& lat) {
    json j = json::array();
    const LinkUniverse& u = lat.balanced().universe();
    for (int i = 0; i < lat.num_states(); ++i) {
        json st;
        st["monomial"] = lat.monomial(i).to_string();
        st["markers"] = json::array();
        const Matching& m = lat.states()[i];
        for (int c = 0; c < u.num_crossings(); ++c)
            st["markers"].push_back({c + 1, u.corner_face(c, m[c])});
        j.push_back(st);
    }
    return j;
}

} // namespace bracketforge
