#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bracketforge/error.hpp"
#include "bracketforge/graphs.hpp"
#include "bracketforge/link.hpp"
#include "bracketforge/states.hpp"

namespace bracketforge {

// ---------------------------------------------------------------------------
// Bigon extensions. Type A splits a crossing along its black axis and creates
// a black bigon (extending the checkerboard edge e_c); type B is the white
// counterpart. The new crossings keep the old labels i, i+1 with the order
// fixed by the activity letters at the axis end-regions.
// ---------------------------------------------------------------------------

enum class BigonType { A, B };

struct AdmissibilityWitness {
    bool admissible = true;
    // Populated on rejection: both end-regions present, equal letters.
    int region_n = -1, region_s = -1;
    Letter letter_n = Letter::D, letter_s = Letter::D;
};

namespace detail {

struct AxisInfo {
    int b;                       // axis corner index; the other is b+2
    std::optional<Letter> letter_n, letter_s; // empty when the region is omitted
    int region_n, region_s;
};

inline AxisInfo axis_info(const LinkConfiguration& cfg, int c, BigonType type) {
    const LinkUniverse& u = cfg.universe;
    int parity = u.black_corner_parity(c);
    AxisInfo ax;
    ax.b = type == BigonType::A ? parity : (parity + 1) & 3;
    ax.region_n = u.corner_face(c, ax.b);
    ax.region_s = u.corner_face(c, ax.b + 2);
    if (!cfg.is_omitted(ax.region_n))
        ax.letter_n = half_edge_letter_rule(u, c, ax.region_n);
    if (!cfg.is_omitted(ax.region_s))
        ax.letter_s = half_edge_letter_rule(u, c, ax.region_s);
    return ax;
}

} // namespace detail

// Admissibility criterion: not admissible iff neither axis end-region is omitted and
// both half-edges carry the same activity letter.
inline AdmissibilityWitness is_admissible_extension(const LinkConfiguration& cfg, int c,
                                                    BigonType type) {
    require(cfg.universe.is_prime_like(), "NotPrimeLike",
            "admissibility criterion needs a prime-like universe");
    auto ax = detail::axis_info(cfg, c, type);
    AdmissibilityWitness w;
    if (ax.letter_n && ax.letter_s && *ax.letter_n == *ax.letter_s) {
        w.admissible = false;
        w.region_n = ax.region_n;
        w.region_s = ax.region_s;
        w.letter_n = *ax.letter_n;
        w.letter_s = *ax.letter_s;
    }
    return w;
}

struct ExtensionOutcome {
    LinkConfiguration cfg;
    int low_crossing;  // = extended index i
    int high_crossing; // = i + 1
    int g1, g2;        // the bigon segments (g1 wraps axis corner b+1, g2 wraps b+3)
    int bigon_face;    // face id in the new universe

    // Index/dart transport into the new configuration.
    int map_crossing_other(int j, int i) const { return j > i ? j + 1 : j; }
};

namespace detail {

inline Dart map_dart_through_extension(Dart d, int i, int b, int pos_n, int pos_s) {
    int c = dart_crossing(d), k = dart_slot(d);
    if (c != i) return make_dart(c > i ? c + 1 : c, k);
    int r = (k - b) & 3;
    if (r == 0) return make_dart(pos_n, 0);
    if (r == 1) return make_dart(pos_n, 1);
    if (r == 2) return make_dart(pos_s, 2);
    return make_dart(pos_s, 3);
}

} // namespace detail

// Raw surgery with the label order forced by the caller. n_higher puts the
// higher label on the crossing adjacent to the axis corner b.
inline ExtensionOutcome bigon_surgery(const LinkConfiguration& cfg, int i, BigonType type,
                                      bool n_higher) {
    const LinkUniverse& u = cfg.universe;
    auto ax = detail::axis_info(cfg, i, type);
    int g1 = u.num_segments(), g2 = u.num_segments() + 1;
    std::array<int, 4> cn = {u.segment_at(i, ax.b), u.segment_at(i, ax.b + 1), g1, g2};
    std::array<int, 4> cs = {g2, g1, u.segment_at(i, ax.b + 2), u.segment_at(i, ax.b + 3)};

    int pos_n = n_higher ? i + 1 : i;
    int pos_s = n_higher ? i : i + 1;

    std::vector<std::array<int, 4>> cr;
    cr.reserve(u.num_crossings() + 1);
    for (int j = 0; j < i; ++j) cr.push_back(u.crossings()[j]);
    cr.push_back(n_higher ? cs : cn);
    cr.push_back(n_higher ? cn : cs);
    for (int j = i + 1; j < u.num_crossings(); ++j) cr.push_back(u.crossings()[j]);

    Dart anchor = detail::map_dart_through_extension(u.anchor(), i, ax.b, pos_n, pos_s);

    ExtensionOutcome out{
        LinkConfiguration{LinkUniverse(std::move(cr), anchor), cfg.s, std::nullopt},
        i, i + 1, g1, g2, -1};
    out.bigon_face = out.cfg.universe.face_of(make_dart(pos_n, 2));
    return out;
}

// Extension with the unique admissible label order: the side lettered L gets
// the higher label; with no L present the omitted side does.
inline ExtensionOutcome bigon_extend_detail(const LinkConfiguration& cfg, int i, BigonType type) {
    auto ax = detail::axis_info(cfg, i, type);
    require(!(ax.letter_n && ax.letter_s && *ax.letter_n == *ax.letter_s), "NotAdmissible",
            "both axis half-edges carry letter " + letter_name(*ax.letter_n));
    bool n_higher;
    if (ax.letter_n && *ax.letter_n == Letter::L)
        n_higher = true;
    else if (ax.letter_s && *ax.letter_s == Letter::L)
        n_higher = false;
    else if (!ax.letter_n)
        n_higher = true;
    else
        n_higher = false;
    return bigon_surgery(cfg, i, type, n_higher);
}

inline LinkConfiguration bigon_extend(const LinkConfiguration& cfg, int c, BigonType type) {
    return bigon_extend_detail(cfg, c, type).cfg;
}

// ---------------------------------------------------------------------------
// Bigon reduction: inverse surgery at a two-sided region whose crossings carry
// consecutive labels.
// ---------------------------------------------------------------------------

struct ReductionOutcome {
    LinkConfiguration cfg;
    int merged_crossing;                 // index i
    std::array<int, 2> reduced_segments; // in slot order at the lower crossing
    std::vector<int> segment_map;        // new segment id -> old segment id
};

inline ReductionOutcome bigon_reduce(const LinkConfiguration& cfg, int bigon_face) {
    const LinkUniverse& u = cfg.universe;
    const auto& walk = u.faces()[bigon_face];
    require(walk.size() == 2, "NotABigon", "region is not two-sided");
    Dart d1 = walk[0], d2 = walk[1];
    int u1 = dart_crossing(d1), u2 = dart_crossing(d2);
    if (u1 > u2) {
        std::swap(d1, d2);
        std::swap(u1, u2);
    }
    require(u2 == u1 + 1, "NonConsecutiveLabels",
            "bigon crossings must carry consecutive labels");

    int p1 = dart_slot(d1), p2 = dart_slot(d2);
    int a = u.segment_at(u1, p1), b = u.segment_at(u1, p1 + 1);
    require(a != cfg.s && b != cfg.s, "NotPermitted", "reduction would destroy s");
    require(u.segment_at(u2, p2) == b && u.segment_at(u2, p2 + 1) == a, "NotABigon",
            "bigon sides misaligned");

    std::array<int, 4> merged = {u.segment_at(u1, p1 + 2), u.segment_at(u1, p1 + 3),
                                 u.segment_at(u2, p2 + 2), u.segment_at(u2, p2 + 3)};

    // Compact segment ids, dropping a and b.
    std::vector<int> old_of;
    std::vector<int> new_of(u.num_segments(), -1);
    for (int s = 0; s < u.num_segments(); ++s) {
        if (s == a || s == b) continue;
        new_of[s] = static_cast<int>(old_of.size());
        old_of.push_back(s);
    }

    std::vector<std::array<int, 4>> cr;
    for (int j = 0; j < u.num_crossings(); ++j) {
        if (j == u1) {
            std::array<int, 4> m;
            for (int k = 0; k < 4; ++k) m[k] = new_of[merged[k]];
            cr.push_back(m);
        } else if (j == u2) {
            continue;
        } else {
            std::array<int, 4> m;
            for (int k = 0; k < 4; ++k) m[k] = new_of[u.crossings()[j][k]];
            cr.push_back(m);
        }
    }

    auto map_dart = [&](Dart d) {
        int c = dart_crossing(d), k = dart_slot(d);
        if (c == u1) {
            int r = (k - p1) & 3;
            require(r >= 2, "AnchorLost", "anchor on a reduced segment");
            return make_dart(u1, r - 2);
        }
        if (c == u2) {
            int r = (k - p2) & 3;
            require(r >= 2, "AnchorLost", "anchor on a reduced segment");
            return make_dart(u1, r);
        }
        return make_dart(c > u2 ? c - 1 : c, k);
    };

    ReductionOutcome out{
        LinkConfiguration{LinkUniverse(std::move(cr), map_dart(u.anchor())),
                          new_of[cfg.s], std::nullopt},
        u1,
        {a, b},
        old_of};
    return out;
}

// ---------------------------------------------------------------------------
// Active crossings: exactly two adjacent corners carrying letter L.
// ---------------------------------------------------------------------------

inline std::vector<int> active_crossings(const LinkConfiguration& cfg) {
    const LinkUniverse& u = cfg.universe;
    std::vector<int> out;
    for (int c = 0; c < u.num_crossings(); ++c) {
        std::vector<int> Ls;
        for (int k = 0; k < 4; ++k) {
            int f = u.corner_face(c, k);
            if (cfg.is_omitted(f)) continue;
            if (half_edge_letter_rule(u, c, f) == Letter::L) Ls.push_back(k);
        }
        if (Ls.size() == 2 && (((Ls[1] - Ls[0]) & 3) == 1 || ((Ls[1] - Ls[0]) & 3) == 3))
            out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Attach-point assembly, realized as a sequence of admissible bigon extensions
// starting from the Hopf configuration. Region classes for the census are
// threaded through every surgery.
// ---------------------------------------------------------------------------

enum class AttachKind { Trivial, Curl, Shell };

struct AttachEntry {
    int sign = +1;       // +: the interaction runs through the upper (black) side
    AttachKind kind = AttachKind::Trivial;
    int curl_components = 1; // Curl: loop count >= 1. Shell: marked-point curl count >= 0.
    std::vector<AttachEntry> nested; // Shell only; Trivial or Curl entries.
};

struct AttachSpec {
    std::vector<AttachEntry> base;
};

inline void validate(const AttachSpec& spec) {
    for (auto& e : spec.base) {
        require(e.sign == 1 || e.sign == -1, "MalformedSpec", "attach sign must be +-1");
        if (e.kind == AttachKind::Curl)
            require(e.curl_components >= 1, "MalformedSpec", "curl needs >= 1 component");
        if (e.kind == AttachKind::Shell) {
            require(e.curl_components >= 0, "MalformedSpec", "negative marked curl count");
            for (auto& n : e.nested) {
                require(n.kind != AttachKind::Shell, "MalformedSpec",
                        "shells cannot ride on shells");
                require(n.sign == 1 || n.sign == -1, "MalformedSpec", "attach sign must be +-1");
                if (n.kind == AttachKind::Curl)
                    require(n.curl_components >= 1, "MalformedSpec", "curl needs >= 1 component");
            }
        } else {
            require(e.nested.empty(), "MalformedSpec", "only shells carry nested points");
        }
    }
}

namespace detail {

// Builder state: configuration plus census tags and tracked crossing marks.
struct AttachBuilder {
    LinkConfiguration cfg;
    std::vector<RegionClass> tags;  // by face id
    std::vector<int> active_marks;  // crossing indices expected active
    int negative_trivial = 0;
    bool nested_curls = false;

    AttachBuilder() {
        cfg.universe = hopf_universe();
        cfg.s = 0;
        tags.assign(cfg.universe.num_faces(), RegionClass::U1);
        auto om = cfg.omitted_faces();
        for (int f = 0; f < cfg.universe.num_faces(); ++f) {
            if (f == om[0] || f == om[1])
                tags[f] = cfg.universe.is_black(f) ? RegionClass::SAdjacentBlack
                                                   : RegionClass::SAdjacentWhite;
            else
                tags[f] = cfg.universe.is_black(f) ? RegionClass::U1 : RegionClass::L1;
        }
        active_marks.push_back(0);
    }

    // Extend at crossing i, validating admissibility, and tag the new bigon.
    void extend(int i, BigonType type, RegionClass bigon_tag) {
        auto w = is_admissible_extension(cfg, i, type);
        require(w.admissible, "ExtensionRejected",
                "assembly step rejected at crossing " + std::to_string(i + 1));
        auto ax = axis_info(cfg, i, type);
        auto out = bigon_extend_detail(cfg, i, type);

        // Representative darts carry each old region's tag across the surgery.
        int pos_n = -1, pos_s = -1;
        {
            // Recover placement: the n-side crossing holds the axis slots 0,1.
            const auto& nu = out.cfg.universe;
            if (nu.segment_at(i, 2) == out.g1 && nu.segment_at(i, 3) == out.g2) {
                pos_n = i;
                pos_s = i + 1;
            } else {
                pos_n = i + 1;
                pos_s = i;
            }
        }
        std::vector<RegionClass> ntags(out.cfg.universe.num_faces(), bigon_tag);
        std::vector<bool> assigned(out.cfg.universe.num_faces(), false);
        for (int f = 0; f < cfg.universe.num_faces(); ++f) {
            Dart rep = -1;
            for (Dart d : cfg.universe.faces()[f])
                if (dart_crossing(d) != i) {
                    rep = d;
                    break;
                }
            require(rep != -1, "TagLost", "region only touches the split crossing");
            Dart nd = map_dart_through_extension(rep, i, ax.b, pos_n, pos_s);
            int nf = out.cfg.universe.face_of(nd);
            ntags[nf] = tags[f];
            assigned[nf] = true;
        }
        require(!assigned[out.bigon_face], "TagLost", "bigon face collides with an old region");
        tags = std::move(ntags);

        for (int& m : active_marks)
            if (m > i) ++m;
        cfg = std::move(out.cfg);
    }

    // Prepend one attach point: split the crossing labeled 1. The interaction
    // crossing comes out at label 2.
    void prepend_trivial(int sign) {
        extend(0, sign > 0 ? BigonType::A : BigonType::B,
               sign > 0 ? RegionClass::U1 : RegionClass::L1);
    }

    // Turn the trivial point whose interaction crossing sits at label 2 into a
    // curl with `components` loops.
    void convert_curl(int sign, int components, bool in_shell = false) {
        BigonType t;
        RegionClass tag;
        if (!in_shell) {
            t = sign > 0 ? BigonType::B : BigonType::A;
            tag = sign > 0 ? RegionClass::U2 : RegionClass::L2;
        } else {
            t = sign > 0 ? BigonType::A : BigonType::B;
            tag = sign > 0 ? RegionClass::U2 : RegionClass::L2;
        }
        for (int k = 0; k < components; ++k) extend(in_shell ? 2 : 1, t, tag);
    }

    // Turn the innermost loop (label 2) into a shell; the loop region that
    // survives becomes the shell's inner lens.
    void convert_shell(int sign) {
        RegionClass from = RegionClass::U2, to, bigon;
        if (sign > 0) {
            to = RegionClass::U3;
            bigon = RegionClass::L3;
        } else {
            from = RegionClass::L2;
            to = RegionClass::L3;
            bigon = RegionClass::U3;
        }
        int retags = 0;
        for (int k = 0; k < 4; ++k) {
            int f = cfg.universe.corner_face(1, k);
            if (tags[f] == from) {
                tags[f] = to;
                ++retags;
            }
        }
        require(retags == 1, "TagLost", "shell conversion expects one adjacent curl region");
        extend(1, sign > 0 ? BigonType::A : BigonType::B, bigon);
    }

    void nested_prepend(int sign) {
        extend(1, sign > 0 ? BigonType::B : BigonType::A,
               sign > 0 ? RegionClass::U3 : RegionClass::L3);
    }

    void build_entry(const AttachEntry& e) {
        prepend_trivial(e.sign);
        if (e.kind == AttachKind::Trivial) {
            if (e.sign < 0) ++negative_trivial;
            return;
        }
        if (e.kind == AttachKind::Curl) {
            convert_curl(e.sign, e.curl_components);
            active_marks.push_back(1);
            return;
        }
        // Shell.
        convert_curl(e.sign, e.curl_components + 1);
        convert_shell(e.sign);
        for (auto it = e.nested.rbegin(); it != e.nested.rend(); ++it) {
            nested_prepend(it->sign);
            if (it->kind == AttachKind::Curl) {
                nested_curls = true;
                convert_curl(it->sign, it->curl_components, /*in_shell=*/true);
            }
        }
        active_marks.push_back(1);
    }

    LinkConfiguration finish() {
        AttachProvenance prov;
        prov.region_class = tags;
        std::set<int> marks(active_marks.begin(), active_marks.end());
        for (int m : marks) prov.active_labels.push_back(m + 1);
        prov.negative_trivial_points = negative_trivial;
        cfg.attach = std::move(prov);
        return cfg;
    }
};

} // namespace detail

inline LinkConfiguration build_attach_spec(const AttachSpec& spec) {
    validate(spec);
    detail::AttachBuilder b;
    for (auto it = spec.base.rbegin(); it != spec.base.rend(); ++it) b.build_entry(*it);
    return b.finish();
}

inline LinkConfiguration hopf_configuration() { return build_attach_spec(AttachSpec{}); }

// ---------------------------------------------------------------------------
// Classical families.
// ---------------------------------------------------------------------------

// L(a_1,...,a_n): alternating blocks of trivial points, first block on the
// upper side. One twist box of k crossings contributes k-1 points except that
// the two end boxes lose one more to the Hopf core.
inline AttachSpec two_bridge_spec(const std::vector<int>& a) {
    require(!a.empty(), "MalformedSpec", "empty 2-bridge parameters");
    for (int x : a) require(x >= 1, "MalformedSpec", "2-bridge entries must be positive");
    AttachSpec spec;
    auto add = [&](int count, int sign) {
        for (int i = 0; i < count; ++i)
            spec.base.push_back({sign, AttachKind::Trivial, 1, {}});
    };
    if (a.size() == 1) {
        require(a[0] >= 2, "MalformedSpec", "L(k) needs k >= 2");
        add(a[0] - 2, +1);
        return spec;
    }
    for (size_t i = 0; i < a.size(); ++i) {
        int count = a[i];
        if (i == 0 || i + 1 == a.size()) --count;
        add(count, i % 2 == 0 ? +1 : -1);
    }
    return spec;
}

inline LinkConfiguration two_bridge(const std::vector<int>& a) {
    return build_attach_spec(two_bridge_spec(a));
}

// P(b_1,...,b_n): trivial points for the end boxes, one curl per middle box.
// A middle box of size 1 degenerates to a single trivial point on the lower
// side.
inline AttachSpec pretzel_spec(const std::vector<int>& b) {
    require(!b.empty(), "MalformedSpec", "empty pretzel parameters");
    for (int x : b) require(x >= 1, "MalformedSpec", "pretzel entries must be positive");
    if (b.size() == 1) return two_bridge_spec({b[0]});
    if (b.size() == 2) return two_bridge_spec({b[0] + b[1]});
    AttachSpec spec;
    for (int i = 0; i < b[0] - 1; ++i)
        spec.base.push_back({+1, AttachKind::Trivial, 1, {}});
    for (size_t i = 1; i + 1 < b.size(); ++i) {
        if (b[i] == 1)
            spec.base.push_back({-1, AttachKind::Trivial, 1, {}});
        else
            spec.base.push_back({-1, AttachKind::Curl, b[i] - 1, {}});
    }
    for (int i = 0; i < b.back() - 1; ++i)
        spec.base.push_back({+1, AttachKind::Trivial, 1, {}});
    return spec;
}

inline LinkConfiguration pretzel(const std::vector<int>& b) {
    return build_attach_spec(pretzel_spec(b));
}

// The worked example configurations.
inline LinkConfiguration example_trefoil() {
    return build_attach_spec(AttachSpec{{{+1, AttachKind::Trivial, 1, {}}}});
}
inline LinkConfiguration example_figure_eight() {
    return build_attach_spec(AttachSpec{{{+1, AttachKind::Curl, 1, {}}}});
}
inline LinkConfiguration example_whitehead() {
    return build_attach_spec(AttachSpec{{{+1, AttachKind::Shell, 0, {}}}});
}

// ---------------------------------------------------------------------------
// Montesinos universes: start from the pretzel with k single-crossing boxes
// and one box of c^i_last + 1 per tangle, then grow each rational tangle by
// alternating admissible extensions at its active corner crossing.
// ---------------------------------------------------------------------------

inline LinkConfiguration montesinos(int k, const std::vector<std::vector<int>>& tangles) {
    require(k >= 1, "MalformedSpec", "montesinos needs k >= 1");
    require(!tangles.empty(), "MalformedSpec", "montesinos needs at least one tangle");
    for (auto& t : tangles) {
        require(!t.empty(), "MalformedSpec", "empty tangle");
        for (int c : t) require(c >= 1, "MalformedSpec", "tangle entries must be positive");
    }
    std::vector<int> b(k, 1);
    for (auto& t : tangles) b.push_back(t.back() + 1);
    LinkConfiguration cfg = pretzel(b);
    int m = static_cast<int>(tangles.size());

    // Top crossing of each tangle box, in the pretzel labeling. Boxes k+1..
    // k+m-1 are curls whose minimal loop crossing is the top; the last box is
    // the trailing trivial block ending at q^infinity.
    int n = cfg.num_crossings();
    std::vector<int> top(m, -1);
    {
        int label = 1; // crossing index of q^0 is 0; walk forward through boxes
        // Boxes are laid out in label order: q^0, first-box points...,
        // then per middle box (loops then interaction), then trailing block,
        // then q^infinity. Recompute tops directly from the spec structure.
        int idx = 1 + (b[0] - 1); // first index after q^0 and the first box extras
        (void)label;
        for (size_t i = 1; i + 1 < b.size(); ++i) {
            if (static_cast<int>(i) >= k) top[i - k] = idx;
            idx += b[i] == 1 ? 1 : b[i]; // loops (b_i - 1) + interaction
        }
        // Trailing block: b.back()-1 interactions then q^infinity.
        top[m - 1] = idx;
        require(idx + (b.back() - 1) == n - 1, "MalformedSpec", "montesinos box layout broken");
    }

    for (int i = m - 1; i >= 0; --i) {
        const auto& t = tangles[i];
        int levels = static_cast<int>(t.size());
        if (levels == 1) continue;
        int cur = top[i];
        bool type_b = true;
        for (int j = levels - 2; j >= 0; --j) {
            int twists = t[j];
            for (int w = 0; w < twists; ++w) {
                BigonType bt = type_b ? BigonType::B : BigonType::A;
                auto adm = is_admissible_extension(cfg, cur, bt);
                require(adm.admissible, "ExtensionRejected",
                        "montesinos schedule rejected; this is a bug");
                cfg = bigon_extend(cfg, cur, bt);
            }
            type_b = !type_b;
        }
    }
    cfg.attach = std::nullopt; // built beyond the tagged attach grammar
    return cfg;
}

// ---------------------------------------------------------------------------
// Region census feeding the specialization prefactor.
// ---------------------------------------------------------------------------

struct RegionCensus {
    int u1 = 0, l1 = 0, u2 = 0, l2 = 0, u3 = 0, l3 = 0;
    int p_minus = 0;

    int total() const { return u1 + l1 + u2 + l2 + u3 + l3; }
};

inline RegionCensus region_census(const LinkConfiguration& cfg) {
    require(cfg.attach.has_value(), "NoProvenance", "census needs an attach-assembled configuration");
    RegionCensus c;
    for (RegionClass rc : cfg.attach->region_class) {
        switch (rc) {
            case RegionClass::U1: ++c.u1; break;
            case RegionClass::L1: ++c.l1; break;
            case RegionClass::U2: ++c.u2; break;
            case RegionClass::L2: ++c.l2; break;
            case RegionClass::U3: ++c.u3; break;
            case RegionClass::L3: ++c.l3; break;
            default: break;
        }
    }
    c.p_minus = cfg.attach->negative_trivial_points;
    require(c.total() + 2 == cfg.universe.num_faces(), "TagLost", "census does not add up");
    return c;
}

// ---------------------------------------------------------------------------
// Reduction sequences. The canonical sequence greedily reduces the
// consecutive-label bigon with the largest label pair; the reduced
// transposable segments are recorded in slot order at the lower crossing.
// This ordering reproduces the y-variable numbering used for the worked
// examples. An alternative smallest-label variant provides a second sequence.
// ---------------------------------------------------------------------------

struct ReductionSequence {
    // order[0] = s_q of the final Hopf configuration, then the reduced
    // transposable segments, first reduction rightmost. Original segment ids.
    std::vector<int> order;
    // Reductions in the order performed; each lists its transposable reduced
    // segments (original ids, slot order at the lower crossing).
    std::vector<std::vector<int>> steps;
};

inline ReductionSequence compute_reduction_sequence(const LinkConfiguration& cfg0,
                                                    bool largest_first = true) {
    LinkConfiguration cfg = cfg0;
    cfg.attach = std::nullopt;
    std::vector<int> orig(cfg.universe.num_segments());
    for (size_t i = 0; i < orig.size(); ++i) orig[i] = static_cast<int>(i);

    ReductionSequence rd;
    while (cfg.num_crossings() > 2) {
        const LinkUniverse& u = cfg.universe;
        int best_face = -1;
        std::pair<int, int> best_key{-1, -1};
        for (int f = 0; f < u.num_faces(); ++f) {
            const auto& walk = u.faces()[f];
            if (walk.size() != 2) continue;
            int c1 = dart_crossing(walk[0]), c2 = dart_crossing(walk[1]);
            if (c1 > c2) std::swap(c1, c2);
            if (c2 != c1 + 1) continue;
            int a = u.segment_at(dart_crossing(walk[0]), dart_slot(walk[0]));
            int b = u.segment_at(dart_crossing(walk[0]), dart_slot(walk[0]) + 1);
            if (a == cfg.s || b == cfg.s) continue;
            std::pair<int, int> key{c2, c1};
            if (best_face == -1 ||
                (largest_first ? key > best_key : key < best_key))
                best_face = f, best_key = key;
        }
        require(best_face != -1, "InvalidSequence", "no reducible bigon before Hopf");

        auto out = bigon_reduce(cfg, best_face);
        std::vector<int> reduced;
        for (int seg : out.reduced_segments)
            if (is_transposable(cfg, seg)) reduced.push_back(orig[seg]);
        rd.steps.push_back(reduced);

        std::vector<int> norig(out.segment_map.size());
        for (size_t i = 0; i < out.segment_map.size(); ++i)
            norig[i] = orig[out.segment_map[i]];
        orig = std::move(norig);
        cfg = std::move(out.cfg);
    }

    auto trans = transposable_segments(cfg);
    require(trans.size() == 1, "InvalidSequence", "final Hopf must have one transposable segment");
    rd.order.push_back(orig[trans[0]]);
    for (auto it = rd.steps.rbegin(); it != rd.steps.rend(); ++it)
        for (int seg : *it) rd.order.push_back(seg);
    return rd;
}

// The canonical y-variable order: y_{j+1} is the segment at rd.order[j].
inline std::vector<int> canonical_y_order(const LinkConfiguration& cfg) {
    auto rd = compute_reduction_sequence(cfg);
    auto trans = transposable_segments(cfg);
    require(rd.order.size() == trans.size(), "InvalidSequence",
            "reduction sequence must visit every transposable segment once");
    auto sorted = rd.order;
    std::sort(sorted.begin(), sorted.end());
    require(sorted == trans, "InvalidSequence",
            "reduction sequence segments differ from the transposable set");
    return rd.order;
}

} // namespace bracketforge
