#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bracketforge/error.hpp"

namespace bracketforge {

// A dart is one end of a segment: 4*crossing + slot, with the four slots of a
// crossing listed counterclockwise. Corner k of a crossing is the face wedged
// between slots k and k+1; it is the face of dart (c,k) under face-on-left
// tracing.
using Dart = int;

inline Dart make_dart(int crossing, int slot) { return 4 * crossing + slot; }
inline int dart_crossing(Dart d) { return d >> 2; }
inline int dart_slot(Dart d) { return d & 3; }

// Crossing sign conventions. The A-regions of a
// crossing are the two corners swept when the over-strand is rotated
// counterclockwise. Under SweepWhiteNegative a crossing is negative when the
// A-regions are white; SweepBlackNegative is the mirrored reading.
enum class Convention { SweepWhiteNegative, SweepBlackNegative };

inline Convention default_convention() { return Convention::SweepWhiteNegative; }

inline Convention convention_from_string(const std::string& s) {
    if (s == "default" || s == "white") return Convention::SweepWhiteNegative;
    if (s == "mirror" || s == "black") return Convention::SweepBlackNegative;
    fail("UnknownConvention", s);
}

// Connected 4-valent plane multigraph given as a rotation system, with a
// designated unbounded face. Crossing index i carries label i+1 throughout.
class LinkUniverse {
public:
    LinkUniverse() = default;

    // crossings[c] lists the four incident segment ids counterclockwise.
    // anchor is a dart lying on the unbounded face.
    LinkUniverse(std::vector<std::array<int, 4>> crossings, Dart anchor)
        : cr_(std::move(crossings)), anchor_(anchor) {
        rebuild();
    }

    int num_crossings() const { return static_cast<int>(cr_.size()); }
    int num_segments() const { return nseg_; }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    const std::vector<std::array<int, 4>>& crossings() const { return cr_; }
    Dart anchor() const { return anchor_; }

    int segment_at(int crossing, int slot) const { return cr_[crossing][(slot & 3)]; }

    // The two end darts of a segment, ascending.
    const std::array<Dart, 2>& segment_ends(int seg) const { return seg_ends_[seg]; }

    Dart other_end(Dart d) const {
        const auto& e = seg_ends_[cr_[dart_crossing(d)][dart_slot(d)]];
        return e[0] == d ? e[1] : e[0];
    }

    // Face-on-left successor.
    Dart face_next(Dart d) const {
        Dart o = other_end(d);
        return make_dart(dart_crossing(o), (dart_slot(o) + 3) & 3);
    }

    int face_of(Dart d) const { return face_of_[d]; }
    int corner_face(int crossing, int k) const { return face_of_[make_dart(crossing, k & 3)]; }
    const std::vector<std::vector<Dart>>& faces() const { return faces_; }
    int unbounded_face() const { return unbounded_face_; }

    bool is_black(int face) const { return black_[face]; }
    // Black regions = +, white = -.
    int region_sign(int face) const { return black_[face] ? +1 : -1; }

    std::vector<int> black_faces() const {
        std::vector<int> out;
        for (int f = 0; f < num_faces(); ++f)
            if (black_[f]) out.push_back(f);
        return out;
    }
    std::vector<int> white_faces() const {
        std::vector<int> out;
        for (int f = 0; f < num_faces(); ++f)
            if (!black_[f]) out.push_back(f);
        return out;
    }

    // The two slots of a crossing whose corner face is black: either {0,2} or
    // {1,3}; returns the smaller one.
    int black_corner_parity(int crossing) const {
        bool c0 = black_[corner_face(crossing, 0)];
        bool c2 = black_[corner_face(crossing, 2)];
        require(c0 == c2, "ColoringBroken", "opposite corners disagree");
        return c0 ? 0 : 1;
    }

    // Faces adjacent to a segment: (face on the ends[0] side, ends[1] side).
    std::array<int, 2> segment_faces(int seg) const {
        return {face_of_[seg_ends_[seg][0]], face_of_[seg_ends_[seg][1]]};
    }

    // Crossings reachable from `from`, with up to two segments removed.
    std::vector<bool> reach(int from, int skip1 = -1, int skip2 = -1) const {
        std::vector<bool> seen(num_crossings(), false);
        std::vector<int> stack{from};
        seen[from] = true;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int k = 0; k < 4; ++k) {
                int s = cr_[c][k];
                if (s == skip1 || s == skip2) continue;
                int n = dart_crossing(other_end(make_dart(c, k)));
                if (!seen[n]) {
                    seen[n] = true;
                    stack.push_back(n);
                }
            }
        }
        return seen;
    }

    // No simple closed curve meets the universe in exactly two points with
    // crossings on both sides: search all 2-edge cuts.
    bool is_prime_like() const {
        int n = num_crossings();
        if (n <= 2) return true;
        for (int a = 0; a < nseg_; ++a)
            for (int b = a + 1; b < nseg_; ++b) {
                auto seen = reach(0, a, b);
                bool all = std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
                if (!all) return false;
            }
        return true;
    }

    // Strands pass straight through: slot k continues at slot k+2.
    // Returns per-component dart cycles (darts traversed tail-first), each
    // starting at its minimal dart.
    std::vector<std::vector<Dart>> components() const {
        std::vector<std::vector<Dart>> comps;
        std::vector<bool> used(4 * num_crossings(), false);
        for (Dart d0 = 0; d0 < 4 * num_crossings(); ++d0) {
            if (used[d0]) continue;
            std::vector<Dart> cyc;
            Dart d = d0;
            do {
                used[d] = true;
                cyc.push_back(d);
                Dart o = other_end(d);
                used[o] = true;
                d = make_dart(dart_crossing(o), (dart_slot(o) + 2) & 3);
            } while (d != d0);
            comps.push_back(std::move(cyc));
        }
        return comps;
    }

    bool operator==(const LinkUniverse& o) const {
        return cr_ == o.cr_ && anchor_ == o.anchor_;
    }

private:
    void rebuild() {
        int n = num_crossings();
        require(n >= 1, "Empty", "universe needs at least one crossing");

        // Segment endpoints; every id must occur exactly twice.
        std::map<int, std::vector<Dart>> ends;
        int maxseg = -1;
        for (int c = 0; c < n; ++c)
            for (int k = 0; k < 4; ++k) {
                ends[cr_[c][k]].push_back(make_dart(c, k));
                maxseg = std::max(maxseg, cr_[c][k]);
            }
        nseg_ = maxseg + 1;
        require(static_cast<int>(ends.size()) == nseg_ && nseg_ == 2 * n, "NotFourValent",
                "expected exactly 2n segment ids, each used twice");
        seg_ends_.assign(nseg_, {0, 0});
        for (auto& [s, ds] : ends) {
            require(ds.size() == 2, "NotFourValent",
                    "segment " + std::to_string(s) + " must have two ends");
            seg_ends_[s] = {ds[0], ds[1]};
        }

        {
            auto seen = reach(0);
            require(std::all_of(seen.begin(), seen.end(), [](bool x) { return x; }),
                    "Disconnected", "universe is not connected");
        }

        // Face tracing.
        face_of_.assign(4 * n, -1);
        faces_.clear();
        for (Dart d0 = 0; d0 < 4 * n; ++d0) {
            if (face_of_[d0] != -1) continue;
            std::vector<Dart> walk;
            Dart d = d0;
            do {
                face_of_[d] = static_cast<int>(faces_.size());
                walk.push_back(d);
                d = face_next(d);
            } while (d != d0);
            faces_.push_back(std::move(walk));
        }
        require(num_faces() == n + 2, "EulerViolation",
                "rotation system is not planar: " + std::to_string(num_faces()) +
                    " faces, expected " + std::to_string(n + 2));
        for (auto& f : faces_)
            require(f.size() >= 2, "CurlOrNugatoryPresent", "one-sided region (curl)");

        // Nugatory crossing = cut vertex of the 4-valent graph.
        if (n >= 2) {
            for (int c = 0; c < n; ++c) {
                // Remove c by cutting its four segments; the rest must stay connected.
                std::vector<bool> seen(n, false);
                int start = c == 0 ? 1 : 0;
                std::vector<int> stack{start};
                seen[start] = true;
                int cnt = 1;
                while (!stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    for (int k = 0; k < 4; ++k) {
                        Dart o = other_end(make_dart(v, k));
                        int w = dart_crossing(o);
                        if (w == c || seen[w]) continue;
                        seen[w] = true;
                        ++cnt;
                        stack.push_back(w);
                    }
                }
                require(cnt == n - 1, "CurlOrNugatoryPresent",
                        "crossing " + std::to_string(c + 1) + " is nugatory");
            }
        }
        // A region meeting a crossing at two corners also makes it nugatory.
        for (int c = 0; c < n; ++c) {
            std::set<int> fs;
            for (int k = 0; k < 4; ++k) fs.insert(corner_face(c, k));
            require(fs.size() == 4, "CurlOrNugatoryPresent",
                    "region meets crossing " + std::to_string(c + 1) + " twice");
        }

        unbounded_face_ = face_of_[anchor_];

        // Checkerboard coloring by BFS from the white unbounded face.
        black_.assign(num_faces(), false);
        std::vector<int> color(num_faces(), -1);
        color[unbounded_face_] = 0;
        std::vector<int> queue{unbounded_face_};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int f = queue[qi];
            for (Dart d : faces_[f]) {
                int g = face_of_[other_end(d)];
                if (color[g] == -1) {
                    color[g] = 1 - color[f];
                    queue.push_back(g);
                } else {
                    require(color[g] == 1 - color[f], "ColoringBroken",
                            "no proper checkerboard coloring");
                }
            }
        }
        for (int f = 0; f < num_faces(); ++f) {
            require(color[f] != -1, "ColoringBroken", "face not colored");
            black_[f] = color[f] == 1;
        }
    }

    std::vector<std::array<int, 4>> cr_;
    Dart anchor_ = 0;
    int nseg_ = 0;
    std::vector<std::array<Dart, 2>> seg_ends_;
    std::vector<int> face_of_;
    std::vector<std::vector<Dart>> faces_;
    std::vector<bool> black_;
    int unbounded_face_ = 0;
};

// Rotate every crossing's slot list to start at its minimal segment id; the
// result is a normal form for comparing universes that differ only by slot
// phase (as a reduction-then-extension round trip does).
inline LinkUniverse canonical_rotation(const LinkUniverse& u) {
    auto cr = u.crossings();
    int ac = dart_crossing(u.anchor()), as = dart_slot(u.anchor());
    for (size_t c = 0; c < cr.size(); ++c) {
        int best = 0;
        for (int k = 1; k < 4; ++k)
            if (cr[c][k] < cr[c][best]) best = k;
        std::array<int, 4> rot;
        for (int k = 0; k < 4; ++k) rot[k] = cr[c][(best + k) & 3];
        cr[c] = rot;
        if (static_cast<int>(c) == ac) as = (as - best) & 3;
    }
    return LinkUniverse(std::move(cr), make_dart(ac, as));
}

inline bool same_universe(const LinkUniverse& a, const LinkUniverse& b) {
    if (a.num_crossings() != b.num_crossings()) return false;
    LinkUniverse ca = canonical_rotation(a), cb = canonical_rotation(b);
    return ca.crossings() == cb.crossings() && ca.unbounded_face() == cb.unbounded_face();
}

// The canonical Hopf link universe: crossings q0 (label 1) and qoo (label 2),
// segments s=0 (outer, distinguished), gamma_plus=1, gamma_0=2, gamma_minus=3.
// The black region R^B_s lies below the string, the unbounded region above.
inline LinkUniverse hopf_universe() {
    std::vector<std::array<int, 4>> cr = {
        {2, 1, 0, 3}, // q0:  E=gamma_0, N=gamma_plus, W=s, S=gamma_minus
        {0, 1, 2, 3}, // qoo: E=s, N=gamma_plus, W=gamma_0, S=gamma_minus
    };
    return LinkUniverse(std::move(cr), make_dart(1, 0));
}

// Over/under decorations on a universe. over_[c] in {0,1}: the strand through
// slots (over_, over_+2) passes over.
class LinkDiagram {
public:
    LinkDiagram(LinkUniverse u, std::vector<int> over,
                Convention conv = default_convention())
        : u_(std::move(u)), over_(std::move(over)), conv_(conv) {
        require(static_cast<int>(over_.size()) == u_.num_crossings(), "BadDiagram",
                "need one over/under choice per crossing");
        for (int o : over_) require(o == 0 || o == 1, "BadDiagram", "over slot must be 0 or 1");
    }

    const LinkUniverse& universe() const { return u_; }
    int over_slot(int c) const { return over_[c]; }
    Convention convention() const { return conv_; }

    // Corners (o, o+2) are swept when the over-strand rotates counterclockwise.
    bool a_regions_black(int c) const {
        return u_.is_black(u_.corner_face(c, over_[c]));
    }

    int sign(int c) const {
        bool black = a_regions_black(c);
        bool negative = conv_ == Convention::SweepWhiteNegative ? !black : black;
        return negative ? -1 : +1;
    }

    bool all_negative() const {
        for (int c = 0; c < u_.num_crossings(); ++c)
            if (sign(c) != -1) return false;
        return true;
    }

    // Alternating diagrams assign over/under from the coloring; all crossings
    // get the same sign. Flipping every crossing gives the other one.
    static LinkDiagram alternating_all_negative(const LinkUniverse& u,
                                                Convention conv = default_convention()) {
        std::vector<int> over(u.num_crossings());
        for (int c = 0; c < u.num_crossings(); ++c) {
            bool corner0_black = u.is_black(u.corner_face(c, 0));
            bool want_a_black = conv == Convention::SweepBlackNegative;
            over[c] = (corner0_black == want_a_black) ? 0 : 1;
        }
        LinkDiagram d(u, std::move(over), conv);
        require(d.all_negative(), "BadDiagram", "all-negative construction failed");
        return d;
    }

    LinkDiagram mirrored() const {
        std::vector<int> over(over_);
        for (int& o : over) o = 1 - o;
        return LinkDiagram(u_, std::move(over), conv_);
    }

private:
    LinkUniverse u_;
    std::vector<int> over_;
    Convention conv_;
};

// Region classes for the census behind the specialization prefactor.
enum class RegionClass {
    SAdjacentWhite, // R^W_s
    SAdjacentBlack, // R^B_s
    U1, L1,         // enclosed by the base shell, outside curls and shells
    U2, L2,         // enclosed by a curl string
    U3, L3,         // enclosed by a shell string
};

struct AttachProvenance {
    std::vector<RegionClass> region_class; // by face id
    std::vector<int> active_labels;        // expected active crossings (1-based)
    int negative_trivial_points = 0;       // |p_-|
};

// A universe with a distinguished segment. Labels are implicit: crossing
// index i carries label i+1.
struct LinkConfiguration {
    LinkUniverse universe;
    int s = 0; // distinguished segment id
    std::optional<AttachProvenance> attach;

    int num_crossings() const { return universe.num_crossings(); }

    // Faces adjacent to s (deleted in the balanced overlaid graph).
    std::array<int, 2> omitted_faces() const { return universe.segment_faces(s); }

    bool is_omitted(int face) const {
        auto of = omitted_faces();
        return face == of[0] || face == of[1];
    }
};

// Reorder crossings: the crossing at old index c moves to new_index[c].
inline LinkConfiguration relabel(const LinkConfiguration& cfg,
                                 const std::vector<int>& new_index) {
    const LinkUniverse& u = cfg.universe;
    int n = u.num_crossings();
    require(static_cast<int>(new_index.size()) == n, "BadSpec", "relabel size mismatch");
    std::vector<std::array<int, 4>> cr(n);
    std::vector<bool> seen(n, false);
    for (int c = 0; c < n; ++c) {
        int t = new_index[c];
        require(t >= 0 && t < n && !seen[t], "BadSpec", "relabel must be a bijection");
        seen[t] = true;
        cr[t] = u.crossings()[c];
    }
    Dart a = u.anchor();
    Dart anchor = make_dart(new_index[dart_crossing(a)], dart_slot(a));
    return LinkConfiguration{LinkUniverse(std::move(cr), anchor), cfg.s, std::nullopt};
}

} // namespace bracketforge
