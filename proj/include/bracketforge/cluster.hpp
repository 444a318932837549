#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bracketforge/construct.hpp"
#include "bracketforge/error.hpp"
#include "bracketforge/graphs.hpp"
#include "bracketforge/laurent.hpp"
#include "bracketforge/link.hpp"
#include "bracketforge/multipoly.hpp"
#include "bracketforge/states.hpp"
#include "bracketforge/tropical.hpp"

namespace bracketforge {

// ---------------------------------------------------------------------------
// Quiver on the transposable segments: one arrow per half-edge separating two
// movable faces, directed from the corner's first flanking segment to its
// counterclockwise successor; 2-cycles cancel in the skew-symmetric matrix.
// ---------------------------------------------------------------------------

struct Quiver {
    std::vector<int> segments;          // vertex j <-> segment id
    std::vector<std::vector<int>> b;    // skew-symmetric

    int size() const { return static_cast<int>(segments.size()); }
    int vertex_of(int seg) const {
        for (int j = 0; j < size(); ++j)
            if (segments[j] == seg) return j;
        fail("UnknownSegment", "segment is not a quiver vertex");
    }
};

inline Quiver build_quiver(const LinkConfiguration& cfg, const std::vector<int>& yorder) {
    Quiver q;
    q.segments = yorder;
    int n = q.size();
    q.b.assign(n, std::vector<int>(n, 0));
    std::map<int, int> vertex;
    for (int j = 0; j < n; ++j) vertex[yorder[j]] = j;
    const LinkUniverse& u = cfg.universe;
    for (int c = 0; c < u.num_crossings(); ++c)
        for (int k = 0; k < 4; ++k) {
            if (cfg.is_omitted(u.corner_face(c, k))) continue;
            auto a = vertex.find(u.segment_at(c, k));
            auto b = vertex.find(u.segment_at(c, k + 1));
            if (a == vertex.end() || b == vertex.end()) continue;
            q.b[a->second][b->second] += 1;
            q.b[b->second][a->second] -= 1;
        }
    return q;
}

inline std::vector<std::vector<int>> mutate_b(const std::vector<std::vector<int>>& b, int k) {
    int n = static_cast<int>(b.size());
    std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
    auto absv = [](int x) { return x < 0 ? -x : x; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k)
                r[i][j] = -b[i][j];
            else
                r[i][j] = b[i][j] + (absv(b[i][k]) * b[k][j] + b[i][k] * absv(b[k][j])) / 2;
        }
    return r;
}

// ---------------------------------------------------------------------------
// Cluster variables with principal coefficients: exact Laurent expansions in
// the initial cluster with y-polynomial coefficients.
// ---------------------------------------------------------------------------

class ClusterVar {
public:
    using XExp = std::vector<int>;

    explicit ClusterVar(int n = 0) : n_(n) {}

    static ClusterVar initial(int n, int j) {
        ClusterVar v(n);
        XExp e(n, 0);
        e[j] = 1;
        v.terms_[e] = MultiPoly::one(n);
        return v;
    }
    static ClusterVar one(int n) {
        ClusterVar v(n);
        v.terms_[XExp(n, 0)] = MultiPoly::one(n);
        return v;
    }
    // A monomial y^t * x^e.
    static ClusterVar monomial(const Tropical& t, XExp e) {
        ClusterVar v(static_cast<int>(e.size()));
        v.terms_[std::move(e)] = MultiPoly::monomial(t.exponents());
        return v;
    }

    int nvars() const { return n_; }
    const std::map<XExp, MultiPoly>& terms() const { return terms_; }

    ClusterVar& operator+=(const ClusterVar& o) {
        for (auto& [e, p] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_[e] = p;
            } else {
                it->second += p;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }

    friend ClusterVar operator*(const ClusterVar& a, const ClusterVar& b) {
        ClusterVar r(a.n_);
        for (auto& [ea, pa] : a.terms_)
            for (auto& [eb, pb] : b.terms_) {
                XExp e(a.n_);
                for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
                MultiPoly prod = pa * pb;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    if (!prod.is_zero()) r.terms_[e] = std::move(prod);
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }

    // Divide by the monomial y^t * x_k (k = -1 skips the x part).
    ClusterVar divided_by(const Tropical& t, int k) const {
        ClusterVar r(n_);
        const auto& te = t.exponents();
        for (auto& [e, p] : terms_) {
            XExp ne = e;
            if (k >= 0) ne[k] -= 1;
            MultiPoly np(n_);
            for (auto& [ye, c] : p.terms()) {
                MultiPoly::Expo nye(n_);
                for (int i = 0; i < n_; ++i) nye[i] = ye[i] - te[i];
                np += MultiPoly::monomial(nye, c);
            }
            r.terms_[ne] = np;
        }
        return r;
    }

    // Exact division by another expansion. Reduction against a fixed divisor
    // under a term order terminates exactly when the quotient exists, which
    // the Laurent phenomenon guarantees for exchange relations.
    ClusterVar divided_exact(const ClusterVar& den) const {
        using Key = std::pair<XExp, MultiPoly::Expo>;
        auto flatten = [](const ClusterVar& v) {
            std::map<Key, MultiPoly::Coeff> out;
            for (auto& [e, p] : v.terms_)
                for (auto& [ye, c] : p.terms()) out[{e, ye}] = c;
            return out;
        };
        auto num = flatten(*this);
        auto d = flatten(den);
        require(!d.empty(), "DivisionByZero", "empty divisor");
        const Key& dl = d.rbegin()->first;
        MultiPoly::Coeff dc = d.rbegin()->second;
        ClusterVar q(n_);
        int guard = 0;
        while (!num.empty()) {
            require(++guard < 1000000, "InexactDivision", "division does not terminate");
            auto ln = num.rbegin();
            require(ln->second % dc == 0, "InexactDivision", "leading coefficient");
            MultiPoly::Coeff c = ln->second / dc;
            Key shift;
            shift.first.resize(n_);
            shift.second.resize(n_);
            for (int i = 0; i < n_; ++i) {
                shift.first[i] = ln->first.first[i] - dl.first[i];
                shift.second[i] = ln->first.second[i] - dl.second[i];
            }
            {
                auto it = q.terms_.find(shift.first);
                MultiPoly add = MultiPoly::monomial(shift.second, c);
                if (it == q.terms_.end())
                    q.terms_[shift.first] = add;
                else {
                    it->second += add;
                    if (it->second.is_zero()) q.terms_.erase(it);
                }
            }
            for (auto& [k, v] : d) {
                Key key;
                key.first.resize(n_);
                key.second.resize(n_);
                for (int i = 0; i < n_; ++i) {
                    key.first[i] = k.first[i] + shift.first[i];
                    key.second[i] = k.second[i] + shift.second[i];
                }
                auto it = num.find(key);
                MultiPoly::Coeff nv = (it == num.end() ? 0 : it->second) - c * v;
                if (nv == 0) {
                    if (it != num.end()) num.erase(it);
                } else if (it == num.end()) {
                    num[key] = nv;
                } else {
                    it->second = nv;
                }
            }
        }
        return q;
    }

    bool operator==(const ClusterVar& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const ClusterVar& o) const { return !(*this == o); }

    bool is_initial(int j) const { return *this == initial(n_, j); }

    // F-polynomial: set every initial cluster variable to 1.
    MultiPoly f_polynomial() const {
        MultiPoly f(n_);
        for (auto& [e, p] : terms_) f += p;
        return f;
    }

    // Exponent of the x-monomial carrying the constant term of F.
    std::vector<int> g_vector() const {
        std::optional<XExp> g;
        for (auto& [e, p] : terms_)
            if (p.constant_term() != 0) {
                require(!g.has_value(), "IdentityViolation", "g-monomial is not unique");
                require(p.constant_term() == 1, "IdentityViolation", "g-coefficient is not 1");
                g = e;
            }
        require(g.has_value(), "IdentityViolation", "no constant term in F");
        return *g;
    }

    // Denominator vector; initial variables return the zero tuple.
    std::vector<int> denominator_vector() const {
        std::vector<int> d(n_, 0);
        for (int j = 0; j < n_; ++j)
            if (is_initial(j)) return d;
        for (int j = 0; j < n_; ++j) {
            int mn = 0;
            bool first = true;
            for (auto& [e, p] : terms_) {
                if (first || e[j] < mn) mn = e[j];
                first = false;
            }
            d[j] = std::max(0, -mn);
        }
        return d;
    }

    // Laurent phenomenon sanity: f = x^d * this must have no negative
    // exponents and not be divisible by any x_j.
    bool laurent_denominator_ok() const {
        std::vector<int> mn(n_, 0), mx(n_, 0);
        bool first = true;
        for (auto& [e, p] : terms_) {
            for (int j = 0; j < n_; ++j) {
                if (first || e[j] < mn[j]) mn[j] = e[j];
                if (first || e[j] > mx[j]) mx[j] = e[j];
            }
            first = false;
        }
        return !first;
    }

private:
    int n_;
    std::map<XExp, MultiPoly> terms_;
};

struct Seed {
    std::vector<std::vector<int>> b;
    std::vector<Tropical> y;
    std::vector<ClusterVar> x;

    int size() const { return static_cast<int>(y.size()); }
};

inline Seed initial_seed(const Quiver& q) {
    Seed s;
    s.b = q.b;
    int n = q.size();
    for (int j = 0; j < n; ++j) {
        s.y.push_back(Tropical::generator(n, j));
        s.x.push_back(ClusterVar::initial(n, j));
    }
    return s;
}

inline Seed mutate(const Seed& s, int k) {
    int n = s.size();
    Seed r;
    r.b = mutate_b(s.b, k);

    r.y.reserve(n);
    for (int j = 0; j < n; ++j) {
        if (j == k) {
            r.y.push_back(s.y[k].inverse());
        } else {
            Tropical yj = s.y[j];
            int kj = std::max(s.b[k][j], 0); // arrows k -> j
            int jk = std::max(s.b[j][k], 0); // arrows j -> k
            if (kj) yj = yj * (s.y[k] * s.y[k].one_plus().inverse()).pow(kj);
            if (jk) yj = yj * s.y[k].one_plus().pow(jk);
            r.y.push_back(yj);
        }
    }

    r.x = s.x;
    ClusterVar in = ClusterVar::one(n), out = ClusterVar::one(n);
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < std::max(s.b[i][k], 0); ++t) in = in * s.x[i];   // arrows i -> k
        for (int t = 0; t < std::max(s.b[k][i], 0); ++t) out = out * s.x[i]; // arrows k -> i
    }
    ClusterVar num = ClusterVar::monomial(s.y[k], std::vector<int>(n, 0)) * in;
    num += out;
    r.x[k] = num.divided_by(s.y[k].one_plus(), -1).divided_exact(s.x[k]);
    return r;
}

// h-vector: tropical evaluation of F under y_j -> x_j^{-1} prod_{j->k} x_k,
// arrows taken in the initial quiver.
inline std::vector<int> h_vector(const MultiPoly& f, const std::vector<std::vector<int>>& b0) {
    int n = f.nvars();
    std::vector<std::vector<int>> sub(n, std::vector<int>(n, 0));
    for (int j = 0; j < n; ++j) {
        sub[j][j] = -1;
        for (int k = 0; k < n; ++k) sub[j][k] += std::max(b0[j][k], 0);
    }
    std::vector<int> h(n, 0);
    bool first = true;
    for (auto& [e, c] : f.terms()) {
        std::vector<int> v(n, 0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) v[k] += e[j] * sub[j][k];
        if (first) {
            h = v;
            first = false;
        } else {
            for (int k = 0; k < n; ++k) h[k] = std::min(h[k], v[k]);
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Reduction sequences to mutation sequences; the distinguished variable.
// ---------------------------------------------------------------------------

// Vertices to mutate, in application order (rightmost entry of rd first).
inline std::vector<int> reduction_to_mutation_sequence(const ReductionSequence& rd,
                                                       const Quiver& q) {
    require(!rd.order.empty(), "InvalidSequence", "empty reduction sequence");
    std::vector<int> word;
    for (auto it = rd.order.rbegin(); it != rd.order.rend(); ++it)
        word.push_back(q.vertex_of(*it));
    return word;
}

struct DistinguishedVariable {
    Quiver quiver;
    ClusterVar x;
    MultiPoly F;
    std::vector<int> g, h, d;
};

// Run the mutation sequence of rd from the principal-coefficient seed on
// Q_{L,s} and read the variable at the vertex of s_q. The structural identities
// (g_j = 1 - k(s_j), F = M_{L,s}, d_j = 1) are asserted.
inline DistinguishedVariable distinguished_cluster_variable(const LinkConfiguration& cfg,
                                                            const ReductionSequence& rd,
                                                            bool check_identities = true) {
    std::vector<int> yorder = rd.order;
    Quiver q = build_quiver(cfg, yorder);
    Seed seed = initial_seed(q);
    for (int v : reduction_to_mutation_sequence(rd, q)) {
        seed = mutate(seed, v);
        for (auto& xv : seed.x)
            require(xv.laurent_denominator_ok(), "IdentityViolation", "Laurent phenomenon broken");
    }
    DistinguishedVariable out;
    out.quiver = q;
    out.x = seed.x[q.vertex_of(rd.order[0])];
    out.F = out.x.f_polynomial();
    out.g = out.x.g_vector();
    out.h = h_vector(out.F, q.b);
    out.d = out.x.denominator_vector();

    if (check_identities) {
        require(out.F.constant_term() == 1, "IdentityViolation", "F must have constant term 1");
        StateLattice lat(cfg, yorder);
        require(out.F == lat.states_lattice_polynomial(), "IdentityViolation",
                "F-polynomial differs from the states lattice polynomial");
        for (int j = 0; j < q.size(); ++j) {
            require(out.d[j] == 1, "IdentityViolation", "denominator vector entry is not 1");
            int kj = markers_adjacent_to_segment(cfg, lat, yorder[j]);
            require(out.g[j] == 1 - kj, "IdentityViolation", "g-vector identity fails");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The bracket polynomial specialization.
// ---------------------------------------------------------------------------

// Per-segment values in {A^8, -A^4, -A^-4, A^-8}, determined by orienting the
// segment with the black region on its left and comparing labels.
inline std::vector<LaurentPoly> bracket_specialization_values(const LinkConfiguration& cfg,
                                                              const LinkDiagram& d,
                                                              const std::vector<int>& yorder) {
    require(d.all_negative(), "PreconditionViolated",
            "bracket specialization needs an all-negative alternating diagram");
    auto actives = active_crossings(cfg);
    auto is_active = [&](int c) {
        return std::find(actives.begin(), actives.end(), c) != actives.end();
    };
    const LinkUniverse& u = cfg.universe;
    std::vector<LaurentPoly> values;
    for (int seg : yorder) {
        auto ends = u.segment_ends(seg);
        Dart tail = u.is_black(u.face_of(ends[0])) ? ends[0] : ends[1];
        Dart head = tail == ends[0] ? ends[1] : ends[0];
        int from = dart_crossing(tail), to = dart_crossing(head);
        LaurentPoly v;
        if (from < to)
            v = from == 0 ? LaurentPoly::monomial(1, 8) : LaurentPoly::monomial(-1, 4);
        else
            v = is_active(to) ? LaurentPoly::monomial(1, -8) : LaurentPoly::monomial(-1, -4);
        values.push_back(v);
    }
    return values;
}

// The specialization identity in its direct form: bracket = weight(S_min) * F|_K.
inline LaurentPoly bracket_fpoly(const LinkConfiguration& cfg, const LinkDiagram& d,
                                     const ReductionSequence& rd) {
    auto var = distinguished_cluster_variable(cfg, rd);
    StateLattice lat(cfg, rd.order);
    LaurentPoly omega_min = lat.weight(d, lat.min_state());
    auto values = bracket_specialization_values(cfg, d, rd.order);
    return omega_min * var.F.specialize(values);
}

// The same identity with the region-census prefactor in place of weight(S_min);
// requires attach-grammar provenance.
inline LaurentPoly census_prefactor(const RegionCensus& c) {
    LaurentPoly p = LaurentPoly::monomial(1, c.u3 + c.l1 - c.p_minus - 1);
    p *= LaurentPoly::monomial(1, -c.u1);
    p *= LaurentPoly::monomial(-1, 3).pow(c.l2 + c.l3);
    p *= LaurentPoly::monomial(-1, -3).pow(c.p_minus + 1 + c.u2);
    return p;
}

inline LaurentPoly bracket_via_fpoly(const LinkConfiguration& cfg, const LinkDiagram& d,
                                     const ReductionSequence& rd) {
    RegionCensus c = region_census(cfg);
    auto var = distinguished_cluster_variable(cfg, rd);
    auto values = bracket_specialization_values(cfg, d, rd.order);
    return census_prefactor(c) * var.F.specialize(values);
}

// ---------------------------------------------------------------------------
// Quiver-after-reduction consistency (mutate at the reduced vertices, delete
// them, compare with the reduced universe's quiver).
// ---------------------------------------------------------------------------

inline bool quiver_after_reduction_check(const LinkConfiguration& cfg, int bigon_face) {
    auto trans = transposable_segments(cfg);
    Quiver q = build_quiver(cfg, trans);
    auto out = bigon_reduce(cfg, bigon_face);

    std::vector<int> reduced_vertices;
    for (int seg : out.reduced_segments) {
        auto it = std::find(trans.begin(), trans.end(), seg);
        if (it != trans.end())
            reduced_vertices.push_back(static_cast<int>(it - trans.begin()));
    }
    auto b = q.b;
    for (int v : reduced_vertices) b = mutate_b(b, v);

    // Surviving vertices keep their original segment identity.
    std::vector<int> keep;
    for (int j = 0; j < q.size(); ++j)
        if (std::find(reduced_vertices.begin(), reduced_vertices.end(), j) ==
            reduced_vertices.end())
            keep.push_back(j);

    auto trans2 = transposable_segments(out.cfg);
    Quiver q2 = build_quiver(out.cfg, trans2);
    if (trans2.size() != keep.size()) return false;
    // Map original segment id -> reduced-universe vertex.
    std::map<int, int> v2;
    for (int j = 0; j < q2.size(); ++j) v2[out.segment_map[trans2[j]]] = j;
    for (size_t a = 0; a < keep.size(); ++a) {
        auto ita = v2.find(trans[keep[a]]);
        if (ita == v2.end()) return false;
        for (size_t c = 0; c < keep.size(); ++c) {
            auto itc = v2.find(trans[keep[c]]);
            if (itc == v2.end()) return false;
            if (b[keep[a]][keep[c]] != q2.b[ita->second][itc->second]) return false;
        }
    }
    return true;
}

} // namespace bracketforge
