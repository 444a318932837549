#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bracketforge/error.hpp"
#include "bracketforge/laurent.hpp"

namespace bracketforge {

// Sparse polynomial in variables y_1..y_N with integer coefficients.
// Exponent tuples all have length N; no stored coefficient is zero.
class MultiPoly {
public:
    using Coeff = std::int64_t;
    using Expo = std::vector<int>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

    static MultiPoly zero(int nvars) { return MultiPoly(nvars); }
    static MultiPoly constant(int nvars, Coeff c) {
        MultiPoly p(nvars);
        if (c != 0) p.terms_[Expo(nvars, 0)] = c;
        return p;
    }
    static MultiPoly one(int nvars) { return constant(nvars, 1); }
    static MultiPoly generator(int nvars, int j) {
        MultiPoly p(nvars);
        Expo e(nvars, 0);
        e[j] = 1;
        p.terms_[e] = 1;
        return p;
    }
    static MultiPoly monomial(Expo e, Coeff c = 1) {
        MultiPoly p(static_cast<int>(e.size()));
        if (c != 0) p.terms_[std::move(e)] = c;
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Expo, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return *this == one(nvars_); }

    Coeff coeff(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }
    Coeff constant_term() const { return coeff(Expo(nvars_, 0)); }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_arity(o);
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_arity(o);
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.nvars_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                Expo e(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Exact evaluation with a Laurent polynomial per variable.
    LaurentPoly specialize(const std::vector<LaurentPoly>& values) const {
        require(static_cast<int>(values.size()) >= nvars_, "MissingVariable",
                "specialize needs a value per variable");
        LaurentPoly r;
        for (auto& [e, c] : terms_) {
            LaurentPoly term = LaurentPoly::monomial(c, 0);
            for (int i = 0; i < nvars_; ++i) {
                require(e[i] >= 0, "NegativeExponent", "specialize needs polynomial exponents");
                for (int k = 0; k < e[i]; ++k) term *= values[i];
            }
            r += term;
        }
        return r;
    }

    int total_degree(const Expo& e) const {
        return std::accumulate(e.begin(), e.end(), 0);
    }

    // Variables printed y<k>, k from 1; terms sorted by total degree then
    // lexicographically on the exponent tuple.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Expo, Coeff>> ordered(terms_.begin(), terms_.end());
        std::stable_sort(ordered.begin(), ordered.end(),
                         [&](const auto& a, const auto& b) {
                             int da = total_degree(a.first), db = total_degree(b.first);
                             if (da != db) return da < db;
                             return a.first < b.first;
                         });
        std::string out;
        bool first = true;
        for (auto& [e, c] : ordered) {
            Coeff mag = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "y" + std::to_string(i + 1);
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) {
                out += std::to_string(mag);
            } else {
                if (mag != 1) out += std::to_string(mag) + "*";
                out += mono;
            }
        }
        return out;
    }

private:
    void check_arity(const MultiPoly& o) const {
        require(nvars_ == o.nvars_, "ArityMismatch", "variable counts differ");
    }

    void add_term(const Expo& e, Coeff c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int nvars_ = 0;
    std::map<Expo, Coeff> terms_;
};

} // namespace bracketforge
