#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bracketforge/error.hpp"

namespace bracketforge {

// Sparse Laurent polynomial in one variable with exact integer coefficients.
// Canonical form: at most one term per exponent, no zero coefficients.
class LaurentPoly {
public:
    using Coeff = std::int64_t;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return monomial(1, 0); }

    static LaurentPoly monomial(Coeff c, int exp) {
        LaurentPoly p;
        if (c != 0) p.terms_[exp] = c;
        return p;
    }

    const std::map<int, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_monomial() const { return terms_.size() == 1; }

    Coeff coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? 0 : it->second;
    }

    int min_exp() const {
        require(!terms_.empty(), "EmptyPolynomial", "min_exp of zero polynomial");
        return terms_.begin()->first;
    }
    int max_exp() const {
        require(!terms_.empty(), "EmptyPolynomial", "max_exp of zero polynomial");
        return terms_.rbegin()->first;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

    LaurentPoly pow(int n) const {
        require(n >= 0, "NegativePower", "pow of general polynomial requires n >= 0");
        LaurentPoly r = one();
        for (int i = 0; i < n; ++i) r *= *this;
        return r;
    }

    // A <-> A^-1
    LaurentPoly mirrored() const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    // Exact division by a monomial.
    LaurentPoly divided_by_monomial(const LaurentPoly& m) const {
        require(m.is_monomial(), "NotMonomial", "divisor must be a monomial");
        auto [me, mc] = *m.terms_.begin();
        LaurentPoly r;
        for (auto& [e, c] : terms_) {
            require(c % mc == 0, "InexactDivision", "coefficient not divisible");
            r.terms_[e - me] = c / mc;
        }
        return r;
    }

    // Jones substitution A -> t^(-1/4): every exponent must be divisible by 4.
    LaurentPoly substitute_A_to_t() const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) {
            require(e % 4 == 0, "NonIntegralExponent",
                    "exponent " + std::to_string(e) + " not divisible by 4");
            r.terms_[-e / 4] = c;
        }
        return r;
    }

    // Exponent halving, used for Jones polynomials expressed in sqrt(t).
    LaurentPoly substitute_A_to_sqrt_t() const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) {
            require(e % 2 == 0, "NonIntegralExponent",
                    "exponent " + std::to_string(e) + " not divisible by 2");
            r.terms_[-e / 2] = c;
        }
        return r;
    }

    // Terms in strictly increasing exponent order; A^0 suppressed.
    std::string to_string(const std::string& var = "A") const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [e, c] : terms_) {
            Coeff mag = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (e == 0) {
                out += std::to_string(mag);
            } else {
                if (mag != 1) out += std::to_string(mag);
                out += var;
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    // JSON form: array of [exponent, coefficient] pairs sorted by exponent.
    std::vector<std::pair<int, Coeff>> sorted_pairs() const {
        return {terms_.begin(), terms_.end()};
    }

private:
    void add_term(int e, Coeff c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<int, Coeff> terms_;
};

} // namespace bracketforge
