#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bracketforge/error.hpp"

namespace bracketforge {

// A monomial in the tropical semifield Trop(y_1..y_N): addition (+) is
// componentwise minimum of exponent tuples, multiplication adds them.
class Tropical {
public:
    explicit Tropical(int nvars = 0) : exps_(nvars, 0) {}
    explicit Tropical(std::vector<int> exps) : exps_(std::move(exps)) {}

    static Tropical one(int nvars) { return Tropical(nvars); }
    static Tropical generator(int nvars, int j) {
        Tropical t(nvars);
        t.exps_[j] = 1;
        return t;
    }

    int nvars() const { return static_cast<int>(exps_.size()); }
    const std::vector<int>& exponents() const { return exps_; }
    int exponent(int j) const { return exps_[j]; }
    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
    }

    friend Tropical operator*(const Tropical& a, const Tropical& b) {
        a.check(b);
        Tropical r = a;
        for (size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
        return r;
    }

    // Tropical addition.
    friend Tropical oplus(const Tropical& a, const Tropical& b) {
        a.check(b);
        Tropical r = a;
        for (size_t i = 0; i < r.exps_.size(); ++i)
            r.exps_[i] = std::min(r.exps_[i], b.exps_[i]);
        return r;
    }

    Tropical inverse() const {
        Tropical r = *this;
        for (int& e : r.exps_) e = -e;
        return r;
    }

    Tropical pow(int n) const {
        Tropical r = *this;
        for (int& e : r.exps_) e *= n;
        return r;
    }

    // y (+) 1 : componentwise minimum with the zero tuple.
    Tropical one_plus() const {
        Tropical r = *this;
        for (int& e : r.exps_) e = std::min(e, 0);
        return r;
    }

    bool operator==(const Tropical& o) const { return exps_ == o.exps_; }
    bool operator!=(const Tropical& o) const { return exps_ != o.exps_; }

    std::string to_string() const {
        std::string out;
        for (size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += "y" + std::to_string(i + 1);
            if (exps_[i] != 1) out += "^" + std::to_string(exps_[i]);
        }
        return out.empty() ? "1" : out;
    }

private:
    void check(const Tropical& o) const {
        require(exps_.size() == o.exps_.size(), "ArityMismatch", "tropical arity differs");
    }

    std::vector<int> exps_;
};

} // namespace bracketforge
