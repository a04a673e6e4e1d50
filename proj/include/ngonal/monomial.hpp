#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/rational.hpp"

namespace ngonal {

// Symbol ids for parameters appearing in period expressions.  Ids 1..9 are the
// user-facing x1..x9; SYM_K is the order parameter of a parametric spherical
// group and prints as "k"; SYM_E is the normalized residual parameter used in
// table presentations and prints as "e".
constexpr int SYM_K = 100;
constexpr int SYM_E = 101;

inline std::string symbol_name(int sym) {
    if (sym == SYM_K) return "k";
    if (sym == SYM_E) return "e";
    return "x" + std::to_string(sym);
}

// c * prod(sym_i ^ e_i) with c >= 1 and all exponents >= 1.  A constant has an
// empty symbol list.  Multiplication of symbols only ever arises from the
// parametric-K substitutions, so exponents stay tiny.
struct Monomial {
    long long coeff = 1;
    std::vector<std::pair<int, int>> syms;  // (symbol, exponent), sorted by symbol

    Monomial() = default;
    explicit Monomial(long long c) : coeff(c) {
        if (c <= 0) throw std::domain_error("monomial coefficient must be positive");
    }
    Monomial(long long c, int sym) : coeff(c), syms{{sym, 1}} {
        if (c <= 0) throw std::domain_error("monomial coefficient must be positive");
    }

    bool is_constant() const { return syms.empty(); }

    bool operator==(const Monomial& o) const = default;

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.coeff = coeff * o.coeff;
        std::map<int, int> e;
        for (auto& [s, x] : syms) e[s] += x;
        for (auto& [s, x] : o.syms) e[s] += x;
        for (auto& [s, x] : e) r.syms.push_back({s, x});
        return r;
    }

    // Exact division; throws if not symbolically divisible.
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        if (coeff % o.coeff != 0) throw std::domain_error("monomial division is not exact");
        r.coeff = coeff / o.coeff;
        std::map<int, int> e;
        for (auto& [s, x] : syms) e[s] += x;
        for (auto& [s, x] : o.syms) {
            e[s] -= x;
            if (e[s] < 0) throw std::domain_error("monomial division is not exact");
        }
        for (auto& [s, x] : e)
            if (x > 0) r.syms.push_back({s, x});
        return r;
    }

    bool divides(const Monomial& o) const {
        if (o.coeff % coeff != 0) return false;
        for (auto& [s, x] : syms) {
            auto it = std::find_if(o.syms.begin(), o.syms.end(),
                                   [&](auto& p) { return p.first == s; });
            if (it == o.syms.end() || it->second < x) return false;
        }
        return true;
    }

    // Substitute sym -> factor * sym.
    Monomial scaled(int sym, const Monomial& factor) const {
        for (auto& [s, x] : syms)
            if (s == sym) {
                Monomial f = factor;
                for (int i = 1; i < x; ++i) f = f * factor;
                return *this * f;
            }
        return *this;
    }

    bool has_symbol(int sym) const {
        return std::any_of(syms.begin(), syms.end(), [&](auto& p) { return p.first == sym; });
    }

    // Evaluate at concrete parameter values; every symbol must be bound.
    long long eval(const std::map<int, long long>& vals) const {
        long long v = coeff;
        for (auto& [s, x] : syms) {
            auto it = vals.find(s);
            if (it == vals.end())
                throw std::domain_error("unbound parameter " + symbol_name(s));
            for (int i = 0; i < x; ++i) v *= it->second;
        }
        return v;
    }

    std::string str() const {
        std::string out = std::to_string(coeff);
        if (syms.empty()) return out;
        if (coeff == 1) out.clear();
        for (auto& [s, x] : syms) {
            if (!out.empty()) out += "*";
            out += symbol_name(s);
            for (int i = 1; i < x; ++i) out += "*" + symbol_name(s);
        }
        return out;
    }

    // Canonical order: by symbol vector (lexicographic), then coefficient.
    // Constants compare below any symbolic monomial of the same coefficient.
    auto ordering_key() const { return std::make_pair(syms, coeff); }
    bool operator<(const Monomial& o) const { return ordering_key() < o.ordering_key(); }
};

inline Monomial mono_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.coeff = gcd_ll(a.coeff, b.coeff);
    for (auto& [s, x] : a.syms) {
        auto it = std::find_if(b.syms.begin(), b.syms.end(),
                               [&](auto& p) { return p.first == s; });
        if (it != b.syms.end()) r.syms.push_back({s, std::min(x, it->second)});
    }
    return r;
}

// lcm of monomials is again a monomial symbolically only when identities such
// as lcm(c1*m, c2*m) = lcm(c1,c2)*m apply; callers that need an identically
// valid lcm must check divisibility first (see kmaps order_of_C).
inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    return (a * b) / mono_gcd(a, b);
}

}  // namespace ngonal
