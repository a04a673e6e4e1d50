#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/rational.hpp"

namespace ngonal {

// Permutation of {1..m}, stored 0-based.  Products compose left to right:
// (a*b) means "apply a, then b".  Generating and monodromy vectors multiply
// out to the identity under this convention.
struct Perm {
    std::vector<int> img;

    Perm() = default;
    explicit Perm(std::vector<int> images) : img(std::move(images)) {}

    static Perm identity(int m) {
        Perm p;
        p.img.resize(m);
        std::iota(p.img.begin(), p.img.end(), 0);
        return p;
    }

    int degree() const { return static_cast<int>(img.size()); }
    int apply(int x) const { return img[x]; }

    Perm operator*(const Perm& o) const {
        if (degree() != o.degree()) throw std::invalid_argument("degree mismatch");
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); ++i) r.img[i] = o.img[img[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = static_cast<int>(i);
        return r;
    }

    bool is_identity() const {
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] != static_cast<int>(i)) return false;
        return true;
    }

    Perm power(long long e) const {
        long long n = order();
        e %= n;
        if (e < 0) e += n;
        Perm r = identity(degree());
        for (long long i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    long long order() const {
        long long o = 1;
        for (int len : cycle_lengths()) o = lcm_ll(o, len);
        return o;
    }

    // Lengths of all cycles including fixed points, descending: a partition
    // of the degree.
    std::vector<int> cycle_lengths() const {
        std::vector<bool> seen(img.size(), false);
        std::vector<int> out;
        for (size_t i = 0; i < img.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (size_t j = i; !seen[j]; j = img[j]) {
                seen[j] = true;
                ++len;
            }
            out.push_back(len);
        }
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    bool operator==(const Perm& o) const = default;
    bool operator<(const Perm& o) const { return img < o.img; }
};

inline std::vector<int> cycle_type(const Perm& p) { return p.cycle_lengths(); }

// Disjoint-cycle text, cycles ordered by smallest moved point and each cycle
// starting at it; the identity prints as "()".
inline std::string perm_to_string(const Perm& p) {
    std::vector<bool> seen(p.img.size(), false);
    std::string out;
    for (size_t i = 0; i < p.img.size(); ++i) {
        if (seen[i] || p.img[i] == static_cast<int>(i)) continue;
        out += "(";
        bool first = true;
        for (size_t j = i; !seen[j]; j = p.img[j]) {
            seen[j] = true;
            if (!first) out += ",";
            out += std::to_string(j + 1);
            first = false;
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

inline Perm parse_perm(const std::string& text, int degree) {
    Perm p = Perm::identity(degree);
    std::vector<bool> used(degree, false);
    size_t i = 0;
    auto ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    ws();
    bool any = false;
    while (i < text.size()) {
        if (text[i] != '(') throw std::invalid_argument("expected '(' in permutation: " + text);
        ++i;
        std::vector<int> cyc;
        ws();
        while (i < text.size() && text[i] != ')') {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i) throw std::invalid_argument("expected point in permutation: " + text);
            int pt = std::stoi(text.substr(i, j - i));
            if (pt < 1 || pt > degree)
                throw std::invalid_argument("point out of range in permutation: " + text);
            if (used[pt - 1]) throw std::invalid_argument("repeated point in permutation: " + text);
            used[pt - 1] = true;
            cyc.push_back(pt - 1);
            i = j;
            ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                ws();
            }
        }
        if (i >= text.size()) throw std::invalid_argument("unterminated cycle: " + text);
        ++i;  // ')'
        if (cyc.size() == 1) throw std::invalid_argument("singleton cycle in permutation: " + text);
        for (size_t c = 0; c < cyc.size(); ++c) p.img[cyc[c]] = cyc[(c + 1) % cyc.size()];
        any = true;
        ws();
    }
    if (!any) throw std::invalid_argument("empty permutation text");
    return p;
}

}  // namespace ngonal
