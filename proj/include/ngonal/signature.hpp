#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/monomial.hpp"
#include "ngonal/rational.hpp"

namespace ngonal {

// One period of a Fuchsian signature: a finite order (constant monomial >= 2
// once normalized), a parametric order c*x, or a parabolic period printed as
// "inf".
struct Period {
    bool parabolic = false;
    Monomial m;  // ignored when parabolic

    Period() : m(1) {}
    static Period inf() {
        Period p;
        p.parabolic = true;
        return p;
    }
    static Period finite(long long v) {
        Period p;
        p.m = Monomial(v);
        return p;
    }
    static Period parametric(long long c, int sym) {
        Period p;
        p.m = Monomial(c, sym);
        return p;
    }
    static Period of(const Monomial& mono) {
        Period p;
        p.m = mono;
        return p;
    }

    bool is_constant() const { return !parabolic && m.is_constant(); }
    bool is_parametric() const { return !parabolic && !m.is_constant(); }
    long long value() const {
        if (!is_constant()) throw std::domain_error("period is not a constant");
        return m.coeff;
    }

    bool operator==(const Period& o) const {
        return parabolic == o.parabolic && (parabolic || m == o.m);
    }
    // Canonical order: constants ascending, then parametric by symbol then
    // coefficient, then parabolic.
    bool operator<(const Period& o) const {
        if (parabolic != o.parabolic) return !parabolic;
        if (parabolic) return false;
        return m < o.m;
    }

    std::string str() const { return parabolic ? "inf" : m.str(); }
};

struct Signature {
    long long genus = 0;
    std::vector<Period> periods;

    Signature() = default;
    Signature(long long g, std::vector<Period> ps) : genus(g), periods(std::move(ps)) {}
    static Signature of(std::initializer_list<long long> vals, long long g = 0) {
        Signature s;
        s.genus = g;
        for (long long v : vals) s.periods.push_back(Period::finite(v));
        return s;
    }

    bool concrete() const {
        return std::none_of(periods.begin(), periods.end(),
                            [](const Period& p) { return p.is_parametric(); });
    }
    bool has_parabolic() const {
        return std::any_of(periods.begin(), periods.end(),
                           [](const Period& p) { return p.parabolic; });
    }

    Signature canonical() const {
        Signature s = *this;
        std::sort(s.periods.begin(), s.periods.end());
        return s;
    }

    // Signatures with equal genus compare as multisets of periods.
    bool operator==(const Signature& o) const {
        if (genus != o.genus) return false;
        return canonical().periods == o.canonical().periods;
    }

    std::string str() const {
        std::string parts;
        for (size_t i = 0; i < periods.size(); ++i) {
            if (i) parts += ",";
            parts += periods[i].str();
        }
        if (genus == 0) return "(" + parts + ")";
        if (parts.empty()) return "(" + std::to_string(genus) + ";)";
        return "(" + std::to_string(genus) + "; " + parts + ")";
    }
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline std::optional<long long> parse_int(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return std::nullopt;
    long long v = std::stoll(s.substr(i, j - i));
    i = j;
    return v;
}

inline std::optional<int> parse_symbol(const std::string& s, size_t& i) {
    skip_ws(s, i);
    if (i >= s.size()) return std::nullopt;
    if (s[i] == 'x') {
        size_t j = i + 1;
        size_t k = j;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) return std::nullopt;
        int id = std::stoi(s.substr(j, k - j));
        if (id < 1 || id > 9) throw std::invalid_argument("parameter id out of range: x" + std::to_string(id));
        i = k;
        return id;
    }
    if (s[i] == 'k') {
        ++i;
        return SYM_K;
    }
    if (s[i] == 'e' && (i + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 1])))) {
        ++i;
        return SYM_E;
    }
    return std::nullopt;
}

// A period item: "inf" | <int> | [<int> "*"] <symbol>.  At most one parameter
// symbol; richer symbolic forms are rejected here.
inline Period parse_period(const std::string& item) {
    size_t i = 0;
    skip_ws(item, i);
    if (item.compare(i, 3, "inf") == 0) {
        i += 3;
        skip_ws(item, i);
        if (i != item.size()) throw std::invalid_argument("bad period: " + item);
        return Period::inf();
    }
    long long coeff = 1;
    bool saw_coeff = false;
    if (auto v = parse_int(item, i)) {
        coeff = *v;
        saw_coeff = true;
    }
    skip_ws(item, i);
    std::optional<int> sym;
    if (i < item.size() && (!saw_coeff || item[i] == '*')) {
        if (saw_coeff) {
            ++i;  // consume '*'
            skip_ws(item, i);
        }
        sym = parse_symbol(item, i);
        if (!sym) throw std::invalid_argument("bad period: " + item);
        skip_ws(item, i);
    }
    if (i != item.size()) throw std::invalid_argument("bad period: " + item);
    if (!saw_coeff && !sym) throw std::invalid_argument("bad period: " + item);
    if (coeff < 1) throw std::invalid_argument("period coefficient must be >= 1: " + item);
    if (!sym) {
        if (coeff < 2) throw std::invalid_argument("finite period must be >= 2: " + item);
        return Period::finite(coeff);
    }
    return Period::parametric(coeff, *sym);
}

}  // namespace detail

// Parses the canonical text form "(g; m1,m2,...)" with "g;" omitted when the
// orbit genus is 0.  parse(sig.str()) round-trips exactly.
inline Signature parse_signature(const std::string& text) {
    size_t i = 0;
    detail::skip_ws(text, i);
    if (i >= text.size() || text[i] != '(')
        throw std::invalid_argument("signature must start with '(': " + text);
    size_t close = text.rfind(')');
    if (close == std::string::npos || close <= i)
        throw std::invalid_argument("signature must end with ')': " + text);
    {
        size_t j = close + 1;
        detail::skip_ws(text, j);
        if (j != text.size()) throw std::invalid_argument("trailing text after signature: " + text);
    }
    std::string body = text.substr(i + 1, close - i - 1);
    Signature sig;
    if (size_t semi = body.find(';'); semi != std::string::npos) {
        size_t j = 0;
        auto g = detail::parse_int(body, j);
        detail::skip_ws(body, j);
        if (!g || j != semi) throw std::invalid_argument("bad genus prefix: " + text);
        if (*g < 0) throw std::invalid_argument("genus must be >= 0: " + text);
        sig.genus = *g;
        body = body.substr(semi + 1);
    }
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t comma = body.find(',', pos);
        std::string item =
            comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
        size_t j = 0;
        detail::skip_ws(item, j);
        if (j == item.size()) {
            if (comma != std::string::npos) throw std::invalid_argument("empty period in: " + text);
            break;  // empty tail (no periods at all)
        }
        sig.periods.push_back(detail::parse_period(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return sig;
}

// Reduced area 2(g-1) + sum(1 - 1/m); a parabolic period contributes 1.
// Symbolic periods have no value here.
inline Rat mu(const Signature& sig) {
    Rat total(2 * (sig.genus - 1), 1);
    for (const Period& p : sig.periods) {
        if (p.parabolic) {
            total += Rat(1);
        } else if (p.is_parametric()) {
            throw std::domain_error("symbolic signature: evaluate parameters first");
        } else {
            long long v = p.value();
            if (v < 2) throw std::domain_error("finite period must be >= 2");
            total += Rat(1) - Rat(1, v);
        }
    }
    return total;
}

inline bool is_hyperbolic(const Signature& sig) { return mu(sig) > Rat(0); }

// mu with every parametric period sent to its limit (term 1).  mu increases
// strictly toward this limit in each parameter, so some integer instantiation
// is hyperbolic iff the limit is positive.
inline Rat mu_limit(const Signature& sig) {
    Signature s = sig;
    for (Period& p : s.periods)
        if (p.is_parametric()) p = Period::inf();
    return mu(s);
}

inline bool hyperbolic_possible(const Signature& sig) { return mu_limit(sig) > Rat(0); }

// Dimension of the Teichmueller space, 3(g-1) + s.
inline long long teichmuller_dim(const Signature& sig) {
    if (!is_hyperbolic(sig)) throw std::domain_error("teichmuller_dim requires a hyperbolic signature");
    return 3 * (sig.genus - 1) + static_cast<long long>(sig.periods.size());
}

// For genus-0 pairs the codimension of the inclusion locus is the period-count
// difference.
inline long long codimension(const Signature& sub, const Signature& sup) {
    if (sub.genus != 0 || sup.genus != 0)
        throw std::domain_error("codimension is defined for genus-0 signatures");
    long long d = static_cast<long long>(sub.periods.size()) -
                  static_cast<long long>(sup.periods.size());
    if (d < 0) throw std::domain_error("not a plausible inclusion: fewer periods below");
    return d;
}

// mu(sub)/mu(sup); exact.  Callers decide what to do with non-integers.
inline Rat index_of_pair(const Signature& sub, const Signature& sup) {
    Rat a = mu(sub), b = mu(sup);
    if (a <= Rat(0) || b <= Rat(0))
        throw std::domain_error("index_of_pair requires hyperbolic signatures");
    return a / b;
}

// Genus of the covering surface from |G| and the quotient signature:
// 2g - 2 = |G| * mu.  Returns the exact rational; integrality is the caller's
// consistency check.
inline Rat riemann_hurwitz_genus(long long group_order, const Signature& sig) {
    if (group_order <= 0) throw std::domain_error("group order must be positive");
    if (sig.has_parabolic()) throw std::domain_error("riemann_hurwitz_genus needs a cocompact signature");
    return Rat(1) + Rat(group_order, 2) * mu(sig);
}

// Plane-model data y^n = prod (x - a_i)^{p_i}.
struct NGonalData {
    long long n = 0;
    std::vector<long long> p;

    void validate() const {
        if (n < 2) throw std::invalid_argument("n-gonal data: n must be >= 2");
        if (p.empty()) throw std::invalid_argument("n-gonal data: at least one exponent");
        long long sum = 0, g = n;
        for (long long pi : p) {
            if (pi <= 0 || pi >= n)
                throw std::invalid_argument("n-gonal data: exponents must satisfy 0 < p_i < n");
            sum += pi;
            g = gcd_ll(g, pi);
        }
        if (sum % n != 0)
            throw std::invalid_argument("n-gonal data: n must divide the exponent sum");
        if (g != 1)
            throw std::invalid_argument("n-gonal data: gcd(n, p_1, ..., p_r) must be 1");
    }
};

// Quotient signature (0; n/d_1, ..., n/d_r), d_i = gcd(n, p_i), in input
// order.  Trivial periods would need n | p_i, excluded by validation.
inline Signature ngonal_signature(const NGonalData& d) {
    d.validate();
    Signature sig;
    for (long long pi : d.p) {
        long long m = d.n / gcd_ll(d.n, pi);
        if (m > 1) sig.periods.push_back(Period::finite(m));
    }
    return sig;
}

// Closed-form genus of the plane model: (2 + (r-2)n - sum d_i) / 2.
inline long long ngonal_genus(const NGonalData& d) {
    d.validate();
    long long r = static_cast<long long>(d.p.size());
    long long sum_d = 0;
    for (long long pi : d.p) sum_d += gcd_ll(d.n, pi);
    long long num = 2 + (r - 2) * d.n - sum_d;
    if (num % 2 != 0) throw std::logic_error("n-gonal genus is not an integer");
    return num / 2;
}

}  // namespace ngonal
