#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ngonal/rational.hpp"
#include "ngonal/signature.hpp"

namespace ngonal {

// Multiplier of an automorphism x -> a*x of Z_n; gcd(a, n) = 1.  For n = 1
// the identity is stored with multiplier 0.
struct CyclicAutomorphism {
    long long n = 1;
    long long a = 0;
};

// Units of Z_n in ascending multiplier order; size phi(n).
inline std::vector<CyclicAutomorphism> unit_group(long long n) {
    if (n < 1) throw std::invalid_argument("unit_group: n must be >= 1");
    if (n == 1) return {CyclicAutomorphism{1, 0}};
    std::vector<CyclicAutomorphism> out;
    for (long long a = 1; a < n; ++a)
        if (gcd_ll(a, n) == 1) out.push_back({n, a});
    return out;
}

// Multiplicative order of a unit mod n.
inline long long unit_order(long long n, long long a) {
    if (n == 1) return 1;
    long long v = a % n, k = 1;
    while (v != 1) {
        v = (v * a) % n;
        ++k;
        if (k > n) throw std::logic_error("unit_order: not a unit");
    }
    return k;
}

struct InvolutionFixed {
    long long a = 1;          // a^2 = 1 mod n
    long long generator = 0;  // fixed subgroup {x : a*x = x} = <generator>, 0 meaning {0}
};

// All order <= 2 multipliers with their fixed subgroups.  The fixed subgroup
// of a is the kernel of x -> (a-1)x, generated by n/gcd(n, a-1).
inline std::vector<InvolutionFixed> involutions_with_fixed(long long n) {
    if (n < 1) throw std::invalid_argument("involutions_with_fixed: n must be >= 1");
    std::vector<InvolutionFixed> out;
    if (n == 1) return {InvolutionFixed{0, 0}};
    for (long long a = 1; a < n; ++a) {
        if ((a * a) % n != 1) continue;
        long long g = (a == 1) ? 1 : (n / gcd_ll(n, a - 1)) % n;
        out.push_back({a, g});
    }
    return out;
}

// The curve y^n = prod (x - a_i)^{p_i} after normalization, carrying the
// branching data of its n-gonal map.  Requires 0 < p_i < n, n | sum p_i and
// gcd(n, p_1, ..., p_r) = 1 (irreducibility); the branching order over a_i is
// n / gcd(n, p_i).
struct PlaneCurve {
    long long n = 1;
    std::vector<long long> exponents;
    Signature sig;       // one period n / gcd(n, p_i) per branch point
    long long genus = 0;
};

inline PlaneCurve plane_curve(long long n, const std::vector<long long>& exponents) {
    if (n < 2) throw std::invalid_argument("plane_curve: n must be >= 2");
    if (exponents.empty()) throw std::invalid_argument("plane_curve: at least one exponent");
    long long sum = 0, shared = n;
    std::vector<Period> ps;
    for (long long p : exponents) {
        if (p <= 0 || p >= n)
            throw std::domain_error("plane_curve: exponents must lie strictly between 0 and n");
        sum += p;
        shared = gcd_ll(shared, p);
        ps.push_back(Period::finite(n / gcd_ll(n, p)));
    }
    if (sum % n != 0) throw std::domain_error("plane_curve: n must divide the exponent sum");
    if (shared != 1) throw std::domain_error("plane_curve: gcd(n, p_1, ..., p_r) must be 1");

    PlaneCurve c{n, exponents, Signature(0, std::move(ps)), 0};
    long long d_sum = 0;
    for (long long p : exponents) d_sum += gcd_ll(n, p);
    long long r = static_cast<long long>(exponents.size());
    long long twice = 2 + (r - 2) * n - d_sum;
    if (twice % 2 != 0) throw std::logic_error("plane_curve: genus formula returned a half-integer");
    c.genus = twice / 2;

    Rat check = riemann_hurwitz_genus(n, c.sig);
    if (check != Rat(c.genus)) throw std::logic_error("plane_curve: genus formulas disagree");
    return c;
}

struct HarveyVerdict {
    bool admissible = false;
    std::string reason;  // empty when admissible; otherwise the failing clause
};

// Existence test for a cyclic n-action with genus-0 quotient and the given
// periods.  Period-1 entries are ignored.  Checks, in order:
//   (i)   lcm of all periods equals n,
//   (ii)  the lcm with any single period removed still equals n,
//   (iii) at least 3 periods remain,
//   (iv)  for even n, the number of periods divisible by the largest power of
//         2 dividing n is even.
// Hyperbolicity of the signature is a separate concern.
inline HarveyVerdict harvey_check(long long n, const std::vector<long long>& periods_in) {
    if (n < 1) throw std::invalid_argument("harvey: n must be >= 1");
    std::vector<long long> periods;
    for (long long m : periods_in) {
        if (m < 1) throw std::invalid_argument("harvey: periods must be >= 1");
        if (m > 1) periods.push_back(m);
    }
    long long all = 1;
    for (long long m : periods) all = lcm_ll(all, m);
    if (all != n) return {false, "lcm of periods differs from n"};
    for (size_t i = 0; i < periods.size(); ++i) {
        long long rest = 1;
        for (size_t j = 0; j < periods.size(); ++j)
            if (j != i) rest = lcm_ll(rest, periods[j]);
        if (rest != n) return {false, "lcm drops when one period is removed"};
    }
    if (periods.size() < 3) return {false, "fewer than 3 periods"};
    if (n % 2 == 0) {
        long long two_part = 1;
        while ((n / two_part) % 2 == 0) two_part *= 2;
        long long count = 0;
        for (long long m : periods)
            if (m % two_part == 0) ++count;
        if (count % 2 != 0) return {false, "odd count of periods with the full 2-part of n"};
    }
    return {true, ""};
}

inline bool harvey_admissible(long long n, const std::vector<long long>& periods) {
    return harvey_check(n, periods).admissible;
}

inline bool harvey_admissible(long long n, const Signature& sig) {
    if (sig.genus != 0) throw std::invalid_argument("harvey: genus-0 signatures only");
    std::vector<long long> ps;
    for (const Period& p : sig.periods) ps.push_back(p.value());
    return harvey_admissible(n, ps);
}

}  // namespace ngonal
