#pragma once

// Brute-force reference implementations used only by the tests.  Everything
// here is deliberately naive; the library is checked against these on small
// domains.

#include <vector>

#include "ngonal/rational.hpp"

namespace ngonal::oracle {

// Residues of exact additive order m in Z_n.
inline std::vector<long long> order_m_residues(long long n, long long m) {
    std::vector<long long> out;
    if (m < 1 || n % m != 0) return out;
    for (long long z = 0; z < n; ++z)
        if (n / gcd_ll(n, z) == m) out.push_back(z);
    return out;
}

// Existence of (z_1..z_s) in Z_n with exact orders m_i, zero sum, and
// <z_1..z_s> = Z_n.  Once every order is exact and lcm(m_i) = n the subgroup
// generated has order lcm(m_i) = n, so generation is automatic and a
// reachable-sum sweep settles existence.
inline bool dp_vector_exists(long long n, const std::vector<long long>& periods_in) {
    std::vector<long long> periods;
    long long all = 1;
    for (long long m : periods_in) {
        if (m <= 1) continue;
        periods.push_back(m);
        all = lcm_ll(all, m);
    }
    if (all != n) return false;
    if (periods.empty()) return n == 1;
    std::vector<bool> reach(n, false);
    reach[0] = true;
    for (long long m : periods) {
        std::vector<bool> next(n, false);
        auto zs = order_m_residues(n, m);
        for (long long s = 0; s < n; ++s) {
            if (!reach[s]) continue;
            for (long long z : zs) next[(s + z) % n] = true;
        }
        reach = std::move(next);
    }
    return reach[0];
}

// Same question by literal tuple enumeration; only usable for tiny cases.
inline bool literal_vector_exists(long long n, const std::vector<long long>& periods_in) {
    std::vector<long long> periods;
    for (long long m : periods_in)
        if (m > 1) periods.push_back(m);
    std::vector<long long> z(periods.size(), 0);
    auto rec = [&](auto&& self, size_t i, long long sum, long long g) -> bool {
        if (i == periods.size()) return sum % n == 0 && g == 1;
        for (long long v : order_m_residues(n, periods[i]))
            if (self(self, i + 1, (sum + v) % n, gcd_ll(g, v))) return true;
        return false;
    };
    return rec(rec, 0, 0, n);
}

}  // namespace ngonal::oracle
