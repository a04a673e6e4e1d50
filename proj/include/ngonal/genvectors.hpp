#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/group.hpp"
#include "ngonal/kmaps.hpp"
#include "ngonal/perm.hpp"
#include "ngonal/signature.hpp"

namespace ngonal {

constexpr long long kDefaultVectorCap = 1000000;

// The cyclic group of order n is modeled additively as residues mod n
// throughout this header; its automorphisms are the units acting by
// multiplication.

inline long long order_mod(long long n, long long z) {
    z = ((z % n) + n) % n;
    return n / std::gcd(n, z);
}

inline long long inv_mod(long long u, long long n) {
    long long r0 = ((u % n) + n) % n, r1 = n, s0 = 1, s1 = 0;
    while (r1 != 0) {
        long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::domain_error("not a unit mod " + std::to_string(n));
    return ((s0 % n) + n) % n;
}

inline std::vector<long long> units_mod(long long n) {
    std::vector<long long> out;
    for (long long u = 1 % n; u < n || out.empty(); ++u) {
        if (std::gcd(u, n) == 1) out.push_back(u % n);
        if (n == 1) break;
    }
    return out;
}

inline std::vector<long long> elements_of_order(long long n, long long m) {
    if (m < 1 || n % m != 0) return {};
    if (m == 1) return {0};
    std::vector<long long> out;
    for (long long t = 1; t < m; ++t)
        if (std::gcd(t, m) == 1) out.push_back((n / m) * t);
    return out;
}

struct VectorList {
    std::vector<std::vector<long long>> vectors;
    bool truncated = false;
};

// All tuples over Z_n whose entry orders match the periods in order and whose
// sum vanishes, listed lexicographically up to the cap.  The periods must be
// concrete with lcm n, so every listed tuple generates.  Nonempty exactly on
// the harvey_admissible inputs.
inline VectorList generating_vectors(long long n, const Signature& sig,
                                     long long cap = kDefaultVectorCap) {
    if (sig.genus != 0) throw std::domain_error("genus-0 signatures only");
    std::vector<long long> periods;
    for (const auto& p : sig.periods) {
        if (p.parabolic || !p.is_constant()) throw std::domain_error("concrete periods only");
        periods.push_back(p.value());
    }
    if (periods.empty()) throw std::domain_error("need at least one period");
    long long all = 1;
    for (long long m : periods) all = lcm_ll(all, m);
    if (all != n)
        throw std::invalid_argument("periods do not span a group of order " + std::to_string(n));

    std::vector<std::vector<long long>> cands;
    for (long long m : periods) cands.push_back(elements_of_order(n, m));
    VectorList out;
    size_t r = periods.size();
    std::vector<long long> cur(r, 0);
    // entries before the last run free; the last is forced by the product
    auto rec = [&](auto&& self, size_t i, long long sum) -> bool {
        if (i + 1 == r) {
            long long z = ((n - sum % n) + n) % n;
            if (order_mod(n, z) != periods[r - 1]) return true;
            if (static_cast<long long>(out.vectors.size()) >= cap) {
                out.truncated = true;
                return false;
            }
            cur[r - 1] = z;
            out.vectors.push_back(cur);
            return true;
        }
        for (long long z : cands[i]) {
            cur[i] = z;
            if (!self(self, i + 1, sum + z)) return false;
        }
        return true;
    };
    rec(rec, 0, 0);
    return out;
}

// Orbit representatives (lexicographic minima) of the unit-multiplication
// action on a set of vectors closed under it.
inline std::vector<std::vector<long long>> aut_orbit_reps(
    long long n, const std::vector<std::vector<long long>>& vecs) {
    std::set<std::vector<long long>> pool(vecs.begin(), vecs.end());
    std::set<std::vector<long long>> seen;
    std::vector<std::vector<long long>> reps;
    for (const auto& v : pool) {
        if (seen.count(v)) continue;
        reps.push_back(v);
        for (long long u : units_mod(n)) {
            std::vector<long long> w(v.size());
            for (size_t i = 0; i < v.size(); ++i) w[i] = (u * v[i]) % n;
            seen.insert(std::move(w));
        }
    }
    return reps;
}

// A concrete copy of a spherical group together with canonical generators
// whose orders follow its signature and whose product is the identity.
struct SphericalRealization {
    PermGroup group;
    std::vector<Perm> canon;
};

inline SphericalRealization realize_spherical(SphericalFamily fam, long long param) {
    std::vector<Perm> canon;
    auto rot_cycle = [](long long m) {
        Perm p = Perm::identity(static_cast<int>(m));
        for (long long i = 0; i < m; ++i) p.img[i] = static_cast<int>((i + 1) % m);
        return p;
    };
    switch (fam) {
        case SphericalFamily::Cyclic: {
            if (param < 2) throw std::invalid_argument("cyclic part needs order at least 2");
            Perm c = rot_cycle(param);
            canon = {c, c.inverse()};
            break;
        }
        case SphericalFamily::Dihedral: {
            if (param < 2) throw std::invalid_argument("dihedral part needs k at least 2");
            Perm x1, x3;
            if (param == 2) {
                x1 = Perm({1, 0, 2, 3});
                x3 = Perm({1, 0, 3, 2});
            } else {
                x3 = rot_cycle(param);
                x1 = Perm::identity(static_cast<int>(param));
                for (long long i = 0; i < param; ++i)
                    x1.img[i] = static_cast<int>((param - i) % param);
            }
            canon = {x1, x1 * x3.inverse(), x3};
            break;
        }
        case SphericalFamily::A4:
            canon = {Perm({1, 0, 3, 2}), Perm({1, 2, 0, 3}), Perm({3, 1, 0, 2})};
            break;
        case SphericalFamily::S4:
            canon = {Perm({1, 0, 2, 3}), Perm({0, 2, 3, 1}), Perm({1, 3, 0, 2})};
            break;
        case SphericalFamily::A5:
            canon = {Perm({1, 0, 3, 2, 4}), Perm({2, 1, 4, 3, 0}), Perm({4, 0, 1, 2, 3})};
            break;
    }
    SphericalRealization out{close_perms(canon), canon};
    Perm prod = Perm::identity(canon[0].degree());
    for (const Perm& x : canon) prod = prod * x;
    if (!prod.is_identity()) throw std::logic_error("canonical product is not the identity");
    return out;
}

// The quotient group permuting the branch indices of the kernel signature.
// sigma is multiplicative under left-to-right products: sigma of g*h applies
// sigma[g] first.  Indices follow the kernel layout, one contiguous orbit per
// slot with cofactor above 1 and then one regular orbit per remaining period.
struct KAction {
    long long n = 1;
    std::vector<long long> periods;
    PermGroup K;
    std::vector<Perm> sigma;
    std::vector<std::vector<int>> orbits;
};

inline KAction k_action(const FactoredSignature& f, const std::map<int, long long>& bind = {}) {
    KAction a;
    long long param = f.K.param.eval(bind);
    SphericalRealization real = realize_spherical(f.K.family, param);
    a.K = real.group;
    int kord = static_cast<int>(a.K.size());
    if (kord != f.K.order().eval(bind)) throw std::logic_error("realization order mismatch");
    if (f.slots.size() != real.canon.size())
        throw std::invalid_argument("slot count differs from the quotient signature");

    std::vector<std::vector<int>> img(kord);
    auto add_block = [&](const std::vector<std::vector<int>>& bimg, long long period) {
        int off = static_cast<int>(a.periods.size());
        int bs = static_cast<int>(bimg[0].size());
        std::vector<int> orb(bs);
        for (int c = 0; c < bs; ++c) orb[c] = off + c;
        a.orbits.push_back(std::move(orb));
        for (int g = 0; g < kord; ++g)
            for (int c = 0; c < bs; ++c) img[g].push_back(off + bimg[g][c]);
        for (int c = 0; c < bs; ++c) a.periods.push_back(period);
    };

    for (size_t i = 0; i < f.slots.size(); ++i) {
        long long av = f.slots[i].a.eval(bind);
        long long bv = f.slots[i].b.eval(bind);
        if (a.K.order_of(real.canon[i]) != av)
            throw std::invalid_argument("slot order differs from its generator");
        if (bv == 1) continue;
        auto ca = coset_action(a.K, span(a.K, {real.canon[i]}));
        std::vector<std::vector<int>> bimg(kord, std::vector<int>(ca.index));
        for (int g = 0; g < kord; ++g)
            for (int c = 0; c < ca.index; ++c)
                bimg[g][c] = ca.coset_of[a.K.idx(ca.reps[c] * a.K.elems[g])];
        add_block(bimg, bv);
    }
    for (const Monomial& m : f.rest) {
        long long mv = m.eval(bind);
        if (mv < 2) throw std::invalid_argument("remaining periods must instantiate above 1");
        std::vector<std::vector<int>> bimg(kord, std::vector<int>(kord));
        for (int g = 0; g < kord; ++g)
            for (int c = 0; c < kord; ++c) bimg[g][c] = a.K.idx(a.K.elems[c] * a.K.elems[g]);
        add_block(bimg, mv);
    }
    if (a.periods.empty()) throw std::domain_error("the kernel has no branch indices");
    for (long long m : a.periods) a.n = lcm_ll(a.n, m);
    for (int g = 0; g < kord; ++g) a.sigma.push_back(Perm(img[g]));
    return a;
}

// A homomorphism into the units mod n, one unit per group element.
using Twist = std::vector<long long>;

// All such homomorphisms, ordered lexicographically by generator images.
inline std::vector<Twist> twist_candidates(const KAction& a) {
    long long n = a.n;
    const PermGroup& K = a.K;
    std::vector<std::vector<long long>> choices;
    for (const Perm& g : K.gens) {
        long long o = g.order();
        std::vector<long long> ch;
        for (long long u : units_mod(n)) {
            long long p = 1 % n;
            for (long long t = 0; t < o; ++t) p = p * u % n;
            if (p == 1 % n) ch.push_back(u);
        }
        choices.push_back(ch);
    }
    std::vector<Twist> out;
    std::vector<long long> pick(K.gens.size());
    auto rec = [&](auto&& self, size_t gi) -> void {
        if (gi == pick.size()) {
            Twist tw(K.size(), 0);
            std::vector<char> done(K.size(), 0);
            tw[0] = 1 % n;
            done[0] = 1;
            std::deque<int> todo{0};
            bool ok = true;
            while (!todo.empty() && ok) {
                int cur = todo.front();
                todo.pop_front();
                for (size_t j = 0; j < K.gens.size() && ok; ++j) {
                    int nxt = K.idx(K.elems[cur] * K.gens[j]);
                    long long val = tw[cur] * pick[j] % n;
                    if (!done[nxt]) {
                        done[nxt] = 1;
                        tw[nxt] = val;
                        todo.push_back(nxt);
                    } else {
                        ok = tw[nxt] == val;
                    }
                }
            }
            if (ok) out.push_back(tw);
            return;
        }
        for (long long u : choices[gi]) {
            pick[gi] = u;
            self(self, gi + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// Left action on vectors: entry i of g.z reads entry sigma_g(i) and twists it.
inline std::vector<long long> k_apply(const KAction& a, const Twist& tw, int g,
                                      const std::vector<long long>& z) {
    std::vector<long long> out(z.size());
    for (size_t i = 0; i < z.size(); ++i)
        out[i] = tw[g] * z[a.sigma[g].apply(static_cast<int>(i))] % a.n;
    return out;
}

inline bool k_fixes(const KAction& a, const Twist& tw, const std::vector<long long>& z) {
    for (int g = 0; g < static_cast<int>(a.K.size()); ++g)
        if (k_apply(a, tw, g, z) != z) return false;
    return true;
}

// Fixed vectors of the twisted action, assembled orbit by orbit: the leading
// entry of each orbit must be invariant under its stabilizer twists, the rest
// of the orbit follows by propagation, and the grand total must vanish.
inline VectorList k_fixed_vectors(const KAction& a, const Twist& tw,
                                  long long cap = kDefaultVectorCap) {
    long long n = a.n;
    int kord = static_cast<int>(a.K.size());
    struct Choice {
        std::vector<long long> fill;
        long long sum = 0;
    };
    std::vector<std::vector<Choice>> per_orbit;
    for (const auto& orb : a.orbits) {
        int i0 = orb[0];
        std::vector<long long> stab;
        std::vector<long long> unit_to(orb.size(), -1);
        for (int g = 0; g < kord; ++g) {
            int j = a.sigma[g].apply(i0);
            if (j == i0) stab.push_back(tw[g]);
            int pos = j - i0;
            if (unit_to[pos] == -1) unit_to[pos] = inv_mod(tw[g], n);
        }
        std::vector<Choice> choices;
        for (long long z : elements_of_order(n, a.periods[i0])) {
            bool inv = true;
            for (long long u : stab) inv = inv && u * z % n == z;
            if (!inv) continue;
            Choice c;
            c.fill.resize(orb.size());
            for (size_t t = 0; t < orb.size(); ++t) {
                c.fill[t] = unit_to[t] * z % n;
                c.sum += c.fill[t];
            }
            choices.push_back(std::move(c));
        }
        per_orbit.push_back(std::move(choices));
    }
    VectorList out;
    std::vector<long long> cur(a.periods.size(), 0);
    auto rec = [&](auto&& self, size_t oi, long long sum) -> bool {
        if (oi == per_orbit.size()) {
            if (sum % n != 0) return true;
            if (static_cast<long long>(out.vectors.size()) >= cap) {
                out.truncated = true;
                return false;
            }
            out.vectors.push_back(cur);
            return true;
        }
        for (const Choice& c : per_orbit[oi]) {
            const auto& orb = a.orbits[oi];
            for (size_t t = 0; t < orb.size(); ++t) cur[orb[t]] = c.fill[t];
            if (!self(self, oi + 1, sum + c.sum)) return false;
        }
        return true;
    };
    rec(rec, 0, 0);
    return out;
}

// True when some twist admits a fixed vector, so the cyclic action downstairs
// extends to the full quotient upstairs.
inline bool extension_exists(const FactoredSignature& f,
                             const std::map<int, long long>& bind = {}) {
    KAction a = k_action(f, bind);
    for (const Twist& tw : twist_candidates(a))
        if (!k_fixed_vectors(a, tw, 1).vectors.empty()) return true;
    return false;
}

}  // namespace ngonal
