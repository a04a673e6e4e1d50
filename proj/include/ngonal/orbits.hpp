#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ngonal/group.hpp"
#include "ngonal/signature.hpp"

namespace ngonal {

// One N-orbit of points above a branch point.  type: 0 regular, 1 stabilizer
// inside C, 2 stabilizer meeting C trivially, 3 mixed.
struct NOrbit {
    long long size = 0;
    long long stab_order = 0;
    long long stab_in_c = 0;
    int type = 0;

    bool operator==(const NOrbit&) const = default;
    auto key() const { return std::tie(type, stab_order, stab_in_c, size); }
    bool operator<(const NOrbit& o) const { return key() < o.key(); }
};

// Decomposition of the fibre over one branch point: all N-orbits on the
// cosets A/<g_i>.
struct OrbitRow {
    long long gen_order = 0;
    long long orbit_size = 0;  // |A| / gen_order
    std::vector<NOrbit> orbits;

    long long count(int type) const {
        long long c = 0;
        for (const NOrbit& o : orbits) c += o.type == type;
        return c;
    }
};

// Split each singular A-orbit into N-orbits and classify their stabilizers
// against C.  Points over the branch point of g_i are the left cosets
// a<g_i>; N acts by left multiplication, so the stabilizer of a coset is
// N meet a<g_i>a^-1.
template <class U>
std::vector<OrbitRow> orbit_decomposition(const FiniteGroup<U>& a,
                                          const std::vector<typename U::Element>& n,
                                          const std::vector<typename U::Element>& c,
                                          const std::vector<typename U::Element>& gv) {
    for (const auto& e : n)
        if (!a.contains(e)) throw std::invalid_argument("orbit_decomposition: N escapes A");
    std::set<int> nset;
    for (const auto& e : n) nset.insert(a.idx(e));
    for (const auto& e : c)
        if (!nset.count(a.idx(e)))
            throw std::invalid_argument("orbit_decomposition: C must sit inside N");
    std::set<int> cset;
    for (const auto& e : c) cset.insert(a.idx(e));
    for (const auto& x : n) {
        const auto xi = a.u.inv(x);
        for (const auto& e : c)
            if (!cset.count(a.idx(a.u.mul(a.u.mul(xi, e), x))))
                throw std::invalid_argument("orbit_decomposition: C must be normal in N");
    }

    Signature sig;
    for (const auto& g : gv) {
        long long o = a.order_of(g);
        if (o < 2)
            throw std::invalid_argument("orbit_decomposition: trivial generating vector entry");
        sig.periods.push_back(Period::finite(o));
    }
    std::string why;
    if (!verify_generating_vector(a, gv, sig, &why))
        throw std::invalid_argument("orbit_decomposition: " + why);

    const long long n_order = static_cast<long long>(n.size());
    std::vector<OrbitRow> rows;
    for (const auto& g : gv) {
        OrbitRow row;
        row.gen_order = a.order_of(g);
        row.orbit_size = a.size() / row.gen_order;

        std::vector<typename U::Element> h = span(a, {g});
        std::vector<int> coset_of(a.size(), -1);
        std::vector<typename U::Element> reps;
        for (const auto& e : a.elems) {
            if (coset_of[a.idx(e)] >= 0) continue;
            int cid = static_cast<int>(reps.size());
            reps.push_back(e);
            for (const auto& x : h) coset_of[a.idx(a.u.mul(e, x))] = cid;
        }

        std::vector<char> seen(reps.size(), 0);
        for (std::size_t start = 0; start < reps.size(); ++start) {
            if (seen[start]) continue;
            std::set<int> orbit;
            for (const auto& x : n) orbit.insert(coset_of[a.idx(a.u.mul(x, reps[start]))]);
            for (int cid : orbit) seen[cid] = 1;

            NOrbit ob;
            ob.size = static_cast<long long>(orbit.size());
            for (const auto& x : n)
                ob.stab_order += coset_of[a.idx(a.u.mul(x, reps[start]))] ==
                                 static_cast<int>(start);
            for (const auto& x : c)
                ob.stab_in_c += coset_of[a.idx(a.u.mul(x, reps[start]))] ==
                                static_cast<int>(start);
            if (ob.size * ob.stab_order != n_order)
                throw std::logic_error("orbit_decomposition: stabilizer bookkeeping failed");
            if (ob.stab_order == 1)
                ob.type = 0;
            else if (ob.stab_in_c == ob.stab_order)
                ob.type = 1;
            else if (ob.stab_in_c == 1)
                ob.type = 2;
            else
                ob.type = 3;
            row.orbits.push_back(ob);
        }
        std::sort(row.orbits.begin(), row.orbits.end());
        rows.push_back(std::move(row));
    }
    return rows;
}

struct OrbitLawReport {
    bool checked = false;
    std::string note;
    std::vector<std::string> violations;

    bool ok() const { return checked && violations.empty(); }
};

// Lemma-level consequences of weak malnormality: at most one Type-1 orbit
// per fibre; Type-1/3 stabilizers fill the whole cyclic point stabilizer
// while Type-2 stabilizers divide it; the Type-2/3 orbits across the whole
// decomposition are the K-generator slots, so there are 0, 2 or 3 of them.
inline OrbitLawReport check_weak_malnormal_orbit_laws(const std::vector<OrbitRow>& rows,
                                                      bool weakly_malnormal) {
    OrbitLawReport rep;
    if (!weakly_malnormal) {
        rep.note = "weak malnormality not established; orbit laws not checked";
        return rep;
    }
    rep.checked = true;
    long long k_slots = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const OrbitRow& row = rows[i];
        std::string where = "row " + std::to_string(i + 1) + " (order " +
                            std::to_string(row.gen_order) + "): ";
        if (row.count(1) > 1)
            rep.violations.push_back(where + "more than one Type 1 orbit in a fibre");
        for (const NOrbit& ob : row.orbits) {
            if ((ob.type == 1 || ob.type == 3) && ob.stab_order != row.gen_order)
                rep.violations.push_back(where + "Type " + std::to_string(ob.type) +
                                         " stabilizer must fill the generator order");
            if (ob.type == 2 && row.gen_order % ob.stab_order != 0)
                rep.violations.push_back(where +
                                         "Type 2 stabilizer must divide the generator order");
        }
        k_slots += row.count(2) + row.count(3);
    }
    if (k_slots != 0 && k_slots != 2 && k_slots != 3)
        rep.violations.push_back("Type 2/3 orbit count across the fibres must be 0, 2 or 3");
    return rep;
}

// Read the signatures of the intermediate and small quotients off the orbit
// data: a singular N-orbit of size s gives the period |N|/s, and an N-orbit
// whose stabilizer meets C in order m > 1 covers |K| m / stab singular
// C-orbits of period m.  Both quotients are spheres, so the two signatures
// must predict the same covering genus.
inline std::pair<Signature, Signature> induced_signature_from_orbits(
    const std::vector<OrbitRow>& rows, long long n_order, long long c_order) {
    if (n_order < 1 || c_order < 1 || n_order % c_order != 0)
        throw std::invalid_argument("induced_signature_from_orbits: bad subgroup orders");
    const long long k_order = n_order / c_order;
    Signature sig_n, sig_c;
    for (const OrbitRow& row : rows) {
        for (const NOrbit& ob : row.orbits) {
            if (ob.stab_order == 1) continue;
            sig_n.periods.push_back(Period::finite(ob.stab_order));
            if (ob.stab_in_c <= 1) continue;
            long long copies = k_order * ob.stab_in_c;
            if (copies % ob.stab_order != 0)
                throw std::logic_error("induced_signature_from_orbits: orbit counts broken");
            copies /= ob.stab_order;
            for (long long i = 0; i < copies; ++i)
                sig_c.periods.push_back(Period::finite(ob.stab_in_c));
        }
    }
    Rat gn = riemann_hurwitz_genus(n_order, sig_n);
    Rat gc = riemann_hurwitz_genus(c_order, sig_c);
    if (gn.denominator() != 1 || gc.denominator() != 1 || gn != gc)
        throw std::domain_error(
            "induced_signature_from_orbits: quotient signatures disagree on the genus");
    return {sig_n.canonical(), sig_c.canonical()};
}

template <class E>
std::pair<Signature, Signature> induced_signature_from_orbits(const std::vector<OrbitRow>& rows,
                                                              const std::vector<E>& n,
                                                              const std::vector<E>& c) {
    return induced_signature_from_orbits(rows, static_cast<long long>(n.size()),
                                         static_cast<long long>(c.size()));
}

}  // namespace ngonal
