#pragma once

#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/perm.hpp"
#include "ngonal/signature.hpp"

namespace ngonal {

constexpr long long kDefaultGroupCap = 1000000;

struct PermUniverse {
    using Element = Perm;
    int degree = 1;
    Perm id() const { return Perm::identity(degree); }
    Perm mul(const Perm& a, const Perm& b) const { return a * b; }
    Perm inv(const Perm& a) const { return a.inverse(); }
};

// Element of Outer x| Z_n^dim written as (outer part, translation part).
struct SdElem {
    int outer = 0;  // index into the universe's outer element list
    std::vector<long long> inner;

    bool operator==(const SdElem& o) const = default;
    bool operator<(const SdElem& o) const {
        if (outer != o.outer) return outer < o.outer;
        return inner < o.inner;
    }
};

// Semidirect product of a small permutation group acting on Z_n^dim by
// matrices.  act[g] is the automorphism B_g with B_{g o h} = B_g B_h under
// function composition, so (s1,v1)*(s2,v2) = (s1*s2, B_{s2}(v1) + v2)
// associates.
struct SemidirectUniverse {
    using Element = SdElem;
    std::vector<Perm> outer;                              // closed list, outer[0] = identity
    long long n = 1;                                      // inner modulus
    int dim = 1;                                          // inner rank
    std::vector<std::vector<long long>> act;              // per outer element, dim*dim row-major
    std::map<Perm, int> outer_index;

    int oidx(const Perm& p) const {
        auto it = outer_index.find(p);
        if (it == outer_index.end()) throw std::logic_error("outer element not in universe");
        return it->second;
    }

    std::vector<long long> apply_act(int g, const std::vector<long long>& v) const {
        std::vector<long long> r(dim, 0);
        const auto& M = act[g];
        for (int i = 0; i < dim; ++i) {
            long long s = 0;
            for (int j = 0; j < dim; ++j) s += M[i * dim + j] * v[j];
            r[i] = ((s % n) + n) % n;
        }
        return r;
    }

    SdElem id() const { return {0, std::vector<long long>(dim, 0)}; }

    SdElem mul(const SdElem& a, const SdElem& b) const {
        SdElem r;
        r.outer = oidx(outer[a.outer] * outer[b.outer]);
        r.inner = apply_act(b.outer, a.inner);
        for (int i = 0; i < dim; ++i) r.inner[i] = (r.inner[i] + b.inner[i]) % n;
        return r;
    }

    SdElem inv(const SdElem& a) const {
        SdElem r;
        r.outer = oidx(outer[a.outer].inverse());
        r.inner = apply_act(r.outer, a.inner);
        for (int i = 0; i < dim; ++i) r.inner[i] = (n - r.inner[i]) % n;
        return r;
    }
};

// Closed list of group elements in breadth-first order from the identity,
// multiplying by generators in the given order.  elems[0] is the identity;
// the labeling is deterministic and shared by everything downstream.
template <class U>
struct FiniteGroup {
    U u;
    std::vector<typename U::Element> gens;
    std::vector<typename U::Element> elems;
    std::map<typename U::Element, int> index;

    using Element = typename U::Element;

    long long size() const { return static_cast<long long>(elems.size()); }
    int idx(const Element& e) const {
        auto it = index.find(e);
        if (it == index.end()) throw std::logic_error("element outside group");
        return it->second;
    }
    bool contains(const Element& e) const { return index.count(e) > 0; }

    long long order_of(const Element& e) const {
        Element p = e;
        long long k = 1;
        while (!(p == u.id())) {
            p = u.mul(p, e);
            ++k;
            if (k > size()) throw std::logic_error("order_of runaway");
        }
        return k;
    }
};

// Naive breadth-first closure; throws once the cap is exceeded.
template <class U>
FiniteGroup<U> close(const U& u, std::vector<typename U::Element> gens,
                     long long cap = kDefaultGroupCap) {
    FiniteGroup<U> g;
    g.u = u;
    g.gens = gens;
    g.elems.push_back(u.id());
    g.index[u.id()] = 0;
    std::deque<typename U::Element> todo{u.id()};
    while (!todo.empty()) {
        auto cur = todo.front();
        todo.pop_front();
        for (const auto& s : gens) {
            auto nxt = u.mul(cur, s);
            if (g.index.count(nxt)) continue;
            if (static_cast<long long>(g.elems.size()) >= cap)
                throw std::runtime_error("group too large for desk scale");
            g.index[nxt] = static_cast<int>(g.elems.size());
            g.elems.push_back(nxt);
            todo.push_back(nxt);
        }
    }
    return g;
}

using PermGroup = FiniteGroup<PermUniverse>;

inline PermGroup close_perms(std::vector<Perm> gens, long long cap = kDefaultGroupCap) {
    if (gens.empty()) throw std::invalid_argument("need at least one generator");
    PermUniverse u{gens[0].degree()};
    return close(u, std::move(gens), cap);
}

inline bool is_transitive(const PermGroup& g) {
    int m = g.u.degree;
    std::vector<bool> seen(m, false);
    std::deque<int> todo{0};
    seen[0] = true;
    int cnt = 1;
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop_front();
        for (const auto& s : g.gens) {
            int y = s.apply(x);
            if (!seen[y]) {
                seen[y] = true;
                ++cnt;
                todo.push_back(y);
            }
        }
    }
    return cnt == m;
}

// Subgroup closure inside an ambient group (same universe).
template <class U>
std::vector<typename U::Element> span(const FiniteGroup<U>& g,
                                      const std::vector<typename U::Element>& gens) {
    auto sub = close(g.u, gens, g.size() + 1);
    for (const auto& e : sub.elems)
        if (!g.contains(e)) throw std::logic_error("span escaped the ambient group");
    return sub.elems;
}

// Right-coset action of g on H\G, cosets labeled breadth-first from H along
// the generator order.  The generator images compose left to right exactly
// like the generators themselves.
template <class U>
struct CosetAction {
    int index = 0;
    std::vector<Perm> gen_images;          // one per g.gens
    std::vector<int> coset_of;             // element index -> coset label (0-based)
    std::vector<typename U::Element> reps; // coset label -> representative
    std::vector<typename U::Element> core; // kernel of the action, as elements
};

template <class U>
CosetAction<U> coset_action(const FiniteGroup<U>& g,
                            const std::vector<typename U::Element>& subgroup) {
    CosetAction<U> act;
    std::vector<int> key(g.elems.size(), -1);  // element -> canonical coset key
    std::vector<int> hidx;
    hidx.reserve(subgroup.size());
    for (const auto& h : subgroup) hidx.push_back(g.idx(h));
    for (size_t e = 0; e < g.elems.size(); ++e) {
        if (key[e] != -1) continue;
        int best = static_cast<int>(g.elems.size());
        std::vector<int> members;
        members.reserve(subgroup.size());
        for (int h : hidx) {
            int m = g.idx(g.u.mul(g.elems[h], g.elems[e]));
            members.push_back(m);
            best = std::min(best, m);
        }
        for (int m : members) key[m] = best;
    }
    act.coset_of.assign(g.elems.size(), -1);
    std::deque<int> todo;
    auto label = [&](int element) {
        int k = key[element];
        if (act.coset_of[k] == -1) {
            act.coset_of[k] = static_cast<int>(act.reps.size());
            act.reps.push_back(g.elems[k]);
            todo.push_back(k);
        }
        return act.coset_of[k];
    };
    label(g.idx(g.u.id()));
    while (!todo.empty()) {
        int rep = todo.front();
        todo.pop_front();
        for (const auto& s : g.gens) label(g.idx(g.u.mul(g.elems[rep], s)));
    }
    act.index = static_cast<int>(act.reps.size());
    for (size_t e = 0; e < g.elems.size(); ++e) act.coset_of[e] = act.coset_of[key[e]];
    for (const auto& s : g.gens) {
        Perm p = Perm::identity(act.index);
        for (int c = 0; c < act.index; ++c)
            p.img[c] = act.coset_of[g.idx(g.u.mul(act.reps[c], s))];
        act.gen_images.push_back(p);
    }
    for (size_t e = 0; e < g.elems.size(); ++e) {
        bool in_core = true;
        for (int c = 0; c < act.index && in_core; ++c)
            in_core = act.coset_of[g.idx(g.u.mul(act.reps[c], g.elems[e]))] == c;
        if (in_core) act.core.push_back(g.elems[e]);
    }
    return act;
}

template <class U>
std::vector<typename U::Element> normalizer(const FiniteGroup<U>& g,
                                            const std::vector<typename U::Element>& h) {
    std::set<int> hset;
    for (const auto& e : h) hset.insert(g.idx(e));
    std::vector<typename U::Element> out;
    for (const auto& x : g.elems) {
        auto xi = g.u.inv(x);
        bool ok = true;
        for (const auto& e : h) {
            if (!hset.count(g.idx(g.u.mul(g.u.mul(xi, e), x)))) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

template <class U>
std::vector<typename U::Element> conjugate_subgroup(const FiniteGroup<U>& g,
                                                    const std::vector<typename U::Element>& h,
                                                    const typename U::Element& a) {
    std::vector<typename U::Element> out;
    auto ai = g.u.inv(a);
    for (const auto& e : h) out.push_back(g.u.mul(g.u.mul(ai, e), a));
    return out;
}

template <class U>
std::vector<typename U::Element> intersect_subgroups(const FiniteGroup<U>& g,
                                                     const std::vector<typename U::Element>& a,
                                                     const std::vector<typename U::Element>& b) {
    std::set<int> bi;
    for (const auto& e : b) bi.insert(g.idx(e));
    std::vector<typename U::Element> out;
    for (const auto& e : a)
        if (bi.count(g.idx(e))) out.push_back(e);
    return out;
}

// Checks the three generating-vector laws against a concrete genus-0
// signature: element orders match the periods in order, the product (left to
// right) is the identity, and the entries generate the whole group.
template <class U>
bool verify_generating_vector(const FiniteGroup<U>& g,
                              const std::vector<typename U::Element>& vec,
                              const Signature& sig, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (sig.genus != 0) return fail("genus-0 signatures only");
    if (vec.size() != sig.periods.size()) return fail("length differs from period count");
    for (size_t i = 0; i < vec.size(); ++i) {
        if (!sig.periods[i].is_constant()) return fail("symbolic signature: evaluate parameters first");
        if (g.order_of(vec[i]) != sig.periods[i].value())
            return fail("order mismatch at slot " + std::to_string(i + 1));
    }
    auto prod = g.u.id();
    for (const auto& e : vec) prod = g.u.mul(prod, e);
    if (!(prod == g.u.id())) return fail("product is not the identity");
    if (static_cast<long long>(span(g, vec).size()) != g.size())
        return fail("entries do not generate");
    if (why) why->clear();
    return true;
}

}  // namespace ngonal
