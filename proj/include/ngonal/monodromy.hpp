#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/group.hpp"
#include "ngonal/perm.hpp"
#include "ngonal/signature.hpp"

// Monodromy of finite-index inclusions between genus-0 signatures: the cycle
// structures a degree-m coset action can give the canonical generators, the
// permutation tuples realizing them, and words carrying the small group's
// canonical generators into the big one.

namespace ngonal {

using CycleType = std::vector<int>;          // partition of m, parts descending
using CycleVector = std::vector<CycleType>;  // one partition per generator slot
using MonodromyVector = std::vector<Perm>;

namespace detail {

// Partitions of m with parts drawn from `allowed`, each written descending.
inline void partitions_rec(int m, int max_part, const std::vector<int>& allowed,
                           CycleType& cur, std::vector<CycleType>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (auto it = allowed.rbegin(); it != allowed.rend(); ++it) {
        if (*it > max_part || *it > m) continue;
        cur.push_back(*it);
        partitions_rec(m - *it, *it, allowed, cur, out);
        cur.pop_back();
    }
}

inline std::vector<CycleType> partitions_with_parts(int m, const std::vector<int>& allowed) {
    std::vector<CycleType> out;
    CycleType cur;
    partitions_rec(m, m, allowed, cur, out);
    return out;
}

// Forward reachability from 0 is the full orbit: every generator has finite
// order, so the generated monoid is already a group.
inline bool tuple_transitive(const MonodromyVector& v, int m) {
    std::vector<char> seen(m, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const Perm& p : v) {
            int y = p.apply(x);
            if (!seen[y]) {
                seen[y] = 1;
                ++cnt;
                stack.push_back(y);
            }
        }
    }
    return cnt == m;
}

// Lex-least permutation of the given cycle type: fixed points first, then each
// longer cycle laid out on a consecutive block of points.
inline Perm lex_min_of_type(int m, CycleType t) {
    std::sort(t.begin(), t.end());
    Perm p = Perm::identity(m);
    int a = 0;
    for (int l : t) {
        for (int i = 0; i + 1 < l; ++i) p.img[a + i] = a + i + 1;
        p.img[a + l - 1] = a;
        a += l;
    }
    return p;
}

// Simultaneous relabeling through g: the image q satisfies q(g(x)) = g(p(x)).
inline Perm relabel(const Perm& p, const Perm& g) {
    Perm q = Perm::identity(p.degree());
    for (int x = 0; x < p.degree(); ++x) q.img[g.apply(x)] = g.apply(p.apply(x));
    return q;
}

inline std::vector<Perm> all_of_type(int m, const CycleType& t) {
    CycleType want = t;
    std::sort(want.begin(), want.end(), std::greater<int>());
    std::vector<int> img(m);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Perm> out;
    do {
        Perm p{img};
        if (cycle_type(p) == want) out.push_back(p);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

inline std::vector<Perm> all_perms(int m) {
    std::vector<int> img(m);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(Perm{img});
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

}  // namespace detail

// Cycle vectors a degree-m inclusion sub < sup can induce: one partition of m
// per sup period, parts dividing a concrete period (unrestricted at parabolic
// slots), such that the periods induced on the cycles reproduce sub's period
// multiset.  Full cycles at a concrete slot induce nothing; every cycle at a
// parabolic slot induces a parabolic period.
inline std::vector<CycleVector> compatible_cycle_vectors(const Signature& sub,
                                                         const Signature& sup) {
    if (sub.genus != 0 || sup.genus != 0)
        throw std::domain_error("compatible_cycle_vectors: genus-0 signatures only");
    for (const Period& p : sub.periods)
        if (p.is_parametric())
            throw std::domain_error("compatible_cycle_vectors: parametric period");
    for (const Period& p : sup.periods)
        if (p.is_parametric())
            throw std::domain_error("compatible_cycle_vectors: parametric period");
    Rat idx = index_of_pair(sub, sup);
    if (idx.denominator() != 1)
        throw std::invalid_argument("compatible_cycle_vectors: the index is not an integer");
    long long m = idx.numerator();
    if (m > 24) throw std::domain_error("compatible_cycle_vectors: index too large for desk scale");

    int t = static_cast<int>(sup.periods.size());
    std::map<long long, int> want;
    int want_inf = 0;
    for (const Period& p : sub.periods) {
        if (p.parabolic)
            ++want_inf;
        else
            ++want[p.value()];
    }
    std::vector<std::vector<CycleType>> slot_parts(t);
    for (int j = 0; j < t; ++j) {
        std::vector<int> allowed;
        for (int p = 1; p <= m; ++p)
            if (sup.periods[j].parabolic || sup.periods[j].value() % p == 0) allowed.push_back(p);
        slot_parts[j] = detail::partitions_with_parts(static_cast<int>(m), allowed);
    }

    std::vector<CycleVector> out;
    CycleVector cur(t);
    auto dfs = [&](auto&& self, int j, std::map<long long, int> need, int need_inf) -> void {
        if (j == t) {
            if (need_inf != 0) return;
            for (const auto& kv : need)
                if (kv.second != 0) return;
            out.push_back(cur);
            return;
        }
        for (const CycleType& pt : slot_parts[j]) {
            std::map<long long, int> nn = need;
            int ni = need_inf;
            bool ok = true;
            if (sup.periods[j].parabolic) {
                ni -= static_cast<int>(pt.size());
                ok = ni >= 0;
            } else {
                long long n = sup.periods[j].value();
                for (int p : pt) {
                    if (p == n) continue;
                    if (--nn[n / p] < 0) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            cur[j] = pt;
            self(self, j + 1, std::move(nn), ni);
        }
    };
    dfs(dfs, 0, want, want_inf);
    std::sort(out.begin(), out.end());
    return out;
}

// Representative of the simultaneous-conjugation class of v: the lex-least
// relabeled tuple.  Its first entry is always the lex-least permutation of its
// own cycle type, so only relabelings fixing that layout need scanning.
inline MonodromyVector canonicalize_monodromy(const MonodromyVector& v) {
    if (v.empty()) throw std::invalid_argument("canonicalize_monodromy: empty tuple");
    int m = v.front().degree();
    Perm m1 = detail::lex_min_of_type(m, cycle_type(v.front()));
    std::optional<MonodromyVector> best;
    for (const Perm& g : detail::all_perms(m)) {
        if (!(detail::relabel(v.front(), g) == m1)) continue;
        MonodromyVector w;
        w.reserve(v.size());
        for (const Perm& p : v) w.push_back(detail::relabel(p, g));
        if (!best || w < *best) best = std::move(w);
    }
    return *best;
}

// All transitive tuples with the prescribed cycle types and trivial product,
// one lex-least representative per simultaneous-conjugation class.  Degrees
// beyond the bound are refused outright rather than attempted.
inline std::vector<MonodromyVector> find_monodromy_vectors(const CycleVector& P, int bound = 8) {
    int t = static_cast<int>(P.size());
    if (t == 0) throw std::invalid_argument("find_monodromy_vectors: empty cycle vector");
    long long m = -1;
    std::vector<CycleType> types;
    for (const CycleType& part : P) {
        CycleType s = part;
        std::sort(s.begin(), s.end(), std::greater<int>());
        long long sum = 0;
        for (int p : s) {
            if (p < 1) throw std::invalid_argument("find_monodromy_vectors: parts must be positive");
            sum += p;
        }
        if (m < 0)
            m = sum;
        else if (sum != m)
            throw std::invalid_argument("find_monodromy_vectors: cycle types partition different degrees");
        types.push_back(std::move(s));
    }
    if (m < 1) throw std::invalid_argument("find_monodromy_vectors: degree must be positive");
    if (m > bound)
        throw std::domain_error("find_monodromy_vectors: degree " + std::to_string(m) +
                                " exceeds the search bound " + std::to_string(bound));
    int md = static_cast<int>(m);
    if (t == 1) {
        if (md == 1) return {MonodromyVector{Perm::identity(1)}};
        return {};  // a single entry must be the identity, never transitive past degree 1
    }

    Perm m1 = detail::lex_min_of_type(md, types[0]);
    std::vector<Perm> cent;
    for (const Perm& g : detail::all_perms(md))
        if (detail::relabel(m1, g) == m1) cent.push_back(g);
    std::map<CycleType, std::vector<Perm>> classes;
    for (int j = 1; j + 1 < t; ++j)
        if (!classes.count(types[j])) classes[types[j]] = detail::all_of_type(md, types[j]);

    std::set<MonodromyVector> found;
    MonodromyVector cur{m1};
    auto record = [&](const MonodromyVector& v) {
        MonodromyVector best = v;
        for (const Perm& g : cent) {
            MonodromyVector w;
            w.reserve(v.size());
            for (const Perm& p : v) w.push_back(detail::relabel(p, g));
            if (w < best) best = std::move(w);
        }
        found.insert(best);
    };
    auto dfs = [&](auto&& self, int j, const Perm& prefix) -> void {
        if (j == t - 1) {
            Perm last = prefix.inverse();
            if (cycle_type(last) != types[j]) return;
            cur.push_back(last);
            if (detail::tuple_transitive(cur, md)) record(cur);
            cur.pop_back();
            return;
        }
        for (const Perm& p : classes[types[j]]) {
            cur.push_back(p);
            self(self, j + 1, prefix * p);
            cur.pop_back();
        }
    };
    dfs(dfs, 1, m1);
    return std::vector<MonodromyVector>(found.begin(), found.end());
}

// Periods the point stabilizer inherits from one canonical generator of order
// k acting as rho: a cycle of length l contributes k/l, full cycles nothing.
inline std::vector<long long> singerman_induced(const Perm& rho, long long k) {
    if (k < 1) throw std::invalid_argument("singerman_induced: order must be positive");
    std::vector<long long> out;
    for (int l : cycle_type(rho)) {
        if (k % l != 0)
            throw std::invalid_argument("singerman_induced: cycle length " + std::to_string(l) +
                                        " does not divide " + std::to_string(k));
        if (l < k) out.push_back(k / l);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Words in the canonical generators z1..zt, kept freely reduced as they are
// built.  The printed form is "z2*z1*z2^-1".
struct Letter {
    int gen = 0;  // 1-based
    long long exp = 0;

    bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

inline void word_append(Word& w, int gen, long long exp) {
    if (exp == 0) return;
    if (!w.empty() && w.back().gen == gen) {
        w.back().exp += exp;
        if (w.back().exp == 0) w.pop_back();
        return;
    }
    w.push_back(Letter{gen, exp});
}

inline Word word_concat(const Word& a, const Word& b) {
    Word r = a;
    for (const Letter& l : b) word_append(r, l.gen, l.exp);
    return r;
}

inline Word word_inverse(const Word& w) {
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) word_append(r, it->gen, -it->exp);
    return r;
}

inline std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '*';
        s += 'z';
        s += std::to_string(w[i].gen);
        if (w[i].exp != 1) s += '^' + std::to_string(w[i].exp);
    }
    return s;
}

inline Perm eval_word(const Word& w, const std::vector<Perm>& gens) {
    if (gens.empty()) throw std::invalid_argument("eval_word: no generators");
    Perm r = Perm::identity(gens.front().degree());
    for (const Letter& l : w) {
        if (l.gen < 1 || l.gen > static_cast<int>(gens.size()))
            throw std::out_of_range("eval_word: generator index");
        r = r * gens[l.gen - 1].power(l.exp);
    }
    return r;
}

// One canonical generator of the point stabilizer: the word u*zj^l*u^-1, the
// slot and cycle length it came from, and the period it induces downstairs.
struct InducedWord {
    Word w;
    int gen = 0;
    long long power = 0;
    Period induced;

    bool operator==(const InducedWord&) const = default;
};

struct WordMap {
    int base = 0;
    std::vector<InducedWord> words;
};

// Elementary braid move at position i: (a, b) -> (a b a^-1, a).  The slot and
// induced-period tags travel with their words; the full product is unchanged.
inline void braid_left(std::vector<InducedWord>& ws, size_t i) {
    if (i + 1 >= ws.size()) throw std::out_of_range("braid_left: position");
    InducedWord a = ws[i], b = ws[i + 1];
    InducedWord c = b;
    c.w = word_concat(word_concat(a.w, b.w), word_inverse(a.w));
    ws[i] = std::move(c);
    ws[i + 1] = std::move(a);
}

// Inverse move: (a, b) -> (b, b^-1 a b).
inline void braid_right(std::vector<InducedWord>& ws, size_t i) {
    if (i + 1 >= ws.size()) throw std::out_of_range("braid_right: position");
    InducedWord a = ws[i], b = ws[i + 1];
    InducedWord c = a;
    c.w = word_concat(word_concat(word_inverse(b.w), a.w), b.w);
    ws[i] = std::move(b);
    ws[i + 1] = std::move(c);
}

// Canonical generators of the stabilizer of the base point, one per cycle of
// each monodromy image except full cycles at concrete slots, ordered by slot
// and then by the smallest point of the cycle.  Each word is u*zj^l*u^-1 with
// l the cycle length and u a shortest word moving the base into the cycle;
// the u's are chosen so the evaluated left-to-right product is the identity,
// which a sequence of braid moves always makes possible.
inline WordMap word_map(const MonodromyVector& M, const Signature& sup, int base = 0) {
    int t = static_cast<int>(M.size());
    if (t == 0 || static_cast<size_t>(t) != sup.periods.size())
        throw std::invalid_argument("word_map: one permutation per period required");
    int m = M.front().degree();
    for (const Perm& p : M)
        if (p.degree() != m) throw std::invalid_argument("word_map: mixed degrees");
    if (base < 0 || base >= m) throw std::out_of_range("word_map: base point");
    for (const Period& p : sup.periods)
        if (p.is_parametric()) throw std::domain_error("word_map: parametric period");
    Perm prod = Perm::identity(m);
    for (const Perm& p : M) prod = prod * p;
    if (!prod.is_identity())
        throw std::invalid_argument("word_map: product of the images is not the identity");
    if (!detail::tuple_transitive(M, m))
        throw std::invalid_argument("word_map: the images are not transitive");
    for (int j = 0; j < t; ++j) {
        if (sup.periods[j].parabolic) continue;
        for (int l : cycle_type(M[j]))
            if (sup.periods[j].value() % l != 0)
                throw std::invalid_argument("word_map: cycle length does not divide its period");
    }

    // image group, breadth first, with one shortest positive word per element
    std::vector<Perm> elems{Perm::identity(m)};
    std::vector<Word> eword{Word{}};
    std::map<Perm, int> index{{elems[0], 0}};
    for (size_t cur = 0; cur < elems.size(); ++cur) {
        for (int j = 0; j < t; ++j) {
            Perm nxt = elems[cur] * M[j];
            if (index.emplace(nxt, static_cast<int>(elems.size())).second) {
                Word w = eword[cur];
                word_append(w, j + 1, 1);
                elems.push_back(std::move(nxt));
                eword.push_back(std::move(w));
            }
        }
        if (elems.size() > 1000000) throw std::domain_error("word_map: image group too large");
    }

    struct Emission {
        int j;
        long long l;
        std::vector<char> in_cycle;
    };
    std::vector<Emission> ems;
    for (int j = 0; j < t; ++j) {
        std::vector<char> seen(m, 0);
        for (int s = 0; s < m; ++s) {
            if (seen[s]) continue;
            std::vector<char> mask(m, 0);
            long long l = 0;
            int x = s;
            do {
                mask[x] = 1;
                seen[x] = 1;
                ++l;
                x = M[j].apply(x);
            } while (x != s);
            if (!sup.periods[j].parabolic && l == sup.periods[j].value()) continue;
            ems.push_back({j, l, std::move(mask)});
        }
    }
    size_t s = ems.size();
    if (s == 0) return WordMap{base, {}};

    // conjugates A*zj^l*A^-1 whose conjugator moves the base into the cycle;
    // the first breadth-first witness per value keeps the words shortest
    struct Cand {
        Perm val;
        int witness;
    };
    std::vector<std::vector<Cand>> cands(s);
    for (size_t i = 0; i < s; ++i) {
        std::map<Perm, int> first;
        Perm pl = M[ems[i].j].power(ems[i].l);
        for (size_t a = 0; a < elems.size(); ++a) {
            if (!ems[i].in_cycle[elems[a].apply(base)]) continue;
            first.emplace(elems[a] * pl * elems[a].inverse(), static_cast<int>(a));
        }
        for (const auto& kv : first) cands[i].push_back({kv.first, kv.second});
    }

    std::map<Perm, int> last_lookup;
    for (int c = 0; c < static_cast<int>(cands[s - 1].size()); ++c)
        last_lookup.emplace(cands[s - 1][c].val, c);
    std::vector<int> chosen(s, -1);
    auto dfs = [&](auto&& self, size_t i, const Perm& pref) -> bool {
        if (i == s - 1) {
            auto it = last_lookup.find(pref.inverse());
            if (it == last_lookup.end()) return false;
            chosen[i] = it->second;
            return true;
        }
        for (int c = 0; c < static_cast<int>(cands[i].size()); ++c) {
            chosen[i] = c;
            if (self(self, i + 1, pref * cands[i][c].val)) return true;
        }
        return false;
    };
    if (!dfs(dfs, 0, Perm::identity(m)))
        throw std::logic_error("word_map: no conjugator assignment closes the product");

    WordMap result;
    result.base = base;
    for (size_t i = 0; i < s; ++i) {
        const Emission& e = ems[i];
        const Word& u = eword[cands[i][chosen[i]].witness];
        Word w = u;
        word_append(w, e.j + 1, e.l);
        for (const Letter& l : word_inverse(u)) word_append(w, l.gen, l.exp);
        InducedWord iw;
        iw.w = std::move(w);
        iw.gen = e.j + 1;
        iw.power = e.l;
        iw.induced = sup.periods[e.j].parabolic ? Period::inf()
                                                : Period::finite(sup.periods[e.j].value() / e.l);
        result.words.push_back(std::move(iw));
    }
    return result;
}

enum class PairVerdict { Constrained, Tight, FamilyMember };

struct PairClass {
    PairVerdict verdict = PairVerdict::Constrained;
    std::optional<Signature> parent_sub;  // set for family members only
    std::optional<Signature> parent_sup;
};

// Decides whether the cycle vector pins every generator order upstairs
// (constrained), pins all of them except at parabolic slots (tight), or
// leaves slack, in which case the pair sits inside the parabolic parent
// family obtained by relaxing every slack slot.  A slot is pinned exactly
// when the lcm of its cycle lengths equals its period.
inline PairClass classify_pair(const Signature& sub, const Signature& sup, const CycleVector& P) {
    if (sub.genus != 0 || sup.genus != 0)
        throw std::domain_error("classify_pair: genus-0 signatures only");
    for (const Period& p : sub.periods)
        if (p.is_parametric()) throw std::domain_error("classify_pair: parametric period");
    for (const Period& p : sup.periods)
        if (p.is_parametric()) throw std::domain_error("classify_pair: parametric period");
    int t = static_cast<int>(sup.periods.size());
    if (static_cast<size_t>(t) != P.size())
        throw std::invalid_argument("classify_pair: one cycle type per period required");
    long long m = -1;
    for (const CycleType& part : P) {
        long long sum = 0;
        for (int p : part) {
            if (p < 1) throw std::invalid_argument("classify_pair: parts must be positive");
            sum += p;
        }
        if (m < 0)
            m = sum;
        else if (sum != m)
            throw std::invalid_argument("classify_pair: cycle types partition different degrees");
    }
    std::vector<Period> induced;
    for (int j = 0; j < t; ++j) {
        if (sup.periods[j].parabolic) {
            for (size_t i = 0; i < P[j].size(); ++i) induced.push_back(Period::inf());
            continue;
        }
        long long n = sup.periods[j].value();
        for (int p : P[j]) {
            if (n % p != 0)
                throw std::invalid_argument("classify_pair: cycle length does not divide its period");
            if (p < n) induced.push_back(Period::finite(n / p));
        }
    }
    if (!(Signature{0, induced} == sub))
        throw std::invalid_argument("classify_pair: the cycle vector does not induce the smaller signature");

    if (m == 1) return {};  // the identity inclusion leaves nothing to deform

    bool has_parabolic = false;
    std::vector<char> pinned(t, 1);
    bool all_pinned = true;
    for (int j = 0; j < t; ++j) {
        if (sup.periods[j].parabolic) {
            has_parabolic = true;
            continue;
        }
        long long l = 1;
        for (int p : P[j]) l = lcm_ll(l, p);
        pinned[j] = l == sup.periods[j].value();
        all_pinned = all_pinned && pinned[j];
    }
    if (all_pinned) return {has_parabolic ? PairVerdict::Tight : PairVerdict::Constrained, {}, {}};

    std::vector<Period> up, down;
    for (int j = 0; j < t; ++j) {
        if (sup.periods[j].parabolic || !pinned[j]) {
            up.push_back(Period::inf());
            for (size_t i = 0; i < P[j].size(); ++i) down.push_back(Period::inf());
            continue;
        }
        long long n = sup.periods[j].value();
        up.push_back(sup.periods[j]);
        for (int p : P[j])
            if (p < n) down.push_back(Period::finite(n / p));
    }
    PairClass r;
    r.verdict = PairVerdict::FamilyMember;
    r.parent_sub = Signature{0, down}.canonical();
    r.parent_sup = Signature{0, up}.canonical();
    return r;
}

struct FuseReport {
    long long index = 0;
    long long image_order = 0;
    long long core_order = 0;
    long long stabilizer_order = 0;
    bool core_trivial = false;
    bool stabilizer_cyclic = false;
};

// Coset action of A on C with C normal in the intermediate N: reports the
// faithfulness of the action (core) and the block the image of C forms as the
// stabilizer of the trivial coset.
template <class U>
FuseReport fuse_triple(const FiniteGroup<U>& A, const std::vector<typename U::Element>& N,
                       const std::vector<typename U::Element>& C) {
    std::set<int> cset, nset;
    for (const auto& e : N) {
        if (!A.contains(e)) throw std::invalid_argument("fuse_triple: N is not inside A");
        nset.insert(A.idx(e));
    }
    for (const auto& e : C) {
        if (!A.contains(e)) throw std::invalid_argument("fuse_triple: C is not inside A");
        cset.insert(A.idx(e));
        if (!nset.count(A.idx(e))) throw std::invalid_argument("fuse_triple: C is not inside N");
    }
    for (const auto& n : N)
        for (const auto& c : C)
            if (!cset.count(A.idx(A.u.mul(A.u.mul(A.u.inv(n), c), n))))
                throw std::invalid_argument("fuse_triple: C is not normal in N");

    auto act = coset_action(A, C);
    FuseReport r;
    r.index = act.index;
    r.core_order = static_cast<long long>(act.core.size());
    r.core_trivial = r.core_order == 1;
    r.image_order = A.size() / r.core_order;
    std::set<Perm> stab;
    for (const auto& c : C) {
        Perm p = Perm::identity(act.index);
        for (int k = 0; k < act.index; ++k)
            p.img[k] = act.coset_of[A.idx(A.u.mul(act.reps[k], c))];
        stab.insert(std::move(p));
    }
    r.stabilizer_order = static_cast<long long>(stab.size());
    for (const Perm& p : stab)
        if (p.order() == r.stabilizer_order) {
            r.stabilizer_cyclic = true;
            break;
        }
    return r;
}

}  // namespace ngonal
