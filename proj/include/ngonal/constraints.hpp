#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/group.hpp"
#include "ngonal/signature.hpp"

namespace ngonal {

// Total ramification of the degree-n map S -> S/C read off the genus-0
// quotient signature: each period v contributes n - n/v.  Periods must be
// concrete and divide n.
inline long long total_ramification(long long n, const Signature& sig_c) {
    if (n < 2) throw std::invalid_argument("total_ramification: degree must be >= 2");
    if (sig_c.genus != 0)
        throw std::domain_error("total_ramification reads a genus-0 quotient signature");
    long long r = 0;
    for (const Period& p : sig_c.periods) {
        if (p.parabolic || p.is_parametric())
            throw std::domain_error("total_ramification needs concrete finite periods");
        long long v = p.value();
        if (n % v != 0)
            throw std::invalid_argument("total_ramification: period does not divide the degree");
        r += n - n / v;
    }
    return r;
}

struct BranchingReport {
    long long n = 0;
    long long ramification = 0;
    long long threshold = 0;  // 2n(n-1)(sigma2 + 1)
    bool strongly_branched = false;
};

// R > 2n(n-1)(sigma2 + 1), with sigma2 the genus of the quotient surface.
inline BranchingReport strong_branching(long long n, long long sigma2, long long ramification) {
    if (n < 2) throw std::invalid_argument("strong_branching: degree must be >= 2");
    if (sigma2 < 0 || ramification < 0)
        throw std::invalid_argument("strong_branching: negative input");
    BranchingReport rep;
    rep.n = n;
    rep.ramification = ramification;
    rep.threshold = 2 * n * (n - 1) * (sigma2 + 1);
    rep.strongly_branched = ramification > rep.threshold;
    return rep;
}

// Same test phrased through the covering genus: sigma1 > n^2 sigma2 + (n-1)^2.
// Equivalent to the ramification form via 2 sigma1 - 2 = n(2 sigma2 - 2) + R.
inline bool strongly_branched_genus(long long n, long long sigma1, long long sigma2 = 0) {
    if (n < 2) throw std::invalid_argument("strongly_branched_genus: degree must be >= 2");
    if (sigma1 < 0 || sigma2 < 0)
        throw std::invalid_argument("strongly_branched_genus: negative genus");
    return sigma1 > n * n * sigma2 + (n - 1) * (n - 1);
}

// C is weakly malnormal in A when C meets each conjugate C^g, g outside the
// normalizer, trivially.
template <class U>
bool weakly_malnormal(const FiniteGroup<U>& a, const std::vector<typename U::Element>& c) {
    for (const auto& x : c)
        if (!a.contains(x))
            throw std::invalid_argument("weakly_malnormal: subgroup element outside the group");
    std::set<int> cset;
    for (const auto& x : c) cset.insert(a.idx(x));
    std::set<int> nset;
    for (const auto& x : normalizer(a, c)) nset.insert(a.idx(x));
    const auto e = a.u.id();
    for (const auto& g : a.elems) {
        if (nset.count(a.idx(g))) continue;
        const auto gi = a.u.inv(g);
        for (const auto& x : c) {
            if (x == e) continue;
            if (cset.count(a.idx(a.u.mul(a.u.mul(gi, x), g)))) return false;
        }
    }
    return true;
}

enum class NormalityVerdict { Normal, NoConclusion };

// A weakly malnormal n-gonal group on a surface of genus sigma > (n-1)^2 is
// normal in the full automorphism group; otherwise nothing follows.
inline NormalityVerdict normality_consequence(long long n, long long sigma, bool weakly_malnormal) {
    if (n < 2) throw std::invalid_argument("normality_consequence: degree must be >= 2");
    if (sigma < 0) throw std::invalid_argument("normality_consequence: negative genus");
    if (weakly_malnormal && sigma > (n - 1) * (n - 1)) return NormalityVerdict::Normal;
    return NormalityVerdict::NoConclusion;
}

// One template row of the signature-pair table for a normalizer quotient K.
// The normalizer signature carries one slot a_i * m_i per period a_i of K,
// with the multipliers m_i >= 1 free, followed by the fixed base periods; the
// full-group signature keeps the base and adds `fills` free periods.  The
// codimension of the inclusion locus equals slots - fills.
struct Table5Row {
    std::string name;                   // 0A..3A for triangle K, 0B..2B for cyclic K
    int codim = 0;
    std::vector<long long> k_factors;   // periods of K: (a1,a2,a3) or (k,k)
    std::vector<long long> base;        // n_1..n_r shared by both signatures
    int fills = 0;                      // free periods b_i of the full-group signature

    Signature gamma_n(const std::vector<long long>& m) const {
        if (m.size() != k_factors.size())
            throw std::invalid_argument("gamma_n: one multiplier per K-slot");
        Signature s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] < 1) throw std::invalid_argument("gamma_n: multipliers must be >= 1");
            s.periods.push_back(Period::finite(k_factors[i] * m[i]));
        }
        for (long long v : base) s.periods.push_back(Period::finite(v));
        return s;
    }

    Signature gamma_a(const std::vector<long long>& b) const {
        if (static_cast<int>(b.size()) != fills)
            throw std::invalid_argument("gamma_a: wrong number of fill-in periods");
        Signature s;
        for (long long v : b) {
            if (v < 2) throw std::invalid_argument("gamma_a: periods must be >= 2");
            s.periods.push_back(Period::finite(v));
        }
        for (long long v : base) s.periods.push_back(Period::finite(v));
        return s;
    }
};

// Rows indexed by how many K-slots of the normalizer signature are absorbed
// into base periods of the full-group signature.  K acts on a sphere, so its
// signature is (k,k) or a triangle.
inline std::vector<Table5Row> table5_pairs(const Signature& k_sig,
                                           const std::vector<long long>& base) {
    if (k_sig.genus != 0) throw std::invalid_argument("table5_pairs: K acts on a sphere");
    std::vector<long long> f;
    for (const Period& p : k_sig.periods) {
        if (p.parabolic || p.is_parametric())
            throw std::domain_error("table5_pairs: K needs concrete finite periods");
        f.push_back(p.value());
    }
    for (long long v : base)
        if (v < 2) throw std::invalid_argument("table5_pairs: base periods must be >= 2");
    std::vector<Table5Row> rows;
    if (f.size() == 2) {
        if (f[0] != f[1])
            throw std::invalid_argument("table5_pairs: a cyclic K has signature (k,k)");
        rows.push_back({"0B", 0, f, base, 2});
        rows.push_back({"1B", 1, f, base, 1});
        rows.push_back({"2B", 2, f, base, 0});
    } else if (f.size() == 3) {
        rows.push_back({"0A", 0, f, base, 3});
        rows.push_back({"1A", 1, f, base, 2});
        rows.push_back({"2A", 2, f, base, 1});
        rows.push_back({"3A", 3, f, base, 0});
    } else {
        throw std::invalid_argument("table5_pairs: spherical K has 2 or 3 periods");
    }
    return rows;
}

namespace detail {

// Every period of sub divides some period of sup.
inline bool periods_divide_into(const Signature& sub, const Signature& sup) {
    for (const Period& p : sub.periods) {
        long long v = p.value();
        bool ok = false;
        for (const Period& q : sup.periods)
            if (q.value() % v == 0) { ok = true; break; }
        if (!ok) return false;
    }
    return true;
}

}  // namespace detail

struct MaximalCandidate {
    Signature sig;    // would-be supergroup signature
    Rat index{0};     // mu(input) / mu(candidate)
};

struct MaximalVerdict {
    bool maximal = false;
    bool closed_form = false;  // the (2,3,m) argument rather than a bounded search
    long long bound = 0;
    std::vector<MaximalCandidate> candidates;  // integral index >= 2 and divisible periods
    std::vector<MaximalCandidate> eliminated;  // inspected and rejected, index recorded
};

// Decide whether a genus-0 hyperbolic signature admits a proper finite-index
// extension.  A supergroup signature must be genus 0 with every input period
// dividing one of its own, and mu(input)/mu(candidate) an integer >= 2.
//
// For (2,3,m), m >= 7, only candidates of area below 1/12 could qualify; the
// six such signatures are checked and rejected outright.  Otherwise all
// candidate signatures with 3 <= t <= r periods drawn from 2..bound are
// enumerated.  A parametric input is accepted only for the family (2,d,2d),
// whose extension (2,3,2d) of index 3 is verified on sample instantiations.
inline MaximalVerdict finitely_maximal(const Signature& sig, long long bound = 50) {
    if (sig.genus != 0)
        throw std::domain_error("finitely_maximal handles genus-0 signatures");
    if (sig.has_parabolic())
        throw std::domain_error("finitely_maximal handles cocompact signatures");
    if (bound < 2) throw std::invalid_argument("finitely_maximal: bound must be >= 2");

    MaximalVerdict out;
    out.bound = bound;

    if (!sig.concrete()) {
        // Shape check: {2, 1*d, 2*d} in one symbol.
        std::vector<Period> ps = sig.canonical().periods;
        bool family = ps.size() == 3 && ps[0] == Period::finite(2) &&
                      ps[1].is_parametric() && ps[2].is_parametric() &&
                      ps[1].m.coeff == 1 && ps[2].m.coeff == 2 &&
                      ps[1].m.syms == ps[2].m.syms && ps[1].m.syms.size() == 1 &&
                      ps[1].m.syms[0].second == 1;
        if (!family)
            throw std::domain_error("finitely_maximal: only the (2,d,2d) family is symbolic");
        int sym = ps[1].m.syms[0].first;
        Signature cand;
        cand.periods = {Period::finite(2), Period::finite(3), Period::parametric(2, sym)};
        for (long long d = 4; d <= 9; ++d) {
            Signature s = Signature::of({2, d, 2 * d});
            Signature c = Signature::of({2, 3, 2 * d});
            Rat k = index_of_pair(s, c);
            if (k != Rat(3) || !detail::periods_divide_into(s, c))
                throw std::logic_error("finitely_maximal: family extension failed to replay");
        }
        out.candidates.push_back({cand, Rat(3)});
        out.maximal = false;
        return out;
    }

    if (!is_hyperbolic(sig))
        throw std::domain_error("finitely_maximal requires a hyperbolic signature");

    std::vector<long long> periods;
    for (const Period& p : sig.periods) periods.push_back(p.value());
    std::sort(periods.begin(), periods.end());
    const Rat area = mu(sig);

    auto inspect = [&](const Signature& cand) {
        Rat k = area / mu(cand);
        bool divisible = detail::periods_divide_into(sig, cand);
        if (divisible && k.denominator() == 1 && k.numerator() >= 2)
            out.candidates.push_back({cand, k});
        else
            out.eliminated.push_back({cand, k});
    };

    if (periods.size() == 3 && periods[0] == 2 && periods[1] == 3 && periods[2] >= 7) {
        // Any extension of a triangle group of area < 1/6 has area < 1/12;
        // only six hyperbolic triangles are that small.
        out.closed_form = true;
        for (auto [a, b, c] : {std::array<long long, 3>{2, 3, 7},
                               {2, 3, 8},
                               {2, 3, 9},
                               {2, 3, 10},
                               {2, 3, 11},
                               {2, 4, 5}})
            inspect(Signature::of({a, b, c}));
        out.maximal = out.candidates.empty();
        return out;
    }

    const int r = static_cast<int>(periods.size());
    // Multisets of size t from 2..bound; keep the enumeration on a desk scale.
    {
        double total = 0;
        for (int t = 3; t <= r; ++t) {
            double ways = 1;
            for (int i = 0; i < t; ++i) ways = ways * (bound - 1 + i) / (i + 1);
            total += ways;
        }
        if (total > 5e6)
            throw std::domain_error("finitely_maximal: search bound too large for desk scale");
    }

    std::vector<long long> tuple;
    for (int t = 3; t <= r; ++t) {
        tuple.assign(t, 0);
        // Depth-first over nondecreasing tuples, pruning once the partial area
        // already forces mu(candidate) above area/2.
        auto rec = [&](auto&& self, int depth, long long lo, Rat acc) -> void {
            if (depth == t) {
                if (acc <= Rat(0)) return;
                Signature cand;
                for (long long v : tuple) cand.periods.push_back(Period::finite(v));
                if (cand.canonical() == sig.canonical()) return;
                if (!detail::periods_divide_into(sig, cand)) return;
                Rat k = area / acc;
                if (k >= Rat(1)) inspect(cand);
                return;
            }
            for (long long v = lo; v <= bound; ++v) {
                Rat next = acc + Rat(1) - Rat(1, v);
                // Remaining slots each contribute at least 1 - 1/v, and a
                // candidate is only worth recording when mu stays <= area.
                if (next + Rat(t - depth - 1) * (Rat(1) - Rat(1, v)) > area) break;
                tuple[depth] = v;
                self(self, depth + 1, v, next);
            }
        };
        rec(rec, 0, 2, Rat(-2));
    }
    out.maximal = out.candidates.empty();
    return out;
}

}  // namespace ngonal
