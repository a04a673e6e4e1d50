#pragma once

#include <stdexcept>
#include <vector>

#include "ngonal/group.hpp"
#include "ngonal/perm.hpp"
#include "ngonal/signature.hpp"

namespace ngonal {

// A triple C normal in N inside A, with a generating vector for A and the
// three quotient signatures.
template <class U>
struct SurfaceTriple {
    FiniteGroup<U> A;
    std::vector<typename U::Element> C;
    std::vector<typename U::Element> N;
    std::vector<typename U::Element> gv;  // generating vector for A
    Signature sig_A, sig_N, sig_C;
};

namespace detail {

// First (in element order) generating (2, x, o(g3))-vector completing g3:
// g1 * g2 * g3 = 1 with o(g1) = 2 and o(g2) = mid.
template <class U>
std::vector<typename U::Element> complete_triple(const FiniteGroup<U>& g,
                                                 const typename U::Element& g3,
                                                 long long mid) {
    for (const auto& g1 : g.elems) {
        if (g.order_of(g1) != 2) continue;
        auto g2 = g.u.mul(g.u.inv(g1), g.u.inv(g3));
        if (g.order_of(g2) != mid) continue;
        std::vector<typename U::Element> vec{g1, g2, g3};
        if (static_cast<long long>(span(g, vec).size()) == g.size()) return vec;
    }
    throw std::logic_error("no completing triple found");
}

}  // namespace detail

// PSL(2,7) on the projective line over F_7; points 1..7 are the residues
// 0..6 and point 8 is the point at infinity.  Generators z -> z+1 and
// z -> -1/z; C is the translation subgroup of order 7.
inline SurfaceTriple<PermUniverse> klein_fixture() {
    Perm t = parse_perm("(1,2,3,4,5,6,7)", 8);
    Perm s = parse_perm("(1,8)(2,7)(3,4)(5,6)", 8);
    SurfaceTriple<PermUniverse> f;
    f.A = close_perms({t, s});
    f.C = span(f.A, {t});
    f.N = normalizer(f.A, f.C);
    f.gv = detail::complete_triple(f.A, t, 3);
    f.sig_A = Signature::of({2, 3, 7});
    f.sig_N = Signature::of({3, 3, 7});
    f.sig_C = Signature::of({7, 7, 7});
    return f;
}

// Sigma_5 acting on 5 points with the 5-cycle subgroup.
inline SurfaceTriple<PermUniverse> bring_fixture() {
    Perm c5 = parse_perm("(1,2,3,4,5)", 5);
    Perm t = parse_perm("(1,2)", 5);
    SurfaceTriple<PermUniverse> f;
    f.A = close_perms({t, c5});
    f.C = span(f.A, {c5});
    f.N = normalizer(f.A, f.C);
    f.gv = detail::complete_triple(f.A, c5, 4);
    f.sig_A = Signature::of({2, 4, 5});
    f.sig_N = Signature::of({4, 4, 5});
    f.sig_C = Signature::of({5, 5, 5, 5});
    return f;
}

// Sigma_3 x| Z_n^2 with the transposition actions (1,2): (a,b) -> (b,a),
// (1,3): (a,b) -> (-a, -a+b), (2,3): (a,b) -> (a-b, -b).
inline SemidirectUniverse fermat_universe(long long n) {
    if (n < 2) throw std::invalid_argument("fermat universe needs n >= 2");
    Perm t12 = parse_perm("(1,2)", 3);
    Perm t13 = parse_perm("(1,3)", 3);
    PermGroup outer = close_perms({t12, t13});
    SemidirectUniverse u;
    u.outer = outer.elems;
    u.outer_index = outer.index;
    u.n = n;
    u.dim = 2;
    u.act.assign(u.outer.size(), {});
    auto nm = [&](long long v) { return ((v % n) + n) % n; };
    std::map<Perm, std::vector<long long>> gen_mat{
        {t12, {0, 1, 1, 0}},
        {t13, {nm(-1), 0, nm(-1), 1}},
    };
    // Extend the generator matrices to the whole outer group:
    // B_{g*s} = B_s . B_g since g*s applies g first.
    std::vector<bool> have(u.outer.size(), false);
    u.act[0] = {1, 0, 0, 1};
    have[0] = true;
    std::deque<int> todo{0};
    auto matmul = [&](const std::vector<long long>& A, const std::vector<long long>& B) {
        std::vector<long long> R(4, 0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                R[i * 2 + j] = nm(A[i * 2] * B[j] + A[i * 2 + 1] * B[2 + j]);
        return R;
    };
    while (!todo.empty()) {
        int g = todo.front();
        todo.pop_front();
        for (auto& [s, M] : gen_mat) {
            int gs = outer.idx(u.outer[g] * s);
            auto R = matmul(M, u.act[g]);
            if (have[gs]) {
                if (u.act[gs] != R) throw std::logic_error("outer action is inconsistent");
            } else {
                u.act[gs] = R;
                have[gs] = true;
                todo.push_back(gs);
            }
        }
    }
    return u;
}

// The Fermat-family triple: C = {(a,a)} of order n, N its normalizer of
// order 2n^2, A the full group of order 6n^2.
inline SurfaceTriple<SemidirectUniverse> fermat_fixture(long long n) {
    SemidirectUniverse u = fermat_universe(n);
    Perm t12 = parse_perm("(1,2)", 3);
    Perm t13 = parse_perm("(1,3)", 3);
    SdElem g1{u.oidx(t13), {0, 0}};
    SdElem g2{u.oidx(t12), {0, 0}};
    SdElem h{0, {1, 0}};
    SdElem k{0, {0, 1}};
    SurfaceTriple<SemidirectUniverse> f;
    f.A = close(u, {g1, g2, h, k});
    f.C = span(f.A, {u.mul(h, k)});
    f.N = normalizer(f.A, f.C);
    f.gv = {g1, u.mul(u.mul(g1, g2), u.inv(h)), u.mul(h, g2)};
    f.sig_A = Signature::of({2, 3, 2 * n});
    f.sig_N = Signature::of({2, 2 * n, n});
    f.sig_C = Signature(0, std::vector<Period>(n, Period::finite(n)));
    return f;
}

// The paper-shaped generating vector of the Fermat normalizer N, of type
// (2, 2n, n): (g2, g2 h, h^{-1}).
inline std::vector<SdElem> fermat_normalizer_vector(const SemidirectUniverse& u) {
    Perm t12 = parse_perm("(1,2)", 3);
    SdElem g2{u.oidx(t12), {0, 0}};
    SdElem h{0, {1, 0}};
    return {g2, u.mul(g2, h), u.inv(h)};
}

}  // namespace ngonal
