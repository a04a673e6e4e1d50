#include <catch2/catch_amalgamated.hpp>

#include "ngonal/fixtures.hpp"
#include "ngonal/group.hpp"
#include "ngonal/perm.hpp"

using namespace ngonal;

TEST_CASE("permutation text round-trips") {
    for (const char* text : {"(1,3)(4,6)", "(1,2,3,4,5)", "()", "(2,7)(3,4)(5,6)"}) {
        Perm p = parse_perm(text, 8);
        CHECK(perm_to_string(p) == text);
    }
    CHECK(parse_perm("()", 5) == Perm::identity(5));
    CHECK_THROWS_AS(parse_perm("(1,2", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_perm("(1,1)", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_perm("(1,2)(2,3)", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_perm("(5)", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_perm("(1,7)", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_perm("", 4), std::invalid_argument);
}

TEST_CASE("products compose left to right") {
    Perm a = parse_perm("(1,2)", 3), b = parse_perm("(2,3)", 3);
    CHECK(perm_to_string(a * b) == "(1,3,2)");
    CHECK(perm_to_string(b * a) == "(1,2,3)");
    CHECK((a * a).is_identity());
    CHECK(parse_perm("(1,2,3,4,5)", 5).power(5).is_identity());
    CHECK(parse_perm("(1,2,3,4,5)", 5).power(-1) == parse_perm("(1,2,3,4,5)", 5).inverse());
    CHECK(parse_perm("(1,2)(3,5,4,6)", 6).order() == 4);
    CHECK(cycle_type(parse_perm("(1,2)(3,5,4,6)", 6)) == std::vector<int>({4, 2}));
    CHECK(cycle_type(Perm::identity(4)) == std::vector<int>({1, 1, 1, 1}));
}

TEST_CASE("a (2,4,5)-triple in the alternating group on 6 points") {
    Perm p1 = parse_perm("(1,3)(4,6)", 6);
    Perm p2 = parse_perm("(1,2)(3,5,4,6)", 6);
    Perm p3 = parse_perm("(1,2,3,4,5)", 6);
    CHECK((p1 * p2 * p3).is_identity());
    CHECK(p1.order() == 2);
    CHECK(p2.order() == 4);
    CHECK(p3.order() == 5);
    PermGroup g = close_perms({p1, p2, p3});
    CHECK(g.size() == 360);
    CHECK(is_transitive(g));
    std::string why;
    CHECK(verify_generating_vector(g, {p1, p2, p3}, Signature::of({2, 4, 5}), &why));
    CHECK(why.empty());
    CHECK_FALSE(verify_generating_vector(g, {p1, p2, p3}, Signature::of({2, 4, 6}), &why));
    CHECK(why == "order mismatch at slot 3");
    CHECK_FALSE(verify_generating_vector(g, {p2, p1, p3}, Signature::of({4, 2, 5}), &why));
    CHECK(why == "product is not the identity");
    CHECK_FALSE(verify_generating_vector(g, {p1, p2}, Signature::of({2, 4, 5}), &why));
    CHECK(why == "length differs from period count");
}

TEST_CASE("closure sizes and subgroup machinery") {
    PermGroup s3 = close_perms({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)});
    CHECK(s3.size() == 6);
    CHECK(s3.elems[0].is_identity());
    PermGroup s5 = close_perms({parse_perm("(1,2)", 5), parse_perm("(1,2,3,4,5)", 5)});
    CHECK(s5.size() == 120);

    auto c5 = span(s5, {parse_perm("(1,2,3,4,5)", 5)});
    CHECK(c5.size() == 5);
    auto n20 = normalizer(s5, c5);
    CHECK(n20.size() == 20);
    auto back = intersect_subgroups(s5, n20, c5);
    CHECK(back.size() == 5);
    // Conjugating by a normalizer element fixes the subgroup; by an outside
    // element it meets the original trivially (distinct Sylow 5-subgroups).
    auto fixed = conjugate_subgroup(s5, c5, n20[1]);
    CHECK(intersect_subgroups(s5, c5, fixed).size() == 5);
    auto moved = conjugate_subgroup(s5, c5, parse_perm("(1,2)", 5));
    CHECK(intersect_subgroups(s5, c5, moved).size() == 1);

    CHECK_THROWS_AS(close_perms({parse_perm("(1,2)", 5)}, 1), std::runtime_error);
}

TEST_CASE("coset action on a subgroup") {
    PermGroup s3 = close_perms({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)});
    auto c2 = span(s3, {parse_perm("(1,2)", 3)});
    auto act = coset_action(s3, c2);
    CHECK(act.index == 3);
    CHECK(act.core.size() == 1);  // no normal subgroup inside C2
    PermGroup img = close_perms(act.gen_images);
    CHECK(img.size() == 6);

    // The action map is multiplicative: image of a product is the product of
    // images, walked over a sample of words.
    auto word_image = [&](const std::vector<int>& word) {
        Perm p = Perm::identity(act.index);
        Perm q = s3.u.id();
        for (int w : word) {
            p = p * act.gen_images[w];
            q = q * s3.gens[w];
        }
        return std::make_pair(p, q);
    };
    std::vector<std::vector<int>> words = {{0}, {1}, {0, 1}, {1, 0}, {1, 1, 0}, {0, 1, 0, 1}};
    for (auto& w : words) {
        auto [p, q] = word_image(w);
        // q acts on cosets by right translation; compare against p directly.
        for (int c = 0; c < act.index; ++c) {
            int expect = act.coset_of[s3.idx(s3.u.mul(act.reps[c], q))];
            CHECK(p.apply(c) == expect);
        }
    }
}

TEST_CASE("the 8-point projective fixture") {
    auto f = klein_fixture();
    CHECK(f.A.size() == 168);
    CHECK(f.C.size() == 7);
    CHECK(f.N.size() == 21);
    CHECK(is_transitive(f.A));
    std::string why;
    CHECK(verify_generating_vector(f.A, f.gv, f.sig_A, &why));
    CHECK(why.empty());

    auto act = coset_action(f.A, f.N);
    CHECK(act.index == 8);
    CHECK(act.core.size() == 1);
    CHECK(close_perms(act.gen_images).size() == 168);

    // C sits in exactly one conjugate of N, so N is self-normalizing here.
    CHECK(normalizer(f.A, f.N).size() == 21);
}

TEST_CASE("the symmetric-on-5 fixture") {
    auto f = bring_fixture();
    CHECK(f.A.size() == 120);
    CHECK(f.C.size() == 5);
    CHECK(f.N.size() == 20);
    std::string why;
    CHECK(verify_generating_vector(f.A, f.gv, f.sig_A, &why));
    CHECK(why.empty());
    CHECK(index_of_pair(f.sig_C, f.sig_A) == Rat(24));
    CHECK(index_of_pair(f.sig_N, f.sig_A) == Rat(6));
    CHECK(riemann_hurwitz_genus(f.A.size(), f.sig_A) == Rat(4));
    CHECK(riemann_hurwitz_genus(f.N.size(), f.sig_N) == Rat(4));
    CHECK(riemann_hurwitz_genus(f.C.size(), f.sig_C) == Rat(4));
}

TEST_CASE("semidirect universe laws") {
    SemidirectUniverse u = fermat_universe(4);
    CHECK(u.outer.size() == 6);
    // The inner automorphisms compose like the outer permutations.
    Perm t12 = parse_perm("(1,2)", 3), t13 = parse_perm("(1,3)", 3);
    Perm t23 = t12 * t13 * t12;
    CHECK(t23 == parse_perm("(2,3)", 3));
    // (2,3) acts by (a,b) -> (a-b, -b).
    SdElem v{0, {1, 2}};
    SdElem g{u.oidx(t23), {0, 0}};
    SdElem moved = u.mul(u.mul(u.inv(g), v), g);
    CHECK(moved.outer == 0);
    CHECK(moved.inner == std::vector<long long>({3, 2}));  // (1-2, -2) mod 4

    auto G = close(u, {SdElem{u.oidx(t12), {0, 0}}, SdElem{u.oidx(t13), {0, 0}},
                       SdElem{0, {1, 0}}, SdElem{0, {0, 1}}});
    CHECK(G.size() == 6 * 16);
    for (const auto& e : G.elems) {
        CHECK(u.mul(e, u.inv(e)) == u.id());
        CHECK(u.mul(u.inv(e), e) == u.id());
    }
    // Associativity spot check on a few triples.
    for (size_t i = 0; i < G.elems.size(); i += 17)
        for (size_t j = 1; j < G.elems.size(); j += 29)
            for (size_t k = 2; k < G.elems.size(); k += 31) {
                const auto &a = G.elems[i], &b = G.elems[j], &c = G.elems[k];
                CHECK(u.mul(u.mul(a, b), c) == u.mul(a, u.mul(b, c)));
            }
}

TEST_CASE("the Fermat-family fixture") {
    for (long long n : {3, 4, 5}) {
        auto f = fermat_fixture(n);
        CHECK(f.A.size() == 6 * n * n);
        CHECK(f.C.size() == n);
        CHECK(f.N.size() == 2 * n * n);
        std::string why;
        CHECK(verify_generating_vector(f.A, f.gv, f.sig_A, &why));
        CHECK(why.empty());

        auto nsub = close(f.A.u, f.N, f.A.size() + 1);
        auto nvec = fermat_normalizer_vector(f.A.u);
        CHECK(verify_generating_vector(nsub, nvec, f.sig_N, &why));
        CHECK(why.empty());

        // (h g2)^2 generates C: the n-gonal rotation is half of the 2n-period.
        auto sq = f.A.u.mul(f.gv[2], f.gv[2]);
        bool in_c = std::find(f.C.begin(), f.C.end(), sq) != f.C.end();
        CHECK(in_c);
        CHECK(f.A.order_of(sq) == n);

        // Genus bookkeeping: all three quotients describe the same surface.
        Rat g = riemann_hurwitz_genus(f.A.size(), f.sig_A);
        CHECK(g == riemann_hurwitz_genus(f.N.size(), f.sig_N));
        CHECK(g == riemann_hurwitz_genus(f.C.size(), f.sig_C));
        CHECK(g == Rat((n - 1) * (n - 2) / 2));
    }
}
