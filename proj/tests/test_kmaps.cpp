#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "ngonal/kmaps.hpp"

using namespace ngonal;

namespace {

Rat mu_of_values(const std::vector<long long>& vals) {
    Rat m(-2, 1);
    for (long long v : vals) m += Rat(1) - Rat(1, v);
    return m;
}

std::vector<std::string> fact_strs(const std::vector<KFactorBranch>& rows) {
    std::vector<std::string> out;
    for (auto& r : rows) out.push_back(r.fact.str());
    return out;
}

}  // namespace

TEST_CASE("factoring through a concrete dihedral group") {
    Signature sig = parse_signature("(2,x1,5*x1,2)");
    auto rows = kcompatible_enumerate(sig, SphericalGroup::dihedral(3));
    REQUIRE(fact_strs(rows) == std::vector<std::string>{
                "(2·1,2·1,3·x1,15x1)",
                "(2·1,2·1,3·5x1,3x1)",
                "(2·1,2·3x1,3·10x1,2)",
                "(2·1,2·15x1,3·2x1,2)",
            });
    CHECK(rows[0].variants == 1);
    CHECK(rows[1].variants == 1);
    CHECK(rows[2].variants == 2);
    CHECK(rows[3].variants == 2);
    CHECK(rows[0].fact.base().str() == "(2,2,3*x1,15*x1)");
    CHECK(rows[2].emitted.base().str() == "(2,6*x1,30*x1,2)");
    CHECK(rows[2].trace.str() == "[0,1,2,3] x1->2x1 x1->3x1");
}

TEST_CASE("factoring through A5 keeps only the aligned arrangements") {
    Signature sig = parse_signature("(2,x1,5*x1,2)");
    auto rows = kcompatible_enumerate(sig, SphericalGroup::a5());
    REQUIRE(fact_strs(rows) == std::vector<std::string>{
                "(2·1,3·x1,5·3x1,2)",
                "(2·1,3·25x1,5·3x1,2)",
            });
    CHECK(rows[0].emitted.base().str() == "(2,3*x1,15*x1,2)");
    CHECK(rows[1].emitted.base().str() == "(2,75*x1,15*x1,2)");
    CHECK(rows[0].trace.str() == "[0,1,2,3] x1->3x1");
    CHECK(rows[1].trace.str() == "[0,2,1,3] x1->3x1 x1->5x1");
}

TEST_CASE("parametric cyclic branching over constant slots and shared divisors") {
    auto rows = kcompatible_enumerate(parse_signature("(6,x1,5*x1,6)"), SphericalGroup::cyclic(0));
    REQUIRE(fact_strs(rows) == std::vector<std::string>{
                "(2·3,2·3,x1,5x1)",
                "(2·3,2·x1,6,10x1)",
                "(2·3,2·5x1,6,2x1)",
                "(3·2,3·2,x1,5x1)",
                "(3·2,3·x1,6,15x1)",
                "(3·2,3·5x1,6,3x1)",
                "(6·1,6·1,x1,5x1)",
                "(6·1,6·x1,6,30x1)",
                "(6·1,6·5x1,6,6x1)",
                "(k·x1,k·5x1,6,6)",
            });
    CHECK(rows[1].fact.base().str() == "(6,2*x1,6,10*x1)");
    CHECK(rows[4].fact.base().str() == "(6,3*x1,6,15*x1)");
    CHECK(rows[9].fact.K.name() == "Ck");
    CHECK(rows[9].variants == 2);

    auto rows2 =
        kcompatible_enumerate(parse_signature("(6*x1,10*x1,2,2)"), SphericalGroup::cyclic(0));
    REQUIRE(fact_strs(rows2) == std::vector<std::string>{
                "(2·1,2·1,6x1,10x1)",
                "(2·1,2·3x1,2,10x1)",
                "(2·1,2·5x1,2,6x1)",
                "(k·6x1,k·10x1,2,2)",
                "(2k·3x1,2k·5x1,2,2)",
            });
    CHECK(rows2[3].fact.base().str() == "(6*x1*k,10*x1*k,2,2)");
    CHECK(rows2[4].fact.base().str() == "(6*x1*k,10*x1*k,2,2)");
    CHECK(rows2[4].fact.K.name() == "C2k");
}

TEST_CASE("parametric dihedral branching over the k-slot") {
    Signature sig = parse_signature("(2,x1,5*x1,2)");
    auto rows = kcompatible_enumerate(sig, SphericalGroup::dihedral(0));
    REQUIRE(fact_strs(rows) == std::vector<std::string>{
                "(2·1,2·1,2·x1,10x1)",
                "(2·1,2·1,2·5x1,2x1)",
                "(2·1,2·x1,2·5x1,2)",
                "(2·1,2·1,k·x1,5x1k)",
                "(2·1,2·1,k·5x1,x1k)",
                "(2·1,2·x1k,k·10x1,2)",
                "(2·1,2·5x1k,k·2x1,2)",
                "(2·1,2·x1k,2k·5x1,2)",
                "(2·1,2·5x1k,2k·x1,2)",
                "(2·1,2·1,5k·x1,x1k)",
                "(2·1,2·x1k,5k·2x1,2)",
                "(2·1,2·x1k,10k·x1,2)",
            });
    CHECK(rows[0].fact.K.name() == "D2");
    CHECK(rows[3].variants == 1);   // the two constant slots are one arrangement by value
    CHECK(rows[5].variants == 2);   // slot order merged
    CHECK(rows[11].fact.K.name() == "D10k");
    // the k-branches of the same arrangement share the substituted base
    CHECK(rows[5].fact.base().str() == "(2,2*x1*k,10*x1*k,2)");
    CHECK(rows[7].fact.base().str() == "(2,2*x1*k,10*x1*k,2)");
    CHECK(rows[11].fact.base().str() == "(2,2*x1*k,10*x1*k,2)");
}

TEST_CASE("factorization branches replay from their traces") {
    std::vector<std::pair<Signature, SphericalGroup>> inputs = {
        {parse_signature("(2,x1,5*x1,2)"), SphericalGroup::dihedral(3)},
        {parse_signature("(2,x1,5*x1,2)"), SphericalGroup::a5()},
        {parse_signature("(2,x1,5*x1,2)"), SphericalGroup::dihedral(0)},
        {parse_signature("(6,x1,5*x1,6)"), SphericalGroup::cyclic(0)},
        {parse_signature("(6*x1,10*x1,2,2)"), SphericalGroup::cyclic(0)},
        {parse_signature("(2,x1,2*x1)"), SphericalGroup::s4()},
    };
    const std::map<int, long long> bind{{1, 5}, {SYM_K, 3}};
    for (auto& [sig, group] : inputs) {
        for (const KFactorBranch& br : kcompatible_enumerate(sig, group)) {
            Signature replayed = br.trace.replay(sig);
            CHECK(replayed.str() == br.emitted.base().str());
            CHECK(br.fact.base() == br.emitted.base());  // multiset equality
            // slot values decompose exactly
            Signature ks = br.fact.K.signature();
            for (size_t i = 0; i < br.fact.slots.size(); ++i)
                CHECK(br.fact.slots[i].a == ks.periods[i].m);
            // index |K|: mu of the kernel is |K| times mu upstairs
            std::vector<long long> big;
            for (auto& p : br.fact.base().periods) big.push_back(p.m.eval(bind));
            Rat mu_N = mu_of_values(big);
            Rat mu_C = mu(kernel_signature(br.fact).instantiate(bind));
            CHECK(mu_C == Rat(br.fact.K.order().eval(bind)) * mu_N);
        }
    }
}

TEST_CASE("enumeration rejects what it cannot factor") {
    CHECK_THROWS_AS(kcompatible_enumerate(parse_signature("(1; 2,2)"), SphericalGroup::a4()),
                    std::domain_error);
    CHECK_THROWS_AS(kcompatible_enumerate(parse_signature("(inf,2,2)"), SphericalGroup::a4()),
                    std::domain_error);
    CHECK_THROWS_AS(kcompatible_enumerate(parse_signature("(2,2)"), SphericalGroup::cyclic(0)),
                    std::domain_error);
    // every arrangement needs an even period in the first slot
    CHECK(kcompatible_enumerate(parse_signature("(5,5,5)"), SphericalGroup::a4()).empty());
}

TEST_CASE("kernel signature of a factorization") {
    FactoredSignature f;
    f.K = KShape::of(SphericalGroup::dihedral(3));
    f.slots = {{Monomial(2), Monomial(2)}, {Monomial(2), Monomial(2)}, {Monomial(3), Monomial(3)}};
    f.rest = {Monomial(11)};
    KernelSignature ks = kernel_signature(f);
    CHECK(ks.str() == "(2^3,2^3,3^2,11^6)");
    auto n = order_of_C(ks);
    REQUIRE(n.has_value());
    CHECK(n->str() == "66");
    Signature inst = ks.instantiate({});
    CHECK(inst.periods.size() == 14);
    CHECK(order_of_C(inst) == 66);
    CHECK(harvey_admissible(66, inst));
    auto g = kernel_genus(ks);
    REQUIRE(g.has_value());
    CHECK(g->str() == "258");
    CHECK(riemann_hurwitz_genus(66, inst) == Rat(258));

    // slots with cofactor 1 contribute no kernel periods
    FactoredSignature unit;
    unit.K = KShape::of(SphericalGroup::cyclic(4));
    unit.slots = {{Monomial(4), Monomial(1)}, {Monomial(4), Monomial(1, SYM_E)}};
    unit.rest = {};
    CHECK(kernel_signature(unit).str() == "(e)");
}

TEST_CASE("symbolic order of the kernel group") {
    auto part = [](const Monomial& v, const Monomial& c) { return std::make_pair(v, c); };
    KernelSignature same_symbol{{part(Monomial(2, SYM_E), Monomial(1)),
                                 part(Monomial(3, SYM_E), Monomial(1))}};
    REQUIRE(order_of_C(same_symbol).has_value());
    CHECK(order_of_C(same_symbol)->str() == "6*e");

    KernelSignature chain{{part(Monomial(1, SYM_E), Monomial(2)),
                           part(Monomial(1, SYM_E) * Monomial(1, SYM_K), Monomial(4))}};
    REQUIRE(order_of_C(chain).has_value());
    CHECK(compact_str(*order_of_C(chain)) == "ke");

    // lcm(ke,4e) has no single monomial value: it depends on gcd(k,4)
    KernelSignature mixed{{part(Monomial(1, SYM_K) * Monomial(1, SYM_E), Monomial(1, SYM_K)),
                           part(Monomial(4, SYM_E), Monomial(2))}};
    CHECK_FALSE(order_of_C(mixed).has_value());

    // concrete instances pick out each of the three possible collapses
    for (long long k : {3, 6, 12}) {
        std::map<int, long long> bind{{SYM_E, 1}, {SYM_K, k}};
        Signature inst = mixed.instantiate(bind);
        CHECK(order_of_C(inst) == lcm_ll(k, 4));
    }
}

TEST_CASE("triangle family table") {
    auto rows = reproduce_table4();
    REQUIRE(rows.size() == 13);

    std::vector<std::string> names;
    for (auto& r : rows) names.push_back(r.K_name);
    CHECK(names == std::vector<std::string>{"C2", "C2", "Ck", "D2", "Dk", "Dk", "D2k", "D4k",
                                            "A4", "S4", "S4", "A5", "A5"});

    for (auto& r : rows) {
        CHECK_FALSE(r.never_admissible);
        CHECK(r.condition != "irregular");
        CHECK(r.min_e >= 1);
    }

    auto find = [&](const std::string& fact) -> const Table4Row& {
        for (auto& r : rows)
            if (r.fact.str() == fact) return r;
        FAIL("row not found: " << fact);
        return rows.front();
    };

    {
        const Table4Row& r = find("(2·1,2·e,4e)");
        CHECK(r.K_name == "C2");
        CHECK(compact_str(r.d_value) == "2e");
        CHECK(r.kernel.str() == "(e,(4e)^2)");
        CHECK(r.n_text == "4e");
        CHECK(r.condition == "");
        CHECK(r.genus_text == "2e - 2");
        CHECK(r.min_e == 2);
        CHECK(r.variants == 2);
    }
    {
        const Table4Row& r = find("(2·1,2·e,e)");
        CHECK(r.K_name == "C2");
        CHECK(compact_str(r.d_value) == "e");
        CHECK(r.kernel.str() == "(e,e^2)");
        CHECK(r.n_text == "e");
        CHECK(r.condition == "e odd");
        CHECK(r.genus_text == "e/2 - 1/2");
        CHECK(r.min_e == 5);
        CHECK(r.variants == 2);
    }
    {
        const Table4Row& r = find("(k·e,k·2e,2)");
        CHECK(r.K_name == "Ck");
        CHECK(compact_str(r.d_value) == "ke");
        CHECK(r.kernel.str() == "(e,2e,2^k)");
        CHECK(r.n_text == "2e");
        CHECK(r.condition == "d odd");
        CHECK(r.genus_text == "ke/2 - 1/2");
        CHECK(r.variants == 2);
    }
    {
        const Table4Row& r = find("(2·1,2·e,2·2e)");
        CHECK(r.K_name == "D2");
        CHECK(compact_str(r.d_value) == "2e");
        CHECK(r.kernel.str() == "(e^2,(2e)^2)");
        CHECK(r.n_text == "2e");
        CHECK(r.condition == "");
        CHECK(r.genus_text == "2e - 2");
        CHECK(r.min_e == 2);
        CHECK(r.variants == 2);
    }
    {
        const Table4Row& r = find("(2·1,2·ke,k·e)");
        CHECK(r.K_name == "Dk");
        CHECK(compact_str(r.d_value) == "ke");
        CHECK(r.kernel.str() == "((ke)^k,e^2)");
        CHECK(r.n_text == "ke");
        CHECK(r.condition == "d odd or k even");
        CHECK(r.genus_text == "k^2e/2 - 3k/2 + 1");
        CHECK(r.variants == 2);
        // spot-check the closed form against the rebuilt surface genus
        std::map<int, long long> bind{{SYM_E, 3}, {SYM_K, 4}};
        Signature inst = r.kernel.instantiate(bind);
        CHECK(riemann_hurwitz_genus(r.n->eval(bind), inst) == r.genus->eval(bind));
    }
    {
        const Table4Row& r = find("(2·1,2·ke,k·4e)");
        CHECK(r.K_name == "Dk");
        CHECK(compact_str(r.d_value) == "2ke");
        CHECK(r.kernel.str() == "((ke)^k,(4e)^2)");
        CHECK_FALSE(r.n.has_value());
        CHECK(r.n_text == "lcm(ke,4e)");
        CHECK(r.condition == "");
        CHECK(r.genus_text == "");
        CHECK_FALSE(r.note.empty());
    }
    {
        const Table4Row& r = find("(2·1,2·ke,2k·2e)");
        CHECK(r.K_name == "D2k");
        CHECK(compact_str(r.d_value) == "2ke");
        CHECK(r.kernel.str() == "((ke)^2k,(2e)^2)");
        CHECK(r.n_text == "lcm(ke,2e)");
        CHECK(r.condition == "");
    }
    {
        const Table4Row& r = find("(2·1,2·ke,4k·e)");
        CHECK(r.K_name == "D4k");
        CHECK(compact_str(r.d_value) == "2ke");
        CHECK(r.kernel.str() == "((ke)^4k,e^2)");
        CHECK(r.n_text == "ke");
        CHECK(r.condition == "");
        CHECK(r.genus_text == "2k^2e - 3k + 1");
    }
    {
        const Table4Row& r = find("(2·1,3·e,3·2e)");
        CHECK(r.K_name == "A4");
        CHECK(compact_str(r.d_value) == "3e");
        CHECK(r.kernel.str() == "(e^4,(2e)^4)");
        CHECK(r.n_text == "2e");
        CHECK(r.condition == "");
        CHECK(r.genus_text == "6e - 5");
        CHECK(r.min_e == 2);
        CHECK(r.variants == 2);
    }
    {
        const Table4Row& r = find("(2·1,3·2e,4·3e)");
        CHECK(r.K_name == "S4");
        CHECK(compact_str(r.d_value) == "6e");
        CHECK(r.kernel.str() == "((2e)^8,(3e)^6)");
        CHECK(r.n_text == "6e");
        CHECK(r.condition == "");
        CHECK(r.genus_text == "36e - 17");
        CHECK(r.variants == 1);
    }
    {
        const Table4Row& r = find("(2·1,3·8e,4·3e)");
        CHECK(r.K_name == "S4");
        CHECK(compact_str(r.d_value) == "12e");
        CHECK(r.kernel.str() == "((8e)^8,(3e)^6)");
        CHECK(r.n_text == "24e");
        CHECK(r.condition == "");
        CHECK(r.genus_text == "144e - 35");
    }
    {
        const Table4Row& r = find("(2·1,3·5e,5·6e)");
        CHECK(r.K_name == "A5");
        CHECK(compact_str(r.d_value) == "15e");
        CHECK(r.kernel.str() == "((5e)^20,(6e)^12)");
        CHECK(r.n_text == "30e");
        CHECK(r.genus_text == "450e - 89");
    }
    {
        const Table4Row& r = find("(2·1,3·10e,5·3e)");
        CHECK(r.K_name == "A5");
        CHECK(compact_str(r.d_value) == "15e");
        CHECK(r.kernel.str() == "((10e)^20,(3e)^12)");
        CHECK(r.n_text == "30e");
        CHECK(r.genus_text == "450e - 89");
    }
}

TEST_CASE("table rows are internally consistent at concrete instances") {
    auto rows = reproduce_table4();
    for (auto& r : rows) {
        for (long long e = 1; e <= 6; ++e) {
            for (long long k = 2; k <= 5; ++k) {
                std::map<int, long long> bind{{SYM_E, e}, {SYM_K, k}};
                std::vector<long long> big;
                bool domain = true;
                for (auto& p : r.fact.base().periods) {
                    long long v = p.m.eval(bind);
                    if (v < 2) domain = false;
                    big.push_back(v);
                }
                if (!domain || !(mu_of_values(big) > Rat(0))) continue;
                // the row comes from rearranging and scaling (2,d,2d)
                long long d = r.d_value.eval(bind);
                std::multiset<long long> vals(big.begin(), big.end());
                CHECK(vals == std::multiset<long long>{2, d, 2 * d});
                Signature inst = r.kernel.instantiate(bind);
                long long n_inst = order_of_C(inst);
                if (r.n) CHECK(r.n->eval(bind) == n_inst);
                if (r.genus) {
                    Rat g = riemann_hurwitz_genus(n_inst, inst);
                    CHECK(g == r.genus->eval(bind));
                    // admissible instances carry an honest surface
                    if (harvey_admissible(n_inst, inst)) CHECK(g.denominator() == 1);
                }
                // mu ratio between the kernel and the factored signature
                CHECK(mu(inst) == Rat(r.fact.K.order().eval(bind)) * mu_of_values(big));
            }
        }
    }
}

TEST_CASE("table reproduction is deterministic") {
    auto a = reproduce_table4();
    auto b = reproduce_table4();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].fact.str() == b[i].fact.str());
        CHECK(a[i].K_name == b[i].K_name);
        CHECK(a[i].condition == b[i].condition);
        CHECK(a[i].n_text == b[i].n_text);
        CHECK(a[i].genus_text == b[i].genus_text);
    }
}
