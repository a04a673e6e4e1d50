#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ngonal/report.hpp"

using namespace ngonal;

namespace {

std::string golden_path(const std::string& name) {
    return std::string(NGONAL_GOLDEN_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Byte-for-byte comparison against the stored file; NGONAL_WRITE_GOLDEN=1
// rewrites the files instead, for intentional format changes.
void check_golden(const std::string& name, const Json& doc) {
    const std::string text = doc.dump(2) + "\n";
    const std::string path = golden_path(name);
    if (std::getenv("NGONAL_WRITE_GOLDEN")) {
        std::ofstream out(path, std::ios::binary);
        REQUIRE(out.good());
        out << text;
        return;
    }
    INFO("golden file " << name);
    CHECK(text == slurp(path));
}

}  // namespace

TEST_CASE("catalog tables match their golden files") {
    check_golden("table1.json", spherical_table_json());
    check_golden("table2.json", abelianization_table_json());
    check_golden("table3.json", involution_table_json());
}

TEST_CASE("the triangle-family table matches its golden file") {
    check_golden("table4.json", table4_json(reproduce_table4()));
}

TEST_CASE("orbit payloads match their golden files") {
    check_golden("orbits_klein.json", orbits_payload(klein_fixture()));
    check_golden("orbits_bring.json", orbits_payload(bring_fixture()));
    check_golden("orbits_fermat4.json", orbits_payload(fermat_fixture(4)));
    check_golden("orbits_fermat5.json", orbits_payload(fermat_fixture(5)));
}

TEST_CASE("payload serialization is deterministic") {
    CHECK(spherical_table_json().dump(2) == spherical_table_json().dump(2));
    CHECK(table4_json(reproduce_table4()).dump(2) == table4_json(reproduce_table4()).dump(2));
    Signature sig = parse_signature("(3,3,7)");
    CHECK(classify_payload(sig).dump(2) == classify_payload(sig).dump(2));
    CHECK(orbits_payload(klein_fixture()).dump(2) == orbits_payload(klein_fixture()).dump(2));
    Signature sub = parse_signature("(2,2,2,5)"), sup = parse_signature("(2,4,5)");
    CHECK(monodromy_payload(sub, sup).dump(2) == monodromy_payload(sub, sup).dump(2));
}

TEST_CASE("run records carry the payload unchanged") {
    Json payload = genus_payload(plane_curve(7, {1, 2, 4}));
    Json rec = run_record_json("genus", {"--n", "7", "--p", "1,2,4"}, payload, 1.5);
    CHECK(rec["schema"] == kSchemaTag);
    CHECK(rec["command"] == "genus");
    CHECK(rec["version"] == kLibraryVersion);
    CHECK(rec["payload"] == payload);
    CHECK(rec["arguments"].size() == 4);
    CHECK(rec["elapsed_ms"].get<double>() == 1.5);
}

TEST_CASE("plane curves reject broken exponent data") {
    CHECK(plane_curve(7, {1, 2, 4}).genus == 3);
    CHECK(plane_curve(7, {1, 2, 4}).sig == parse_signature("(7,7,7)"));
    CHECK(plane_curve(2, {1, 1, 1, 1, 1, 1}).genus == 2);
    CHECK(plane_curve(5, {1, 1, 1, 1, 1}).genus == 6);
    // mixed branching orders: y^6 over exponents (2,3,3,4)
    PlaneCurve c = plane_curve(6, {2, 3, 3, 4});
    CHECK(c.sig == parse_signature("(3,2,2,3)"));
    CHECK(c.genus == 2);
    CHECK_THROWS_AS(plane_curve(1, {1}), std::invalid_argument);
    CHECK_THROWS_AS(plane_curve(7, {}), std::invalid_argument);
    CHECK_THROWS_AS(plane_curve(7, {0, 3, 4}), std::domain_error);
    CHECK_THROWS_AS(plane_curve(7, {7, 7}), std::domain_error);
    CHECK_THROWS_AS(plane_curve(7, {1, 2, 3}), std::domain_error);   // sum not divisible
    CHECK_THROWS_AS(plane_curve(6, {2, 4}), std::domain_error);      // gcd 2 with n
    CHECK_THROWS_AS(plane_curve(6, {3, 3}), std::domain_error);      // gcd 3 with n
}

TEST_CASE("plane curve genus agrees with the quotient count over a sweep") {
    for (long long n = 2; n <= 12; ++n) {
        long long checked = 0;
        std::vector<long long> p;
        auto rec = [&](auto&& self, size_t depth) -> void {
            if (depth == p.size()) {
                long long sum = 0, shared = n;
                for (size_t i = 0; i < p.size(); ++i) {
                    sum += p[i];
                    shared = std::gcd(shared, p[i]);
                }
                if (sum % n != 0 || shared != 1) return;
                PlaneCurve c = plane_curve(n, p);
                CHECK(riemann_hurwitz_genus(n, c.sig) == Rat(c.genus));
                CHECK(c.genus >= 0);
                ++checked;
                return;
            }
            for (long long v = 1; v < n; ++v) {
                p[depth] = v;
                self(self, depth + 1);
            }
        };
        for (size_t r = 2; r <= (n <= 4 ? 6 : 4); ++r) {
            p.assign(r, 1);
            rec(rec, 0);
        }
        CHECK(checked > 0);
    }
}
