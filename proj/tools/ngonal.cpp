#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "ngonal/report.hpp"

using namespace ngonal;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitResource = 2;

// A computation that was refused or cut short by a size cap rather than by
// the mathematics.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SphericalGroup parse_family(const std::string& token) {
    if (token == "A4") return SphericalGroup::a4();
    if (token == "S4") return SphericalGroup::s4();
    if (token == "A5") return SphericalGroup::a5();
    if (token.size() >= 2 && (token[0] == 'C' || token[0] == 'D')) {
        std::string tail = token.substr(1);
        long long k = 0;
        if (tail != "k") {
            size_t used = 0;
            k = std::stoll(tail, &used);
            if (used != tail.size() || k < 2)
                throw std::domain_error("bad family parameter: " + token);
        }
        return token[0] == 'C' ? SphericalGroup::cyclic(k) : SphericalGroup::dihedral(k);
    }
    throw std::domain_error("unknown K family: " + token);
}

std::vector<SphericalGroup> parse_families(const std::string& token) {
    if (token == "all") return spherical_catalog();
    return {parse_family(token)};
}

Json orbits_for(const std::string& fixture) {
    if (fixture == "klein") return orbits_payload(klein_fixture());
    if (fixture == "bring") return orbits_payload(bring_fixture());
    if (fixture.rfind("fermat:", 0) == 0) {
        long long n = std::stoll(fixture.substr(7));
        return orbits_payload(fermat_fixture(n));
    }
    throw std::domain_error("unknown fixture: " + fixture);
}

Json fuse_for(const std::string& fixture) {
    if (fixture == "klein") return fuse_payload(klein_fixture());
    if (fixture == "bring") return fuse_payload(bring_fixture());
    if (fixture.rfind("fermat:", 0) == 0) {
        long long n = std::stoll(fixture.substr(7));
        return fuse_payload(fermat_fixture(n));
    }
    throw std::domain_error("unknown fixture: " + fixture);
}

void print_rows(const Json& rows, const std::vector<std::string>& cols) {
    std::vector<size_t> width(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) width[j] = cols[j].size();
    auto cell = [](const Json& row, const std::string& col) -> std::string {
        if (!row.contains(col)) return "";
        const Json& v = row[col];
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    for (const Json& row : rows)
        for (size_t j = 0; j < cols.size(); ++j)
            width[j] = std::max(width[j], cell(row, cols[j]).size());
    auto line = [&](auto get) {
        for (size_t j = 0; j < cols.size(); ++j) {
            std::string s = get(j);
            std::cout << s << std::string(width[j] - s.size() + 2, ' ');
        }
        std::cout << "\n";
    };
    line([&](size_t j) { return cols[j]; });
    for (const Json& row : rows) line([&](size_t j) { return cell(row, cols[j]); });
}

void print_text(const std::string& command, const Json& p) {
    if (command == "genus") {
        std::cout << "n = " << p["n"] << ", signature " << p["signature"].get<std::string>()
                  << ", genus " << p["genus"] << "\n";
        return;
    }
    if (command == "factor") {
        if (p.contains("table")) {
            print_rows(p["rows"], {"K", "factorization", "kernel", "order", "genus", "condition"});
            return;
        }
        std::cout << "signature " << p["signature"].get<std::string>() << "\n";
        for (const Json& blk : p["families"]) {
            std::cout << "K = " << blk["K"].get<std::string>() << ": " << blk["rows"].size()
                      << " factorization(s)\n";
            if (!blk["rows"].empty())
                print_rows(blk["rows"], {"factorization", "kernel", "order", "genus"});
        }
        return;
    }
    if (command == "kfixed") {
        for (const Json& br : p["branches"]) {
            std::cout << br["factorization"].get<std::string>() << "  |C| = " << br["order"]
                      << "\n";
            print_rows(br["twists"], {"units_at_generators", "fixed_vectors", "aut_orbits"});
        }
        return;
    }
    if (command == "monodromy") {
        std::cout << p["sub"].get<std::string>() << " < " << p["sup"].get<std::string>()
                  << "  index " << p["index"].get<std::string>() << ", " << p["total_classes"]
                  << " class(es)\n";
        for (const Json& blk : p["cycle_vectors"]) {
            std::cout << "cycles " << blk["cycle_vector"].dump() << "  "
                      << blk["verdict"].get<std::string>() << "\n";
            for (const Json& c : blk["classes"])
                std::cout << "  " << c["permutations"].dump() << "  image order "
                          << c["image_order"] << "\n";
        }
        return;
    }
    if (command == "wordmap") {
        std::cout << "class " << p["permutations"].dump() << " in " << p["sup"].get<std::string>()
                  << "\n";
        print_rows(p["words"], {"word", "induced_period", "image_order"});
        std::cout << "product identity: " << (p["product_identity"].get<bool>() ? "yes" : "no")
                  << "\n";
        return;
    }
    if (command == "maximal") {
        std::cout << p["signature"].get<std::string>() << " is "
                  << (p["maximal"].get<bool>() ? "finitely maximal" : "not maximal") << " ("
                  << p["method"].get<std::string>() << ")\n";
        if (!p["candidates"].empty()) {
            std::cout << "extensions:\n";
            print_rows(p["candidates"], {"signature", "index"});
        }
        if (!p["eliminated"].empty()) {
            std::cout << "eliminated:\n";
            print_rows(p["eliminated"], {"signature", "index"});
        }
        return;
    }
    if (command == "orbits") {
        const Json& o = p["orders"];
        std::cout << "|A| = " << o["A"] << ", |N| = " << o["N"] << ", |C| = " << o["C"] << "\n";
        for (const Json& row : p["rows"]) {
            std::cout << "generator order " << row["generator_order"] << ", " << row["points"]
                      << " points:\n";
            print_rows(row["n_orbits"], {"type", "count", "size", "stabilizer", "stabilizer_in_c"});
        }
        const Json& s = p["induced_signatures"];
        std::cout << "induced signatures: N " << s["N"].get<std::string>() << ", C "
                  << s["C"].get<std::string>() << "\n";
        std::cout << "weakly malnormal: " << (p["weakly_malnormal"].get<bool>() ? "yes" : "no")
                  << ", orbit laws "
                  << (p["orbit_laws"]["violations"].empty() ? "hold" : "violated") << "\n";
        return;
    }
    if (command == "classify") {
        std::cout << "signature " << p["signature"].get<std::string>()
                  << (p["rejected"].get<bool>() ? " (rejected)" : "") << "\n";
        for (const Json& st : p["stages"]) {
            std::cout << "stage " << st["stage"].get<std::string>();
            if (st.contains("error")) std::cout << ": " << st["error"].get<std::string>();
            if (st.contains("count")) std::cout << ": " << st["count"] << " branch(es)";
            if (st.contains("maximal"))
                std::cout << ": " << (st["maximal"].get<bool>() ? "maximal" : "not maximal");
            std::cout << "\n";
            if (st["stage"] == "factorization" && st.contains("branches"))
                for (const Json& b : st["branches"]) {
                    if (b.contains("error")) continue;
                    std::cout << "  K = " << b["K"].get<std::string>() << "  "
                              << b["factorization"].get<std::string>() << "  kernel "
                              << b["kernel"].get<std::string>();
                    if (b.contains("order")) std::cout << "  |C| = " << b["order"];
                    std::cout << "\n";
                }
        }
        if (p.contains("fuse")) {
            const Json& id = p["fuse"]["order_identity"];
            std::cout << "fused triple: |A| = m*n*|K| = " << id["m"] << "*" << id["n"] << "*"
                      << id["K"] << " = " << id["product"]
                      << (id["holds"].get<bool>() ? " (holds)" : " (broken)") << "\n";
        }
        return;
    }
    std::cout << p.dump(2) << "\n";
}

int emit(const std::string& command, const std::vector<std::string>& args, const Json& payload,
         bool json_mode, std::chrono::steady_clock::time_point t0) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    if (json_mode)
        std::cout << run_record_json(command, args, payload, ms).dump(2) << "\n";
    else
        print_text(command, payload);
    return 0;
}

std::vector<std::string> raw_args(int argc, char** argv) {
    std::vector<std::string> out;
    for (int i = 1; i < argc; ++i) out.emplace_back(argv[i]);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclic n-gonal surface atlas"};
    app.require_subcommand(1);

    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit the run record as JSON");

    // genus
    long long g_n = 0;
    std::vector<long long> g_p;
    auto* cmd_genus = app.add_subcommand("genus", "genus of the plane-model curve");
    cmd_genus->add_option("--n", g_n, "order of the cyclic group")->required();
    cmd_genus->add_option("--p", g_p, "branch exponents")->required()->delimiter(',');

    // factor
    std::string f_sig, f_k = "all";
    bool f_table4 = false;
    auto* cmd_factor = app.add_subcommand("factor", "factor a signature through sphere groups");
    cmd_factor->add_option("--sig", f_sig, "signature of the normalizer group");
    cmd_factor->add_option("--K", f_k, "family: all, Ck, Dk, C2, D3, A4, S4, A5, ...");
    cmd_factor->add_flag("--table4", f_table4, "regenerate the (2,d,2d) family table");

    // kfixed
    std::string kf_sig, kf_k = "all";
    long long kf_cap = kDefaultVectorCap;
    auto* cmd_kfixed = app.add_subcommand("kfixed", "twisted fixed generating vectors");
    cmd_kfixed->add_option("--sig", kf_sig, "signature of the normalizer group")->required();
    cmd_kfixed->add_option("--K", kf_k, "family to factor through");
    cmd_kfixed->add_option("--cap", kf_cap, "fixed-vector list cap");

    // monodromy
    std::string m_sub, m_sup;
    long long m_bound = 12;
    auto* cmd_mono = app.add_subcommand("monodromy", "monodromy classes of a signature pair");
    cmd_mono->add_option("--sub", m_sub, "subgroup signature")->required();
    cmd_mono->add_option("--sup", m_sup, "overgroup signature")->required();
    cmd_mono->add_option("--bound", m_bound, "largest admissible degree");

    // wordmap
    std::string w_sub, w_sup;
    long long w_class = 0, w_bound = 12;
    auto* cmd_word = app.add_subcommand("wordmap", "generator words for one monodromy class");
    cmd_word->add_option("--sub", w_sub, "subgroup signature")->required();
    cmd_word->add_option("--sup", w_sup, "overgroup signature")->required();
    cmd_word->add_option("--class", w_class, "index into the class list");
    cmd_word->add_option("--bound", w_bound, "largest admissible degree");

    // maximal
    std::string x_sig;
    long long x_bound = 50;
    auto* cmd_max = app.add_subcommand("maximal", "finite maximality certificate");
    cmd_max->add_option("--sig", x_sig, "signature to test")->required();
    cmd_max->add_option("--bound", x_bound, "period bound of the candidate search");

    // orbits
    std::string o_fixture;
    auto* cmd_orbits = app.add_subcommand("orbits", "orbit table of a fixture triple");
    cmd_orbits->add_option("--fixture", o_fixture, "klein, bring or fermat:<n>")->required();

    // classify
    std::string c_sig, c_fixture;
    long long c_bound = 50, c_cap = kDefaultVectorCap;
    auto* cmd_classify = app.add_subcommand("classify", "end-to-end classification pipeline");
    cmd_classify->add_option("--sig", c_sig, "signature of the normalizer group")->required();
    cmd_classify->add_option("--bound", c_bound, "period bound of the maximality search");
    cmd_classify->add_option("--cap", c_cap, "fixed-vector list cap");
    cmd_classify->add_option("--fixture", c_fixture, "concrete triple to fuse: klein, bring, fermat:<n>");

    CLI11_PARSE(app, argc, argv);
    const std::vector<std::string> args = raw_args(argc, argv);
    const auto t0 = std::chrono::steady_clock::now();

    try {
        if (cmd_genus->parsed())
            return emit("genus", args, genus_payload(plane_curve(g_n, g_p)), json_mode, t0);

        if (cmd_factor->parsed()) {
            if (f_table4) return emit("factor", args, table4_json(reproduce_table4()), json_mode, t0);
            if (f_sig.empty()) throw std::domain_error("factor needs --sig or --table4");
            Signature sig = parse_signature(f_sig);
            return emit("factor", args, factor_payload(sig, parse_families(f_k)), json_mode, t0);
        }

        if (cmd_kfixed->parsed()) {
            Signature sig = parse_signature(kf_sig);
            Json branches = Json::array();
            bool truncated = false;
            for (const SphericalGroup& fam : parse_families(kf_k))
                for (const KFactorBranch& br : kcompatible_enumerate(sig, fam)) {
                    Json one = kfixed_payload(br.fact, kf_cap);
                    truncated = truncated || one["truncated"].get<bool>();
                    branches.push_back(std::move(one));
                }
            Json payload;
            payload["signature"] = sig.str();
            payload["branches"] = std::move(branches);
            int rc = emit("kfixed", args, payload, json_mode, t0);
            if (truncated) throw ResourceLimit("fixed-vector lists were truncated at the cap");
            return rc;
        }

        if (cmd_mono->parsed() || cmd_word->parsed()) {
            const bool words = cmd_word->parsed();
            Signature sub = parse_signature(words ? w_sub : m_sub);
            Signature sup = parse_signature(words ? w_sup : m_sup);
            Rat idx = index_of_pair(sub, sup);
            if (idx.denominator() != 1)
                throw std::domain_error("the pair has non-integral index " + rat_str(idx));
            long long bound = words ? w_bound : m_bound;
            if (idx.numerator() > bound)
                throw ResourceLimit("index " + std::to_string(idx.numerator()) +
                                    " exceeds the degree bound " + std::to_string(bound));
            if (!words)
                return emit("monodromy", args, monodromy_payload(sub, sup, static_cast<int>(bound)),
                            json_mode, t0);

            std::vector<MonodromyVector> reps;
            for (const CycleVector& P : compatible_cycle_vectors(sub, sup))
                for (MonodromyVector& M : find_monodromy_vectors(P, static_cast<int>(bound)))
                    reps.push_back(std::move(M));
            if (reps.empty()) throw std::domain_error("the pair admits no monodromy class");
            if (w_class < 0 || w_class >= static_cast<long long>(reps.size()))
                throw std::domain_error("class index out of range; " + std::to_string(reps.size()) +
                                        " class(es) exist");
            return emit("wordmap", args, wordmap_payload(reps[w_class], sup), json_mode, t0);
        }

        if (cmd_max->parsed()) {
            Signature sig = parse_signature(x_sig);
            MaximalVerdict v = finitely_maximal(sig, x_bound);
            return emit("maximal", args, maximal_payload(sig, v), json_mode, t0);
        }

        if (cmd_orbits->parsed())
            return emit("orbits", args, orbits_for(o_fixture), json_mode, t0);

        if (cmd_classify->parsed()) {
            Signature sig = parse_signature(c_sig);
            Json payload = classify_payload(sig, c_bound, c_cap);
            if (!c_fixture.empty()) payload["fuse"] = fuse_for(c_fixture);
            int rc = emit("classify", args, payload, json_mode, t0);
            if (payload["rejected"].get<bool>()) return kExitDomain;
            return rc;
        }
    } catch (const ResourceLimit& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::string what = e.what();
        if (what.find("desk scale") != std::string::npos ||
            what.find("exceeds the search bound") != std::string::npos) {
            std::cerr << "resource bound: " << what << "\n";
            return kExitResource;
        }
        std::cerr << "rejected: " << what << "\n";
        return kExitDomain;
    }
    return 0;
}
