#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ngonal/constraints.hpp"
#include "ngonal/cyclic.hpp"
#include "ngonal/fixtures.hpp"
#include "ngonal/genvectors.hpp"
#include "ngonal/kmaps.hpp"
#include "ngonal/monodromy.hpp"
#include "ngonal/orbits.hpp"
#include "ngonal/signature.hpp"
#include "ngonal/spherical.hpp"

namespace ngonal {

// Insertion-ordered documents so that every serialization is byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "ngonal-atlas/1";
inline constexpr const char* kLibraryVersion = "1.0.0";

inline std::string rat_str(const Rat& r) {
    std::string out = std::to_string(r.numerator());
    if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
    return out;
}

inline std::string invariant_str(const std::vector<long long>& inv) {
    if (inv.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < inv.size(); ++i) {
        if (i) out += " x ";
        out += "Z" + std::to_string(inv[i]);
    }
    return out;
}

// The five families of sphere groups, straight off the catalog.
inline Json spherical_table_json() {
    Json rows = Json::array();
    for (const SphericalGroup& g : spherical_catalog()) {
        Json row;
        row["group"] = g.name();
        row["order"] = compact_str(g.order());
        row["signature"] = g.signature().str();
        row["constraint"] = g.parametric() ? "k >= 2" : "";
        rows.push_back(std::move(row));
    }
    Json out;
    out["schema"] = kSchemaTag;
    out["table"] = "sphere-groups";
    out["rows"] = std::move(rows);
    return out;
}

// Abelianizations of the sphere groups; the dihedral family splits on the
// parity of k.  The parametric rows are read off representatives and checked
// to be parity-determined before anything is emitted.
inline Json abelianization_table_json() {
    for (long long k = 2; k <= 12; ++k) {
        if (abelianization(SphericalGroup::cyclic(k)) != std::vector<long long>{k})
            throw std::logic_error("abelianization_table_json: cyclic row broken");
        if (k >= 3) {
            auto want = k % 2 == 0 ? std::vector<long long>{2, 2} : std::vector<long long>{2};
            if (abelianization(SphericalGroup::dihedral(k)) != want)
                throw std::logic_error("abelianization_table_json: dihedral parity broken");
        }
    }

    Json rows = Json::array();
    auto push = [&](const std::string& group, const std::string& constraint,
                    const Json& invariants, const std::string& display) {
        Json row;
        row["group"] = group;
        row["constraint"] = constraint;
        row["invariants"] = invariants;
        row["abelianization"] = display;
        rows.push_back(std::move(row));
    };
    auto concrete = [&](const SphericalGroup& g, const std::string& name,
                        const std::string& constraint) {
        std::vector<long long> inv = abelianization(g);
        push(name, constraint, Json(inv), invariant_str(inv));
    };
    push("Ck", "k >= 2", Json::array({"k"}), "Zk");
    concrete(SphericalGroup::dihedral(4), "Dk", "k even");
    concrete(SphericalGroup::dihedral(3), "Dk", "k odd, k >= 3");
    concrete(SphericalGroup::a4(), "A4", "");
    concrete(SphericalGroup::s4(), "S4", "");
    concrete(SphericalGroup::a5(), "A5", "");

    Json out;
    out["schema"] = kSchemaTag;
    out["table"] = "abelianizations";
    out["rows"] = std::move(rows);
    return out;
}

// Involutions x -> a*x of Z_{p^e} with their fixed subgroups: the generic
// pair {1, -1} plus, at 2^e with e >= 3, the two square roots 2^{e-1} +- 1.
// The template rows are replayed against the bare enumeration over a grid of
// prime powers before anything is emitted.
inline Json involution_table_json() {
    struct TemplateRow {
        const char* modulus;
        const char* constraint;
        const char* a;
        const char* fixed;
    };
    const std::vector<TemplateRow> tmpl = {
        {"p^e", "p odd", "1", "<1>"},
        {"p^e", "p odd", "-1", "<0>"},
        {"2^e", "e >= 1", "1", "<1>"},
        {"2^e", "e >= 2", "-1", "<2^{e-1}>"},
        {"2^e", "e >= 3", "2^{e-1}+1", "<2>"},
        {"2^e", "e >= 3", "2^{e-1}-1", "<2^{e-1}>"},
    };

    auto expected = [](long long n, bool twopow, long long e) {
        std::set<std::pair<long long, long long>> out{{1, 1}};
        if (!twopow) {
            out.insert({n - 1, 0});
            return out;
        }
        if (e >= 2) out.insert({n - 1, n / 2});
        if (e >= 3) {
            out.insert({n / 2 + 1, 2});
            out.insert({n / 2 - 1, n / 2});
        }
        return out;
    };
    auto replay = [&](long long p, long long emax) {
        long long n = 1;
        for (long long e = 1; e <= emax; ++e) {
            n *= p;
            std::set<std::pair<long long, long long>> got;
            for (const InvolutionFixed& iv : involutions_with_fixed(n))
                got.insert({iv.a, iv.generator});
            if (got != expected(n, p == 2, e))
                throw std::logic_error("involution_table_json: template rows disagree with " +
                                       std::to_string(n));
        }
    };
    replay(2, 7);
    for (long long p : {3, 5, 7, 11, 13}) replay(p, p < 7 ? 4 : 2);

    Json rows = Json::array();
    for (const TemplateRow& t : tmpl) {
        Json row;
        row["modulus"] = t.modulus;
        row["constraint"] = t.constraint;
        row["involution"] = t.a;
        row["fixed_subgroup"] = t.fixed;
        rows.push_back(std::move(row));
    }
    Json out;
    out["schema"] = kSchemaTag;
    out["table"] = "cyclic-involutions";
    out["rows"] = std::move(rows);
    return out;
}

inline Json table4_row_json(const Table4Row& r) {
    Json row;
    row["K"] = r.K_name;
    row["factorization"] = r.fact.str();
    row["variants"] = r.variants;
    row["d"] = compact_str(r.d_value);
    row["kernel"] = r.kernel.str();
    row["order"] = r.n_text;
    row["genus"] = r.genus_text;
    row["condition"] = r.condition;
    row["min_e"] = r.min_e;
    row["admissible"] = !r.never_admissible;
    row["flagged"] = !r.note.empty();
    if (!r.note.empty()) row["note"] = r.note;
    return row;
}

inline Json table4_json(const std::vector<Table4Row>& rows) {
    Json jrows = Json::array();
    for (const Table4Row& r : rows) jrows.push_back(table4_row_json(r));
    Json out;
    out["schema"] = kSchemaTag;
    out["table"] = "triangle-family-factorizations";
    out["rows"] = std::move(jrows);
    return out;
}

inline Json genus_payload(const PlaneCurve& c) {
    Json out;
    out["n"] = c.n;
    out["exponents"] = Json(c.exponents);
    out["signature"] = c.sig.str();
    out["genus"] = c.genus;
    return out;
}

// Factorizations of one signature through the requested families, in the
// same per-row shape as the triangle-family table.
inline Json factor_payload(const Signature& sig, const std::vector<SphericalGroup>& families) {
    Json blocks = Json::array();
    long long total = 0;
    for (const SphericalGroup& fam : families) {
        Json block;
        block["K"] = fam.name();
        Json rows = Json::array();
        for (const KFactorBranch& br : kcompatible_enumerate(sig, fam)) {
            Json row;
            row["factorization"] = br.fact.str();
            row["variants"] = br.variants;
            KernelSignature ks = kernel_signature(br.fact);
            row["kernel"] = ks.str();
            if (auto n = order_of_C(ks)) {
                row["order"] = compact_str(*n);
                if (auto g = kernel_genus(ks)) row["genus"] = g->str();
            }
            rows.push_back(std::move(row));
            ++total;
        }
        block["rows"] = std::move(rows);
        blocks.push_back(std::move(block));
    }
    Json out;
    out["signature"] = sig.str();
    out["families"] = std::move(blocks);
    out["total"] = total;
    return out;
}

// Twisted fixed vectors of one concrete factorization: every twist is
// reported with its fixed-vector count; the productive ones also carry a
// witness and the number of orbits under Aut(C).
inline Json kfixed_payload(const FactoredSignature& f, long long cap = kDefaultVectorCap) {
    KAction a = k_action(f);
    std::vector<Twist> twists = twist_candidates(a);
    bool truncated = false;
    Json jtwists = Json::array();
    long long productive = 0;
    for (const Twist& tw : twists) {
        Json row;
        Json units = Json::array();
        for (const Perm& g : a.K.gens) units.push_back(tw[a.K.idx(g)]);
        row["units_at_generators"] = std::move(units);
        VectorList vl = k_fixed_vectors(a, tw, cap);
        truncated = truncated || vl.truncated;
        row["fixed_vectors"] = static_cast<long long>(vl.vectors.size());
        if (vl.truncated) row["truncated"] = true;
        if (!vl.vectors.empty()) {
            ++productive;
            row["witness"] = Json(vl.vectors.front());
            row["aut_orbits"] = static_cast<long long>(aut_orbit_reps(a.n, vl.vectors).size());
        }
        jtwists.push_back(std::move(row));
    }
    Json out;
    out["factorization"] = f.str();
    out["K"] = f.K.name();
    out["order"] = a.n;
    out["kernel_periods"] = Json(a.periods);
    out["twists"] = std::move(jtwists);
    out["productive_twists"] = productive;
    out["truncated"] = truncated;
    return out;
}

inline Json maximal_payload(const Signature& sig, const MaximalVerdict& v) {
    auto list = [](const std::vector<MaximalCandidate>& cs) {
        Json out = Json::array();
        for (const MaximalCandidate& c : cs) {
            Json row;
            row["signature"] = c.sig.str();
            row["index"] = rat_str(c.index);
            out.push_back(std::move(row));
        }
        return out;
    };
    Json out;
    out["signature"] = sig.str();
    out["maximal"] = v.maximal;
    out["method"] = v.closed_form ? "closed form" : "bounded search";
    out["bound"] = v.bound;
    out["candidates"] = list(v.candidates);
    out["eliminated"] = list(v.eliminated);
    return out;
}

namespace detail {

inline const char* pair_verdict_name(PairVerdict v) {
    switch (v) {
        case PairVerdict::Constrained:
            return "constrained";
        case PairVerdict::Tight:
            return "tight";
        case PairVerdict::FamilyMember:
            return "family member";
    }
    throw std::logic_error("unreachable");
}

inline Json cycle_vector_json(const CycleVector& P) {
    Json out = Json::array();
    for (const CycleType& t : P) out.push_back(Json(t));
    return out;
}

}  // namespace detail

// Monodromy classes of the inclusion sub < sup: one block per compatible
// cycle vector, one row per simultaneous-conjugation class, each row listing
// canonical representatives and the order of the group they generate.
inline Json monodromy_payload(const Signature& sub, const Signature& sup, int bound = 8) {
    Json blocks = Json::array();
    long long total = 0;
    for (const CycleVector& P : compatible_cycle_vectors(sub, sup)) {
        Json block;
        block["cycle_vector"] = detail::cycle_vector_json(P);
        PairClass pc = classify_pair(sub, sup, P);
        block["verdict"] = detail::pair_verdict_name(pc.verdict);
        if (pc.parent_sub) {
            block["parent_sub"] = pc.parent_sub->str();
            block["parent_sup"] = pc.parent_sup->str();
        }
        Json rows = Json::array();
        for (const MonodromyVector& M : find_monodromy_vectors(P, bound)) {
            Json row;
            Json perms = Json::array();
            for (const Perm& p : M) perms.push_back(perm_to_string(p));
            row["permutations"] = std::move(perms);
            row["image_order"] = static_cast<long long>(close_perms(M).size());
            rows.push_back(std::move(row));
            ++total;
        }
        block["classes"] = std::move(rows);
        blocks.push_back(std::move(block));
    }
    Json out;
    out["sub"] = sub.str();
    out["sup"] = sup.str();
    out["index"] = rat_str(index_of_pair(sub, sup));
    out["cycle_vectors"] = std::move(blocks);
    out["total_classes"] = total;
    return out;
}

// Words expressing the canonical generators downstairs through one monodromy
// class, with the evaluated sanity data alongside each word.
inline Json wordmap_payload(const MonodromyVector& M, const Signature& sup, int base = 0) {
    WordMap wm = word_map(M, sup, base);
    Json words = Json::array();
    Perm prod = Perm::identity(M.front().degree());
    for (const InducedWord& iw : wm.words) {
        Perm img = eval_word(iw.w, M);
        prod = prod * img;
        Json row;
        row["word"] = word_to_string(iw.w);
        row["slot"] = iw.gen;
        row["power"] = iw.power;
        row["induced_period"] = iw.induced.str();
        row["image_order"] = img.order();
        row["fixes_base"] = img.apply(wm.base) == wm.base;
        words.push_back(std::move(row));
    }
    Json perms = Json::array();
    for (const Perm& p : M) perms.push_back(perm_to_string(p));
    Json out;
    out["sup"] = sup.str();
    out["permutations"] = std::move(perms);
    out["base"] = wm.base;
    out["words"] = std::move(words);
    out["product_identity"] = prod.is_identity();
    return out;
}

// The full orbit table of a fixture triple: one row per branch point of the
// big quotient, its point counts, the fibre decomposition into N-orbits with
// stabilizer data, the two induced quotient signatures, and the weak
// malnormality laws.
template <class U>
Json orbits_payload(const SurfaceTriple<U>& fx) {
    std::vector<OrbitRow> rows = orbit_decomposition(fx.A, fx.N, fx.C, fx.gv);
    const bool wm = weakly_malnormal(fx.A, fx.C);
    OrbitLawReport law = check_weak_malnormal_orbit_laws(rows, wm);
    auto [sig_n, sig_c] = induced_signature_from_orbits(rows, fx.N, fx.C);

    Json jrows = Json::array();
    for (const OrbitRow& r : rows) {
        Json row;
        row["generator_order"] = r.gen_order;
        row["points"] = r.orbit_size;
        Json cells = Json::array();
        for (const NOrbit& ob : r.orbits) {
            Json cell;
            cell["type"] = ob.type;
            cell["count"] = 1;
            cell["size"] = ob.size;
            cell["stabilizer"] = ob.stab_order;
            cell["stabilizer_in_c"] = ob.stab_in_c;
            cells.push_back(std::move(cell));
        }
        // equal cells collapse into one with a count, Table-7 style
        Json merged = Json::array();
        for (const Json& cell : cells) {
            if (!merged.empty()) {
                Json& last = merged.back();
                bool same = last["type"] == cell["type"] && last["size"] == cell["size"] &&
                            last["stabilizer"] == cell["stabilizer"] &&
                            last["stabilizer_in_c"] == cell["stabilizer_in_c"];
                if (same) {
                    last["count"] = last["count"].get<long long>() + 1;
                    continue;
                }
            }
            merged.push_back(cell);
        }
        row["n_orbits"] = std::move(merged);
        jrows.push_back(std::move(row));
    }

    Json orders;
    orders["A"] = static_cast<long long>(fx.A.size());
    orders["N"] = static_cast<long long>(fx.N.size());
    orders["C"] = static_cast<long long>(fx.C.size());
    Json sigs;
    sigs["A"] = fx.sig_A.str();
    sigs["N"] = sig_n.str();
    sigs["C"] = sig_c.str();
    Json laws;
    laws["checked"] = law.checked;
    laws["violations"] = Json(law.violations);
    if (!law.note.empty()) laws["note"] = law.note;

    Json out;
    out["orders"] = std::move(orders);
    out["rows"] = std::move(jrows);
    out["induced_signatures"] = std::move(sigs);
    out["weakly_malnormal"] = wm;
    out["orbit_laws"] = std::move(laws);
    return out;
}

// Coset-action bookkeeping of a concrete triple, including the order
// identity |A| = m * n * |K|.
template <class U>
Json fuse_payload(const SurfaceTriple<U>& fx) {
    FuseReport r = fuse_triple(fx.A, fx.N, fx.C);
    const long long a = static_cast<long long>(fx.A.size());
    const long long n = static_cast<long long>(fx.C.size());
    const long long k = static_cast<long long>(fx.N.size()) / n;
    const long long m = a / static_cast<long long>(fx.N.size());

    Json orders;
    orders["A"] = a;
    orders["N"] = static_cast<long long>(fx.N.size());
    orders["C"] = n;
    orders["K"] = k;
    Json identity;
    identity["m"] = m;
    identity["n"] = n;
    identity["K"] = k;
    identity["product"] = m * n * k;
    identity["holds"] = m * n * k == a;
    Json action;
    action["index"] = r.index;
    action["image_order"] = r.image_order;
    action["core_order"] = r.core_order;
    action["core_trivial"] = r.core_trivial;
    action["stabilizer_order"] = r.stabilizer_order;
    action["stabilizer_cyclic"] = r.stabilizer_cyclic;

    Json out;
    out["orders"] = std::move(orders);
    out["order_identity"] = std::move(identity);
    out["coset_action"] = std::move(action);
    out["signatures"] = Json{{"A", fx.sig_A.str()}, {"N", fx.sig_N.str()}, {"C", fx.sig_C.str()}};
    return out;
}

// End-to-end classification of a normalizer signature: factorization through
// every sphere family, kernel admissibility, fixed vectors, extension
// templates, and maximality.  A failing stage is recorded under its name and
// the remaining stages run on whatever survived.
inline Json classify_payload(const Signature& sig, long long max_bound = 50,
                             long long cap = kDefaultVectorCap) {
    Json stages = Json::array();
    auto stage_error = [&](const std::string& name, const std::exception& e) {
        Json st;
        st["stage"] = name;
        st["error"] = e.what();
        stages.push_back(std::move(st));
    };

    Json out;
    out["signature"] = sig.str();

    // admission
    {
        Json st;
        st["stage"] = "signature";
        bool ok = sig.genus == 0 && !sig.has_parabolic() &&
                  (sig.concrete() ? is_hyperbolic(sig) : hyperbolic_possible(sig));
        st["hyperbolic"] = ok;
        if (!ok) {
            st["error"] = "not the signature of a hyperbolic genus-0 group";
            stages.push_back(std::move(st));
            out["rejected"] = true;
            out["stages"] = std::move(stages);
            return out;
        }
        stages.push_back(std::move(st));
    }

    // factorization through every family, with kernel data per branch
    struct Branch {
        KFactorBranch br;
        KernelSignature kernel;
        std::optional<long long> order;  // concrete |C| when available
    };
    std::vector<Branch> branches;
    {
        Json st;
        st["stage"] = "factorization";
        Json jb = Json::array();
        for (const SphericalGroup& fam : spherical_catalog()) {
            try {
                for (const KFactorBranch& br : kcompatible_enumerate(sig, fam)) {
                    Branch b{br, kernel_signature(br.fact), std::nullopt};
                    if (sig.concrete()) {
                        Signature inst = b.kernel.instantiate({});
                        b.order = order_of_C(inst);
                    }
                    Json row;
                    row["K"] = b.br.fact.K.name();
                    row["factorization"] = b.br.fact.str();
                    row["kernel"] = b.kernel.str();
                    if (b.order) row["order"] = *b.order;
                    jb.push_back(std::move(row));
                    branches.push_back(std::move(b));
                }
            } catch (const std::exception& e) {
                Json row;
                row["K"] = fam.name();
                row["error"] = e.what();
                jb.push_back(std::move(row));
            }
        }
        st["branches"] = std::move(jb);
        st["count"] = static_cast<long long>(branches.size());
        stages.push_back(std::move(st));
    }

    // kernel admissibility per branch
    {
        Json st;
        st["stage"] = "kernel";
        Json jb = Json::array();
        for (const Branch& b : branches) {
            Json row;
            row["factorization"] = b.br.fact.str();
            if (!b.order) {
                row["skipped"] = "parametric kernel";
                jb.push_back(std::move(row));
                continue;
            }
            try {
                Signature inst = b.kernel.instantiate({});
                std::vector<long long> periods;
                for (const Period& p : inst.periods) periods.push_back(p.value());
                HarveyVerdict hv = harvey_check(*b.order, periods);
                row["order"] = *b.order;
                row["admissible"] = hv.admissible;
                if (!hv.admissible) row["reason"] = hv.reason;
                Rat g = riemann_hurwitz_genus(*b.order, inst);
                if (g.denominator() == 1) row["genus"] = g.numerator();
            } catch (const std::exception& e) {
                row["error"] = e.what();
            }
            jb.push_back(std::move(row));
        }
        st["branches"] = std::move(jb);
        stages.push_back(std::move(st));
    }

    // fixed generating vectors, concrete branches only
    {
        Json st;
        st["stage"] = "fixed_vectors";
        Json jb = Json::array();
        for (const Branch& b : branches) {
            Json row;
            row["factorization"] = b.br.fact.str();
            if (!b.order) {
                row["skipped"] = "parametric kernel";
            } else if (*b.order > 3000) {
                row["skipped"] = "kernel order beyond the desk cap";
            } else {
                try {
                    Json kf = kfixed_payload(b.br.fact, cap);
                    row["order"] = kf["order"];
                    row["productive_twists"] = kf["productive_twists"];
                    row["twists"] = kf["twists"];
                } catch (const std::exception& e) {
                    row["error"] = e.what();
                }
            }
            jb.push_back(std::move(row));
        }
        st["branches"] = std::move(jb);
        stages.push_back(std::move(st));
    }

    // extension templates for the full group's signature
    {
        Json st;
        st["stage"] = "extension";
        Json jb = Json::array();
        for (const Branch& b : branches) {
            Json row;
            row["factorization"] = b.br.fact.str();
            try {
                Signature ksig = b.br.fact.K.signature();
                std::vector<long long> base;
                for (const Monomial& m : b.br.fact.rest) base.push_back(m.eval({}));
                Json jrows = Json::array();
                for (const Table5Row& t : table5_pairs(ksig, base)) {
                    Json tr;
                    tr["row"] = t.name;
                    tr["codimension"] = t.codim;
                    tr["k_factors"] = Json(t.k_factors);
                    tr["fills"] = t.fills;
                    jrows.push_back(std::move(tr));
                }
                row["templates"] = std::move(jrows);
            } catch (const std::exception& e) {
                row["error"] = e.what();
            }
            jb.push_back(std::move(row));
        }
        st["branches"] = std::move(jb);
        stages.push_back(std::move(st));
    }

    // maximality of the input signature
    {
        try {
            MaximalVerdict v = finitely_maximal(sig, max_bound);
            Json body = maximal_payload(sig, v);
            Json st;
            st["stage"] = "maximality";
            for (auto& [key, val] : body.items()) st[key] = val;
            stages.push_back(std::move(st));
        } catch (const std::exception& e) {
            stage_error("maximality", e);
        }
    }

    out["rejected"] = false;
    out["stages"] = std::move(stages);
    return out;
}

// The envelope around a payload: what ran, with what arguments, out of which
// library.  The payload alone is the deterministic part; elapsed time rides
// outside it.
inline Json run_record_json(const std::string& command, const std::vector<std::string>& arguments,
                            Json payload, double elapsed_ms) {
    Json out;
    out["schema"] = kSchemaTag;
    out["command"] = command;
    out["arguments"] = Json(arguments);
    out["version"] = kLibraryVersion;
    out["payload"] = std::move(payload);
    out["elapsed_ms"] = elapsed_ms;
    return out;
}

}  // namespace ngonal
