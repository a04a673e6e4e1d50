#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ngonal/signature.hpp"

namespace ngonal {

enum class SphericalFamily { Cyclic, Dihedral, A4, S4, A5 };

// A finite group with a spherical (genus-0, mu < 0) signature.  k = 0 marks a
// parametric cyclic/dihedral family; the exceptional families ignore k.
struct SphericalGroup {
    SphericalFamily family = SphericalFamily::Cyclic;
    long long k = 0;

    static SphericalGroup cyclic(long long k) { return {SphericalFamily::Cyclic, k}; }
    static SphericalGroup dihedral(long long k) { return {SphericalFamily::Dihedral, k}; }
    static SphericalGroup a4() { return {SphericalFamily::A4, 0}; }
    static SphericalGroup s4() { return {SphericalFamily::S4, 0}; }
    static SphericalGroup a5() { return {SphericalFamily::A5, 0}; }

    bool parametric() const {
        return (family == SphericalFamily::Cyclic || family == SphericalFamily::Dihedral) && k == 0;
    }
    bool cyclic_family() const { return family == SphericalFamily::Cyclic; }

    void validate() const {
        switch (family) {
            case SphericalFamily::Cyclic:
                if (k < 0 || k == 1) throw std::invalid_argument("cyclic K needs k >= 2 (0 = parametric)");
                break;
            case SphericalFamily::Dihedral:
                if (k < 0 || k == 1) throw std::invalid_argument("dihedral K needs k >= 2 (0 = parametric)");
                break;
            default:
                break;
        }
    }

    // Group order as a monomial: k, 2k, 12, 24, 60.
    Monomial order() const {
        switch (family) {
            case SphericalFamily::Cyclic:
                return parametric() ? Monomial(1, SYM_K) : Monomial(k);
            case SphericalFamily::Dihedral:
                return parametric() ? Monomial(2, SYM_K) : Monomial(2 * k);
            case SphericalFamily::A4:
                return Monomial(12);
            case SphericalFamily::S4:
                return Monomial(24);
            case SphericalFamily::A5:
                return Monomial(60);
        }
        throw std::logic_error("unreachable");
    }

    // (k,k), (2,2,k), (2,3,3), (2,3,4), (2,3,5).
    Signature signature() const {
        auto kp = [&]() {
            return parametric() ? Period::parametric(1, SYM_K) : Period::finite(k);
        };
        switch (family) {
            case SphericalFamily::Cyclic:
                return Signature(0, {kp(), kp()});
            case SphericalFamily::Dihedral:
                return Signature(0, {Period::finite(2), Period::finite(2), kp()});
            case SphericalFamily::A4:
                return Signature::of({2, 3, 3});
            case SphericalFamily::S4:
                return Signature::of({2, 3, 4});
            case SphericalFamily::A5:
                return Signature::of({2, 3, 5});
        }
        throw std::logic_error("unreachable");
    }

    std::string name() const {
        auto kn = [&]() { return parametric() ? std::string("k") : std::to_string(k); };
        switch (family) {
            case SphericalFamily::Cyclic:
                return "C" + kn();
            case SphericalFamily::Dihedral:
                return "D" + kn();
            case SphericalFamily::A4:
                return "A4";
            case SphericalFamily::S4:
                return "S4";
            case SphericalFamily::A5:
                return "A5";
        }
        throw std::logic_error("unreachable");
    }
};

// The five families admitting a spherical signature, parametric where they
// are parametric.
inline std::vector<SphericalGroup> spherical_catalog() {
    return {SphericalGroup::cyclic(0), SphericalGroup::dihedral(0), SphericalGroup::a4(),
            SphericalGroup::s4(), SphericalGroup::a5()};
}

// Cyclic invariants of K/[K,K] as catalogued: C_k -> (k); D_k -> (2,2) for
// even k, (2) for odd k; A4 -> (2,2); S4 -> (2); A5 -> ().
inline std::vector<long long> abelianization(const SphericalGroup& K) {
    K.validate();
    switch (K.family) {
        case SphericalFamily::Cyclic:
            if (K.parametric()) throw std::domain_error("abelianization needs a concrete k");
            return {K.k};
        case SphericalFamily::Dihedral:
            if (K.parametric()) throw std::domain_error("abelianization needs a concrete k");
            return K.k % 2 == 0 ? std::vector<long long>{2, 2} : std::vector<long long>{2};
        case SphericalFamily::A4:
            return {2, 2};
        case SphericalFamily::S4:
            return {2};
        case SphericalFamily::A5:
            return {};
    }
    throw std::logic_error("unreachable");
}

}  // namespace ngonal
