#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ngonal {

// All area/index arithmetic is exact; no floating point anywhere in the library.
using Rat = boost::rational<long long>;

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

inline long long lcm_ll(long long a, long long b) {
    if (a == 0 || b == 0) throw std::domain_error("lcm of zero");
    return std::lcm(a, b);
}

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Floor of an exact rational.
inline long long rat_floor(const Rat& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

}  // namespace ngonal
