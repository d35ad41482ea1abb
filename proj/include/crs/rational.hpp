#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "crs/common.hpp"

namespace crs {

// Exact rational arithmetic for the (1+eps)^j join thresholds. The cluster
// sandwich proofs rest on strict inequalities, so these comparisons must not
// go through floating point.
using Rational = boost::multiprecision::cpp_rational;

inline Rational eps_for_k(int k) {
    long long k4 = 1LL * k * k * k * k;
    return Rational(1, 48 * k4);
}

inline Rational rat_pow(const Rational& base, int p) {
    Rational r(1);
    for (int i = 0; i < p; ++i) r *= base;
    return r;
}

// lhs < rhs / factor, with kInf treated as +infinity on either side.
inline bool lt_div(Dist lhs, Dist rhs, const Rational& factor) {
    if (lhs == kInf) return false;
    if (rhs == kInf) return true;
    return Rational(lhs) * factor < Rational(rhs);
}

// lhs <= factor * rhs (both finite required on lhs; rhs==inf means true).
inline bool le_mul(Dist lhs, const Rational& factor, Dist rhs) {
    if (rhs == kInf) return true;
    if (lhs == kInf) return false;
    return Rational(lhs) <= factor * Rational(rhs);
}

inline double to_double(const Rational& r) {
    return static_cast<double>(boost::multiprecision::cpp_bin_float_100(r));
}

inline std::string rat_str(const Rational& r) {
    return r.str();
}

}  // namespace crs
