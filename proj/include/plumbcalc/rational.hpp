#pragma once

// Exact integer and rational arithmetic shared by every module.
// Nothing in the library touches floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "plumbcalc/error.hpp"

namespace plumbcalc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw Error(ErrorCode::InvalidArgument, "zero denominator");
    }
    return den < 0 ? Rational(BigInt(-num), BigInt(-den)) : Rational(num, den);
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

/// "a/b" in lowest terms, or just "a" for integers.
inline std::string to_string(const Rational& r) {
    const BigInt den = denominator_of(r);
    if (den == 1) {
        return numerator_of(r).str();
    }
    return numerator_of(r).str() + "/" + den.str();
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

inline BigInt floor(const Rational& r) { return floor_div(numerator_of(r), denominator_of(r)); }

inline BigInt ceil(const Rational& r) { return -floor_div(-numerator_of(r), denominator_of(r)); }

/// Largest integer s with s*s <= r, for r >= 0.
inline BigInt isqrt_floor(const Rational& r) {
    if (r < 0) {
        throw Error(ErrorCode::InvalidArgument, "square root of a negative rational");
    }
    BigInt s = boost::multiprecision::sqrt(floor(r));
    while (Rational((s + 1) * (s + 1)) <= r) {
        ++s;
    }
    return s;
}

inline std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::Overflow, "value " + v.str() + " does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

inline std::int64_t to_int64(const Rational& r) {
    if (!is_integer(r)) {
        throw Error(ErrorCode::InvalidArgument, "expected an integer, got " + to_string(r));
    }
    return to_int64(numerator_of(r));
}

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw Error(ErrorCode::Overflow, "64-bit addition overflow");
    }
    return out;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(a, b, &out)) {
        throw Error(ErrorCode::Overflow, "64-bit subtraction overflow");
    }
    return out;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Error(ErrorCode::Overflow, "64-bit multiplication overflow");
    }
    return out;
}

}  // namespace checked

}  // namespace plumbcalc
