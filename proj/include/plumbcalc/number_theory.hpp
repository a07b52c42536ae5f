#pragma once

#include <cstdint>
#include <numeric>
#include <span>

#include "plumbcalc/error.hpp"

namespace plumbcalc {

struct BezoutResult {
    std::int64_t g;
    std::int64_t x;
    std::int64_t y;

    friend bool operator==(const BezoutResult&, const BezoutResult&) = default;
};

/// Extended Euclid: g = gcd(a, b) > 0 and a*x + b*y = g.
inline BezoutResult bezout(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) {
        throw Error(ErrorCode::InvalidArgument, "bezout(0, 0) is undefined");
    }
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        return {-old_r, -old_s, -old_t};
    }
    return {old_r, old_s, old_t};
}

/// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Inverse of a modulo m, in [0, m).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m < 2) {
        throw Error(ErrorCode::InvalidArgument, "modulus must be at least 2");
    }
    const BezoutResult br = bezout(mod_floor(a, m), m);
    if (br.g != 1) {
        throw Error(ErrorCode::NotCoprime,
                    std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    }
    return mod_floor(br.x, m);
}

inline bool pairwise_coprime(std::span<const std::int64_t> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (std::gcd(values[i], values[j]) != 1) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace plumbcalc
