#pragma once

// Negative ("minus") continued fractions
//     [c1, c2, ..., cm] = c1 - 1/(c2 - 1/(... - 1/cm))
// used for every plumbing leg in the library. The plus convention is not
// supported anywhere.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

using CFWord = std::vector<std::int64_t>;

enum class ExpandMode {
    AllAtLeast2,      ///< Hirzebruch-Jung expansion of a value > 1
    AllAtMostMinus2,  ///< negated expansion of a value < -1
};

inline Rational cf_eval(std::span<const std::int64_t> word) {
    if (word.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty continued fraction");
    }
    Rational value = word.back();
    for (std::size_t i = word.size() - 1; i-- > 0;) {
        if (value == 0) {
            throw Error(ErrorCode::ZeroTail,
                        "tail starting at position " + std::to_string(i + 1) + " evaluates to 0");
        }
        value = Rational(word[i]) - 1 / value;
    }
    return value;
}

namespace detail {

inline CFWord hirzebruch_jung(BigInt num, BigInt den) {
    // num/den > 1, den > 0
    CFWord out;
    while (true) {
        const BigInt c = -floor_div(-num, den);  // ceil(num/den)
        out.push_back(to_int64(c));
        const BigInt rest = c * den - num;
        if (rest == 0) {
            return out;
        }
        num = den;
        den = rest;
    }
}

}  // namespace detail

/// The unique word with cf_eval(word) == value whose entries all satisfy the
/// mode constraint.
inline CFWord cf_expand(const Rational& value, ExpandMode mode) {
    switch (mode) {
        case ExpandMode::AllAtLeast2:
            if (value <= 1) {
                throw Error(ErrorCode::NotExpandable,
                            to_string(value) + " has no expansion with all entries >= 2");
            }
            return detail::hirzebruch_jung(numerator_of(value), denominator_of(value));
        case ExpandMode::AllAtMostMinus2: {
            if (value >= -1) {
                throw Error(ErrorCode::NotExpandable,
                            to_string(value) + " has no expansion with all entries <= -2");
            }
            CFWord word = detail::hirzebruch_jung(-numerator_of(value), denominator_of(value));
            for (auto& c : word) {
                c = -c;
            }
            return word;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown expansion mode");
}

inline std::string to_string(std::span<const std::int64_t> word) {
    std::string out = "[";
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += std::to_string(word[i]);
    }
    return out + "]";
}

}  // namespace plumbcalc
