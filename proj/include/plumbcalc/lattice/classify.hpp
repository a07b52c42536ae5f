#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/enumeration.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/lattice/linear_algebra.hpp"

namespace plumbcalc {

enum class Definiteness { PositiveDefinite, NegativeDefinite, Indefinite, Degenerate };
enum class Parity { Even, Odd };
enum class Unimodularity { Unimodular, NotUnimodular };
enum class E8Type { PlusE8, MinusE8, Neither };

struct LatticeClass {
    Definiteness definiteness;
    Parity parity;
    Unimodularity unimodularity;

    friend bool operator==(const LatticeClass&, const LatticeClass&) = default;
};

constexpr std::string_view to_string(Definiteness d) {
    switch (d) {
        case Definiteness::PositiveDefinite: return "PositiveDefinite";
        case Definiteness::NegativeDefinite: return "NegativeDefinite";
        case Definiteness::Indefinite: return "Indefinite";
        case Definiteness::Degenerate: return "Degenerate";
    }
    return "?";
}

constexpr std::string_view to_string(E8Type t) {
    switch (t) {
        case E8Type::PlusE8: return "PlusE8";
        case E8Type::MinusE8: return "MinusE8";
        case E8Type::Neither: return "Neither";
    }
    return "?";
}

inline Definiteness definiteness(const Signature& sig, std::size_t rank) {
    if (sig.n_zero > 0) {
        return Definiteness::Degenerate;
    }
    if (sig.n_plus == rank) {
        return Definiteness::PositiveDefinite;
    }
    if (sig.n_minus == rank) {
        return Definiteness::NegativeDefinite;
    }
    return Definiteness::Indefinite;
}

inline Definiteness definiteness(const GramLattice& lattice) {
    return definiteness(signature(lattice), lattice.rank());
}

inline LatticeClass classify(const GramLattice& lattice) {
    const BigInt det = determinant(lattice);
    return {definiteness(lattice), lattice.is_even() ? Parity::Even : Parity::Odd,
            (det == 1 || det == -1) ? Unimodularity::Unimodular : Unimodularity::NotUnimodular};
}

namespace detail {

/// +1 for positive definite, -1 for negative definite (the empty lattice is
/// both; it reports +1). Throws otherwise.
inline int definite_sign(const GramLattice& lattice) {
    switch (definiteness(lattice)) {
        case Definiteness::PositiveDefinite: return 1;
        case Definiteness::NegativeDefinite: return lattice.rank() == 0 ? 1 : -1;
        default: throw Error(ErrorCode::NotDefinite, "lattice is not definite");
    }
}

inline GramLattice positive_version(const GramLattice& lattice, int sign) {
    return sign > 0 ? lattice : lattice.negated();
}

inline void normalise_sign(std::vector<std::int64_t>& v) {
    for (std::int64_t x : v) {
        if (x != 0) {
            if (x < 0) {
                for (auto& y : v) {
                    y = -y;
                }
            }
            return;
        }
    }
}

}  // namespace detail

/// All vectors of the given norm in a definite lattice, one per +/- pair
/// (first nonzero coordinate positive), sorted lexicographically.
inline std::vector<std::vector<std::int64_t>> short_vectors(const GramLattice& lattice,
                                                            std::int64_t norm_target) {
    const int sign = detail::definite_sign(lattice);
    if (norm_target == 0) {
        return {};
    }
    if ((norm_target > 0) != (sign > 0) && lattice.rank() > 0) {
        throw Error(ErrorCode::InvalidArgument, "norm target has the wrong sign for this lattice");
    }
    const Rational wanted = norm_target > 0 ? norm_target : -norm_target;
    const PositiveForm form(detail::positive_version(lattice, sign));
    const std::vector<Rational> origin(lattice.rank());
    std::vector<std::vector<std::int64_t>> out;
    form.enumerate(origin, wanted,
                   [&](std::span<const std::int64_t> y, const Rational& value) -> std::optional<Rational> {
                       if (value != wanted) {
                           return std::nullopt;
                       }
                       for (std::int64_t x : y) {
                           if (x != 0) {
                               if (x > 0) {
                                   out.emplace_back(y.begin(), y.end());
                               }
                               break;
                           }
                       }
                       return std::nullopt;
                   });
    std::sort(out.begin(), out.end());
    return out;
}

/// Recognition by invariants: a definite, even, unimodular form of rank 8 is
/// E8 up to sign, since E8 is the only such form.
inline E8Type is_E8(const GramLattice& lattice) {
    if (lattice.rank() != 8 || !lattice.is_even()) {
        return E8Type::Neither;
    }
    const BigInt det = determinant(lattice);
    if (det != 1 && det != -1) {
        return E8Type::Neither;
    }
    switch (definiteness(lattice)) {
        case Definiteness::PositiveDefinite: return E8Type::PlusE8;
        case Definiteness::NegativeDefinite: return E8Type::MinusE8;
        default: return E8Type::Neither;
    }
}

}  // namespace plumbcalc
