#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/classify.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/matrix.hpp"
#include "plumbcalc/number_theory.hpp"

namespace plumbcalc {

struct MinimalizationResult {
    GramLattice minimal_part;
    std::size_t num_plus_ones = 0;
    std::size_t num_minus_ones = 0;
    /// Columns are the new basis in old coordinates, ordered
    /// [minimal part | +1 vectors | -1 vectors].
    IntMatrix basis_change;

    /// The block form minimal_part + <1>^a + <-1>^b.
    GramLattice reassembled() const {
        std::vector<std::int64_t> units(num_plus_ones, 1);
        units.insert(units.end(), num_minus_ones, -1);
        return direct_sum(minimal_part, GramLattice::diagonal(units));
    }
};

/// A unimodular matrix whose first column is the primitive vector v.
inline IntMatrix extend_to_basis(std::span<const std::int64_t> v) {
    const std::size_t n = v.size();
    std::vector<std::int64_t> w(v.begin(), v.end());
    IntMatrix e = IntMatrix::identity(n);
    // Row operations R reduce w to a multiple of e_1; E <- E * R^-1 keeps E * w = v.
    for (std::size_t i = 1; i < n; ++i) {
        if (w[i] == 0) {
            continue;
        }
        const std::int64_t a = w[0];
        const std::int64_t b = w[i];
        const auto [g, x, y] = bezout(a, b);
        const std::int64_t ag = a / g;
        const std::int64_t bg = b / g;
        for (std::size_t r = 0; r < n; ++r) {
            const std::int64_t e0 = e(r, 0);
            const std::int64_t ei = e(r, i);
            e(r, 0) = checked::add(checked::mul(e0, ag), checked::mul(ei, bg));
            e(r, i) = checked::sub(checked::mul(ei, x), checked::mul(e0, y));
        }
        w[0] = g;
        w[i] = 0;
    }
    if (n == 0 || (w[0] != 1 && w[0] != -1)) {
        throw Error(ErrorCode::InvalidArgument, "vector is not primitive");
    }
    if (w[0] == -1) {
        for (std::size_t r = 0; r < n; ++r) {
            e(r, 0) = -e(r, 0);
        }
    }
    return e;
}

/// Splits off <+1> and <-1> summands one vector at a time. choose picks the
/// index of the vector to split from the sorted candidate list.
template <class Chooser>
MinimalizationResult minimalize(const GramLattice& lattice, Chooser&& choose) {
    const std::size_t n = lattice.rank();
    const int sign = detail::definite_sign(lattice);
    IntMatrix span = IntMatrix::identity(n);  // columns spanning the current complement
    GramLattice current = lattice;
    std::vector<std::vector<std::int64_t>> units;

    while (current.rank() > 0) {
        const auto candidates = short_vectors(current, sign);
        if (candidates.empty()) {
            break;
        }
        const std::size_t pick = choose(candidates);
        if (pick >= candidates.size()) {
            throw Error(ErrorCode::InvalidArgument, "chooser returned an out-of-range index");
        }
        const auto& v = candidates[pick];
        const std::size_t r = current.rank();
        const IntMatrix e = extend_to_basis(v);
        const GramLattice h = current.transformed(e);
        // Project the remaining columns orthogonally to v (h(0,0) = sign).
        IntMatrix step(r, r - 1, 0);
        for (std::size_t j = 1; j < r; ++j) {
            const std::int64_t coeff = checked::mul(sign, h(0, j));
            for (std::size_t i = 0; i < r; ++i) {
                step(i, j - 1) = checked::sub(e(i, j), checked::mul(coeff, v[i]));
            }
        }
        IntMatrix col(r, 1, 0);
        for (std::size_t i = 0; i < r; ++i) {
            col(i, 0) = v[i];
        }
        units.push_back(multiply(span, col).column(0));
        span = multiply(span, step);
        current = current.transformed(step);
    }

    MinimalizationResult out;
    out.minimal_part = current;
    (sign > 0 ? out.num_plus_ones : out.num_minus_ones) = units.size();
    out.basis_change = IntMatrix(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < span.cols(); ++j) {
            out.basis_change(i, j) = span(i, j);
        }
        for (std::size_t j = 0; j < units.size(); ++j) {
            out.basis_change(i, span.cols() + j) = units[j][i];
        }
    }
    return out;
}

/// Deterministic version: always splits the lexicographically least vector.
inline MinimalizationResult minimalize(const GramLattice& lattice) {
    return minimalize(lattice, [](const auto&) { return std::size_t{0}; });
}

}  // namespace plumbcalc
