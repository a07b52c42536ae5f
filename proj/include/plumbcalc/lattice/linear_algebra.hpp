#pragma once

// Exact linear algebra over Z, Q and GF(2) for Gram matrices.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/matrix.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

namespace detail {

/// Fraction-free (Bareiss) elimination; returns nullopt on 128-bit overflow so
/// the caller can retry with arbitrary precision.
template <class T>
std::optional<T> bareiss(Matrix<T> a) {
    const std::size_t n = a.rows();
    T sign = 1;
    T prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a(swap_row, k) == 0) {
                ++swap_row;
            }
            if (swap_row == n) {
                return T{0};
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(k, c), a(swap_row, c));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                if constexpr (std::is_same_v<T, __int128>) {
                    __int128 lhs = 0;
                    __int128 rhs = 0;
                    __int128 diff = 0;
                    if (__builtin_mul_overflow(a(k, k), a(i, j), &lhs) ||
                        __builtin_mul_overflow(a(i, k), a(k, j), &rhs) ||
                        __builtin_sub_overflow(lhs, rhs, &diff)) {
                        return std::nullopt;
                    }
                    a(i, j) = diff / prev;
                } else {
                    a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
                }
            }
        }
        prev = a(k, k);
    }
    return n == 0 ? T{1} : sign * a(n - 1, n - 1);
}

}  // namespace detail

/// Exact determinant; the rank 0 lattice has determinant 1.
inline BigInt determinant(const GramLattice& lattice) {
    const std::size_t n = lattice.rank();
    Matrix<__int128> small(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            small(i, j) = lattice(i, j);
        }
    }
    if (auto fast = detail::bareiss<__int128>(small)) {
        // cpp_int has no __int128 constructor on every platform; split by hand.
        const __int128 v = *fast;
        const bool negative = v < 0;
        unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                         : static_cast<unsigned __int128>(v);
        BigInt out = BigInt(static_cast<std::uint64_t>(mag >> 64));
        out <<= 64;
        out += BigInt(static_cast<std::uint64_t>(mag));
        return negative ? BigInt(-out) : out;
    }
    Matrix<BigInt> big(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            big(i, j) = lattice(i, j);
        }
    }
    return *detail::bareiss<BigInt>(std::move(big));
}

struct Signature {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;

    std::int64_t sigma() const {
        return static_cast<std::int64_t>(n_plus) - static_cast<std::int64_t>(n_minus);
    }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia by congruent diagonalisation over Q. A zero diagonal with a nonzero
/// off-diagonal entry is eliminated as a hyperbolic 2x2 block.
inline Signature signature(const GramLattice& lattice) {
    const std::size_t n = lattice.rank();
    Matrix<Rational> a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = lattice(i, j);
        }
    }
    std::vector<bool> active(n, true);
    std::size_t remaining = n;
    Signature sig;

    auto nonzero_in_row = [&](std::size_t r) {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < n; ++c) {
            if (active[c] && c != r && a(r, c) != 0) {
                cols.push_back(c);
            }
        }
        return cols;
    };

    while (remaining > 0) {
        std::optional<std::size_t> pivot;
        for (std::size_t i = 0; i < n; ++i) {
            if (active[i] && a(i, i) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot) {
            const std::size_t p = *pivot;
            const Rational d = a(p, p);
            (d > 0 ? sig.n_plus : sig.n_minus) += 1;
            const auto cols = nonzero_in_row(p);
            for (std::size_t r : cols) {
                const Rational factor = a(r, p) / d;
                for (std::size_t c : cols) {
                    a(r, c) -= factor * a(p, c);
                }
            }
            for (std::size_t r : cols) {
                a(r, p) = 0;
                a(p, r) = 0;
            }
            active[p] = false;
            --remaining;
            continue;
        }
        // All active diagonal entries vanish.
        std::optional<std::pair<std::size_t, std::size_t>> block;
        for (std::size_t i = 0; i < n && !block; ++i) {
            if (!active[i]) {
                continue;
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                if (active[j] && a(i, j) != 0) {
                    block = std::pair{i, j};
                    break;
                }
            }
        }
        if (!block) {
            sig.n_zero += remaining;
            break;
        }
        const auto [p, q] = *block;
        const Rational off = a(p, q);
        sig.n_plus += 1;
        sig.n_minus += 1;
        std::vector<std::size_t> others;
        for (std::size_t c = 0; c < n; ++c) {
            if (active[c] && c != p && c != q && (a(p, c) != 0 || a(q, c) != 0)) {
                others.push_back(c);
            }
        }
        // Inverse of [[0, off], [off, 0]] is [[0, 1/off], [1/off, 0]].
        for (std::size_t r : others) {
            for (std::size_t c : others) {
                a(r, c) -= (a(r, p) * a(q, c) + a(r, q) * a(p, c)) / off;
            }
        }
        for (std::size_t r : others) {
            a(r, p) = a(p, r) = 0;
            a(r, q) = a(q, r) = 0;
        }
        active[p] = active[q] = false;
        remaining -= 2;
    }
    return sig;
}

/// Solves gram * x = rhs over Q. Throws if the lattice is degenerate.
inline std::vector<Rational> solve_rational(const GramLattice& lattice,
                                            std::span<const Rational> rhs) {
    const std::size_t n = lattice.rank();
    Matrix<Rational> a(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = lattice(i, j);
        }
        a(i, n) = rhs[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) {
            ++p;
        }
        if (p == n) {
            throw Error(ErrorCode::InvalidArgument, "singular Gram matrix");
        }
        if (p != k) {
            for (std::size_t c = 0; c <= n; ++c) {
                std::swap(a(k, c), a(p, c));
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k || a(r, k) == 0) {
                continue;
            }
            const Rational factor = a(r, k) / a(k, k);
            for (std::size_t c = k; c <= n; ++c) {
                a(r, c) -= factor * a(k, c);
            }
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a(i, n) / a(i, i);
    }
    return x;
}

inline std::vector<Rational> solve_rational(const GramLattice& lattice,
                                            std::span<const std::int64_t> rhs) {
    std::vector<Rational> r(rhs.begin(), rhs.end());
    return solve_rational(lattice, std::span<const Rational>(r));
}

/// Unique solution of gram * x = rhs over GF(2), or nullopt if gram is
/// singular mod 2 (equivalently, det is even).
inline std::optional<std::vector<std::uint8_t>> solve_mod2(const GramLattice& lattice,
                                                           std::span<const std::int64_t> rhs) {
    const std::size_t n = lattice.rank();
    const std::size_t words = (n + 1 + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(words, 0));
    auto set_bit = [](std::vector<std::uint64_t>& row, std::size_t c) {
        row[c / 64] |= std::uint64_t{1} << (c % 64);
    };
    auto get_bit = [](const std::vector<std::uint64_t>& row, std::size_t c) {
        return (row[c / 64] >> (c % 64)) & 1U;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if ((lattice(i, j) & 1) != 0) {
                set_bit(rows[i], j);
            }
        }
        if ((rhs[i] & 1) != 0) {
            set_bit(rows[i], n);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && !get_bit(rows[p], k)) {
            ++p;
        }
        if (p == n) {
            return std::nullopt;
        }
        std::swap(rows[k], rows[p]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != k && get_bit(rows[r], k)) {
                for (std::size_t w = 0; w < words; ++w) {
                    rows[r][w] ^= rows[k][w];
                }
            }
        }
    }
    std::vector<std::uint8_t> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<std::uint8_t>(get_bit(rows[i], n));
    }
    return x;
}

}  // namespace plumbcalc
