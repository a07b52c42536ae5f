#pragma once

// Characteristic vectors. For a negative-definite form the characteristic
// vectors in one class c0 + 2L have squares that differ by multiples of 8, and
// maximizing the square is a closest-vector problem for the positive form -G
// with target -c0/2.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plumbcalc/error.hpp"
#include "plumbcalc/lattice/classify.hpp"
#include "plumbcalc/lattice/enumeration.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/lattice/linear_algebra.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

struct WuClass {
    std::vector<std::uint8_t> eps;

    std::vector<std::int64_t> as_vector() const { return {eps.begin(), eps.end()}; }
};

/// The unique 0/1 vector w with gram * w = diag(gram) mod 2.
inline WuClass wu_class(const GramLattice& lattice) {
    std::vector<std::int64_t> rhs(lattice.rank());
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
        rhs[i] = lattice(i, i);
    }
    auto eps = solve_mod2(lattice, rhs);
    if (!eps) {
        throw Error(ErrorCode::SingularMod2, "determinant is even; Wu class is not unique");
    }
    return {std::move(*eps)};
}

inline bool is_characteristic(const GramLattice& lattice, std::span<const std::int64_t> coords) {
    const auto pairing = lattice.apply(coords);
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
        if (((pairing[i] - lattice(i, i)) & 1) != 0) {
            return false;
        }
    }
    return true;
}

struct CharacteristicMax {
    Rational square;
    std::vector<std::int64_t> pairing;  // (c, [v]) for each basis vector
    std::vector<Rational> coords;       // c in the basis; integral when unimodular
};

/// Auto maximizes exactly by dynamic programming when the Gram matrix is
/// supported on a forest and falls back to enumeration otherwise.
enum class CharSearch { Auto, Enumeration };

namespace detail {

/// Children lists of a rooted spanning forest of the off-diagonal support,
/// or nullopt if the support has a cycle.
inline std::optional<std::vector<std::vector<std::size_t>>> forest_children(const GramLattice& lattice,
                                                                           std::vector<std::size_t>& order) {
    const std::size_t n = lattice.rank();
    std::vector<std::vector<std::size_t>> children(n);
    std::vector<int> seen(n, 0);
    order.clear();
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            edges += lattice(i, j) != 0 ? 1 : 0;
        }
    }
    std::size_t components = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) {
            continue;
        }
        ++components;
        seen[root] = 1;
        order.push_back(root);
        for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
            const std::size_t v = order[head];
            for (std::size_t w = 0; w < n; ++w) {
                if (w != v && lattice(v, w) != 0 && !seen[w]) {
                    seen[w] = 1;
                    children[v].push_back(w);
                    order.push_back(w);
                }
            }
        }
    }
    if (edges + components != n) {
        return std::nullopt;
    }
    return children;
}

/// Diagonal of the inverse of a positive-definite form.
inline std::vector<Rational> inverse_diagonal(const GramLattice& positive) {
    const std::size_t n = positive.rank();
    Matrix<Rational> a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = positive(i, j);
        }
        a(i, n + i) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Rational pivot = a(k, k);  // nonzero: leading minors of a definite form
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k || a(r, k) == 0) {
                continue;
            }
            const Rational factor = a(r, k) / pivot;
            for (std::size_t c = k; c < 2 * n; ++c) {
                if (a(k, c) != 0) {
                    a(r, c) -= factor * a(k, c);
                }
            }
        }
    }
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a(i, n + i) / a(i, i);
    }
    return out;
}

/// Integers x with (x - t)^2 <= r.
inline std::vector<std::int64_t> integers_near(const Rational& t, const Rational& r) {
    const BigInt s = isqrt_floor(r) + 1;
    std::vector<std::int64_t> out;
    for (BigInt x = floor(t) - s; x <= ceil(t) + s; ++x) {
        const Rational delta = Rational(x) - t;
        if (delta * delta <= r) {
            out.push_back(to_int64(x));
        }
    }
    return out;
}

/// Exact maximum of (c0 + 2x)^T G (c0 + 2x) over integer x in the given
/// per-coordinate ranges, for G supported on a forest. The objective is
/// scaled by den^2 (den a common denominator of c0) so the dynamic program
/// runs over integers.
inline std::vector<std::int64_t> maximize_on_forest(const GramLattice& lattice, const std::vector<Rational>& c0,
                                                    const std::vector<std::vector<std::size_t>>& children,
                                                    const std::vector<std::size_t>& order,
                                                    const std::vector<std::vector<std::int64_t>>& ranges) {
    const std::size_t n = lattice.rank();
    BigInt den = 1;
    for (const auto& x : c0) {
        den = boost::multiprecision::lcm(den, denominator_of(x));
    }
    std::vector<std::vector<BigInt>> scaled(n);  // den * (c0_v + 2x) over the range of v
    for (std::size_t v = 0; v < n; ++v) {
        const BigInt base = numerator_of(c0[v]) * (den / denominator_of(c0[v]));
        for (std::int64_t x : ranges[v]) {
            scaled[v].push_back(base + 2 * den * x);
        }
    }
    std::vector<std::vector<BigInt>> best(n);
    std::vector<std::vector<std::size_t>> pick(n);  // pick[w][a]: best index of w given parent index a
    for (std::size_t idx = n; idx-- > 0;) {
        const std::size_t v = order[idx];
        best[v].resize(scaled[v].size());
        for (std::size_t a = 0; a < scaled[v].size(); ++a) {
            best[v][a] = lattice(v, v) * scaled[v][a] * scaled[v][a];
        }
        for (std::size_t w : children[v]) {
            pick[w].assign(scaled[v].size(), 0);
            const std::int64_t link = 2 * lattice(v, w);
            for (std::size_t a = 0; a < scaled[v].size(); ++a) {
                const BigInt cv = link * scaled[v][a];
                BigInt top = best[w][0] + cv * scaled[w][0];
                for (std::size_t b = 1; b < scaled[w].size(); ++b) {
                    BigInt value = best[w][b] + cv * scaled[w][b];
                    if (value > top) {
                        top = std::move(value);
                        pick[w][a] = b;
                    }
                }
                best[v][a] += top;
            }
        }
    }
    std::vector<std::size_t> choice(n, 0);
    std::vector<bool> is_child(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w : children[v]) {
            is_child[w] = true;
        }
    }
    for (std::size_t v : order) {
        if (!is_child[v]) {
            std::size_t arg = 0;
            for (std::size_t a = 1; a < best[v].size(); ++a) {
                if (best[v][a] > best[v][arg]) {
                    arg = a;
                }
            }
            choice[v] = arg;
        }
        for (std::size_t w : children[v]) {
            choice[w] = pick[w][choice[v]];
        }
    }
    std::vector<std::int64_t> x(n);
    for (std::size_t v = 0; v < n; ++v) {
        x[v] = ranges[v][choice[v]];
    }
    return x;
}

}  // namespace detail

/// Maximizes the square over characteristic classes of one negative-definite
/// lattice. Preparation (forest structure, inverse diagonal, LDL factor) is
/// done once, so repeated classes are cheap.
class CharacteristicMaximizer {
public:
    explicit CharacteristicMaximizer(GramLattice lattice, CharSearch method = CharSearch::Auto,
                                     EnumerationLimits limits = {})
        : lattice_(std::move(lattice)), positive_(lattice_.negated()), limits_(limits) {
        if (method == CharSearch::Auto) {
            children_ = detail::forest_children(lattice_, order_);
        }
        if (children_) {
            inverse_diagonal_ = detail::inverse_diagonal(positive_);
        } else {
            form_.emplace(positive_);
        }
    }

    const GramLattice& lattice() const noexcept { return lattice_; }

    /// Maximum over c0 + 2Z^n, where c0 (rational coordinates) has integral
    /// pairings congruent to the diagonal mod 2.
    CharacteristicMax maximize(const std::vector<Rational>& c0) const {
        const std::size_t n = lattice_.rank();
        // Nearest representative, then greedy single-coordinate moves into
        // the pairing box m_v <= (c,[v]) <= -m_v.
        std::vector<Rational> c(n);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = c0[i] + 2 * Rational(floor(-c0[i] / 2 + Rational(1, 2)));
        }
        std::vector<Rational> k = pairings_of(c);
        for (bool moved = true; moved;) {
            moved = false;
            for (std::size_t v = 0; v < n; ++v) {
                const std::int64_t m = lattice_(v, v);
                while (k[v] > -m || k[v] < m) {
                    const int step = k[v] > -m ? 2 : -2;
                    c[v] += step;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (lattice_(i, v) != 0) {
                            k[i] += step * lattice_(i, v);
                        }
                    }
                    moved = true;
                }
            }
        }

        std::vector<Rational> target(n);
        for (std::size_t i = 0; i < n; ++i) {
            target[i] = -c0[i] / 2;
        }
        const Rational start = -square_of(c, k) / 4;
        std::optional<std::vector<std::int64_t>> best_x;
        if (children_) {
            // Any x doing at least as well as the start has (x_i - t_i)^2 <= start * P^-1_ii.
            std::vector<std::vector<std::int64_t>> ranges(n);
            for (std::size_t i = 0; i < n; ++i) {
                ranges[i] = detail::integers_near(target[i], start * inverse_diagonal_[i]);
            }
            best_x = detail::maximize_on_forest(lattice_, c0, *children_, order_, ranges);
        } else {
            // Squares within a class differ by multiples of 8, so only
            // Q <= best - 2 can improve.
            Rational best = start;
            form_->enumerate(
                target, best - 2,
                [&](std::span<const std::int64_t> x, const Rational& value) -> std::optional<Rational> {
                    if (value < best) {
                        best = value;
                        best_x.emplace(x.begin(), x.end());
                    }
                    return value - 2;
                },
                limits_);
        }
        if (best_x) {
            std::vector<Rational> candidate(n);
            for (std::size_t i = 0; i < n; ++i) {
                candidate[i] = c0[i] + 2 * (*best_x)[i];
            }
            auto candidate_k = pairings_of(candidate);
            if (square_of(candidate, candidate_k) > square_of(c, k)) {
                c = std::move(candidate);
                k = std::move(candidate_k);
            }
        }

        CharacteristicMax out;
        out.square = square_of(c, k);
        out.coords = std::move(c);
        out.pairing.reserve(n);
        for (const auto& value : k) {
            out.pairing.push_back(to_int64(value));
        }
        return out;
    }

private:
    std::vector<Rational> pairings_of(const std::vector<Rational>& c) const {
        const std::size_t n = lattice_.rank();
        std::vector<Rational> k(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (lattice_(i, j) != 0) {
                    k[i] += lattice_(i, j) * c[j];
                }
            }
        }
        return k;
    }

    static Rational square_of(const std::vector<Rational>& c, const std::vector<Rational>& k) {
        Rational s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            s += c[i] * k[i];
        }
        return s;
    }

    GramLattice lattice_;
    GramLattice positive_;
    EnumerationLimits limits_;
    std::vector<std::size_t> order_;
    std::optional<std::vector<std::vector<std::size_t>>> children_;
    std::vector<Rational> inverse_diagonal_;
    std::optional<PositiveForm> form_;
};

namespace detail {

inline void require_negative_definite(const GramLattice& lattice) {
    if (lattice.rank() > 0 && definiteness(lattice) != Definiteness::NegativeDefinite) {
        throw Error(ErrorCode::NotNegativeDefinite, "lattice is not negative definite");
    }
}

}  // namespace detail

/// Maximal square over the characteristic covectors pairing0 + 2 * gram * Z^n.
/// pairing0 must satisfy pairing0 = diag(gram) mod 2; gram need not be
/// unimodular, so squares are rational in general.
inline CharacteristicMax max_char_square_in_class(const GramLattice& lattice,
                                                  std::span<const std::int64_t> pairing0,
                                                  CharSearch method = CharSearch::Auto,
                                                  const EnumerationLimits& limits = {}) {
    detail::require_negative_definite(lattice);
    if (pairing0.size() != lattice.rank()) {
        throw Error(ErrorCode::InvalidArgument, "covector length does not match rank");
    }
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
        if (((pairing0[i] - lattice(i, i)) & 1) != 0) {
            throw Error(ErrorCode::InvalidArgument, "covector is not characteristic");
        }
    }
    return CharacteristicMaximizer(lattice, method, limits).maximize(solve_rational(lattice, pairing0));
}

/// Maximal square of a characteristic vector of a negative-definite
/// unimodular lattice, with a maximizing vector.
inline CharacteristicMax max_char_square(const GramLattice& lattice, CharSearch method = CharSearch::Auto,
                                         const EnumerationLimits& limits = {}) {
    detail::require_negative_definite(lattice);
    const BigInt det = determinant(lattice);
    if (det != 1 && det != -1) {
        throw Error(ErrorCode::NotUnimodular, "determinant is " + to_string(det));
    }
    const WuClass w = wu_class(lattice);
    std::vector<Rational> c0(w.eps.begin(), w.eps.end());
    return CharacteristicMaximizer(lattice, method, limits).maximize(c0);
}

/// max c^2 + rank <= 4d.
inline bool check_os_bound(const GramLattice& lattice, const Rational& d) {
    const auto best = max_char_square(lattice);
    return best.square + static_cast<std::int64_t>(lattice.rank()) <= 4 * d;
}

}  // namespace plumbcalc
